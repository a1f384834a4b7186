"""Pure-Python fallback for the hot term-combination kernel.

The compiled twin lives in ``_ckernel.pyx``; both expose the same ``madd``.
"""


def madd(out, f, g, wnum, bn, bd, p_idx, p_lo, p_hi):
    """Accumulate all term products of ``f`` and ``g`` into ``out``.

    A product exponent ``e`` is kept only if ``dot(wnum, e) * bd < bn``
    (no truncation when ``bd == 0``) and, for ``p_idx >= 0``,
    ``p_lo <= e[p_idx] <= p_hi``.  Zero coefficients are pruned so ``out``
    never stores cancellations.
    """
    nv = len(wnum)
    rng = range(nv)
    gitems = []
    for eg, cg in g.items():
        w = 0
        for i in rng:
            w += wnum[i] * eg[i]
        gitems.append((eg, cg, w, eg[p_idx] if p_idx >= 0 else 0))
    get = out.get
    for ef, cf in f.items():
        wf = 0
        for i in rng:
            wf += wnum[i] * ef[i]
        pf = ef[p_idx] if p_idx >= 0 else 0
        for eg, cg, wg, pg in gitems:
            if bd and (wf + wg) * bd >= bn:
                continue
            if p_idx >= 0:
                pe = pf + pg
                if pe < p_lo or pe > p_hi:
                    continue
            e = tuple([ef[i] + eg[i] for i in rng])
            c = get(e)
            if c is None:
                c = cf * cg
                if c:
                    out[e] = c
            else:
                c = c + cf * cg
                if c:
                    out[e] = c
                else:
                    del out[e]
    return out
