# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_pykernel.madd``; selected at import time by enrq.kernel."""

from libc.stdlib cimport free, malloc


def madd(dict out, dict f, dict g, tuple wnum, long long bn, long long bd,
         Py_ssize_t p_idx, long p_lo, long p_hi):
    """Accumulate all term products of ``f`` and ``g`` into ``out``.

    Same contract as the pure-Python kernel: keep a product exponent ``e``
    only if ``dot(wnum, e) * bd < bn`` (no truncation when ``bd == 0``) and,
    for ``p_idx >= 0``, ``p_lo <= e[p_idx] <= p_hi``; prune cancellations.
    """
    cdef Py_ssize_t nv = len(wnum)
    cdef Py_ssize_t ng = len(g)
    cdef Py_ssize_t i, j
    cdef long long wf
    cdef long pf, pe
    cdef tuple ef, eg, e
    cdef object cf, cg, cur, val
    cdef list g_exps = [None] * ng
    cdef list g_coefs = [None] * ng

    cdef long long *wn = <long long *> malloc(nv * sizeof(long long))
    cdef long long *wgs = <long long *> malloc((ng if ng else 1) * sizeof(long long))
    cdef long *pgs = <long *> malloc((ng if ng else 1) * sizeof(long))
    if wn == NULL or wgs == NULL or pgs == NULL:
        free(wn)
        free(wgs)
        free(pgs)
        raise MemoryError()

    try:
        for i in range(nv):
            wn[i] = wnum[i]
        j = 0
        for eg, cg in g.items():
            g_exps[j] = eg
            g_coefs[j] = cg
            wf = 0
            for i in range(nv):
                wf += wn[i] * <long long> eg[i]
            wgs[j] = wf
            pgs[j] = <long> eg[p_idx] if p_idx >= 0 else 0
            j += 1

        for ef, cf in f.items():
            wf = 0
            for i in range(nv):
                wf += wn[i] * <long long> ef[i]
            pf = <long> ef[p_idx] if p_idx >= 0 else 0
            for j in range(ng):
                if bd and (wf + wgs[j]) * bd >= bn:
                    continue
                if p_idx >= 0:
                    pe = pf + pgs[j]
                    if pe < p_lo or pe > p_hi:
                        continue
                eg = <tuple> g_exps[j]
                if nv == 5:
                    e = (ef[0] + eg[0], ef[1] + eg[1], ef[2] + eg[2],
                         ef[3] + eg[3], ef[4] + eg[4])
                elif nv == 3:
                    e = (ef[0] + eg[0], ef[1] + eg[1], ef[2] + eg[2])
                elif nv == 2:
                    e = (ef[0] + eg[0], ef[1] + eg[1])
                elif nv == 1:
                    e = (ef[0] + eg[0],)
                elif nv == 4:
                    e = (ef[0] + eg[0], ef[1] + eg[1], ef[2] + eg[2], ef[3] + eg[3])
                else:
                    e = tuple([ef[i] + eg[i] for i in range(nv)])
                cg = g_coefs[j]
                cur = out.get(e)
                if cur is None:
                    val = cf * cg
                    if val:
                        out[e] = val
                else:
                    val = cur + cf * cg
                    if val:
                        out[e] = val
                    else:
                        del out[e]
    finally:
        free(wn)
        free(wgs)
        free(pgs)
    return out
