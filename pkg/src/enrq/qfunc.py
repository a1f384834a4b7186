"""q-series special functions and plethystic calculus.

Conventions used throughout (weight -1, index 1/2 for the theta function):

    eta(q)      = q^(1/24) prod_{m>=1} (1 - q^m)
    Theta(x, q) = (x^(1/2) - x^(-1/2)) prod_{m>=1} (1-x q^m)(1-x^{-1} q^m)/(1-q^m)^2
    [n]_x       = x^{-(n-1)/2} (1 + x + ... + x^{n-1})

Plethystic Exp/Log twist the ordinary exp/log by Adams operations acting on
the scaled exponent lattice (the k-th Adams operation multiplies every
scaled exponent by k).
"""

from fractions import Fraction

from .ring import LinExpr, rat
from .series import (
    FRAME_Q,
    FRAME_TS,
    BadConstantTerm,
    Series,
    WindowUnderflow,
    Window,
    exp_series,
    log_series,
    product_expand,
)

__all__ = [
    "quantum_integer",
    "eta",
    "theta",
    "theta_pair",
    "inv_theta_pair",
    "plethystic_exp",
    "plethystic_log",
    "virtual_shift",
    "mobius",
]


def quantum_integer(n, frame=FRAME_TS):
    """[n] = (ts)^{-(n-1)/2} (1 + ts + ... + (ts)^{n-1}), symmetric in (ts) -> 1/(ts)."""
    n = int(n)
    if n < 1:
        raise ValueError("quantum integer needs n >= 1")
    it, ist = frame.index["t"], frame.index["s"]
    terms = {}
    for j in range(n):
        e = [0] * frame.nvars
        e[it] = e[ist] = 2 * j - (n - 1)
        terms[tuple(e)] = rat(1)
    return Series(frame, terms, None, None, _clean=True)


def eta(scale, q_order, frame=FRAME_Q, prefactor=True):
    """eta(q^scale) = q^(scale/24) prod (1 - q^{scale m}), to the given order.

    ``prefactor=False`` drops the q^(scale/24) factor (negative-control knob
    for convention checks only).
    """
    scale = int(scale)
    if scale < 1:
        raise ValueError("eta scale must be >= 1")
    q_order = Fraction(q_order)
    factors = []
    m = 1
    while Fraction(scale * m) < q_order:
        factors.append(({"q": scale * m}, 1))
        m += 1
    out = product_expand(frame, factors, q_order)
    if prefactor:
        out = out * Series.monomial(frame, {"q": Fraction(scale, 24)})
    return out


def theta(x, scale, q_order, frame):
    """Theta(x, q^scale) for a monomial x; x^(1/2) must lie on the lattice."""
    scale = int(scale)
    q_order = Fraction(q_order)
    x = {v: Fraction(e) for v, e in dict(x).items()}
    half = {v: e / 2 for v, e in x.items()}
    xinv = {v: -e for v, e in x.items()}
    zero_mode = Series.monomial(frame, half) - Series.monomial(frame, {v: -e for v, e in half.items()})
    factors = []
    m = 1
    while Fraction(scale * m) < q_order:
        factors.append((dict(x, q=scale * m), 1))
        factors.append((dict(xinv, q=scale * m), 1))
        factors.append(({"q": scale * m}, -2))
        m += 1
    return zero_mode * product_expand(frame, factors, q_order)


def theta_pair(x, y, scale, q_order, frame):
    """Theta(x*y, q^scale) * Theta(x/y, q^scale), lattice-safe for half-step y.

    The paired zero modes combine to x - y - 1/y + 1/x, so only x and y
    themselves (not their square roots) must lie on the lattice.
    """
    scale = int(scale)
    q_order = Fraction(q_order)
    x = {v: Fraction(e) for v, e in dict(x).items()}
    y = {v: Fraction(e) for v, e in dict(y).items()}

    def mono(m, inv=False):
        return {v: (-e if inv else e) for v, e in m.items()}

    def combine(a, b):
        out = dict(a)
        for v, e in b.items():
            out[v] = out.get(v, Fraction(0)) + e
        return {v: e for v, e in out.items() if e}

    zero_mode = (
        Series.monomial(frame, x)
        - Series.monomial(frame, y)
        - Series.monomial(frame, mono(y, inv=True))
        + Series.monomial(frame, mono(x, inv=True))
    )
    factors = []
    m = 1
    while Fraction(scale * m) < q_order:
        qm = {"q": Fraction(scale * m)}
        for a in (x, mono(x, inv=True)):
            for b in (y, mono(y, inv=True)):
                factors.append((combine(combine(a, b), qm), 1))
        factors.append((qm, -4))
        m += 1
    return zero_mode * product_expand(frame, factors, q_order)


def inv_theta_pair(x, y, scale, q_order, frame, window):
    """1 / theta_pair(x, y, scale), expanded ascending in the x direction.

    The inverted zero mode is the geometric series sum_{m>=1} [m]_{y^2} x^m,
    so the result is x-windowed with a known support floor at x^1.
    """
    scale = int(scale)
    q_order = Fraction(q_order)
    x = {v: Fraction(e) for v, e in dict(x).items()}
    y = {v: Fraction(e) for v, e in dict(y).items()}
    ex = frame.exps(x)
    ey = frame.exps(y)
    if window is None or frame.p_index < 0 or not ex[frame.p_index]:
        raise WindowUnderflow("inv_theta_pair needs x in the p direction and a p-window")
    window = Window(ex[frame.p_index], window.hi, True)
    # zero-mode inverse: sum_{m>=1} (sum_{a+b=m-1} y^{a-b}) x^m
    terms = {}
    m = 1
    while True:
        base = tuple(v * m for v in ex)
        if base[frame.p_index] > window.hi:
            break
        for a in range(m):
            b = m - 1 - a
            e = tuple(base[i] + (a - b) * ey[i] for i in range(frame.nvars))
            terms[e] = terms.get(e, rat(0)) + 1
        m += 1
    zm_inv = Series(frame, terms, q_order, window)

    def mono(mn, inv=False):
        return {v: (-e if inv else e) for v, e in mn.items()}

    def combine(a, b):
        out = dict(a)
        for v, e in b.items():
            out[v] = out.get(v, Fraction(0)) + e
        return {v: e for v, e in out.items() if e}

    factors = []
    m = 1
    while Fraction(scale * m) < q_order:
        qm = {"q": Fraction(scale * m)}
        for a in (x, mono(x, inv=True)):
            for b in (y, mono(y, inv=True)):
                factors.append((combine(combine(a, b), qm), -1))
        factors.append((qm, 4))
        m += 1
    return zm_inv * product_expand(frame, factors, q_order)


def _all_integer_coeffs(f):
    for c in f.terms.values():
        if isinstance(c, LinExpr):
            return False
        if c.denominator != 1:
            return False
    return True


def plethystic_exp(f):
    """Exp(f) = exp(sum_k adams(f, k)/k); converts sums to products.

    For integer coefficients this is evaluated as the convergent product
    prod (1 - m)^(-c) over the terms c*m of f, which also covers p-windowed
    arguments with known support floor >= 1.  Symbol-carrying arguments are
    rejected (Exp is not affine-linear).
    """
    if f.has_symbols():
        raise BadConstantTerm("plethystic exp of a symbol-carrying series")
    if f.terms and (f.wmin() or 0) <= 0:
        raise BadConstantTerm("plethystic exp needs strictly positive weights")
    if f.q_order is None:
        raise BadConstantTerm("plethystic exp needs a finite truncation order")
    if _all_integer_coeffs(f):
        window = f.window
        if window is not None:
            if not window.floored or window.lo < 1:
                raise WindowUnderflow(
                    "plethystic exp of a windowed series needs a known floor >= 1"
                )
            window = Window(0, window.hi, True)
        factors = [(e, -int(c)) for e, c in f.items_sorted()]
        return product_expand(f.frame, factors, f.q_order, window)
    if f.window is not None:
        raise WindowUnderflow("plethystic exp of a windowed series needs integer coefficients")
    acc = Series.zero(f.frame, f.q_order)
    k = 1
    wmin = f.wmin() or Fraction(1)
    while k * wmin < f.q_order:
        acc = acc + f.adams(k) * rat(1, k)
        k += 1
    return exp_series(acc)


def plethystic_log(F):
    """Log(F): plethystic inverse of Exp, via Moebius inversion over Adams ops."""
    L = log_series(F)
    if not L.terms:
        return L
    if L.q_order is None:
        return L
    acc = Series.zero(L.frame, L.q_order, L.window)
    wmin = L.wmin()
    k = 1
    while k * wmin < L.q_order:
        m = mobius(k)
        if m:
            acc = acc + L.adams(k) * rat(m, k)
        k += 1
    return acc


def virtual_shift(f, dim):
    """Multiply by (ts)^(-dim/2), the Hodge weight shift of a dim-dimensional space."""
    dim = int(dim)
    if dim < 0:
        raise ValueError("dimension must be nonnegative")
    if dim == 0:
        return f
    return f * Series.monomial(f.frame, {"t": Fraction(-dim, 2), "s": Fraction(-dim, 2)})


def mobius(n):
    if n == 1:
        return 1
    result = 1
    k = n
    p = 2
    while p * p <= k:
        if k % p == 0:
            k //= p
            if k % p == 0:
                return 0
            result = -result
        p += 1
    if k > 1:
        result = -result
    return result
