"""Refined curve counting on the Enriques Calabi-Yau threefold in fiber classes.

The pipeline: the stable-pair series for multiples of a half-fiber, the
wallcrossing assembly linking it to generalized sheaf-counting invariants
DT(r, d, n) and their multiple-cover-stripped BPS classes Omega, the
conjectural all-n completion, and Gopakumar-Vafa polynomial extraction.

All refined values live in the variables (t, s); the Betti realization sets
t = s = u, the chi_t specialization sets s = 1, the Euler limit t = s = 1.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from .config import hodge_inputs, parse_hodge
from .qfunc import plethystic_exp, plethystic_log, quantum_integer
from .ring import rat
from .series import (
    FRAME_P0,
    FRAME_PU,
    FRAME_PU0,
    FRAME_QP,
    FRAME_QPUTS,
    FRAME_QTS,
    FRAME_TS,
    Frame,
    Series,
    SeriesError,
    Window,
    divide_exact,
    exp_series,
    product_expand,
)

FRAME_UTS = Frame(("u", "t", "s"), (2, 2, 2), (0, 0, 0))

__all__ = [
    "MissingDivisor",
    "UnstableWindow",
    "NotInBasisSpan",
    "DTKey",
    "DTValue",
    "GVPolynomial",
    "hodge_chi",
    "chi_vir",
    "betti_realization",
    "elliptic_curve_chi_vir",
    "enriques_cy3_chi_vir",
    "rational_elliptic_surface_vir",
    "pt_fiber_series",
    "pt_fiber_series_euler",
    "equivariant_hilb_vir_series",
    "dt_fiber",
    "omega_fiber",
    "bps_to_dt",
    "dt_fiber_table",
    "assemble_pt_from_dt",
    "quantum_sum_prefactor",
    "rank0_dt",
    "rank0_exp_argument",
    "rank0_ordinary_log_from_dt",
    "pt_fiber_full",
    "gv_refined_extract",
    "gv_fiber_closed",
    "gv_to_ph_grid",
    "fiber_ph_grid",
    "ng_from_gv",
    "local_enriques_log_pt",
    "local_enriques_gv",
    "smooth_curve_pt_series",
    "smooth_curve_pt_closed",
    "dt_table_to_json",
    "dt_table_from_json",
    "dt_reference_values",
]


class MissingDivisor(SeriesError):
    """BPS-to-DT sum needs an Omega value that was not supplied."""


class UnstableWindow(SeriesError):
    """Extracted polynomial still changes near the edge of the p-window."""


class NotInBasisSpan(SeriesError):
    """Polynomial has no finite expansion in the requested genus basis."""


# -- Hodge-theoretic inputs -------------------------------------------------

def hodge_chi(hodge, frame=FRAME_TS):
    """chi_{t,s}(V) = sum (-1)^{p+q} h^{p,q} t^p s^q for a Hodge diamond."""
    acc = {}
    for (p, q), h in hodge.items():
        e = frame.exps({"t": p, "s": q})
        acc[e] = acc.get(e, rat(0)) + rat((-1) ** (p + q) * h)
    return Series(frame, acc)


def chi_vir(hodge, dim, frame=FRAME_TS):
    """chi of the weight-shifted class: (-1)^dim (ts)^(-dim/2) chi_{t,s}.

    The sign is (-(ts)^(1/2))^(-dim), the Hodge realization of the canonical
    square root of the Lefschetz motive.
    """
    shift = Series.monomial(frame, {"t": Fraction(-dim, 2), "s": Fraction(-dim, 2)}, rat((-1) ** dim))
    return hodge_chi(hodge, frame) * shift


def _hodge_entry(name):
    data = hodge_inputs()[name]
    return parse_hodge(data["hodge"]), data["dim"]


def betti_realization(ts_series):
    """Specialize t = s = u; accepts any frame containing t and s."""
    f = ts_series.frame
    if "u" not in f.index:
        ts_series = ts_series.embed(FRAME_UTS)
    return ts_series.specialize({"t": {"u": 1}, "s": {"u": 1}})


def elliptic_curve_chi_vir(frame=FRAME_TS):
    """-(ts)^(-1/2) (1-t)(1-s)."""
    return chi_vir(*_hodge_entry("elliptic_curve"), frame=frame)


def enriques_cy3_chi_vir(frame=FRAME_TS):
    return chi_vir(*_hodge_entry("enriques_cy3"), frame=frame)


def rational_elliptic_surface_vir(frame=FRAME_TS):
    """(ts)^(-1) + 10 + ts."""
    return chi_vir(*_hodge_entry("rational_elliptic_surface"), frame=frame)


# -- the degree-d stable-pair series (n = 0) ---------------------------------

def pt_fiber_series(q_order, frame=FRAME_QTS):
    """prod_m (1-q^{2m})^6 / ((1-(ts)^{-1} q^{2m}) (1-q^m)^8 (1-ts q^{2m}))."""
    q_order = Fraction(q_order)
    factors = []
    m = 1
    while m < q_order:
        factors.append(({"q": m}, -8))
        if 2 * m < q_order:
            factors.append(({"q": 2 * m}, 6))
            factors.append(({"q": 2 * m, "t": -1, "s": -1}, -1))
            factors.append(({"q": 2 * m, "t": 1, "s": 1}, -1))
        m += 1
    return product_expand(frame, factors, q_order)


def pt_fiber_series_euler(q_order, frame=FRAME_QP):
    """Euler limit of the fiber series: prod (1-q^{2m})^4 / (1-q^m)^8."""
    q_order = Fraction(q_order)
    factors = []
    m = 1
    while m < q_order:
        factors.append(({"q": m}, -8))
        if 2 * m < q_order:
            factors.append(({"q": 2 * m}, 4))
        m += 1
    return product_expand(frame, factors, q_order)


def equivariant_hilb_vir_series(fixed_points, resolution_vir, q_order, frame=FRAME_QTS):
    """Goettsche-type series for invariant Hilbert schemes of an involution surface.

    prod_i ((1-q^{2i})^2/(1-q^i))^fixed_points * Exp(sum_i q^{2i} R) where R is
    the weight-shifted class of the resolved quotient surface.
    """
    q_order = Fraction(q_order)
    factors = []
    i = 1
    while i < q_order:
        factors.append(({"q": i}, -fixed_points))
        if 2 * i < q_order:
            factors.append(({"q": 2 * i}, 2 * fixed_points))
        i += 1
    base = product_expand(frame, factors, q_order)
    res = resolution_vir.embed(frame)
    arg = Series.zero(frame, q_order)
    i = 1
    while 2 * i < q_order:
        arg = arg + res * Series.monomial(frame, {"q": 2 * i}, q_order=q_order)
        i += 1
    return base * plethystic_exp(arg)


# -- DT / Omega values -------------------------------------------------------

@dataclass(frozen=True)
class DTKey:
    """Chern-character key (r, d, n) for sheaves on fiber classes beta = d*f.

    The value is determined by the square v^2 = -2rn - r^2 (fiber classes have
    beta^2 = 0), the divisibility and the parity of beta; ``kind`` carries the
    opaque type metadata and is never computed from geometry here.
    """

    r: int
    d: int
    n: int
    kind: str = ""

    @property
    def square(self):
        return -2 * self.r * self.n - self.r * self.r

    @property
    def divisibility(self):
        g = gcd(gcd(self.r, self.d), self.n)
        if g == 0:
            raise ValueError("zero Chern character")
        return g

    @property
    def beta_even(self):
        return self.d % 2 == 0


class DTValue:
    """A refined invariant stored as numerator/denominator of (t,s)-Laurent polynomials.

    Denominators are products of quantum integers; the Euler limit t = s = 1
    is always a rational number.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Series):
            num = Series.const(FRAME_TS, num)
        self.num = num
        self.den = den if den is not None else Series.one(num.frame)

    def is_zero(self):
        return self.num.is_zero()

    def __add__(self, other):
        return DTValue(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __mul__(self, scalar):
        return DTValue(self.num * scalar, self.den)

    __rmul__ = __mul__

    def adams(self, k):
        return DTValue(self.num.adams(k), self.den.adams(k))

    def specialize(self, mapping):
        return DTValue(self.num.specialize(mapping), self.den.specialize(mapping))

    def euler(self):
        num = self.num.specialize({"t": 1, "s": 1}).coeff({})
        den = self.den.specialize({"t": 1, "s": 1}).coeff({})
        return num / den

    def same_as(self, other):
        return self.num * other.den == other.num * self.den

    def cleared(self, factor):
        """(factor * num) / den as a Series; the division must be exact."""
        return divide_exact(factor * self.num, self.den)

    def __repr__(self):
        return f"DTValue({self.num!r} / {self.den!r})"


def dt_fiber(r, d):
    """DT(r, d*f, 0): 8/(r [r]) for odd r | d, the two-term combination for even
    r | d, zero otherwise."""
    r = int(r)
    if r < 1:
        raise ValueError("rank must be >= 1")
    if d % r:
        return DTValue(Series.zero(FRAME_TS))
    if r % 2:
        return DTValue(Series.const(FRAME_TS, rat(8, r)), quantum_integer(r))
    half = Fraction(r, 2)
    num = (
        Series.monomial(FRAME_TS, {"t": -half, "s": -half})
        - 2
        + Series.monomial(FRAME_TS, {"t": half, "s": half})
    ) * rat(-2, r)
    return DTValue(num, quantum_integer(r))


def omega_fiber(r, d):
    """Omega(r, d*f, 0): 8 for r=1; -[2] for r=2 with d even; zero otherwise."""
    r = int(r)
    if r < 1:
        raise ValueError("rank must be >= 1")
    if r == 1:
        return DTValue(Series.const(FRAME_TS, 8))
    if r == 2 and d % 2 == 0:
        return DTValue(-quantum_integer(2))
    return DTValue(Series.zero(FRAME_TS))


def _divisors(n):
    out = [k for k in range(1, n + 1) if n % k == 0]
    return out


def bps_to_dt(omega_table, key):
    """DT(v) = sum_{k|v} Omega(v/k)|_{adams k} / (k [k])."""
    acc = DTValue(Series.zero(FRAME_TS))
    for k in _divisors(key.divisibility):
        sub = (key.r // k, key.d // k, key.n // k)
        if sub not in omega_table:
            raise MissingDivisor(f"no Omega value for {sub}")
        om = omega_table[sub]
        term = DTValue(om.num.adams(k), om.den.adams(k) * quantum_integer(k) * rat(k))
        acc = acc + term
    return acc


def dt_fiber_table(q_order):
    """All nonzero DT(r, d, 0) with 1 <= d < q_order, keyed by (r, d, n=0)."""
    q_order = Fraction(q_order)
    table = {}
    d = 1
    while d < q_order:
        for r in _divisors(d):
            val = dt_fiber(r, d)
            if not val.is_zero():
                table[(r, d, 0)] = val
        d += 1
    return table


def assemble_pt_from_dt(dt_table, q_order, window=None, frame=FRAME_QPUTS, euler=False):
    """Wallcrossing assembly: prod exp((-1)^{r-1} [n+r] DT(r,d,n) q^d p^{+-n}).

    Keys (r, d, n) contribute p^n always and p^{-n} additionally when both
    r > 0 and n > 0.  In Euler mode the table must hold Euler-specialized
    values and the wallcrossing factor degenerates to the integer n + r.
    """
    q_order = Fraction(q_order)
    acc = Series.one(frame, q_order)
    for (r, d, n) in sorted(dt_table):
        val = dt_table[(r, d, n)]
        if val.is_zero():
            continue
        if d < 1:
            raise ValueError("assembly needs positive fiber degree")
        if Fraction(d) >= q_order:
            continue
        if n == 0 and r == 0:
            raise ValueError("the (r, n) = (0, 0) factor is empty")
        if euler:
            factor = val.cleared(Series.const(val.num.frame, n + r))
        else:
            factor = val.cleared(quantum_integer(n + r))
        factor = factor * rat((-1) ** (r - 1))
        factor = factor.embed(frame)
        exps = [n] if (n == 0 or r == 0) else [n, -n]
        for pexp in exps:
            w = None
            if pexp and window is not None:
                if 2 * pexp > window.hi:
                    continue
                w = Window(min(0, 2 * pexp), window.hi, True)
            mono = Series.monomial(frame, {"q": d, "p": pexp}, q_order=q_order, window=w)
            arg = (factor * mono).with_q_order(q_order)
            acc = acc * exp_series(arg)
    return acc


# -- the all-n completion in fiber classes ------------------------------------

def quantum_sum_prefactor(q_order, window, frame=FRAME_QPUTS, euler=False):
    """-p/((1-(ts)^{1/2}p)(1-(ts)^{-1/2}p)) = -sum_{m>=1} [m]_{ts} p^m.

    Expanded ascending in p, so the result is p-windowed with support floor
    p^1.  In Euler mode the coefficient of p^m degenerates to -m.
    """
    q_order = Fraction(q_order)
    pi = frame.p_index
    terms = {}
    m = 1
    while 2 * m <= window.hi:
        base = [0] * frame.nvars
        base[pi] = 2 * m
        if euler:
            terms[tuple(base)] = rat(-m)
        else:
            it, ist = frame.index["t"], frame.index["s"]
            for j in range(m):
                e = list(base)
                e[it] = e[ist] = 2 * j - (m - 1)
                terms[tuple(e)] = rat(-1)
        m += 1
    return Series(frame, terms, q_order, Window(2, window.hi, True), _clean=True)


def rank0_dt(d, n, euler=False):
    """DT(0, d*f, n) for n >= 1 via refined chi-independence:

    DT(0, beta, n) = sum_{k | gcd(beta, n)} DT(0, beta/k, 1)|_{adams k} / (k [k])
    with DT(0, d'f, 1) equal to 8 chi([E]^vir) for odd d' and chi([Q]^vir) for
    even d'.
    """
    if d < 1 or n < 1:
        raise ValueError("rank-0 values need d, n >= 1")
    e_vir = elliptic_curve_chi_vir()
    q_vir = enriques_cy3_chi_vir()
    if euler:
        e_vir = Series.const(FRAME_TS, e_vir.specialize({"t": 1, "s": 1}).coeff({}))
        q_vir = Series.const(FRAME_TS, q_vir.specialize({"t": 1, "s": 1}).coeff({}))
    acc = DTValue(Series.zero(FRAME_TS))
    for k in _divisors(gcd(d, n)):
        dk = d // k
        prim = e_vir * 8 if dk % 2 else q_vir
        den = quantum_integer(k) * rat(k) if not euler else Series.const(FRAME_TS, k * k)
        acc = acc + DTValue(prim.adams(k), den)
    return acc


def rank0_exp_argument(q_order, window, frame=FRAME_QPUTS, euler=False):
    """The plethystic-exponential argument of the all-n completion:

    -p/((1-(ts)^{1/2}p)(1-(ts)^{-1/2}p)) [ sum_{d odd} 8 chi([E]^vir) q^d
                                          + sum_{d even} chi([Q]^vir) q^d ].
    """
    q_order = Fraction(q_order)
    pref = quantum_sum_prefactor(q_order, window, frame, euler=euler)
    if euler:
        e_vir = Series.const(
            frame, elliptic_curve_chi_vir().specialize({"t": 1, "s": 1}).coeff({})
        )
        q_vir = Series.const(
            frame, enriques_cy3_chi_vir().specialize({"t": 1, "s": 1}).coeff({})
        )
    else:
        e_vir = elliptic_curve_chi_vir().embed(frame)
        q_vir = enriques_cy3_chi_vir().embed(frame)
    s = Series.zero(frame, q_order)
    d = 1
    while d < q_order:
        part = e_vir * 8 if d % 2 else q_vir
        s = s + part * Series.monomial(frame, {"q": d}, q_order=q_order)
        d += 1
    return pref * s


def rank0_ordinary_log_from_dt(q_order, window, frame=FRAME_QPUTS):
    """-sum [n] DT(0,d,n) q^d p^n: the ordinary logarithm of the rank-0 factor.

    Its ordinary exponential must agree with the plethystic exponential of
    :func:`rank0_exp_argument`; that equality is exactly the refined
    chi-independence wiring of the rank-0 column.
    """
    q_order = Fraction(q_order)
    acc = Series.zero(frame, q_order, Window(0, window.hi, True))
    d = 1
    while d < q_order:
        for n in range(1, window.hi // 2 + 1):
            val = rank0_dt(d, n)
            term = val.cleared(quantum_integer(n)).embed(frame)
            mono = Series.monomial(
                frame, {"q": d, "p": n}, q_order=q_order, window=Window(0, window.hi, True)
            )
            acc = acc - term * mono
        d += 1
    return acc


def pt_fiber_full(q_order, window, frame=FRAME_QPUTS, euler=False):
    """Conjectural full fiber-class stable-pair series in (q, p, t, s)."""
    q_order = Fraction(q_order)
    if euler:
        base = pt_fiber_series_euler(q_order, FRAME_QP).embed(frame)
    else:
        base = pt_fiber_series(q_order, FRAME_QTS).embed(frame)
    return base * plethystic_exp(rank0_exp_argument(q_order, window, frame, euler=euler))


# -- Gopakumar-Vafa extraction -------------------------------------------------

class GVPolynomial:
    """Finite Laurent polynomial in p and u (invariances checked, not assumed)."""

    __slots__ = ("poly",)

    def __init__(self, poly):
        if poly.frame != FRAME_PU0:
            poly = poly.embed(FRAME_PU0)
        self.poly = Series(FRAME_PU0, dict(poly.terms))

    def __eq__(self, other):
        if isinstance(other, GVPolynomial):
            return self.poly == other.poly
        return NotImplemented

    def is_zero(self):
        return self.poly.is_zero()

    def symmetric_p(self):
        flipped = {(-e[0], e[1]): c for e, c in self.poly.terms.items()}
        return flipped == self.poly.terms

    def symmetric_u(self):
        flipped = {(e[0], -e[1]): c for e, c in self.poly.terms.items()}
        return flipped == self.poly.terms

    def at_u1(self):
        return self.poly.specialize({"u": 1})

    def __repr__(self):
        return f"GVPolynomial({self.poly!r})"


def gv_refined_extract(Z, q_order, tail_guard=5):
    """Per-degree Gopakumar-Vafa polynomials of a Betti-realized series in (q,p,u).

    Takes Log, multiplies by the inverse normalization (1-up)(1-u^{-1}p)/(-p)
    = -1/p + u + 1/u - p, and collects each q^d coefficient.  On windowed
    input each extracted slice must come with at least ``tail_guard`` known
    zero p-columns at the window edge, otherwise the window is declared
    unstable (widening it could still change the answer).
    """
    q_order = Fraction(q_order)
    inv_norm = (
        -Series.monomial(Z.frame, {"p": -1})
        + Series.monomial(Z.frame, {"u": 1})
        + Series.monomial(Z.frame, {"u": -1})
        - Series.monomial(Z.frame, {"p": 1})
    )
    G = plethystic_log(Z) * inv_norm
    out = {}
    d = 0
    while d < q_order:
        sl = G.coefficient({"q": d})
        if G.window is not None:
            ps = sl.p_support()
            if ps is not None and ps[1] > G.window.hi - 2 * tail_guard:
                raise UnstableWindow(
                    f"degree {d}: support reaches within {tail_guard} columns of the window edge"
                )
        out[d] = GVPolynomial(Series(FRAME_PU0, dict(sl.terms)))
        d += 1
    return out


def gv_fiber_closed(d):
    """Closed form of the degree-d fiber Gopakumar-Vafa polynomial.

    8(-1/p + 2 - p) for odd d; for even d the nine-term polynomial
    -u^2 p - u^2/p - 8u - 2p + 24 - 2/p - 8/u - p/u^2 - 1/(p u^2).
    """
    if d % 2:
        terms = {(-2, 0): rat(-8), (0, 0): rat(16), (2, 0): rat(-8)}
    else:
        terms = {
            (2, 4): rat(-1),
            (-2, 4): rat(-1),
            (0, 2): rat(-8),
            (2, 0): rat(-2),
            (0, 0): rat(24),
            (-2, 0): rat(-2),
            (0, -2): rat(-8),
            (2, -4): rat(-1),
            (-2, -4): rat(-1),
        }
    return GVPolynomial(Series(FRAME_PU0, terms))


def gv_to_ph_grid(gv):
    """Perverse-Hodge grid from a GV polynomial via the sign rule (-1)^{i+j}."""
    grid = {}
    for (ep, eu), c in gv.poly.terms.items():
        if ep % 2 or eu % 2:
            raise ValueError("grid extraction needs integer exponents")
        i, j = ep // 2, eu // 2
        grid[(i, j)] = rat((-1) ** (i + j)) * c
    return grid


def fiber_ph_grid(parity):
    """The two fiber-class perverse-Hodge grids ('odd' or 'even' degree)."""
    return gv_to_ph_grid(gv_fiber_closed(1 if parity == "odd" else 2))


def _gv_basis(g):
    """(-p)^{-g} (1-p)^{2g} as a Series in p alone."""
    terms = {}
    for j in range(2 * g + 1):
        terms[(2 * (j - g),)] = rat((-1) ** ((g + j) % 2) * comb(2 * g, j))
    return Series(FRAME_P0, terms)


def ng_from_gv(poly, basis="standard"):
    """Genus decomposition of a symmetric Laurent polynomial in p.

    ``standard`` expands in (-p)^{-g}(1-p)^{2g} (g >= 0); ``logz`` expands in
    (-p)^{1-g}(1-p)^{2g-2} (g >= 1), the shape taken by Log-of-partition-
    function coefficients.
    """
    if isinstance(poly, GVPolynomial):
        poly = poly.at_u1()
    if poly.frame != FRAME_P0:
        poly = poly.embed(FRAME_P0)
    flipped = {(-e[0],): c for e, c in poly.terms.items()}
    if flipped != poly.terms:
        raise NotInBasisSpan("input is not invariant under p -> 1/p")
    rem = dict(poly.terms)
    coeffs = {}
    gmax = max((abs(e[0]) // 2 for e in rem), default=0)
    for g in range(gmax, 0, -1):
        c = rem.get((-2 * g,), rat(0)) * rat((-1) ** (g % 2))
        if c:
            coeffs[g] = c
            for e, bc in _gv_basis(g).terms.items():
                v = rem.get(e, rat(0)) - c * bc
                if v:
                    rem[e] = v
                else:
                    rem.pop(e, None)
    if set(rem) - {(0,)}:
        raise NotInBasisSpan("nonconstant remainder after extracting every genus")
    c0 = rem.get((0,), rat(0))
    if basis == "standard":
        if c0:
            coeffs[0] = c0
        return coeffs
    if basis == "logz":
        shifted = {g + 1: c for g, c in coeffs.items()}
        if c0:
            shifted[1] = shifted.get(1, rat(0)) + c0
        return {g: c for g, c in shifted.items() if c}
    raise ValueError(f"unknown basis {basis!r}")


# -- the local Enriques surface ------------------------------------------------

def local_enriques_log_pt(q_order, frame=FRAME_QP):
    """2 prod_{m odd} (1-q^m/p)^{-2} (1-q^m)^{-4} (1-p q^m)^{-2} prod_m (1-q^m)^{-8}."""
    q_order = Fraction(q_order)
    factors = []
    m = 1
    while m < q_order:
        factors.append(({"q": m}, -8))
        if m % 2:
            factors.append(({"q": m, "p": -1}, -2))
            factors.append(({"q": m}, -4))
            factors.append(({"q": m, "p": 1}, -2))
        m += 1
    return product_expand(frame, factors, q_order) * 2


def local_enriques_gv(log_pt, beta_sq_half, divisible, substituted=False):
    """a(beta^2/2), minus a((beta/2)^2/2)/2 when beta is 2-divisible.

    The subtracted term is taken literally by default; ``substituted=True``
    applies p -> p^2 to it instead.  Half-integral indices contribute zero.
    """

    def a(x):
        x = Fraction(x)
        if x.denominator != 1 or x < 0:
            return Series.zero(FRAME_P0)
        return log_pt.coefficient({"q": x})

    total = a(beta_sq_half)
    if divisible:
        half = a(Fraction(beta_sq_half) / 4)
        if substituted:
            half = half.adams(2)
        total = total - half * rat(1, 2)
    return total


# -- smooth isolated curves ------------------------------------------------------

def smooth_curve_pt_series(g, order):
    """Stable-pair contribution of a smooth isolated genus-g curve, from scratch.

    Built out of the Betti numbers of the symmetric products C^(n), read off
    the generating function sum_n x^n b(C^(n); u) = (1+xu)^{2g}/((1-x)(1-xu^2)),
    signed and weight-shifted term by term.
    """
    order = int(order)
    frame = FRAME_PU
    q_order = Fraction(1 - g + order)
    sign = rat((-1) ** ((1 - g) % 2))
    terms = {}
    for n in range(order):
        bet = [0] * (2 * n + 1)
        for j in range(min(2 * g, n) + 1):
            cj = comb(2 * g, j)
            for b in range((n - j) + 1):
                bet[j + 2 * b] += cj  # a = n - j - b fills the (1-x)^{-1} slot
        for k, bk in enumerate(bet):
            if not bk:
                continue
            coeff = sign * rat((-1) ** (k % 2) * bk)
            e = frame.exps({"p": 1 - g + n, "u": k - n})
            terms[e] = terms.get(e, rat(0)) + coeff
    return Series(frame, {e: c for e, c in terms.items() if c}, q_order)


def smooth_curve_pt_closed(g, order):
    """(-p)^{1-g} (1-p)^{2g} / ((1-p/u)(1-up)), expanded in powers of p."""
    order = int(order)
    frame = FRAME_PU
    q_order = Fraction(1 - g + order)
    inner = product_expand(
        frame,
        [({"p": 1}, 2 * g), ({"p": 1, "u": -1}, -1), ({"p": 1, "u": 1}, -1)],
        Fraction(order) + 1,
    )
    mono = Series.monomial(frame, {"p": 1 - g}, rat((-1) ** ((1 - g) % 2)))
    return (inner * mono).with_q_order(q_order)


# -- serialization of DT / Omega tables ---------------------------------------------

def dt_table_to_json(table):
    """JSON array keyed by (r, d, n), each value a num/den pair of series dumps."""
    return [
        {"r": r, "d": d, "n": n, "num": v.num.to_json_dict(), "den": v.den.to_json_dict()}
        for (r, d, n), v in sorted(table.items())
    ]


def dt_table_from_json(records):
    return {
        (rec["r"], rec["d"], rec["n"]): DTValue(
            Series.from_json_dict(rec["num"]), Series.from_json_dict(rec["den"])
        )
        for rec in records
    }


# -- reference values -------------------------------------------------------------

def dt_reference_values():
    """Rank-0 primitives and the rank-2 value at (2, 2f, 0), with specializations."""
    dt22 = dt_fiber(2, 2)
    return {
        "dt_rank0_odd_n1": DTValue(elliptic_curve_chi_vir() * 8),
        "dt_rank0_even_n1": DTValue(enriques_cy3_chi_vir()),
        "dt_2_2f_0": dt22,
        "dt_2_2f_0_chi_t": dt22.specialize({"s": 1}),
    }
