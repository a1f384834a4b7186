from fractions import Fraction

import pytest

from conftest import assert_agree, random_series
from enrq.ring import betti_symbol, rat
from enrq.series import (
    FRAME_PU,
    FRAME_Q,
    FRAME_QP,
    FRAME_QPU,
    FRAME_QPUTS,
    FRAME_QTS,
    FRAME_TS,
    FRAME_XY,
    BadConstantTerm,
    InexactDivision,
    NonConvergentFactor,
    NonUnitLeadingTerm,
    OffLattice,
    OutsideValidWindow,
    Series,
    TruncationLoss,
    Window,
    WindowUnderflow,
    divide_exact,
    exp_series,
    log_series,
    product_expand,
)


def geom(frame, q_order):
    """1/(1-q) via product_expand."""
    return product_expand(frame, [({"q": m}, -1) for m in (1,)], q_order)


def mono(frame, exps, c=1, **kw):
    return Series.monomial(frame, exps, c, **kw)


class TestAdd:
    def test_cancellation(self):
        one, q = mono(FRAME_Q, {}), mono(FRAME_Q, {"q": 1})
        assert (one + q) + (one - q) == Series.const(FRAME_Q, 2)

    def test_half_integer_merge(self):
        h = mono(FRAME_Q, {"q": Fraction(1, 2)})
        assert h + h == mono(FRAME_Q, {"q": Fraction(1, 2)}, 2)

    def test_identity(self):
        f = mono(FRAME_QP, {"q": 1, "p": -1}, 3)
        assert f + Series.zero(FRAME_QP) == f

    def test_trunc_is_min(self):
        f = Series.const(FRAME_Q, 1, q_order=3)
        g = Series.const(FRAME_Q, 1, q_order=5)
        assert (f + g).q_order == 3

    def test_frame_mismatch(self):
        with pytest.raises(ValueError):
            Series.one(FRAME_Q) + Series.one(FRAME_QP)


class TestMul:
    def test_geometric_inverse(self):
        one_minus_q = Series.one(FRAME_Q) - mono(FRAME_Q, {"q": 1})
        g = geom(FRAME_Q, 6)
        assert_agree(one_minus_q * g, Series.one(FRAME_Q, q_order=6))

    def test_laurent_square(self):
        f = mono(FRAME_QP, {"p": -1}) + mono(FRAME_QP, {"p": 1})
        sq = f * f
        assert sq == mono(FRAME_QP, {"p": -2}) + 2 + mono(FRAME_QP, {"p": 2})

    def test_windowed_times_windowed_without_floor_raises(self):
        w = Window(-2, 2, False)
        f = Series.monomial(FRAME_QP, {"p": 1}, q_order=3, window=w)
        with pytest.raises(WindowUnderflow):
            f * f

    def test_floored_windows_multiply(self):
        w = Window(0, 6, True)
        f = Series(FRAME_QP, {(24, 2): rat(1)}, 3, w)
        g = f * f
        assert g.window == Window(0, 6, True)
        assert g.terms == {(48, 4): rat(1)}

    def test_exact_times_windowed_window_shift(self):
        w = Window(0, 6, True)
        f = Series(FRAME_QP, {(0, 0): rat(1), (24, 2): rat(1)}, 4, w)
        k = mono(FRAME_QP, {"p": -1}) + mono(FRAME_QP, {"p": 1})
        assert (k * f).window == Window(-2, 4, True)

    def test_commutative_associative_random(self, rng):
        for _ in range(40):
            f = random_series(rng, FRAME_QP, 5)
            g = random_series(rng, FRAME_QP, 5)
            h = random_series(rng, FRAME_QP, 5)
            assert_agree(f * g, g * f, "commutativity")
            assert_agree((f * g) * h, f * (g * h), "associativity")


class TestInvert:
    def test_geometric(self):
        f = (Series.one(FRAME_Q) - mono(FRAME_Q, {"q": 1})).with_q_order(4)
        assert f.invert() == sum(
            (mono(FRAME_Q, {"q": k}) for k in range(1, 4)), Series.one(FRAME_Q)
        )

    def test_monomial(self):
        assert mono(FRAME_Q, {"q": Fraction(1, 2)}).invert() == mono(
            FRAME_Q, {"q": Fraction(-1, 2)}
        )

    def test_two_term_slice_rejected(self):
        f = mono(FRAME_QPU, {"u": 1}) - mono(FRAME_QPU, {"u": -1})
        with pytest.raises(NonUnitLeadingTerm):
            f.invert()

    def test_symbolic_lead_rejected(self):
        f = Series.const(FRAME_QPU, 1 + betti_symbol(1, 2), q_order=2)
        with pytest.raises(NonUnitLeadingTerm):
            f.invert()

    def test_roundtrip_random_unit_leading(self, rng):
        for _ in range(1000):
            f = random_series(rng, FRAME_QP, 4, max_terms=4, min_weight=1)
            f = f + rng.choice((1, 2, -1))
            inv = f.invert()
            assert_agree(f * inv, Series.one(FRAME_QP, q_order=inv.q_order))


class TestDivideExact:
    def test_u_binomial(self):
        num = mono(FRAME_QPU, {"u": 2}) - mono(FRAME_QPU, {"u": -2})
        den = mono(FRAME_QPU, {"u": 1}) - mono(FRAME_QPU, {"u": -1})
        assert divide_exact(num, den) == mono(FRAME_QPU, {"u": 1}) + mono(FRAME_QPU, {"u": -1})

    def test_inexact(self):
        num = Series.one(FRAME_QPU) + mono(FRAME_QPU, {"q": 1})
        den = mono(FRAME_QPU, {"u": 1}) - mono(FRAME_QPU, {"u": -1})
        with pytest.raises(InexactDivision):
            divide_exact(num, den)

    def test_exact_nonterminating_detected(self):
        num = Series.one(FRAME_Q)
        den = Series.one(FRAME_Q) - mono(FRAME_Q, {"q": 1})
        with pytest.raises(InexactDivision):
            divide_exact(num, den)

    def test_symbolic_numerator(self):
        b = betti_symbol(1, 2)
        den = mono(FRAME_QPU, {"u": 1}) - mono(FRAME_QPU, {"u": -1})
        num = den * Series.const(FRAME_QPU, b)
        assert divide_exact(num, den) == Series.const(FRAME_QPU, b)

    def test_division_then_multiplication_roundtrip(self, rng):
        den = mono(FRAME_QP, {"p": -1}) + 2 + mono(FRAME_QP, {"p": 1})
        for _ in range(25):
            g = random_series(rng, FRAME_QP, 4)
            assert_agree(divide_exact(g * den, den), g)


class TestAdams:
    def test_examples(self):
        f = mono(FRAME_QTS, {"q": 1}) + mono(FRAME_QTS, {"t": 1})
        assert f.adams(2) == mono(FRAME_QTS, {"q": 2}) + mono(FRAME_QTS, {"t": 2})
        assert f.adams(1) is f
        assert mono(FRAME_Q, {"q": Fraction(1, 2)}).adams(3) == mono(
            FRAME_Q, {"q": Fraction(3, 2)}
        )

    def test_composition(self, rng):
        for _ in range(20):
            f = random_series(rng, FRAME_QTS, 3)
            assert f.adams(2).adams(3) == f.adams(6)

    def test_cutoff_scaling(self):
        f = Series.const(FRAME_Q, 1, q_order=3)
        assert f.adams(4).q_order == 12


class TestSpecialize:
    def test_ts_to_u(self):
        frame = FRAME_QPUTS
        f = mono(frame, {"t": Fraction(1, 2), "s": Fraction(1, 2)})
        out = f.specialize({"t": {"u": 1}, "s": {"u": 1}})
        assert out == Series.monomial(out.frame, {"u": 1})

    def test_euler_point(self):
        f = mono(FRAME_QTS, {"t": 1, "s": -2}, 5)
        assert f.specialize({"t": 1, "s": 1}).coeff({}) == 5

    def test_commutes_with_add_mul(self, rng):
        sub = {"t": {"u": 1}, "s": {"u": 1}}
        for _ in range(25):
            f = random_series(rng, FRAME_QPUTS, 3, max_terms=4)
            g = random_series(rng, FRAME_QPUTS, 3, max_terms=4)
            assert_agree((f + g).specialize(sub), f.specialize(sub) + g.specialize(sub))
            assert_agree((f * g).specialize(sub), f.specialize(sub) * g.specialize(sub))

    def test_weighted_variable_rejected(self):
        f = mono(FRAME_QP, {"q": 1})
        with pytest.raises(TruncationLoss):
            f.specialize({"q": 1})

    def test_windowed_p_substitution_rejected(self):
        f = Series(FRAME_QPU, {(0, 2, 0): rat(1)}, 3, Window(0, 4, True))
        with pytest.raises(TruncationLoss):
            f.specialize({"p": 1})
        with pytest.raises(TruncationLoss):
            f.specialize({"u": {"p": 1}})


class TestCoefficient:
    def test_basic(self):
        f = 1 + 2 * mono(FRAME_Q, {"q": 1}) + 3 * mono(FRAME_Q, {"q": 2})
        f = f.with_q_order(3)
        assert f.coefficient({"q": 1}).coeff({}) == 2

    def test_outside_order(self):
        f = Series.const(FRAME_Q, 1, q_order=3)
        with pytest.raises(OutsideValidWindow):
            f.coefficient({"q": 3})

    def test_outside_window(self):
        f = Series(FRAME_QP, {(0, 0): rat(1)}, 3, Window(-2, 2, False))
        with pytest.raises(OutsideValidWindow):
            f.coefficient({"p": 2})
        with pytest.raises(OutsideValidWindow):
            f.coeff({"q": 0, "p": -3})

    def test_floored_window_lookup_below_floor(self):
        f = Series(FRAME_QP, {(0, 2): rat(1)}, 3, Window(1, 4, True))
        assert f.coeff({"q": 0, "p": -5}) == 0


class TestExpLog:
    def test_exp_coefficients(self):
        e = exp_series(mono(FRAME_Q, {"q": 1}, q_order=4))
        assert [e.coeff({"q": n}) for n in range(4)] == [1, 1, rat(1, 2), rat(1, 6)]

    def test_round_trip(self, rng):
        for _ in range(30):
            f = random_series(rng, FRAME_QP, 4, min_weight=1)
            assert_agree(log_series(exp_series(f)), f)

    def test_bad_constant(self):
        with pytest.raises(BadConstantTerm):
            exp_series(Series.const(FRAME_Q, 1, q_order=3) + mono(FRAME_Q, {"q": 1}))
        with pytest.raises(BadConstantTerm):
            log_series(mono(FRAME_Q, {"q": 1}, q_order=3))

    def test_exp_homomorphism(self, rng):
        for _ in range(20):
            f = random_series(rng, FRAME_QP, 4, min_weight=1)
            g = random_series(rng, FRAME_QP, 4, min_weight=1)
            assert_agree(exp_series(f + g), exp_series(f) * exp_series(g))


class TestProductExpand:
    def test_partition_numbers(self):
        P = product_expand(FRAME_Q, [({"q": m}, -1) for m in range(1, 6)], 6)
        assert [P.coeff({"q": n}) for n in range(6)] == [1, 1, 2, 3, 5, 7]

    def test_single_factor(self):
        f = product_expand(FRAME_QPU, [({"q": 1, "p": 1, "u": 1}, -1)], 3)
        assert f == 1 + mono(FRAME_QPU, {"q": 1, "p": 1, "u": 1}) + mono(
            FRAME_QPU, {"q": 2, "p": 2, "u": 2}
        )

    def test_eight_colors(self):
        P = product_expand(FRAME_Q, [({"q": m}, -8) for m in range(1, 3)], 3)
        assert P.coeff({"q": 2}) == 44

    def test_nonconvergent(self):
        with pytest.raises(NonConvergentFactor):
            product_expand(FRAME_QPU, [({"u": 1}, -1)], 3)


class TestWeightedFrames:
    def test_total_degree_truncation(self):
        f = product_expand(FRAME_XY, [({"x": 1, "y": 1}, -1)], 5)
        assert f.coeff({"x": 2, "y": 2}) == 1
        with pytest.raises(OutsideValidWindow):
            f.coeff({"x": 3, "y": 3})

    def test_p_weighted_frame(self):
        f = product_expand(FRAME_PU, [({"p": 1, "u": 1}, -1)], 3)
        assert f.coeff({"p": 2, "u": 2}) == 1


class TestSerialization:
    def test_round_trip(self, rng):
        f = random_series(rng, FRAME_QPU, 4)
        g = Series.loads(f.dumps())
        assert g == f and g.q_order == f.q_order

    def test_windowed_and_symbolic(self):
        b = betti_symbol(2, 4)
        f = Series(FRAME_QPU, {(24, 2, -2): 2 + b}, 3, Window(-4, 4, False))
        g = Series.loads(f.dumps())
        assert g == f and g.window == f.window

    def test_deterministic(self, rng):
        f = random_series(rng, FRAME_QPUTS, 3)
        assert f.dumps() == Series.loads(f.dumps()).dumps()


class TestLattice:
    def test_off_lattice_rejected(self):
        with pytest.raises(OffLattice):
            Series.monomial(FRAME_QPU, {"u": Fraction(1, 4)})

    def test_embed(self):
        f = mono(FRAME_TS, {"t": Fraction(1, 2), "s": Fraction(1, 2)})
        g = f.embed(FRAME_QPUTS)
        assert g.coeff({"t": Fraction(1, 2), "s": Fraction(1, 2)}) == 1

    def test_embed_rejects_weight_change_on_truncated(self):
        f = Series.const(FRAME_PU, 1, q_order=3)
        with pytest.raises(TruncationLoss):
            f.embed(FRAME_QPU.subframe(["p", "u"]))


def test_symbol_degree_guard_propagates():
    from enrq.ring import SymbolDegreeOverflow

    b1 = Series.const(FRAME_QPU, betti_symbol(1, 2), q_order=2)
    b2 = Series.const(FRAME_QPU, betti_symbol(1, 3), q_order=2)
    with pytest.raises(SymbolDegreeOverflow):
        b1 * b2
