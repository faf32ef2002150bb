from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from crepant.coeff import I, GaussianRational, RatFunc, T1, T2
from crepant.errors import (
    DimensionMismatch,
    NoRationalForm,
    NonzeroConstantTerm,
    PoleAtContinuationPoint,
    SingularSystem,
)
from crepant.series import (
    ExtendedDegree,
    SeriesRing,
    TransformSpec,
    TruncatedSeries,
    UniRatFunc,
    derive,
    evaluate_continuation,
    extended_potential,
    pade,
    pade_auto,
    series_arith,
    series_exp,
    solve_linear,
    substitute_linear,
    tan_coefficients,
    trig_series,
    xcot_coefficients,
)


def bernoulli(n):
    # B_0..B_n from sum_{k<m+1} C(m+1, k) B_k = 0
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(comb(m + 1, k) * B[k] for k in range(m)) / (m + 1))
    return B


def tan_oracle(n):
    B = bernoulli(n + 1)
    out = [Fraction(0)] * (n + 1)
    for m in range(1, (n + 1) // 2 + 1):
        k = 2 * m
        if k - 1 <= n:
            out[k - 1] = (-1) ** (m - 1) * 2 ** k * (2 ** k - 1) * B[k] / factorial(k)
    return out


def xcot_oracle(n):
    B = bernoulli(n)
    return [(-1) ** (j // 2) * 2 ** j * B[j] / factorial(j) if j % 2 == 0 else Fraction(0) for j in range(n + 1)]


def ring2(cap=4):
    return SeriesRing(("x", "y"), (cap, cap))


# -- ring and arithmetic -----------------------------------------------------


def test_unbounded_variable_rejected():
    with pytest.raises(ValueError):
        SeriesRing(("x", "y"), (3, None))


def test_truncation_and_product():
    R = ring2(3)
    x, y = TruncatedSeries.var(R, "x"), TruncatedSeries.var(R, "y")
    f = (1 + x) * (1 + y)
    assert f.coeff({"x": 1, "y": 1}) == 1
    assert ((x + y) ** 4).coeff({"x": 2, "y": 2}) == 6
    assert not (x ** 4)


def test_group_cap():
    R = SeriesRing(("x", "y"), (None, None), ((("x", "y"), 2),))
    x, y = TruncatedSeries.var(R, "x"), TruncatedSeries.var(R, "y")
    f = (1 + x + y) ** 3
    assert f.coeff({"x": 1, "y": 1}) == 6
    assert f.coeff({"x": 2, "y": 1}) == 0


def test_exp_of_variable():
    R = SeriesRing(("x",), (8,))
    e = series_exp(TruncatedSeries.var(R, "x"))
    assert [e.coeff((k,)) for k in range(9)] == [Fraction(1, factorial(k)) for k in range(9)]
    with pytest.raises(NonzeroConstantTerm):
        series_exp(TruncatedSeries.one(R))


def test_exp_is_homomorphism():
    R = ring2(4)
    a = TruncatedSeries.var(R, "x").scale(T1) + TruncatedSeries.var(R, "y") ** 2
    b = TruncatedSeries.var(R, "y").scale(Fraction(1, 3))
    assert series_exp(a + b) == series_exp(a) * series_exp(b)


def test_derive_and_caps():
    R = ring2(5)
    x = TruncatedSeries.var(R, "x")
    f = x ** 5
    d = derive(f, "x", 3)
    assert d.coeff({"x": 2}) == 60
    assert d.ring.cap_of("x") == 2


def test_series_arith_and_json():
    R = ring2(3)
    a = TruncatedSeries.var(R, "x").scale(RatFunc(T1, T2)) + 1
    b = TruncatedSeries.var(R, "y").scale(I)
    assert series_arith(a, b, "+") == a + b
    assert series_arith(a, b, "*") == a * b
    assert TruncatedSeries.from_json(a.to_json()) == a


def test_solve_linear():
    A = [[GaussianRational(1), GaussianRational(2)], [GaussianRational(3), GaussianRational(4)]]
    assert solve_linear(A, [GaussianRational(5), GaussianRational(6)]) == [-4, Fraction(9, 2)]
    with pytest.raises(SingularSystem) as info:
        solve_linear([[1, 2], [2, 4]], [1, 2])
    assert info.value.rank_defect == 1


# -- trigonometric series against Bernoulli numbers ---------------------------


def test_tan_against_bernoulli():
    assert tan_coefficients(21) == tan_oracle(21)


def test_xcot_against_bernoulli():
    assert xcot_coefficients(20) == xcot_oracle(20)


def test_half_tan_low_order():
    f = trig_series("half_tan", 7)
    assert [f.coeff((k,)) for k in range(8)] == [0, Fraction(1, 4), 0, Fraction(1, 48), 0, Fraction(1, 480), 0, Fraction(17, 80640)]


def test_cot_combination():
    f = trig_series("cot_combination", 5, k=2)
    assert [f.coeff((k,)) for k in range(6)] == [0, Fraction(-1, 2), 0, Fraction(-1, 24), 0, Fraction(-1, 240)]
    assert not trig_series("cot_combination", 9, k=1)


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_cot_combination_numeric(k):
    import mpmath

    f = trig_series("cot_combination", 30, k=k)
    u = mpmath.mpf("0.3")
    coeffs = [f.coeff((j,)).constant_value().re for j in range(31)]
    value = sum(mpmath.mpf(c.numerator) / c.denominator * u ** j for j, c in enumerate(coeffs))
    assert abs(value - (k * mpmath.cot(k * u / 2) - mpmath.cot(u / 2))) < 1e-12


# -- Padé -------------------------------------------------------------------------


def test_pade_geometric():
    f = pade([0, 1, 1, 1, 1, 1], 1, 1)
    assert str(f) == "q/(1 - q)"
    assert evaluate_continuation(f, -1) == Fraction(-1, 2)


def test_pade_negative_example():
    f = pade([-1, -2, -2, -2, -2, -2], 1, 1)
    assert f == UniRatFunc([-1, -1], [1, -1])


def test_pade_no_rational_form():
    with pytest.raises(NoRationalForm):
        pade([0, 1, 0, 1, 0, 1], 1, 1)


def test_pade_needs_guard():
    with pytest.raises(ValueError):
        pade([0, 1, 1], 1, 1)


def test_pole_at_continuation_point():
    f = pade([1, 1, 1, 1, 1], 0, 1)
    with pytest.raises(PoleAtContinuationPoint):
        evaluate_continuation(f, 1)


def test_pade_auto_ratfunc_coefficients():
    # (t1 + t2) * sum d q^d = (t1 + t2) q / (1 - q)^2
    coeffs = [RatFunc(T1 + T2) * d for d in range(10)]
    f = pade_auto(coeffs)
    assert f.degrees == (1, 2)
    assert evaluate_continuation(f, -1) == RatFunc(T1 + T2) * Fraction(-1, 4)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.integers(-4, 4), min_size=1, max_size=3),
    st.lists(st.integers(-3, 3), min_size=0, max_size=2),
)
def test_pade_recovers_rational_functions(num, den_tail):
    f = UniRatFunc(num, [1] + den_tail)
    coeffs = f.expand(14)
    g = pade_auto(coeffs)
    assert g == f


def test_unirat_compose_linear():
    f = UniRatFunc([0, 1], [1, -1], "w")
    g = f.compose_linear(-1, -1, "q")  # w = -q - 1
    assert evaluate_continuation(g, 0) == evaluate_continuation(f, -1)
    assert evaluate_continuation(g, -3) == evaluate_continuation(f, 2)


# -- changes of variables ---------------------------------------------------------


def test_transform_spec_validation():
    with pytest.raises(DimensionMismatch):
        TransformSpec(L=((1, 0), (0, 1)), roots=(), s=0, r=1)
    with pytest.raises(ValueError):
        TransformSpec(L=((1, 0), (0, 1)), roots=(2,), s=0, r=1)
    with pytest.raises(ValueError):
        TransformSpec(L=((1, 1), (1, 1)), roots=(-1,), s=0, r=1)
    spec = TransformSpec(L=((1, 0), (0, I)), roots=(-1,), s=0, r=1)
    assert spec.is_monomial()
    assert TransformSpec.from_json(spec.to_json()) == spec


def test_substitute_monomial():
    R = SeriesRing(("y0", "y1"), (4, 4))
    y1 = TruncatedSeries.var(R, "y1")
    F = y1 ** 3
    G = substitute_linear(F, TransformSpec(L=((1, 0), (0, I)), roots=(-1,), s=0, r=1))
    assert G.ring.var_names == ("x0", "x1")
    assert G.coeff({"x1": 3}) == -I


def test_substitute_general_matches_expansion():
    R = SeriesRing(("y0", "y1"), (3, 3))
    y0, y1 = TruncatedSeries.var(R, "y0"), TruncatedSeries.var(R, "y1")
    F = y0 * y1 ** 2 + y0 ** 3
    G = substitute_linear(F, TransformSpec(L=((1, 1), (0, 1))))
    for a in range(4):
        for b in range(4 - a):
            # (x0 + x1) x1^2 + (x0 + x1)^3
            want = (1 if (a, b) == (1, 2) else 0) + (1 if (a, b) == (0, 3) else 0)
            if a + b == 3:
                want += comb(3, a)
            assert G.coeff({"x0": a, "x1": b}) == want


def test_extended_potential_shift():
    R = SeriesRing(("x0", "x1"), (4, 4))
    x1 = TruncatedSeries.var(R, "x1")
    E = extended_potential(x1 ** 3, TransformSpec(L=((1, 0), (0, 1)), roots=(-1,), s=0, r=1))
    assert E.ring.var_names == ("x0", "x1", "u1")
    for b in range(4):
        assert E.coeff({"x1": 3 - b, "u1": b}) == comb(3, b)


def test_extended_degree():
    d = ExtendedDegree((1,), (3, 2))
    assert d.is_effective()
    assert d.divisor_factor() == 12
    assert not ExtendedDegree((-1,), ()).is_effective()
