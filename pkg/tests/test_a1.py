from fractions import Fraction
from math import factorial

import pytest

from crepant.a1 import (
    TSTAR_P1,
    FixedPoint,
    FixedPointData,
    default_transform,
    localization_triple_product,
    potential_X,
    potential_Y,
    twisted_invariant,
    verify_corollary,
)
from crepant.coeff import I, RatFunc, T1, T2
from crepant.errors import ContinuationFailure, MismatchAt, ZeroWeight
from crepant.series import TransformSpec, derive

S = RatFunc(T1 + T2)


def test_localization_values():
    assert localization_triple_product(["1", "1", "1"]) == RatFunc.const(1) / (T1 * T2 * 2)
    assert localization_triple_product(["gamma", "1", "1"]) == 0
    assert localization_triple_product(["gamma", "gamma", "1"]) == Fraction(-1, 2)
    assert localization_triple_product(["gamma", "gamma", "gamma"]) == S * Fraction(1, 2)


def test_localization_symmetric_and_homogeneous():
    classes = TSTAR_P1.classes
    for a in classes:
        for b in classes:
            for c in classes:
                v = localization_triple_product([a, b, c])
                assert v == localization_triple_product([c, a, b])
                # degree = sum of class degrees - real dimension of Y
                deg = sum(TSTAR_P1.degrees[x] for x in (a, b, c)) - TSTAR_P1.real_dim
                if v:
                    assert v.num.total_degree() - v.den.total_degree() == deg // 2


def test_localization_errors():
    bad = FixedPointData((FixedPoint((T1, T1 - T1), {"1": RatFunc.const(1)}),))
    with pytest.raises(ZeroWeight):
        localization_triple_product(["1", "1", "1"], bad)
    with pytest.raises(KeyError):
        localization_triple_product(["delta", "1", "1"])


def test_potential_Y_terms():
    F = potential_Y(5, q_order=3)
    assert F.coeff({"y0": 3}) == RatFunc.const(Fraction(1, 12)) / (T1 * T2)
    assert F.coeff({"y0": 1, "y1": 2}) == Fraction(-1, 4)
    assert F.coeff({"y1": 3}) == S * Fraction(1, 12)
    # (t1+t2) q^d e^{d y1}/d^3
    assert F.coeff({"y1": 2, "q": 2}) == S * Fraction(4, 8 * 2)


def test_potential_X_terms():
    F = potential_X(7)
    assert F.coeff({"x1": 4}) == -S * Fraction(1, 4 * 24)
    D = derive(F, "x1", 3)
    assert D.coeff({"x1": 1}) == -S * Fraction(1, 4)


@pytest.mark.parametrize("k, expected", [(3, 0), (4, Fraction(-1, 4)), (5, 0), (6, Fraction(-1, 8)), (8, Fraction(-1, 4))])
def test_twisted_invariants(k, expected):
    assert twisted_invariant(k) == S * expected


def test_order_validation():
    with pytest.raises(ValueError):
        potential_Y(2)
    with pytest.raises(ValueError):
        verify_corollary(4)
    with pytest.raises(ValueError):
        default_transform(2)


@pytest.mark.parametrize("branch", [1, -1])
def test_comparison_small_order(branch):
    r = verify_corollary(9, default_transform(branch))
    assert r["passed"]
    assert r["matched_degrees"] == list(range(7))
    assert r["x0_block_matched"]


def test_wrong_transform_fails():
    spec = TransformSpec(L=((1, 0), (0, 1)), roots=(-1,), s=0, r=1)
    with pytest.raises(MismatchAt):
        verify_corollary(7, spec)
    r = verify_corollary(7, spec, raise_on_failure=False)
    assert not r["passed"] and r["failure"]["error"] == "MismatchAt"


def test_wrong_root_fails():
    spec = TransformSpec(L=((1, 0), (0, I)), roots=(1,), s=0, r=1)
    r = verify_corollary(7, spec, raise_on_failure=False)
    assert not r["passed"]
    assert r["failure"]["error"] == "ContinuationFailure"
    with pytest.raises(ContinuationFailure):
        verify_corollary(7, spec)
