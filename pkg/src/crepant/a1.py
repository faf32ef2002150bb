"""The rational double point: Y = T*P^1 against X = [C^2 / +-1].

Builds both genus-zero potentials and checks that the third x1-derivatives
agree after ``y0 = x0, y1 = +-i x1`` and the continuation ``q -> -1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Optional

from .coeff import I, GaussianRational, Poly2, RatFunc, T1, T2
from .errors import ContinuationFailure, MismatchAt, NoRationalForm, PoleAtContinuationPoint, ZeroWeight
from .series import (
    SeriesRing,
    TransformSpec,
    TruncatedSeries,
    derive,
    evaluate_continuation,
    pade_auto,
    substitute_linear,
    trig_series,
)

__all__ = [
    "FixedPoint",
    "FixedPointData",
    "TSTAR_P1",
    "localization_triple_product",
    "PotentialPair",
    "potential_Y",
    "potential_X",
    "default_transform",
    "twisted_invariant",
    "verify_corollary",
]

T1_PLUS_T2 = RatFunc.coerce(T1 + T2)
UNSTABLE = [(0, 0), (0, 1), (0, 2)]


@dataclass(frozen=True)
class FixedPoint:
    weights: tuple
    restrictions: dict


@dataclass(frozen=True)
class FixedPointData:
    points: tuple
    classes: tuple = ("1", "gamma")
    degrees: dict = field(default_factory=lambda: {"1": 0, "gamma": 2})
    real_dim: int = 4


# gamma is c_1 of a line bundle with weights -t1, -t2 at the two fixed points
TSTAR_P1 = FixedPointData(
    points=(
        FixedPoint((2 * T1, T2 - T1), {"1": RatFunc.const(1), "gamma": RatFunc.coerce(-T1)}),
        FixedPoint((2 * T2, T1 - T2), {"1": RatFunc.const(1), "gamma": RatFunc.coerce(-T2)}),
    )
)


def localization_triple_product(classes, data: FixedPointData = TSTAR_P1) -> RatFunc:
    """Equivariant integral of a cup b cup c as a sum over isolated fixed points."""
    total = RatFunc.const(0)
    for p in data.points:
        euler = Poly2.const(1)
        for w in p.weights:
            if Poly2.coerce(w).is_zero():
                raise ZeroWeight(f"zero tangent weight at fixed point {p}")
            euler = euler * w
        contribution = RatFunc.const(1)
        for c in classes:
            if c not in p.restrictions:
                raise KeyError(f"unknown class {c!r}; known: {data.classes}")
            contribution = contribution * p.restrictions[c]
        total = total + contribution / euler
    return total


@dataclass(frozen=True)
class PotentialPair:
    FY: TruncatedSeries
    FX: TruncatedSeries
    excluded_unstable: tuple = tuple(UNSTABLE)


def default_q_order(order: int) -> int:
    # the x1^k coefficient continues through a [k+1/k+1] Padé form; keep guards
    return 2 * order + 4


def potential_Y(order: int, q_order: Optional[int] = None) -> TruncatedSeries:
    """F^Y in (y0, y1, q), y-degrees through ``order``.

    F^Y = y0^3/(12 t1 t2) - y0 y1^2/4 + (t1+t2) y1^3/12
          + (t1+t2) sum_{d>0} q^d e^{d y1} / d^3.
    """
    if order < 3:
        raise ValueError("order must be >= 3")
    q_order = default_q_order(order) if q_order is None else q_order
    ring = SeriesRing(("y0", "y1", "q"), (order, order, q_order))
    terms = {
        (3, 0, 0): RatFunc.const(Fraction(1, 12)) / (T1 * T2),
        (1, 2, 0): RatFunc.const(Fraction(-1, 4)),
        (0, 3, 0): T1_PLUS_T2 * Fraction(1, 12),
    }
    for d in range(1, q_order + 1):
        for k in range(order + 1):
            terms[(0, k, d)] = T1_PLUS_T2 * Fraction(d ** k, d ** 3 * factorial(k))
    return TruncatedSeries(ring, terms)


def potential_X(order: int) -> TruncatedSeries:
    """F^X in (x0, x1) through degree ``order`` in each variable.

    F^X = x0^3/(12 t1 t2) + x0 x1^2/4 - (t1+t2) x1^2 H(x1), where the third
    derivative of x1^2 H is (1/2)tan(x1/2); integration constants are 0.
    """
    if order < 3:
        raise ValueError("order must be >= 3")
    ring = SeriesRing(("x0", "x1"), (order, order))
    terms = {
        (3, 0): RatFunc.const(Fraction(1, 12)) / (T1 * T2),
        (1, 2): RatFunc.const(Fraction(1, 4)),
    }
    half_tan = trig_series("half_tan", order - 3)
    for j in range(order - 2):
        c = half_tan.coeff((j,))
        if c:
            terms[(0, j + 3)] = -T1_PLUS_T2 * c * Fraction(factorial(j), factorial(j + 3))
    return TruncatedSeries(ring, terms)


def twisted_invariant(k: int) -> RatFunc:
    """<D^k>: the k-point invariant with every insertion the twisted class, k! [x1^k] F^X."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k < 3:
        return RatFunc.const(0)
    return potential_X(k).coeff((0, k)) * factorial(k)


def potentials(order: int, q_order: Optional[int] = None) -> PotentialPair:
    return PotentialPair(potential_Y(order, q_order), potential_X(order))


def default_transform(branch: int = 1) -> TransformSpec:
    """y0 = x0, y1 = branch * i * x1, q = -1."""
    if branch not in (1, -1):
        raise ValueError("branch must be +1 or -1")
    return TransformSpec(L=((1, 0), (0, I * branch)), roots=(-1,), s=0, r=1)


def _continue(coeffs: list, point, where: str) -> tuple:
    try:
        f = pade_auto(coeffs, var="q")
        return f, evaluate_continuation(f, point)
    except (NoRationalForm, PoleAtContinuationPoint) as exc:
        raise ContinuationFailure(f"{where}: {exc}") from exc


def verify_corollary(order: int, transform: Optional[TransformSpec] = None,
                     q_order: Optional[int] = None, raise_on_failure: bool = True) -> dict:
    """Compare F^Y(x0, L x1, q -> root) with F^X beyond the unstable range.

    Every q-series is continued by a certified Padé form and evaluated at
    the transform's root.  Two blocks are compared: all monomials with a
    positive power of x0, and the x0-free part of the third x1-derivative.
    The x0-free monomials of x1-degree <= 2 are unstable and excluded.
    """
    if order < 5:
        raise ValueError("order must be >= 5")
    spec = transform or default_transform()
    if spec.dim != 2 or len(spec.roots) != 1:
        raise ValueError("the A1 comparison needs a 2x2 transform with one root")
    point = spec.roots[0]
    FY = potential_Y(order, q_order)
    FX = potential_X(order)
    G = substitute_linear(FY, spec)

    report = {
        "order": order,
        "q_order": FY.ring.cap_of("q"),
        "L": [[str(x) for x in row] for row in spec.L],
        "q_value": str(point),
        "excluded_unstable": [list(e) for e in UNSTABLE],
        "matched_degrees": [],
        "x0_block_matched": [],
        "lhs_coeffs": {},
        "rhs_coeffs": {},
        "continuations": {},
        "passed": False,
        "failure": None,
    }

    def fail(exc):
        report["failure"] = {"error": type(exc).__name__, "message": str(exc)}
        if raise_on_failure:
            raise exc
        return report

    # x0 block: monomials x0^a x1^b with a >= 1
    for a in range(1, order + 1):
        for b in range(order + 1):
            coeffs = G.univariate_coeffs("q", {"x0": a, "x1": b})
            if not any(coeffs) and not FX.coeff((a, b)):
                continue
            try:
                _, lhs = _continue(coeffs, point, f"x0^{a} x1^{b}")
            except ContinuationFailure as exc:
                return fail(exc)
            rhs = FX.coeff((a, b))
            if lhs != rhs:
                return fail(MismatchAt((a, b), lhs, rhs))
            report["x0_block_matched"].append([a, b])

    # third x1-derivative at x0 = 0
    DY = derive(G, "x1", 3)
    DX = derive(FX, "x1", 3)
    for k in range(DX.ring.cap_of("x1") + 1):
        coeffs = DY.univariate_coeffs("q", {"x1": k})
        try:
            f, lhs = _continue(coeffs, point, f"x1^{k}")
        except ContinuationFailure as exc:
            return fail(exc)
        rhs = DX.coeff((0, k))
        report["lhs_coeffs"][k] = str(lhs)
        report["rhs_coeffs"][k] = str(rhs)
        report["continuations"][k] = {"degrees": list(f.degrees)}
        if lhs != rhs:
            return fail(MismatchAt(k, lhs, rhs))
        report["matched_degrees"].append(k)
    report["passed"] = True
    return report
