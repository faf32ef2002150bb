"""Quantum multiplication by the transposition class on Sym^n(C^2).

The matrix ``c[nu][mu]`` of ``[I_(2)] * [I_mu] = sum_nu c^nu_mu [I_nu]`` is
assembled from the age-graded class algebra (degree 0) and the cotangent
closed form on the diagonal.  The resummation to rational functions of
``q = -e^{iu}`` goes through ``w = e^{iu} - 1``: the u-series is composed
with ``u = -i log(1 + w)``, certified by Padé in ``w``, then ``w = -q - 1``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ._parallel import pmap
from .coeff import I, ONE, T1, T2, ZERO, GaussianRational, RatFunc, _u_gcd, _u_trim
from .errors import CrepantError, NoRationalForm, PoleAtSpecialization
from .partitions import (
    Partition,
    graded_class_mult,
    group_algebra_oracle,
    partitions,
    transposition_class_mult,
    z_order,
)
from .series import SeriesRing, TruncatedSeries, UniRatFunc, pade_auto, trig_series

__all__ = [
    "orb_pairing",
    "nakajima_pairing",
    "bg_map",
    "check_pairing_transport",
    "diag_quantum_entry",
    "QuantumMatrix",
    "quantum_mult_matrix",
    "resum_entry",
    "resum_matrix",
    "charpoly",
    "has_distinct_eigenvalues",
    "crc_report",
]

T1T2 = RatFunc.coerce(T1 * T2)
T1_PLUS_T2 = RatFunc.coerce(T1 + T2)


def orb_pairing(mu: Partition) -> RatFunc:
    """([I_mu], [I_mu]) = 1 / (z(mu) (t1 t2)^l(mu)); the pairing is diagonal."""
    return RatFunc.const(Fraction(1, z_order(mu))) / T1T2 ** mu.length


def nakajima_pairing(mu: Partition) -> RatFunc:
    sign = -1 if (mu.n - mu.length) % 2 else 1
    return RatFunc.const(Fraction(sign, z_order(mu))) / T1T2 ** mu.length


def bg_map(n: int) -> list:
    """Diagonal matrix of L([I_mu]) = i^l(mu) N_mu in canonical partition order."""
    basis = partitions(n)
    return [[I ** mu.length if r == c else GaussianRational(0) for c in range(len(basis))]
            for r, mu in enumerate(basis)]


def check_pairing_transport(n: int) -> dict:
    """Ratio (L[I_mu], L[I_mu]) / ([I_mu], [I_mu]) for each mu, pairing taken bilinearly.

    Records the data only; see the package README for why no value is asserted.
    """
    ratios = {}
    for mu, row in zip(partitions(n), bg_map(n)):
        scale = row[partitions(n).index(mu)]
        ratio = scale * scale * nakajima_pairing(mu) / orb_pairing(mu)
        ratios[str(mu)] = ratio
    values = set(ratios.values())
    return {
        "n": n,
        "ratios": {k: str(v) for k, v in ratios.items()},
        "constant": len(values) == 1,
        "value": str(next(iter(values))) if len(values) == 1 else None,
        "preserved": values == {RatFunc.const(1)},
    }


def _single_cycle_entry(k: int, order: int) -> TruncatedSeries:
    cot = trig_series("cot_combination", order, k=k, var="u")
    return cot.scale(T1_PLUS_T2 * (I * Fraction(-k, 2)))


def diag_quantum_entry(mu: Partition, order: int) -> TruncatedSeries:
    """c^mu_mu(u) through u^order.

    One cycle of length k: -(i k / 2)(t1+t2)(k cot(k u/2) - cot(u/2)).
    Several cycles: (1/z(mu)) * sum_i mu_i c^{(mu_i)}_{(mu_i)}.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    ring = SeriesRing(("u",), (order,))
    total = TruncatedSeries.zero(ring)
    cache = {}
    for part in mu.parts:
        if part not in cache:
            cache[part] = _single_cycle_entry(part, order)
        total = total + cache[part].scale(part)
    return total.scale(Fraction(1, z_order(mu)))


@dataclass
class QuantumMatrix:
    """``entries[r][c]`` is c^nu_mu with nu = basis[r] (row) and mu = basis[c] (column)."""

    n: int
    basis: list
    entries: list
    kind: str = "u"

    def entry(self, nu, mu):
        return self.entries[self.basis.index(nu)][self.basis.index(mu)]

    def column(self, mu) -> dict:
        c = self.basis.index(mu)
        return {nu: self.entries[r][c] for r, nu in enumerate(self.basis)}

    def __len__(self):
        return len(self.basis)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "basis": [list(mu.parts) for mu in self.basis],
            "kind": self.kind,
            "entries": [[e.to_json() for e in row] for row in self.entries],
        }


def quantum_mult_matrix(n: int, order: int) -> QuantumMatrix:
    """Matrix of quantum multiplication by [I_(2)], entries in Q(i)(t1,t2)[[u]] through u^order."""
    if n < 2:
        raise ValueError("n must be >= 2")
    basis = partitions(n)
    ring = SeriesRing(("u",), (order,))
    index = {mu: k for k, mu in enumerate(basis)}
    entries = [[TruncatedSeries.zero(ring) for _ in basis] for _ in basis]
    for c, mu in enumerate(basis):
        for nu, coeff in graded_class_mult(n, mu).coeffs.items():
            entries[index[nu]][c] = TruncatedSeries.const(ring, coeff)
        entries[c][c] = entries[c][c] + diag_quantum_entry(mu, order)
    return QuantumMatrix(n, basis, entries, "u")


def _log_series_powers(order: int) -> list:
    """Coefficient lists of (-i log(1+w))^d for d = 0..order, through w^order."""
    u = [GaussianRational(0)] + [I * Fraction((-1) ** k, k) for k in range(1, order + 1)]
    powers = [[GaussianRational(1)] + [GaussianRational(0)] * order]
    for _ in range(order):
        prev = powers[-1]
        nxt = [GaussianRational(0)] * (order + 1)
        for a, x in enumerate(prev):
            if x:
                for b in range(1, order + 1 - a):
                    if u[b]:
                        nxt[a + b] = nxt[a + b] + x * u[b]
        powers.append(nxt)
    return powers


def resum_entry(series: TruncatedSeries) -> UniRatFunc:
    """Rational function of q matching a u-series under q = -e^{iu}.

    Raises :class:`NoRationalForm` if no certified Padé form exists at the
    available order.
    """
    order = series.ring.cap_of("u")
    coeffs = series.univariate_coeffs("u")
    powers = _log_series_powers(order)
    w_coeffs = []
    for k in range(order + 1):
        total = ZERO
        for d, c in enumerate(coeffs):
            if c and powers[d][k]:
                total = total + c * powers[d][k]
        w_coeffs.append(total)
    in_w = pade_auto(w_coeffs, var="w")
    return in_w.compose_linear(-1, -1, var="q")


def resum_matrix(M: QuantumMatrix) -> QuantumMatrix:
    flat = [e for row in M.entries for e in row]
    resummed = pmap(resum_entry, flat)
    size = len(M.basis)
    rows = [resummed[r * size:(r + 1) * size] for r in range(size)]
    return QuantumMatrix(M.n, M.basis, rows, "q")


# ---------------------------------------------------------------------------
# eigenvalue distinctness at exact specializations


def charpoly(matrix: list) -> list:
    """Characteristic polynomial det(x - A), coefficients lowest degree first (Faddeev-LeVerrier)."""
    n = len(matrix)
    zero = GaussianRational(0)
    ident = [[GaussianRational(1) if r == c else zero for c in range(n)] for r in range(n)]
    coeffs = [zero] * (n + 1)
    coeffs[n] = GaussianRational(1)
    m = [[zero] * n for _ in range(n)]
    for k in range(1, n + 1):
        am = [[sum((matrix[r][j] * m[j][c] for j in range(n)), zero) for c in range(n)] for r in range(n)]
        m = [[am[r][c] + coeffs[n - k + 1] * ident[r][c] for c in range(n)] for r in range(n)]
        am = [[sum((matrix[r][j] * m[j][c] for j in range(n)), zero) for c in range(n)] for r in range(n)]
        coeffs[n - k] = -sum((am[r][r] for r in range(n)), zero) / k
    return coeffs


def has_distinct_eigenvalues(matrix: list) -> bool:
    """True iff the characteristic polynomial is squarefree (exact gcd with its derivative)."""
    p = _u_trim(list(charpoly(matrix)))
    dp = _u_trim([c * k for k, c in enumerate(p)][1:])
    return len(_u_gcd(p, dp)) == 1


def _random_rational(rng: random.Random) -> Fraction:
    while True:
        v = Fraction(rng.randint(-60, 60), rng.randint(1, 25))
        if v:
            return v


def specialize_matrix(M: QuantumMatrix, t1v, t2v, qv) -> list:
    out = []
    for row in M.entries:
        out.append([e.evaluate(qv).specialize(t1v, t2v) for e in row])
    return out


# ---------------------------------------------------------------------------


def _coeff_list(s: TruncatedSeries) -> list:
    return s.univariate_coeffs("u")


def crc_report(n: int, order: int, seed: int = 0, draws: int = 3,
               matrix: Optional[QuantumMatrix] = None) -> dict:
    """Run the Sym^n verification suite and return a JSON-ready report.

    Checks: (t1+t2)-divisibility of positive u-degrees, Frobenius symmetry,
    classical-only off-diagonal entries, the classical part against S_n
    enumeration (n <= 7), resummation with i-free coefficients, distinct
    eigenvalues at seeded exact specializations, and pairing transport.
    """
    M = matrix or quantum_mult_matrix(n, order)
    basis = M.basis
    size = len(basis)
    checks = {}

    # (a) divisibility by t1 + t2
    witness = None
    for r in range(size):
        for c in range(size):
            for d, coeff in enumerate(_coeff_list(M.entries[r][c])):
                if d == 0 or not coeff:
                    continue
                antidiag = coeff.substitute(T1, -T1)
                if (antidiag or coeff.specialize(1, -1)) and witness is None:
                    witness = {"row": str(basis[r]), "col": str(basis[c]), "degree": d, "coeff": str(coeff)}
    checks["divisibility"] = {"passed": witness is None, "witness": witness}

    # (b) symmetry of c^nu_mu / (z(nu) (t1 t2)^l(nu))
    witness = None
    normalized = [[M.entries[r][c].scale(orb_pairing(basis[r])) for c in range(size)] for r in range(size)]
    for r in range(size):
        for c in range(r + 1, size):
            if normalized[r][c] != normalized[c][r] and witness is None:
                witness = {"row": str(basis[r]), "col": str(basis[c])}
    checks["frobenius_symmetry"] = {"passed": witness is None, "witness": witness}

    # (c) off-diagonal entries are classical
    witness = None
    for r in range(size):
        for c in range(size):
            if r != c and witness is None and any(
                    coeff for d, coeff in enumerate(_coeff_list(M.entries[r][c])) if d > 0):
                witness = {"row": str(basis[r]), "col": str(basis[c])}
    checks["offdiagonal_classical"] = {"passed": witness is None, "witness": witness}

    # (d) classical part at t1 = t2 = 1 against S_n enumeration
    if n <= 7:
        transposition = Partition((2,) + (1,) * (n - 2))
        witness = None
        for c, mu in enumerate(basis):
            oracle = group_algebra_oracle(n, transposition, mu)
            for r, nu in enumerate(basis):
                got = M.entries[r][c].constant_term().specialize(1, 1)
                if got != oracle[nu].specialize(1, 1) and witness is None:
                    witness = {"row": str(nu), "col": str(mu), "got": str(got), "oracle": str(oracle[nu])}
        checks["classical_vs_oracle"] = {"passed": witness is None, "witness": witness}
    else:
        checks["classical_vs_oracle"] = {"passed": None, "skipped": "n > 7"}

    # resummation and reality
    resummed = None
    try:
        resummed = resum_matrix(M)
        unreal = [
            {"row": str(basis[r]), "col": str(basis[c])}
            for r in range(size) for c in range(size)
            if not resummed.entries[r][c].is_real()
        ]
        checks["resummation"] = {
            "passed": not unreal,
            "real": not unreal,
            "witness": unreal[0] if unreal else None,
            "diagonal": {str(mu): str(resummed.entries[k][k]) for k, mu in enumerate(basis)},
        }
    except CrepantError as exc:
        checks["resummation"] = {"passed": False, "error": type(exc).__name__, "message": str(exc)}

    # distinct eigenvalues
    if resummed is not None:
        rng = random.Random(seed)
        results = []
        while len(results) < draws:
            t1v, t2v, qv = (_random_rational(rng) for _ in range(3))
            try:
                A = specialize_matrix(resummed, t1v, t2v, qv)
            except (PoleAtSpecialization, CrepantError):
                continue
            results.append({"t1": str(t1v), "t2": str(t2v), "q": str(qv), "distinct": has_distinct_eigenvalues(A)})
        checks["distinct_eigenvalues"] = {"passed": all(d["distinct"] for d in results), "draws": results}
    else:
        checks["distinct_eigenvalues"] = {"passed": False, "error": "resummation failed"}

    transport = check_pairing_transport(n)
    expected = RatFunc.const((-1) ** n)
    checks["pairing_transport"] = dict(transport, passed=transport["constant"] and transport["value"] == str(expected))

    # classical matrix conjugated by the diagonal map, recorded for external comparison
    scales = [I ** mu.length for mu in basis]
    transported = [
        [str(M.entries[r][c].constant_term() * (scales[r] / scales[c])) for c in range(size)]
        for r in range(size)
    ]

    passed = all(v.get("passed") is not False for v in checks.values())
    return {
        "n": n,
        "order": order,
        "seed": seed,
        "basis": [list(mu.parts) for mu in basis],
        "passed": passed,
        "checks": checks,
        "classical_transported": transported,
        "entries_u": [[e.to_json() for e in row] for row in M.entries],
        "entries_q": [[e.to_json() for e in row] for row in resummed.entries] if resummed else None,
    }
