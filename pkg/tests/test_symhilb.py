from fractions import Fraction

import mpmath
import pytest

from crepant.coeff import I, GaussianRational, RatFunc, T1, T2
from crepant.partitions import Partition, partitions, z_order
from crepant.series import UniRatFunc, evaluate_continuation
from crepant.symhilb import (
    bg_map,
    charpoly,
    check_pairing_transport,
    crc_report,
    diag_quantum_entry,
    has_distinct_eigenvalues,
    nakajima_pairing,
    orb_pairing,
    quantum_mult_matrix,
    resum_entry,
    resum_matrix,
)

P = Partition
S = T1 + T2


def closed_form(mu, u, t1, t2):
    """Diagonal entry from the cotangent formula, evaluated numerically."""
    total = 0
    for k in mu.parts:
        one = -(1j * k / 2) * (t1 + t2) * (k * mpmath.cot(k * u / 2) - mpmath.cot(u / 2))
        total += k * one
    return total / z_order(mu)


def test_pairings():
    mu = P((2, 1))
    assert orb_pairing(mu) == RatFunc.const(Fraction(1, 2)) / (T1 * T2) ** 2
    assert nakajima_pairing(mu) == -orb_pairing(mu)
    assert nakajima_pairing(P((1, 1, 1))) == orb_pairing(P((1, 1, 1)))


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_pairings_all_partitions(n):
    for mu in partitions(n):
        sign = (-1) ** (n - mu.length)
        expected = RatFunc.const(Fraction(1, z_order(mu))) / (T1 * T2) ** mu.length
        assert orb_pairing(mu) == expected
        assert nakajima_pairing(mu) == expected * sign


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_pairing_transport_ratio(n):
    out = check_pairing_transport(n)
    assert out["constant"]
    assert out["value"] == str(RatFunc.const((-1) ** n))
    assert len(bg_map(n)) == len(partitions(n))


def test_diag_entry_low_order():
    e = diag_quantum_entry(P((2,)), 5)
    # -i(t1+t2)(2cot(u) - cot(u/2)) = i(t1+t2)u/2 + O(u^3)
    assert e.coeff((1,)) == RatFunc(S) * I * Fraction(1, 2)
    assert e.coeff((0,)) == 0


@pytest.mark.parametrize("mu", [P((2,)), P((3,)), P((2, 1)), P((3, 1)), P((2, 2))])
def test_diag_entry_numeric(mu):
    order = 25
    e = diag_quantum_entry(mu, order)
    u = mpmath.mpf("0.2")
    val = 0
    for j in range(order + 1):
        c = e.coeff((j,)).specialize(1, 2)
        val += (mpmath.mpf(c.re.numerator) / c.re.denominator + 1j * mpmath.mpf(c.im.numerator) / c.im.denominator) * u ** j
    assert abs(val - closed_form(mu, u, 1, 2)) < 1e-12


def test_resum_two_cycle():
    f = resum_entry(diag_quantum_entry(P((2,)), 12))
    # (t1+t2)(q+1)/(q-1)
    assert f == UniRatFunc([-RatFunc(S), -RatFunc(S)], [1, -1])
    assert f.is_real()


@pytest.mark.parametrize("mu", [P((3,)), P((2, 1)), P((4,)), P((2, 2)), P((3, 2))])
def test_resum_matches_closed_form(mu):
    f = resum_entry(diag_quantum_entry(mu, 12))
    assert f.is_real()
    mpmath.mp.dps = 30
    u = mpmath.mpf("0.7")
    q = -mpmath.exp(1j * u)
    num = sum(complex(c.specialize(1, 2)) * q ** k for k, c in enumerate(f.num))
    den = sum(complex(c.specialize(1, 2)) * q ** k for k, c in enumerate(f.den))
    assert abs(num / den - closed_form(mu, u, 1, 2)) < 1e-9


def test_matrix_shape_and_classical_entries():
    M = quantum_mult_matrix(3, 6)
    assert [str(mu) for mu in M.basis] == ["3", "2+1", "1+1+1"]
    mu, nu = P((2, 1)), P((1, 1, 1))
    assert M.entry(nu, mu).constant_term() == RatFunc(T1 * T2) * 3


def test_charpoly_and_distinctness():
    A = [[GaussianRational(2), GaussianRational(1)], [GaussianRational(0), GaussianRational(3)]]
    assert charpoly(A) == [6, -5, 1]
    assert has_distinct_eigenvalues(A)
    B = [[GaussianRational(1), GaussianRational(0)], [GaussianRational(0), GaussianRational(1)]]
    assert not has_distinct_eigenvalues(B)
    J = [[GaussianRational(1), GaussianRational(1)], [GaussianRational(0), GaussianRational(1)]]
    assert not has_distinct_eigenvalues(J)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_report_passes(n):
    r = crc_report(n, 10, seed=3)
    assert r["passed"], r["checks"]
    assert len(r["checks"]["distinct_eigenvalues"]["draws"]) == 3


def test_report_is_deterministic():
    a = crc_report(3, 8, seed=11)
    b = crc_report(3, 8, seed=11)
    assert a == b


def test_report_detects_broken_matrix():
    M = quantum_mult_matrix(3, 8)
    from crepant.series import SeriesRing, TruncatedSeries

    ring = M.entries[0][0].ring
    M.entries[0][1] = M.entries[0][1] + TruncatedSeries.monomial(ring, {"u": 2}, 1)
    r = crc_report(3, 8, matrix=M)
    assert not r["passed"]
    assert not r["checks"]["divisibility"]["passed"]
    assert not r["checks"]["offdiagonal_classical"]["passed"]


def test_parallel_resummation_matches_serial(monkeypatch):
    M = quantum_mult_matrix(4, 8)
    serial = resum_matrix(M)
    monkeypatch.setenv("CREPANT_THREADS", "2")
    parallel = resum_matrix(M)
    assert serial.entries == parallel.entries
