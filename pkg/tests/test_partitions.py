from fractions import Fraction
from itertools import permutations
from math import factorial

import pytest

from crepant.coeff import RatFunc, T1, T2
from crepant.errors import SizeLimit
from crepant.partitions import (
    ClassVector,
    Partition,
    class_size,
    cycle_type,
    graded_class_mult,
    group_algebra_oracle,
    partitions,
    transposition_class_mult,
    z_order,
)

P = Partition


def test_partition_basics():
    mu = P.parse("1+3+2")
    assert mu.parts == (3, 2, 1)
    assert (mu.n, mu.length, mu.age) == (6, 3, 3)
    assert str(mu) == "3+2+1"
    with pytest.raises(ValueError):
        P((2, 0))


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 3), (4, 5), (5, 7), (6, 11), (10, 42)])
def test_partition_counts(n, count):
    ps = partitions(n)
    assert len(ps) == count == len(set(ps))
    assert ps[0] == P((n,))


def test_centralizer_orders():
    assert z_order(P((2, 2, 1))) == 8
    assert z_order(P((1, 1, 1))) == 6
    assert z_order(P((3,))) == 3
    for n in range(1, 8):
        assert sum(class_size(mu) for mu in partitions(n)) == factorial(n)


@pytest.mark.parametrize("n", [4, 5])
def test_class_sizes_by_enumeration(n):
    counts = {}
    for p in permutations(range(n)):
        mu = cycle_type(p)
        counts[mu] = counts.get(mu, 0) + 1
    assert counts == {mu: class_size(mu) for mu in partitions(n)}


def test_s3_products():
    assert transposition_class_mult(3, P((2, 1))) == ClassVector(3, {(3,): 3, (1, 1, 1): 3})
    assert transposition_class_mult(3, P((3,))) == ClassVector(3, {(2, 1): 2})


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_join_split_matches_enumeration(n):
    tau = P((2,) + (1,) * (n - 2))
    for mu in partitions(n):
        assert transposition_class_mult(n, mu) == group_algebra_oracle(n, tau, mu)


def test_oracle_general_product():
    # K_(3) K_(3) = 2 K_(1,1,1) + K_(3) in S_3
    assert group_algebra_oracle(3, P((3,)), P((3,))) == ClassVector(3, {(1, 1, 1): 2, (3,): 1})


def test_oracle_limit():
    with pytest.raises(SizeLimit):
        group_algebra_oracle(8, P((2,) + (1,) * 6), P((8,)))


def test_graded_mult_factors():
    v = graded_class_mult(3, P((2, 1)))
    assert v[P((1, 1, 1))] == RatFunc(T1 * T2) * 3
    assert v[P((3,))] == 3
    for n in range(2, 7):
        for mu in partitions(n):
            g = graded_class_mult(n, mu).specialize(1, 1)
            assert g == transposition_class_mult(n, mu).specialize(1, 1)


def test_class_vector_json():
    v = graded_class_mult(4, P((2, 1, 1)))
    assert ClassVector.from_json(v.to_json()) == v
