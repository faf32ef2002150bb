"""Partitions of n and the transposition class in the centre of Q[S_n]."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import permutations
from math import factorial, prod

from .coeff import RatFunc, T1, T2
from .errors import SizeLimit

__all__ = [
    "Partition",
    "ClassVector",
    "partitions",
    "z_order",
    "class_size",
    "transposition_class_mult",
    "graded_class_mult",
    "group_algebra_oracle",
    "cycle_type",
]

ORACLE_LIMIT = 7


@dataclass(frozen=True, order=False)
class Partition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(sorted((int(p) for p in self.parts), reverse=True))
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {self.parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip()
        if not text or text == "0":
            return cls(())
        return cls(tuple(int(p) for p in text.replace(",", "+").split("+")))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def age(self) -> int:
        return self.n - self.length

    @cached_property
    def z(self) -> int:
        return z_order(self)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self):
        return "+".join(map(str, self.parts)) if self.parts else "0"

    def __repr__(self):
        return f"Partition({self.parts})"


def partitions(n: int) -> list:
    """All partitions of n in reverse lexicographic order: (n) first, (1^n) last."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = []

    def rec(remaining, largest, prefix):
        if remaining == 0:
            out.append(Partition(tuple(prefix)))
            return
        for p in range(min(remaining, largest), 0, -1):
            prefix.append(p)
            rec(remaining - p, p, prefix)
            prefix.pop()

    rec(n, n, [])
    return out


def z_order(mu: Partition) -> int:
    """Centralizer order |Aut(mu)| * prod(mu_i) of a permutation of cycle type mu."""
    counts = Counter(mu.parts)
    return prod(factorial(m) for m in counts.values()) * prod(mu.parts)


def class_size(mu: Partition) -> int:
    return factorial(mu.n) // z_order(mu)


class ClassVector:
    """Element of Z Q[S_n] in the basis of class sums K_nu, with RatFunc coefficients."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs=None):
        self.n = n
        clean = {}
        for nu, c in (coeffs or {}).items():
            if not isinstance(nu, Partition):
                nu = Partition(tuple(nu))
            if nu.n != n:
                raise ValueError(f"{nu} is not a partition of {n}")
            c = RatFunc.coerce(c)
            if c:
                clean[nu] = clean[nu] + c if nu in clean else c
        self.coeffs = {nu: c for nu, c in clean.items() if c}

    def __getitem__(self, nu) -> RatFunc:
        if not isinstance(nu, Partition):
            nu = Partition(tuple(nu))
        return self.coeffs.get(nu, RatFunc.const(0))

    def support(self) -> list:
        order = {p: k for k, p in enumerate(partitions(self.n))}
        return sorted(self.coeffs, key=order.__getitem__)

    def specialize(self, t1v, t2v) -> "ClassVector":
        return ClassVector(self.n, {nu: c.specialize(t1v, t2v) for nu, c in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, ClassVector):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self):
        inner = " + ".join(f"({self.coeffs[nu]})*K[{nu}]" for nu in self.support())
        return f"ClassVector(n={self.n}: {inner or '0'})"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": [{"partition": list(nu.parts), "coeff": self.coeffs[nu].to_json()} for nu in self.support()],
        }

    @classmethod
    def from_json(cls, data) -> "ClassVector":
        return cls(data["n"], {Partition(tuple(t["partition"])): RatFunc.from_json(t["coeff"]) for t in data["terms"]})


def _transposition_outcomes(mu: Partition) -> Counter:
    """Cycle types of tau*sigma over all transpositions tau, sigma fixed of type mu.

    A transposition inside an m-cycle splits it into (j, m-j): m choices per
    unordered split, m/2 when j = m/2.  One joining two cycles of lengths
    p and q gives a (p+q)-cycle, in p*q ways.
    """
    parts = list(mu.parts)
    out = Counter()
    for a, m in enumerate(parts):
        rest = parts[:a] + parts[a + 1:]
        for j in range(1, m // 2 + 1):
            ways = m // 2 if 2 * j == m else m
            out[Partition(tuple(rest + [j, m - j]))] += ways
    for a in range(len(parts)):
        for b in range(a + 1, len(parts)):
            rest = [p for k, p in enumerate(parts) if k not in (a, b)]
            out[Partition(tuple(rest + [parts[a] + parts[b]]))] += parts[a] * parts[b]
    return out


def _transposition_integers(n: int, mu: Partition) -> dict:
    if n < 2:
        raise ValueError("the transposition class needs n >= 2")
    if mu.n != n:
        raise ValueError(f"{mu} is not a partition of {n}")
    out = {}
    zmu = z_order(mu)
    for nu, count in _transposition_outcomes(mu).items():
        a = Fraction(count * z_order(nu), zmu)
        assert a.denominator == 1
        out[nu] = int(a)
    return out


def transposition_class_mult(n: int, mu: Partition) -> ClassVector:
    """K_(2,1^{n-2}) * K_mu expanded in class sums, by cycle join/split counting."""
    return ClassVector(n, _transposition_integers(n, mu))


def graded_class_mult(n: int, mu: Partition) -> ClassVector:
    """Age-graded product: splits pick up a factor t1*t2, joins do not."""
    t1t2 = RatFunc.coerce(T1 * T2)
    out = {}
    for nu, a in _transposition_integers(n, mu).items():
        e = (nu.length - mu.length + 1) // 2
        out[nu] = t1t2 ** e * a
    return ClassVector(n, out)


def cycle_type(perm: tuple) -> Partition:
    seen = [False] * len(perm)
    parts = []
    for s in range(len(perm)):
        if not seen[s]:
            k = 0
            j = s
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                k += 1
            parts.append(k)
    return Partition(tuple(parts))


def group_algebra_oracle(n: int, a: Partition, b: Partition) -> ClassVector:
    """K_a * K_b by enumerating S_n (n <= 7).

    The coefficient of K_nu counts sigma in C_a with sigma^{-1} pi in C_b for
    one fixed pi of type nu.
    """
    if n > ORACLE_LIMIT:
        raise SizeLimit(f"enumeration oracle is limited to n <= {ORACLE_LIMIT}")
    elements = list(permutations(range(n)))
    types = {p: cycle_type(p) for p in elements}
    class_a = [p for p in elements if types[p] == a]
    reps = {}
    for p in elements:
        reps.setdefault(types[p], p)
    out = {}
    for nu, pi in reps.items():
        count = 0
        for s in class_a:
            inv = [0] * n
            for k, v in enumerate(s):
                inv[v] = k
            # (sigma^{-1} pi)(k) = sigma^{-1}(pi(k))
            if types[tuple(inv[pi[k]] for k in range(n))] == b:
                count += 1
        if count:
            out[nu] = count
    return ClassVector(n, out)
