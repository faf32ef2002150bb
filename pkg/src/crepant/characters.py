"""Finite groups, character tables and the polyhedral change of variables.

Character tables come from the Burnside/Dixon method: the class
multiplication matrices commute, and their joint eigenvectors are the
central characters.  A numeric pass (mpmath, default 64 digits) is lifted
to exact cyclotomic values through the eigenvalue multiplicities of each
element, and the lift is accepted only if the orthogonality relations hold
exactly.
"""
from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Optional, Sequence

import mpmath
import numpy as np

from .coeff import GaussianRational
from .cyclotomic import Cyclotomic
from .errors import AgeNotOne, DegenerateEigenspaces, GradingViolation, NotAGroup
from .series import TransformSpec

__all__ = [
    "FiniteGroup",
    "Representation",
    "ConjugacyClass",
    "CharacterTable",
    "CrcTransform",
    "conjugacy_classes",
    "character_table",
    "abelian_dual_characters",
    "age_check",
    "crc_change_of_variables",
    "grading_check",
    "cyclic_su2",
    "klein_so3",
    "a4_so3",
    "dihedral_so3",
    "diagonal_cyclic",
    "symmetric_group",
    "matrix_group",
    "load_group",
]

DEFAULT_DPS = 64


class FiniteGroup:
    """Group given by its Cayley table; element 0 is the identity."""

    def __init__(self, table: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None):
        self.table = [list(map(int, row)) for row in table]
        self.labels = list(labels) if labels else [str(k) for k in range(len(self.table))]
        self._verify()
        n = self.order
        self._inv = [next(h for h in range(n) if self.table[g][h] == 0) for g in range(n)]

    def _verify(self):
        t = self.table
        n = len(t)
        if n == 0 or any(len(row) != n for row in t):
            raise NotAGroup("Cayley table must be square and nonempty")
        full = set(range(n))
        for row in t:
            if set(row) != full:
                raise NotAGroup("each row must be a permutation of the elements")
        for col in range(n):
            if {t[r][col] for r in range(n)} != full:
                raise NotAGroup("each column must be a permutation of the elements")
        if t[0] != list(range(n)) or [t[r][0] for r in range(n)] != list(range(n)):
            raise NotAGroup("element 0 must be the identity")
        for a in range(n):
            ta = t[a]
            for b in range(n):
                tab = t[ta[b]]
                tb = t[b]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        raise NotAGroup(f"multiplication is not associative at ({a}, {b}, {c})")

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def power(self, g: int, k: int) -> int:
        out = 0
        for _ in range(k % self.element_order(g)):
            out = self.table[out][g]
        return out

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.table[x][g]
            k += 1
        return k

    @property
    def exponent(self) -> int:
        return lcm(*(self.element_order(g) for g in range(self.order)))

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def to_json(self) -> dict:
        return {"order": self.order, "table": self.table}

    @classmethod
    def from_json(cls, data) -> "FiniteGroup":
        table = data["table"]
        if "order" in data and data["order"] != len(table):
            raise NotAGroup("declared order does not match the table")
        return cls(table, data.get("labels"))

    @classmethod
    def from_permutations(cls, generators: Sequence[Sequence[int]]) -> "FiniteGroup":
        """Closure of permutations of {0..n-1} given in one-line notation."""
        gens = [tuple(g) for g in generators]
        n = len(gens[0]) if gens else 1
        identity = tuple(range(n))
        elements = [identity]
        index = {identity: 0}
        k = 0
        while k < len(elements):
            x = elements[k]
            for g in gens:
                y = tuple(x[g[i]] for i in range(n))
                if y not in index:
                    index[y] = len(elements)
                    elements.append(y)
            k += 1
        table = [[index[tuple(a[b[i]] for i in range(n))] for b in elements] for a in elements]
        return cls(table, ["".join(map(str, e)) for e in elements])


def parse_cycles(text: str, degree: Optional[int] = None) -> tuple:
    """One-line form of a permutation written in cycle notation on {1..n}, e.g. ``(1 2 3)(4 5)``."""
    cycles = [list(map(int, re.split(r"[\s,]+", c.strip()))) for c in re.findall(r"\(([^)]*)\)", text) if c.strip()]
    n = max([degree or 0] + [max(c) for c in cycles])
    perm = list(range(n))
    for c in cycles:
        for a, b in zip(c, c[1:] + c[:1]):
            perm[a - 1] = b - 1
    return tuple(perm)


def load_group(path: str, fmt: Optional[str] = None) -> FiniteGroup:
    """Read a ``cayley`` JSON file or a ``perm`` file (one generator per line, cycle notation)."""
    with open(path) as fh:
        text = fh.read()
    if fmt is None:
        fmt = "cayley" if text.lstrip().startswith("{") else "perm"
    if fmt == "cayley":
        return FiniteGroup.from_json(json.loads(text))
    if fmt == "grid":
        return FiniteGroup([[int(x) for x in line.split()] for line in text.splitlines() if line.strip()])
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    gens = [parse_cycles(ln) for ln in lines]
    degree = max(len(g) for g in gens)
    gens = [g + tuple(range(len(g), degree)) for g in gens]
    return FiniteGroup.from_permutations(gens)


@dataclass
class Representation:
    """Matrices ``rho(g)`` (numpy complex) indexed like the group's elements."""

    group: FiniteGroup
    matrices: list
    tol: float = 1e-9

    def __post_init__(self):
        self.matrices = [np.asarray(m, dtype=complex) for m in self.matrices]
        if len(self.matrices) != self.group.order:
            raise ValueError("one matrix per group element is required")
        eye = np.eye(self.dim)
        for g, m in enumerate(self.matrices):
            if np.abs(m @ m.conj().T - eye).max() > self.tol:
                raise ValueError(f"rho({g}) is not unitary")
        for a in range(self.group.order):
            for b in range(self.group.order):
                prod = self.matrices[a] @ self.matrices[b]
                if np.abs(prod - self.matrices[self.group.mul(a, b)]).max() > self.tol:
                    raise ValueError(f"rho is not multiplicative at ({a}, {b})")

    @property
    def dim(self) -> int:
        return self.matrices[0].shape[0]

    def is_faithful(self) -> bool:
        eye = np.eye(self.dim)
        return all(np.abs(m - eye).max() > self.tol for m in self.matrices[1:])

    def eigen_phases(self, g: int) -> list:
        """Eigenvalues of rho(g) as fractions s/r in [0, 1), r = order of g."""
        r = self.group.element_order(g)
        out = []
        for lam in np.linalg.eigvals(self.matrices[g]):
            s = round(np.angle(lam) / (2 * np.pi) * r) % r
            if abs(lam - np.exp(2j * np.pi * s / r)) > 1e-7:
                raise ValueError(f"eigenvalue {lam} of rho({g}) is not an {r}-th root of unity")
            out.append(Fraction(s, r))
        return sorted(out)

    def exact_character(self, g: int, n: int) -> Cyclotomic:
        """Trace of rho(g) in Q(zeta_n), from the eigenvalue phases."""
        total = Cyclotomic.rational(n, 0)
        for ph in self.eigen_phases(g):
            total = total + Cyclotomic.root(n, int(ph * n))
        return total


def matrix_group(generators: Sequence, decimals: int = 9):
    """Close a set of unitary matrices under multiplication.

    Returns ``(FiniteGroup, Representation)`` with the identity as element 0.
    """
    gens = [np.asarray(g, dtype=complex) for g in generators]
    dim = gens[0].shape[0]

    def key(m):
        return tuple(np.round(m, decimals).ravel().tolist())

    elements = [np.eye(dim, dtype=complex)]
    index = {key(elements[0]): 0}
    k = 0
    while k < len(elements):
        x = elements[k]
        for g in gens:
            y = x @ g
            ky = key(y)
            if ky not in index:
                index[ky] = len(elements)
                elements.append(y)
                if len(elements) > 10000:
                    raise NotAGroup("matrix group closure exceeded 10000 elements")
        k += 1
    table = [[index[key(a @ b)] for b in elements] for a in elements]
    group = FiniteGroup(table)
    return group, Representation(group, elements)


def cyclic_su2(m: int):
    """Z_m inside SU(2), generated by diag(zeta, zeta^{-1})."""
    z = np.exp(2j * np.pi / m)
    return matrix_group([np.diag([z, 1 / z])])


def diagonal_cyclic(m: int, weights: Sequence[int]):
    """Z_m acting on C^k with weights ``weights`` (need not lie in SL)."""
    z = np.exp(2j * np.pi / m)
    return matrix_group([np.diag([z ** w for w in weights])])


def klein_so3():
    return matrix_group([np.diag([1, -1, -1]), np.diag([-1, 1, -1])])


def a4_so3():
    """Rotation group of the tetrahedron."""
    cyc = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    return matrix_group([cyc, np.diag([1, -1, -1])])


def dihedral_so3(m: int):
    """Dihedral group of order 2m inside SO(3)."""
    c, s = np.cos(2 * np.pi / m), np.sin(2 * np.pi / m)
    rot = np.array([[c, -s, 0], [s, c, 0], [0, 0, 1]])
    flip = np.diag([1, -1, -1])
    return matrix_group([rot, flip])


def symmetric_group(n: int) -> FiniteGroup:
    gens = [tuple([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(tuple(list(range(1, n)) + [0]))
    return FiniteGroup.from_permutations(gens if n > 1 else [(0,)])


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConjugacyClass:
    representative: int
    elements: tuple

    @property
    def size(self) -> int:
        return len(self.elements)


def conjugacy_classes(G: FiniteGroup) -> list:
    """Classes ordered by smallest element, so the identity class comes first."""
    seen = [False] * G.order
    out = []
    for g in range(G.order):
        if seen[g]:
            continue
        members = sorted({G.mul(G.mul(x, g), G.inv(x)) for x in range(G.order)})
        for h in members:
            seen[h] = True
        out.append(ConjugacyClass(g, tuple(members)))
    return out


def _class_index(G: FiniteGroup, classes: list) -> list:
    idx = [0] * G.order
    for k, c in enumerate(classes):
        for g in c.elements:
            idx[g] = k
    return idx


def class_structure_constants(G: FiniteGroup, classes: list) -> list:
    """c[j][k][l] = #{x in C_j : x^{-1} g_l in C_k}, so C_j C_k = sum_l c[j][k][l] C_l."""
    cidx = _class_index(G, classes)
    r = len(classes)
    c = [[[0] * r for _ in range(r)] for _ in range(r)]
    for j, cj in enumerate(classes):
        for l, cl in enumerate(classes):
            g = cl.representative
            for x in cj.elements:
                c[j][cidx[G.mul(G.inv(x), g)]][l] += 1
    return c


@dataclass
class CharacterTable:
    """``values[R][k]`` is chi_R on class k (mpmath complex); ``exact`` holds
    the certified cyclotomic values in Q(zeta_N), or ``None``."""

    group: FiniteGroup
    classes: list
    dims: list
    values: list
    exact: Optional[list] = None
    field_order: int = 1
    dps: int = DEFAULT_DPS

    @property
    def size(self) -> int:
        return len(self.classes)

    def numeric(self) -> np.ndarray:
        return np.array([[complex(v) for v in row] for row in self.values])

    def orthogonality_error(self) -> float:
        """Largest deviation in the row and column orthogonality relations."""
        with mpmath.workdps(self.dps):
            G = self.group.order
            sizes = [c.size for c in self.classes]
            worst = mpmath.mpf(0)
            for a in range(self.size):
                for b in range(self.size):
                    s = sum(sizes[k] * self.values[a][k] * mpmath.conj(self.values[b][k]) for k in range(self.size))
                    worst = max(worst, abs(s - (G if a == b else 0)))
                    s = sum(self.values[R][a] * mpmath.conj(self.values[R][b]) for R in range(self.size))
                    target = mpmath.mpf(G) / sizes[a] if a == b else 0
                    worst = max(worst, abs(s - target))
            return float(worst)

    def exact_orthogonality(self) -> bool:
        if self.exact is None:
            return False
        return _exact_orthogonal(self.exact, [c.size for c in self.classes], self.group.order)

    def to_json(self) -> dict:
        out = {
            "order": self.group.order,
            "classes": [{"representative": c.representative, "size": c.size} for c in self.classes],
            "dims": self.dims,
            "values": [[[mpmath.nstr(v.real, 20), mpmath.nstr(v.imag, 20)] for v in row] for row in self.values],
        }
        if self.exact is not None:
            out["field_order"] = self.field_order
            out["exact"] = [[[str(x) for x in v.coeffs] for v in row] for row in self.exact]
        return out


def _exact_orthogonal(exact: list, sizes: list, order: int) -> bool:
    r = len(exact)
    for a in range(r):
        for b in range(r):
            s = sum((exact[a][k] * exact[b][k].conjugate() * sizes[k] for k in range(r)), exact[a][0] * 0)
            if s != (order if a == b else 0):
                return False
            s = sum((exact[R][a] * exact[R][b].conjugate() for R in range(r)), exact[0][a] * 0)
            if s != (Fraction(order, sizes[a]) if a == b else 0):
                return False
    return True


def _exact_lift(G: FiniteGroup, classes: list, values: list, tol: float) -> Optional[list]:
    """Recover chi(g) = sum_j m_j zeta^j from chi on the powers of g."""
    N = G.exponent
    cidx = _class_index(G, classes)
    exact = []
    for row in values:
        out = []
        for c in classes:
            g = c.representative
            m = G.element_order(g)
            powers = [row[cidx[G.power(g, k)]] for k in range(m)]
            value = Cyclotomic.rational(N, 0)
            for j in range(m):
                mult = sum(powers[k] * mpmath.expjpi(mpmath.mpf(-2 * j * k) / m) for k in range(m)) / m
                nearest = int(mpmath.nint(mult.real))
                if abs(mult - nearest) > tol or nearest < 0:
                    return None
                if nearest:
                    value = value + Cyclotomic.root(N, j * (N // m)) * nearest
            out.append(value)
        exact.append(out)
    return exact


def character_table(G: FiniteGroup, dps: int = DEFAULT_DPS, seed: int = 0, tries: int = 5) -> CharacterTable:
    """Burnside/Dixon character table with an exact cyclotomic certificate when possible."""
    classes = conjugacy_classes(G)
    r = len(classes)
    sizes = [c.size for c in classes]
    consts = class_structure_constants(G, classes)
    rng = random.Random(seed)
    with mpmath.workdps(dps):
        tol = mpmath.mpf(10) ** (-dps // 2)
        for _ in range(tries):
            weights = [rng.randint(1, 1000) for _ in range(r)]
            M = mpmath.matrix(r, r)
            for j in range(r):
                for k in range(r):
                    for l in range(r):
                        M[k, l] += weights[j] * consts[j][k][l]
            eigvals, vecs = mpmath.eig(M)
            gaps = [abs(eigvals[a] - eigvals[b]) for a in range(r) for b in range(a)]
            if not gaps or min(gaps) > tol:
                break
        else:
            raise DegenerateEigenspaces(f"no class-matrix combination with simple spectrum after {tries} tries")
        rows = []
        for a in range(r):
            w = [vecs[k, a] for k in range(r)]
            if abs(w[0]) < tol:
                raise DegenerateEigenspaces("eigenvector vanishes on the identity class")
            w = [x / w[0] for x in w]
            norm = sum(abs(x) ** 2 / sizes[k] for k, x in enumerate(w))
            dim = mpmath.sqrt(G.order / norm)
            d = int(mpmath.nint(dim))
            if abs(dim - d) > tol:
                raise DegenerateEigenspaces(f"non-integral degree {dim}")
            rows.append((d, [d * x / sizes[k] for k, x in enumerate(w)]))

        def sort_key(item):
            d, vals = item
            trivial = all(abs(v - 1) < tol for v in vals)
            return (not trivial, d, [(float(v.real), float(v.imag)) for v in vals])

        rows.sort(key=sort_key)
        dims = [d for d, _ in rows]
        values = [vals for _, vals in rows]
        if sum(d * d for d in dims) != G.order:
            raise DegenerateEigenspaces("degrees do not satisfy sum of squares = |G|")
        exact = _exact_lift(G, classes, values, float(tol))
        if exact is not None and not _exact_orthogonal(exact, sizes, G.order):
            exact = None
        if exact is not None:
            # replace numerics by the certified values at full working precision
            values = [[v.to_mpc() for v in row] for row in exact]
    return CharacterTable(G, classes, dims, values, exact, G.exponent, dps)


def abelian_dual_characters(G: FiniteGroup) -> list:
    """Characters of an abelian group as exponent maps g -> k, meaning zeta_N^k.

    Homomorphisms are built on a greedily chosen generating set and checked
    against the full multiplication table.
    """
    if not G.is_abelian():
        raise ValueError("dual-group construction needs an abelian group")
    N = G.exponent
    gens = []
    span = {0}
    for g in range(G.order):
        if g not in span:
            gens.append(g)
            frontier = list(span)
            span = set()
            for x in frontier:
                y = x
                for _ in range(G.element_order(g)):
                    span.add(y)
                    y = G.mul(y, g)
    chars = []

    def extend(assign):
        if len(assign) == len(gens):
            values = {0: 0}
            queue = [0]
            while queue:
                x = queue.pop()
                for g, a in zip(gens, assign):
                    y = G.mul(x, g)
                    v = (values[x] + a) % N
                    if y in values:
                        if values[y] != v:
                            return
                    else:
                        values[y] = v
                        queue.append(y)
            if all(values[G.mul(a, b)] == (values[a] + values[b]) % N for a in range(G.order) for b in range(G.order)):
                chars.append([values[g] for g in range(G.order)])
            return
        g = gens[len(assign)]
        m = G.element_order(g)
        for s in range(m):
            extend(assign + [s * (N // m)])

    extend([])
    return chars


# ---------------------------------------------------------------------------


def age_check(G: FiniteGroup, V: Representation, raise_on_failure: bool = True) -> dict:
    """Ages of all conjugacy classes from eigenvalue phases of rho(g).

    Raises :class:`AgeNotOne` for a nontrivial class whose age differs from 1.
    """
    if V.group is not G:
        raise ValueError("representation belongs to another group")
    if not V.is_faithful():
        raise ValueError("representation is not faithful")
    classes = conjugacy_classes(G)
    cidx = _class_index(G, classes)
    ages = []
    entries = []
    failure = None
    for k, c in enumerate(classes):
        phases = V.eigen_phases(c.representative)
        age = sum(phases, Fraction(0))
        inv_age = sum(V.eigen_phases(G.inv(c.representative)), Fraction(0))
        ages.append(age)
        entries.append({
            "class": k,
            "representative": c.representative,
            "size": c.size,
            "phases": [str(p) for p in phases],
            "age": str(age),
            "inverse_class": cidx[G.inv(c.representative)],
            "hard_lefschetz": age == inv_age,
        })
        if k > 0 and age != 1 and failure is None:
            failure = AgeNotOne(k, age)
    if failure is not None and raise_on_failure:
        raise failure
    return {
        "classes": entries,
        "ages": ages,
        "all_age_one": failure is None,
        "hard_lefschetz": all(e["hard_lefschetz"] for e in entries),
    }


@dataclass
class CrcTransform:
    """``L[R][k]``: coefficient of x_(g_k) in y_R; row 0 is y_0 = x_0.

    ``q_values[R]`` is dim R / |G| as a fraction, meaning exp(2 pi i dim R / |G|);
    the trivial representation carries no quantum parameter (``None``).
    """

    group_order: int
    classes: list
    dims: list
    L: list
    L_exact: Optional[list]
    q_values: list
    branch: int = 1

    def q_root(self, R: int) -> Optional[GaussianRational]:
        """q_R as a Gaussian rational when it lies in Q(i) (orders 1, 2, 4)."""
        f = self.q_values[R]
        if f is None:
            return None
        table = {Fraction(0): (1, 0), Fraction(1, 4): (0, 1), Fraction(1, 2): (-1, 0), Fraction(3, 4): (0, -1)}
        if f % 1 not in table:
            return None
        return GaussianRational(*table[f % 1])

    def to_transform_spec(self) -> TransformSpec:
        if self.L_exact is None:
            raise ValueError("no exact Q(i) form of L is available")
        roots = tuple(self.q_root(R) for R in range(1, len(self.dims)))
        if any(r is None for r in roots):
            raise ValueError("q values are not in Q(i)")
        return TransformSpec(L=tuple(map(tuple, self.L_exact)), roots=roots, s=0, r=len(self.dims) - 1)

    def to_json(self) -> dict:
        out = {
            "group_order": self.group_order,
            "classes": [{"representative": c.representative, "size": c.size} for c in self.classes],
            "dims": self.dims,
            "branch": self.branch,
            "L": [[[mpmath.nstr(v.real, 30), mpmath.nstr(v.imag, 30)] for v in row] for row in self.L],
            "q_values": [None if f is None else {"num": f.numerator, "den": f.denominator} for f in self.q_values],
        }
        if self.L_exact is not None:
            out["L_exact"] = [[x.to_json() for x in row] for row in self.L_exact]
        return out


def _cyclotomic_to_gaussian(c: Cyclotomic) -> Optional[GaussianRational]:
    """Exact Q(i) value of a cyclotomic element, or None when it lies outside Q(i)."""
    v = complex(c)
    re = Fraction(v.real).limit_denominator(10 ** 6)
    im = Fraction(v.imag).limit_denominator(10 ** 6)
    n = c.n
    candidate = Cyclotomic.rational(n, re)
    if im:
        if n % 4:
            return None
        candidate = candidate + Cyclotomic.root(n, n // 4) * im
    return GaussianRational(re, im) if candidate == c else None


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    a, b = isqrt(x.numerator), isqrt(x.denominator)
    return Fraction(a, b) if a * a == x.numerator and b * b == x.denominator else None


def crc_change_of_variables(G: FiniteGroup, V: Representation, table: Optional[CharacterTable] = None,
                            branch: int = 1, dps: int = DEFAULT_DPS) -> CrcTransform:
    """y_0 = x_0; y_R = (1/|G|) sum_g sqrt(chi_V(g) - dim V) chi_R(g) x_(g); q_R = exp(2 pi i dim R/|G|).

    The sum over g is grouped by conjugacy class.  ``sqrt`` of the
    nonpositive real radicand is ``branch * i * sqrt(|.|)``.
    """
    if branch not in (1, -1):
        raise ValueError("branch must be +1 or -1")
    age_check(G, V)
    table = table or character_table(G, dps=dps)
    classes = table.classes
    order = G.order
    N = G.exponent
    r = table.size
    with mpmath.workdps(dps):
        radicands = []
        for c in classes:
            rad = V.exact_character(c.representative, N) - V.dim
            if rad.conjugate() != rad:
                raise ValueError("chi_V(g) - dim V is not real; V is not a polyhedral natural representation")
            radicands.append(rad)
        roots = []
        roots_exact = []
        for rad in radicands:
            val = rad.to_mpc().real
            if val > mpmath.mpf(10) ** (-dps // 2):
                raise ValueError("chi_V(g) - dim V is positive")
            roots.append(branch * 1j * mpmath.sqrt(abs(val)))
            exact = None
            if rad.is_rational():
                s = _rational_sqrt(-rad.rational_value())
                if s is not None:
                    exact = GaussianRational(0, branch * s)
            roots_exact.append(exact)
        L = [[mpmath.mpc(1) if k == 0 else mpmath.mpc(0) for k in range(r)]]
        for R in range(1, r):
            L.append([
                mpmath.mpf(classes[k].size) / order * roots[k] * table.values[R][k]
                for k in range(r)
            ])
        L_exact = None
        if table.exact is not None and all(x is not None for x in roots_exact):
            L_exact = [[GaussianRational(1 if k == 0 else 0) for k in range(r)]]
            for R in range(1, r):
                row = []
                for k in range(r):
                    chi = _cyclotomic_to_gaussian(table.exact[R][k])
                    if chi is None:
                        L_exact = None
                        break
                    row.append(roots_exact[k] * chi * Fraction(classes[k].size, order))
                if L_exact is None:
                    break
                L_exact.append(row)
    q_values = [None] + [Fraction(table.dims[R], order) for R in range(1, r)]
    return CrcTransform(order, classes, table.dims, L, L_exact, q_values, branch)


def grading_check(transform: CrcTransform, ages: Sequence, raise_on_failure: bool = True, tol: float = 1e-30) -> dict:
    """Nontrivial rows may only involve age-one classes; y_0 only the untwisted class."""
    violations = []
    for R, row in enumerate(transform.L):
        for k, v in enumerate(row):
            if abs(v) <= tol:
                continue
            ok = (k == 0) if R == 0 else (ages[k] == 1)
            if not ok:
                violations.append((R, k))
    if violations and raise_on_failure:
        raise GradingViolation(*violations[0])
    return {"passed": not violations, "violations": [list(v) for v in violations]}
