"""Truncated multivariate power series over :class:`RatFunc`, plus Padé
reconstruction and evaluation of the reconstructed rational functions.

Truncation contract: a :class:`SeriesRing` names a downward-closed set of
admitted exponent vectors (per-variable caps and group total-degree caps).
Every coefficient stored in a series of that ring is exact; everything
outside the admitted set is unknown and never stored.  Operations that
lose exactness (derivatives, substitutions) shrink the caps instead.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Optional, Sequence

from .coeff import ONE, ZERO, GaussianRational, RatFunc, _u_divmod, _u_gcd, _u_trim
from .errors import (
    DimensionMismatch,
    NoRationalForm,
    NonzeroConstantTerm,
    PoleAtContinuationPoint,
    RingMismatch,
    SingularSystem,
)

__all__ = [
    "SeriesRing",
    "TruncatedSeries",
    "UniRatFunc",
    "TransformSpec",
    "ExtendedDegree",
    "series_arith",
    "series_exp",
    "derive",
    "substitute_linear",
    "pade",
    "pade_auto",
    "evaluate_continuation",
    "trig_series",
    "extended_potential",
    "solve_linear",
]


@dataclass(frozen=True)
class SeriesRing:
    """Variables plus truncation.

    ``caps[k]`` bounds the exponent of variable ``k`` (``None``: no
    individual bound).  Each entry of ``groups`` is ``(indices, cap)`` and
    bounds the total degree in those variables.  Every variable must be
    bounded one way or the other.
    """

    var_names: tuple
    caps: tuple
    groups: tuple = ()

    def __post_init__(self):
        names = tuple(self.var_names)
        caps = list(self.caps)
        if len(caps) != len(names) or len(set(names)) != len(names):
            raise ValueError("caps must match distinct variable names")
        merged = {}
        for idx, cap in self.groups:
            idx = tuple(sorted({names.index(k) if isinstance(k, str) else k for k in idx}))
            if len(idx) == 1:
                k = idx[0]
                caps[k] = cap if caps[k] is None else min(caps[k], cap)
            else:
                merged[idx] = cap if idx not in merged else min(merged[idx], cap)
        caps = [None if c is None else max(int(c), -1) for c in caps]
        grouped = {k for idx in merged for k in idx}
        for k, c in enumerate(caps):
            if c is None and k not in grouped:
                raise ValueError(f"variable {names[k]!r} is unbounded")
        object.__setattr__(self, "var_names", names)
        object.__setattr__(self, "caps", tuple(caps))
        object.__setattr__(self, "groups", tuple(sorted((idx, max(int(c), -1)) for idx, c in merged.items())))

    @classmethod
    def total(cls, names: Sequence[str], cap: int) -> "SeriesRing":
        return cls(tuple(names), (None,) * len(names), ((tuple(range(len(names))), cap),))

    @property
    def nvars(self) -> int:
        return len(self.var_names)

    def index(self, var) -> int:
        if isinstance(var, int):
            return var
        try:
            return self.var_names.index(var)
        except ValueError:
            raise KeyError(f"variable {var!r} not in ring {self.var_names}") from None

    def cap_of(self, var) -> int:
        """Largest exponent of ``var`` that can appear alone."""
        k = self.index(var)
        bounds = [c for idx, c in self.groups if k in idx]
        if self.caps[k] is not None:
            bounds.append(self.caps[k])
        return min(bounds)

    def admits(self, exp) -> bool:
        for e, c in zip(exp, self.caps):
            if c is not None and e > c:
                return False
        for idx, c in self.groups:
            if sum(exp[k] for k in idx) > c:
                return False
        return True

    def to_json(self) -> dict:
        out = {"vars": list(self.var_names), "caps": list(self.caps)}
        if self.groups:
            out["groups"] = [{"vars": list(idx), "cap": c} for idx, c in self.groups]
        return out

    @classmethod
    def from_json(cls, data) -> "SeriesRing":
        groups = tuple((tuple(g["vars"]), g["cap"]) for g in data.get("groups", []))
        return cls(tuple(data["vars"]), tuple(data["caps"]), groups)


class TruncatedSeries:
    """Element of a :class:`SeriesRing`: a map from exponent vectors to RatFunc."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: SeriesRing, terms=None):
        self.ring = ring
        clean = {}
        if terms:
            n = ring.nvars
            for exp, c in terms.items():
                exp = tuple(exp)
                if len(exp) != n:
                    raise DimensionMismatch(f"exponent {exp} has wrong length for {ring.var_names}")
                c = RatFunc.coerce(c)
                if c and ring.admits(exp):
                    clean[exp] = c
        self.terms = clean

    @classmethod
    def _raw(cls, ring, terms) -> "TruncatedSeries":
        obj = object.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        return obj

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, ring) -> "TruncatedSeries":
        return cls._raw(ring, {})

    @classmethod
    def const(cls, ring, c) -> "TruncatedSeries":
        return cls(ring, {(0,) * ring.nvars: c})

    @classmethod
    def one(cls, ring) -> "TruncatedSeries":
        return cls.const(ring, 1)

    @classmethod
    def monomial(cls, ring, exps: dict, c=1) -> "TruncatedSeries":
        exp = [0] * ring.nvars
        for var, e in exps.items():
            exp[ring.index(var)] = e
        return cls(ring, {tuple(exp): c})

    @classmethod
    def var(cls, ring, name) -> "TruncatedSeries":
        return cls.monomial(ring, {name: 1})

    @classmethod
    def univariate(cls, ring, var, coeffs: Sequence) -> "TruncatedSeries":
        k = ring.index(var)
        terms = {}
        for d, c in enumerate(coeffs):
            exp = [0] * ring.nvars
            exp[k] = d
            terms[tuple(exp)] = c
        return cls(ring, terms)

    # access ---------------------------------------------------------------
    def coeff(self, exps) -> RatFunc:
        """Coefficient of a monomial given as an exponent tuple or ``{var: e}``."""
        if isinstance(exps, dict):
            exp = [0] * self.ring.nvars
            for var, e in exps.items():
                exp[self.ring.index(var)] = e
            exps = tuple(exp)
        return self.terms.get(tuple(exps), ZERO)

    __getitem__ = coeff

    def constant_term(self) -> RatFunc:
        return self.terms.get((0,) * self.ring.nvars, ZERO)

    def univariate_coeffs(self, var, fixed: Optional[dict] = None) -> list:
        """Coefficients of ``var^0 .. var^cap`` with other exponents pinned by ``fixed``."""
        k = self.ring.index(var)
        base = [0] * self.ring.nvars
        for name, e in (fixed or {}).items():
            base[self.ring.index(name)] = e
        out = []
        for d in range(self.ring.cap_of(var) + 1):
            exp = list(base)
            exp[k] = d
            exp = tuple(exp)
            if not self.ring.admits(exp):
                break
            out.append(self.terms.get(exp, ZERO))
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # arithmetic -----------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, TruncatedSeries):
            other = TruncatedSeries.const(self.ring, other)
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring.var_names} vs {other.ring.var_names}")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            v = c if v is None else v + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return TruncatedSeries._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._raw(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def scale(self, c) -> "TruncatedSeries":
        c = RatFunc.coerce(c)
        if not c:
            return TruncatedSeries.zero(self.ring)
        return TruncatedSeries._raw(self.ring, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        other = self._check(other)
        ring = self.ring
        admits = ring.admits
        out = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                if not admits(e):
                    continue
                v = out.get(e)
                out[e] = ca * cb if v is None else v + ca * cb
        return TruncatedSeries._raw(ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = TruncatedSeries.one(self.ring)
        for _ in range(k):
            result = result * self
        return result

    def map_coeffs(self, fn) -> "TruncatedSeries":
        return TruncatedSeries(self.ring, {e: fn(c) for e, c in self.terms.items()})

    def set_zero(self, names: Iterable[str]) -> "TruncatedSeries":
        """Specialize the named variables to 0 and drop them from the ring."""
        drop = {self.ring.index(n) for n in names}
        keep = [k for k in range(self.ring.nvars) if k not in drop]
        remap = {k: j for j, k in enumerate(keep)}
        groups = []
        for idx, c in self.ring.groups:
            rest = tuple(remap[k] for k in idx if k not in drop)
            if rest:
                groups.append((rest, c))
        ring = SeriesRing(
            tuple(self.ring.var_names[k] for k in keep),
            tuple(self.ring.caps[k] for k in keep),
            tuple(groups),
        )
        terms = {
            tuple(e[k] for k in keep): c
            for e, c in self.terms.items()
            if all(e[k] == 0 for k in drop)
        }
        return TruncatedSeries(ring, terms)

    # comparison / text ----------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        return f"TruncatedSeries({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.var_names
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e)):
            mono = "*".join(f"{n}^{k}" if k > 1 else n for n, k in zip(names, e) if k)
            c = str(self.terms[e])
            if not mono:
                parts.append(c)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    def to_json(self) -> dict:
        out = self.ring.to_json()
        out["terms"] = [
            {"exp": list(e), "coeff": self.terms[e].to_json()}
            for e in sorted(self.terms, key=lambda e: (sum(e), e))
        ]
        return out

    @classmethod
    def from_json(cls, data) -> "TruncatedSeries":
        ring = SeriesRing.from_json(data)
        return cls(ring, {tuple(t["exp"]): RatFunc.from_json(t["coeff"]) for t in data["terms"]})


def series_arith(a: TruncatedSeries, b: TruncatedSeries, op: str) -> TruncatedSeries:
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring.var_names} vs {b.ring.var_names}")
    if op in ("add", "+"):
        return a + b
    if op in ("sub", "-"):
        return a - b
    if op in ("mul", "*"):
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def series_exp(a: TruncatedSeries) -> TruncatedSeries:
    """exp(a) for a series with zero constant term, exact on the whole ring."""
    if a.constant_term():
        raise NonzeroConstantTerm("exp needs a series with zero constant term")
    result = TruncatedSeries.one(a.ring)
    power = TruncatedSeries.one(a.ring)
    k = 0
    while True:
        k += 1
        power = power * a
        if not power:
            return result
        result = result + power.scale(Fraction(1, factorial(k)))


def derive(a: TruncatedSeries, var, k: int = 1) -> TruncatedSeries:
    """k-fold partial derivative; caps involving ``var`` drop by k."""
    if k < 0:
        raise ValueError("derivative order must be nonnegative")
    ring = a.ring
    v = ring.index(var)
    caps = list(ring.caps)
    if caps[v] is not None:
        caps[v] = max(caps[v] - k, -1)
    groups = tuple((idx, max(c - k, -1)) if v in idx else (idx, c) for idx, c in ring.groups)
    new_ring = SeriesRing(ring.var_names, tuple(caps), groups)
    out = {}
    for e, c in a.terms.items():
        if e[v] < k:
            continue
        mult = 1
        for j in range(k):
            mult *= e[v] - j
        e2 = e[:v] + (e[v] - k,) + e[v + 1:]
        if new_ring.admits(e2):
            out[e2] = c * mult
    return TruncatedSeries._raw(new_ring, out)


# ---------------------------------------------------------------------------
# linear algebra over an exact field (GaussianRational or RatFunc entries)


def solve_linear(matrix: list, rhs: list) -> list:
    """Solve a square system by Gaussian elimination over an exact field.

    Raises :class:`SingularSystem` carrying the rank defect.
    """
    n = len(matrix)
    rows = [list(r) + [b] for r, b in zip(matrix, rhs)]
    rank = 0
    pivots = []
    for col in range(n):
        piv = next((r for r in range(rank, n) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(n):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
    if rank < n:
        raise SingularSystem(f"linear system has rank {rank} < {n}", rank_defect=n - rank)
    return [rows[k][n] for k in range(n)]


# ---------------------------------------------------------------------------
# univariate polynomials over RatFunc (coefficient lists, lowest degree first)


def _p_trim(a: list) -> list:
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def _p_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
    return _p_trim(out)


def _p_add(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return _p_trim([(a[k] if k < len(a) else ZERO) + (b[k] if k < len(b) else ZERO) for k in range(n)])


def _p_divmod(a: list, b: list):
    r = list(a)
    q = [ZERO] * max(len(a) - len(b) + 1, 0)
    inv = b[-1].inverse()
    db = len(b) - 1
    while r and len(r) - 1 >= db:
        c = r[-1] * inv
        k = len(r) - 1 - db
        q[k] = c
        for j, y in enumerate(b):
            r[k + j] = r[k + j] - c * y
        r = _p_trim(r)
    return _p_trim(q), r


def _p_gcd(a: list, b: list) -> list:
    while b:
        _, r = _p_divmod(a, b)
        a, b = b, r
    inv = a[-1].inverse()
    return [x * inv for x in a]


def _p_eval(a: list, x) -> RatFunc:
    total = ZERO
    for c in reversed(a):
        total = total * x + c
    return total


def _p_compose_linear(a: list, scale, shift) -> list:
    """a(scale*v + shift) as a list in the new variable v."""
    lin = [RatFunc.coerce(shift), RatFunc.coerce(scale)]
    out = []
    for c in reversed(a):
        out = _p_add(_p_mul(out, lin), [c])
    return out


class UniRatFunc:
    """Reduced rational function N(v)/D(v) in one variable with RatFunc coefficients.

    Normalized so that ``D(0) = 1``; a function whose denominator vanishes
    at the origin is rejected.
    """

    __slots__ = ("var", "num", "den")

    def __init__(self, num: Sequence, den: Sequence = (1,), var: str = "q"):
        num = _p_trim(RatFunc.coerce(c) for c in num)
        den = _p_trim(RatFunc.coerce(c) for c in den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            den = [ONE]
        elif len(den) > 1:
            g = _p_gcd(num, den)
            if len(g) > 1:
                num = _p_divmod(num, g)[0]
                den = _p_divmod(den, g)[0]
        if not den[0]:
            raise ValueError("denominator vanishes at the origin")
        inv = den[0].inverse()
        self.num = tuple(c * inv for c in num)
        self.den = tuple(c * inv for c in den)
        self.var = var

    @classmethod
    def _raw(cls, num: list, den: list, var: str) -> "UniRatFunc":
        # caller guarantees coprime num/den with den[0] == 1
        out = cls.__new__(cls)
        out.num, out.den, out.var = tuple(_p_trim(num)), tuple(_p_trim(den)), var
        return out

    def expand(self, n: int) -> list:
        """First ``n`` Taylor coefficients at the origin."""
        out = []
        for k in range(n):
            v = self.num[k] if k < len(self.num) else ZERO
            for j in range(1, min(k, len(self.den) - 1) + 1):
                v = v - self.den[j] * out[k - j]
            out.append(v)
        return out

    def evaluate(self, point) -> RatFunc:
        return evaluate_continuation(self, point)

    def compose_linear(self, scale, shift, var: Optional[str] = None) -> "UniRatFunc":
        """Substitute ``v -> scale*v' + shift``."""
        return UniRatFunc(
            _p_compose_linear(list(self.num), scale, shift),
            _p_compose_linear(list(self.den), scale, shift),
            var or self.var,
        )

    def map_coeffs(self, fn) -> "UniRatFunc":
        return UniRatFunc([fn(c) for c in self.num], [fn(c) for c in self.den], self.var)

    def is_real(self) -> bool:
        return all(c.is_real() for c in self.num + self.den)

    def is_zero(self) -> bool:
        return not self.num

    @property
    def degrees(self):
        return len(self.num) - 1, len(self.den) - 1

    def __eq__(self, other):
        if not isinstance(other, UniRatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"UniRatFunc({self})"

    def __str__(self):
        def poly(coeffs):
            parts = []
            for k, c in enumerate(coeffs):
                if not c:
                    continue
                mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
                sign = "+"
                if c.is_constant() and c.constant_value().im == 0 and c.constant_value().re < 0:
                    sign, c = "-", -c
                cs = str(c)
                if not mono:
                    body = cs
                elif c == 1:
                    body = mono
                else:
                    body = f"({cs})*{mono}" if not c.is_constant() else f"{cs}*{mono}"
                parts.append((sign, body))
            if not parts:
                return "0", 0
            text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
            for sign, body in parts[1:]:
                text += f" {sign} {body}"
            return text, len(parts)

        num, nterms = poly(self.num)
        if len(self.den) == 1 and self.den[0] == 1:
            return num
        den, _ = poly(self.den)
        if nterms > 1:
            num = f"({num})"
        return f"{num}/({den})"

    def to_json(self) -> dict:
        return {
            "var": self.var,
            "num": [c.to_json() for c in self.num],
            "den": [c.to_json() for c in self.den],
        }

    @classmethod
    def from_json(cls, data) -> "UniRatFunc":
        return cls(
            [RatFunc.from_json(c) for c in data["num"]],
            [RatFunc.from_json(c) for c in data["den"]],
            data.get("var", "q"),
        )


def _pade_solve(c: list, p: int, q: int):
    """Denominator/numerator coefficient lists with D(0)=1 from the linear system."""
    zero = c[0] * 0
    def at(k):
        return c[k] if k >= 0 else zero

    if q:
        matrix = [[at(k - j) for j in range(1, q + 1)] for k in range(p + 1, p + q + 1)]
        rhs = [-at(k) for k in range(p + 1, p + q + 1)]
        d = [zero + 1] + solve_linear(matrix, rhs)
    else:
        d = [zero + 1]
    n = []
    for k in range(p + 1):
        v = zero
        for j in range(min(k, q) + 1):
            v = v + d[j] * c[k - j]
        n.append(v)
    return n, d


def _first_mismatch(n: list, d: list, c: list) -> Optional[int]:
    """Index of the first coefficient of n/d that differs from c, or None."""
    out = []
    for k, want in enumerate(c):
        v = n[k] if k < len(n) else want * 0
        for j in range(1, min(k, len(d) - 1) + 1):
            v = v - d[j] * out[k - j]
        if v != want:
            return k
        out.append(v)
    return None


def _prepare(coeffs: Sequence):
    """Coefficients to work with, the common factor they were divided by, and a zero flag.

    When every coefficient is a Q(i) multiple of one RatFunc the work list
    holds those multiples (plain Fractions if all are real), so the linear
    algebra never touches polynomial arithmetic.  Otherwise the scale is None.
    """
    c = [RatFunc.coerce(x) for x in coeffs]
    scale = next((x for x in c if x), None)
    if scale is None:
        return c, None, True
    ratios = []
    for x in c:
        r = x.constant_ratio(scale)
        if r is None:
            return c, None, False
        ratios.append(r)
    if all(r.im == 0 for r in ratios):
        ratios = [r.re for r in ratios]
    return ratios, scale, False


def _pade_core(work: list, scale, p: int, q: int, var: str) -> UniRatFunc:
    n, d = _pade_solve(work, p, q)
    k = _first_mismatch(n, d, work)
    if k is not None:
        raise NoRationalForm(f"[{p}/{q}] reconstruction disagrees with coefficient {k}")
    if scale is None:
        return UniRatFunc(n, d, var)
    n = _u_trim([GaussianRational.coerce(x) for x in n])
    d = _u_trim([GaussianRational.coerce(x) for x in d])
    g = _u_gcd(list(n), list(d))
    if len(g) > 1:
        n = _u_divmod(n, g)[0]
        d = _u_divmod(d, g)[0]
    inv = d[0].inverse()
    return UniRatFunc._raw([scale * (x * inv) for x in n], [RatFunc.const(x * inv) for x in d], var)


def pade(coeffs: Sequence, p: int, q: int, var: str = "q") -> UniRatFunc:
    """[p/q] Padé approximant, certified against every supplied coefficient.

    Needs at least ``p + q + 2`` coefficients; the ones beyond the defining
    system are guard coefficients.  Raises :class:`NoRationalForm` when a
    guard disagrees and :class:`SingularSystem` when the defining system is
    degenerate.
    """
    if p < 0 or q < 0:
        raise ValueError("Padé degrees must be nonnegative")
    if len(coeffs) < p + q + 2:
        raise ValueError(f"[{p}/{q}] Padé needs at least {p + q + 2} coefficients, got {len(coeffs)}")
    work, scale, zero = _prepare(coeffs)
    if zero:
        return UniRatFunc([], [1], var)
    return _pade_core(work, scale, p, q, var)


def pade_auto(coeffs: Sequence, max_degree: Optional[int] = None, var: str = "q") -> UniRatFunc:
    """Smallest near-diagonal certified Padé form, keeping at least one guard.

    Tries total degree t = 0, 1, 2, ... with the splits (ceil(t/2), floor(t/2))
    and (floor(t/2), ceil(t/2)); singular or uncertified candidates are skipped.
    """
    length = len(coeffs)
    limit = length - 2
    if max_degree is not None:
        limit = min(limit, 2 * max_degree)
    work, scale, zero = _prepare(coeffs)
    if zero and length >= 2:
        return UniRatFunc([], [1], var)
    for t in range(limit + 1):
        for p, q in dict.fromkeys([((t + 1) // 2, t // 2), (t // 2, (t + 1) // 2)]):
            if max_degree is not None and q > max_degree:
                continue
            try:
                return _pade_core(work, scale, p, q, var)
            except (NoRationalForm, SingularSystem):
                continue
    raise NoRationalForm(f"no certified rational form with total degree <= {limit} from {length} coefficients")


def evaluate_continuation(f: UniRatFunc, point) -> RatFunc:
    """Value of the reconstructed function at ``point`` (e.g. a root of unity)."""
    point = RatFunc.coerce(point)
    d = _p_eval(list(f.den), point)
    if not d:
        raise PoleAtContinuationPoint(f"{f} has a pole at {f.var} = {point}")
    return _p_eval(list(f.num), point) / d


# ---------------------------------------------------------------------------
# tangent / cotangent series


def _sin_cos(n: int):
    sin = [Fraction(0)] * (n + 1)
    cos = [Fraction(0)] * (n + 1)
    for k in range(n + 1):
        v = Fraction((-1) ** (k // 2), factorial(k))
        if k % 2:
            sin[k] = v
        else:
            cos[k] = v
    return sin, cos


def _fps_div(a: list, b: list, n: int) -> list:
    out = []
    for k in range(n + 1):
        v = a[k] if k < len(a) else Fraction(0)
        for j in range(1, min(k, len(b) - 1) + 1):
            v -= b[j] * out[k - j]
        out.append(v / b[0])
    return out


def tan_coefficients(n: int) -> list:
    """Taylor coefficients of tan(x) through x^n by dividing sin by cos."""
    sin, cos = _sin_cos(n)
    return _fps_div(sin, cos, n)


def xcot_coefficients(n: int) -> list:
    """Taylor coefficients of x*cot(x) through x^n, as cos(x) / (sin(x)/x)."""
    sin, cos = _sin_cos(n + 1)
    sinc = sin[1:]
    return _fps_div(cos, sinc, n)


def trig_series(kind: str, order: int, k: int = 1, var: Optional[str] = None) -> TruncatedSeries:
    """``half_tan``: (1/2)tan(x/2).  ``cot_combination``: k*cot(k*u/2) - cot(u/2).

    Both are returned through degree ``order`` in a one-variable ring.
    """
    if kind == "half_tan":
        var = var or "x"
        tan = tan_coefficients(order)
        coeffs = [t / 2 ** (j + 1) for j, t in enumerate(tan)]
    elif kind == "cot_combination":
        if k < 1:
            raise ValueError("cot_combination needs k >= 1")
        var = var or "u"
        # k*cot(k*u/2) - cot(u/2) = (2/u) * sum_j g_j (k^j - 1) (u/2)^j,  g = x*cot(x)
        g = xcot_coefficients(order + 1)
        coeffs = [2 * g[j + 1] * (k ** (j + 1) - 1) / 2 ** (j + 1) for j in range(order + 1)]
    else:
        raise ValueError(f"unknown trig series {kind!r}")
    ring = SeriesRing((var,), (order,))
    return TruncatedSeries.univariate(ring, var, coeffs)


# ---------------------------------------------------------------------------
# changes of variables


def _is_root_of_unity(c: GaussianRational, bound: int) -> bool:
    p = c
    for _ in range(bound):
        if p == 1:
            return True
        p = p * c
    return False


def _det(matrix) -> GaussianRational:
    rows = [list(r) for r in matrix]
    n = len(rows)
    det = GaussianRational(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col]), None)
        if piv is None:
            return GaussianRational(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det = det * rows[col][col]
        inv = rows[col][col].inverse()
        for r in range(col + 1, n):
            f = rows[r][col] * inv
            if f:
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return det


@dataclass(frozen=True)
class TransformSpec:
    """Linear change of cohomology variables plus root-of-unity values.

    ``L[i][j]`` is the coefficient of ``x_j`` in ``y_i``.  ``roots`` holds the
    values assigned to the twisted quantum parameters ``s+1 .. r``.
    """

    L: tuple
    roots: tuple = ()
    s: int = 0
    r: int = 0
    root_order_bound: int = 24
    target_names: Optional[tuple] = None

    def __post_init__(self):
        L = tuple(tuple(GaussianRational.coerce(x) for x in row) for row in self.L)
        if any(len(row) != len(L) for row in L):
            raise DimensionMismatch("L must be square")
        if not _det(L):
            raise ValueError("L is not invertible")
        roots = tuple(GaussianRational.coerce(c) for c in self.roots)
        for c in roots:
            if not _is_root_of_unity(c, self.root_order_bound):
                raise ValueError(f"{c} is not a root of unity of order <= {self.root_order_bound}")
        if len(roots) != self.r - self.s:
            raise DimensionMismatch(f"expected {self.r - self.s} roots, got {len(roots)}")
        object.__setattr__(self, "L", L)
        object.__setattr__(self, "roots", roots)

    def to_json(self) -> dict:
        return {
            "L": [[x.to_json() for x in row] for row in self.L],
            "roots": [c.to_json() for c in self.roots],
            "s": self.s,
            "r": self.r,
        }

    @classmethod
    def from_json(cls, data) -> "TransformSpec":
        def gr(x):
            return GaussianRational.from_json(x) if isinstance(x, dict) else GaussianRational.parse(str(x))

        return cls(
            L=tuple(tuple(gr(x) for x in row) for row in data["L"]),
            roots=tuple(gr(c) for c in data.get("roots", ())),
            s=int(data.get("s", 0)),
            r=int(data.get("r", len(data.get("roots", ())))),
        )

    @property
    def dim(self) -> int:
        return len(self.L)

    def is_monomial(self) -> bool:
        cols = []
        for row in self.L:
            nz = [j for j, x in enumerate(row) if x]
            if len(nz) != 1:
                return False
            cols.append(nz[0])
        return len(set(cols)) == len(cols)


@dataclass(frozen=True)
class ExtendedDegree:
    """Curve class with untwisted part and counts of unmarked twisted points."""

    untwisted: tuple = ()
    twisted: tuple = ()

    def is_effective(self) -> bool:
        return all(d >= 0 for d in self.untwisted) and all(b >= 0 for b in self.twisted)

    def divisor_factor(self) -> int:
        """Product of b! over twisted entries: the ratio <D^b a>_beta / <a>_beta."""
        out = 1
        for b in self.twisted:
            out *= factorial(b)
        return out


def _default_target(name: str) -> str:
    return "x" + name[1:] if name.startswith("y") else name


def substitute_linear(F: TruncatedSeries, spec: TransformSpec, block=None, names=None) -> TruncatedSeries:
    """Replace ``y_i`` by ``sum_j L[i][j] x_j`` on the cohomology block.

    ``block`` lists the ring variables playing ``y_0 .. y_{m-1}`` (default:
    the first ``m``).  Non-block variables are untouched.
    """
    ring = F.ring
    m = spec.dim
    block = tuple(range(m)) if block is None else tuple(ring.index(b) for b in block)
    if len(block) != m or max(block, default=-1) >= ring.nvars:
        raise DimensionMismatch(f"L is {m}x{m} but the block is {block}")
    new_names = list(ring.var_names)
    targets = names or spec.target_names or [_default_target(ring.var_names[b]) for b in block]
    for b, nm in zip(block, targets):
        new_names[b] = nm
    caps = list(ring.caps)
    groups = list(ring.groups)
    if spec.is_monomial():
        perm = {}
        for i, row in enumerate(spec.L):
            j = next(j for j, x in enumerate(row) if x)
            perm[block[i]] = block[j]
        for b in block:
            caps[perm[b]] = ring.caps[b]
        groups = [(tuple(perm.get(k, k) for k in idx), c) for idx, c in groups]
    else:
        bset = set(block)
        bound = min((ring.cap_of(b) for b in block), default=0)
        for b in block:
            caps[b] = None
        new_groups = [(block, bound)]
        for idx, c in groups:
            new_groups.append((tuple(sorted(set(idx) | bset)) if set(idx) & bset else idx, c))
        groups = new_groups
    new_ring = SeriesRing(tuple(new_names), tuple(caps), tuple(groups))

    # images of each y_i as exponent-delta -> coefficient
    images = []
    for row in spec.L:
        img = {}
        for j, x in enumerate(row):
            if x:
                e = [0] * ring.nvars
                e[block[j]] = 1
                img[tuple(e)] = RatFunc.const(x)
        images.append(TruncatedSeries._raw(new_ring, img))
    power_cache = {}

    def power(i, e):
        key = (i, e)
        if key not in power_cache:
            power_cache[key] = images[i] ** e if e else TruncatedSeries.one(new_ring)
        return power_cache[key]

    out = {}
    for exp, c in F.terms.items():
        rest = list(exp)
        for b in block:
            rest[b] = 0
        term = TruncatedSeries._raw(new_ring, {tuple(rest): c})
        for i, b in enumerate(block):
            if exp[b]:
                term = term * power(i, exp[b])
        for e, v in term.terms.items():
            w = out.get(e)
            out[e] = v if w is None else w + v
    return TruncatedSeries(new_ring, out)


def extended_potential(F: TruncatedSeries, spec: TransformSpec, names=None) -> TruncatedSeries:
    """Shift ``x_i -> x_i + u_i`` for the twisted divisor indices ``s+1 .. r``.

    The x-block is the first ``r + 1`` ring variables.  New variables
    ``u_i`` (named ``u{i}`` unless ``names`` is given) are appended; each
    pair ``(x_i, u_i)`` shares the old cap of ``x_i`` as a total-degree cap.
    """
    ring = F.ring
    if spec.r + 1 > ring.nvars:
        raise DimensionMismatch(f"ring {ring.var_names} has no x_{spec.r}")
    twisted = list(range(spec.s + 1, spec.r + 1))
    unames = list(names) if names else [f"u{i}" for i in twisted]
    if len(unames) != len(twisted):
        raise DimensionMismatch("one name per twisted index is required")
    n = ring.nvars
    new_names = ring.var_names + tuple(unames)
    caps = list(ring.caps) + [None] * len(twisted)
    groups = []
    for idx, c in ring.groups:
        extra = tuple(n + k for k, i in enumerate(twisted) if i in idx)
        groups.append((idx + extra, c))
    for k, i in enumerate(twisted):
        cap = ring.cap_of(i)
        caps[i] = None
        groups.append(((i, n + k), cap))
    new_ring = SeriesRing(new_names, tuple(caps), tuple(groups))
    out = {}
    for exp, c in F.terms.items():
        partial = [(list(exp) + [0] * len(twisted), c)]
        for k, i in enumerate(twisted):
            a = exp[i]
            nxt = []
            for e, v in partial:
                for b in range(a + 1):
                    e2 = list(e)
                    e2[i] = a - b
                    e2[n + k] = b
                    nxt.append((e2, v * comb(a, b)))
            partial = nxt
        for e, v in partial:
            e = tuple(e)
            w = out.get(e)
            out[e] = v if w is None else w + v
    return TruncatedSeries(new_ring, out)
