"""Exact coefficient arithmetic: Q(i), Q(i)[t1, t2] and its fraction field.

Every invariant, series coefficient and matrix entry in the package is a
:class:`RatFunc`.  Values are treated as immutable; no method mutates its
receiver.
"""
from __future__ import annotations

import ast
from fractions import Fraction
from functools import reduce

from .errors import DivisionByZero, PoleAtSpecialization

__all__ = [
    "GaussianRational",
    "Poly2",
    "RatFunc",
    "I",
    "ZERO",
    "ONE",
    "T1",
    "T2",
    "field_arith",
    "specialize",
    "poly_gcd",
]


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class GaussianRational:
    """An exact element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def _new(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @staticmethod
    def coerce(x) -> "GaussianRational":
        if type(x) is GaussianRational:
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational._new(Fraction(x), Fraction(0))
        if isinstance(x, str):
            return GaussianRational.parse(x)
        raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if type(other) is not GaussianRational:
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            return GaussianRational._new(self.re + other, self.im)
        return GaussianRational._new(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational._new(-self.re, -self.im)

    def __sub__(self, other):
        if type(other) is not GaussianRational:
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            return GaussianRational._new(self.re - other, self.im)
        return GaussianRational._new(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if type(other) is not GaussianRational:
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            return GaussianRational._new(self.re * other, self.im * other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational._new(a * c, b)
        return GaussianRational._new(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        norm = self.re * self.re + self.im * self.im
        if not norm:
            raise DivisionByZero("division by zero in Q(i)")
        return GaussianRational._new(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        if type(other) is not GaussianRational:
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            if not other:
                raise DivisionByZero("division by zero in Q(i)")
            return GaussianRational._new(self.re / other, self.im / other)
        if not other.im:
            if not other.re:
                raise DivisionByZero("division by zero in Q(i)")
            return GaussianRational._new(self.re / other.re, self.im / other.re)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE_GR
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._new(self.re, -self.im)

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if type(other) is GaussianRational:
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    @property
    def is_real(self) -> bool:
        return not self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    # text / json ----------------------------------------------------------
    def __repr__(self):
        return f"GaussianRational({_frac_str(self.re)!r}, {_frac_str(self.im)!r})"

    def __str__(self):
        if not self.im:
            return _frac_str(self.re)
        if self.im == 1:
            im = "i"
        elif self.im == -1:
            im = "-i"
        else:
            im = f"{_frac_str(self.im)}*i"
        if not self.re:
            return im
        sep = " - " if im.startswith("-") else " + "
        return f"{_frac_str(self.re)}{sep}{im.lstrip('-')}"

    def to_json(self) -> dict:
        return {"re": _frac_str(self.re), "im": _frac_str(self.im)}

    @classmethod
    def from_json(cls, data) -> "GaussianRational":
        return cls(Fraction(data["re"]), Fraction(data["im"]))

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        value = RatFunc.parse(text)
        if not value.num.is_constant() or not value.den.is_constant():
            raise ValueError(f"{text!r} depends on t1, t2")
        return value.num.constant_term() / value.den.constant_term()


ZERO_GR = GaussianRational(0, 0)
ONE_GR = GaussianRational(1, 0)
I = GaussianRational(0, 1)


# ---------------------------------------------------------------------------
# dense univariate helpers over Q(i) (coefficient lists, lowest degree first)


def _u_trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _u_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [(a[k] if k < len(a) else ZERO_GR) - (b[k] if k < len(b) else ZERO_GR) for k in range(n)]
    return _u_trim(out)


def _u_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [ZERO_GR] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
    return _u_trim(out)


def _u_scale(a: list, c) -> list:
    return _u_trim([x * c for x in a])


def _u_divmod(a: list, b: list):
    if not b:
        raise DivisionByZero("univariate division by zero polynomial")
    r = list(a)
    q = [ZERO_GR] * max(len(a) - len(b) + 1, 0)
    inv = b[-1].inverse()
    db = len(b) - 1
    while len(r) - 1 >= db and r:
        c = r[-1] * inv
        k = len(r) - 1 - db
        q[k] = c
        for j, y in enumerate(b):
            r[k + j] = r[k + j] - c * y
        _u_trim(r)
    return _u_trim(q), r


def _u_monic(a: list) -> list:
    if not a:
        return a
    inv = a[-1].inverse()
    return [x * inv for x in a]


def _u_gcd(a: list, b: list) -> list:
    while b:
        _, r = _u_divmod(a, b)
        a, b = b, r
    return _u_monic(a)


# ---------------------------------------------------------------------------


def _grlex_key(e):
    return (e[0] + e[1], e[0])


class Poly2:
    """Polynomial in t1, t2 with Gaussian-rational coefficients.

    ``terms`` maps ``(e1, e2)`` to a nonzero coefficient.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for e, c in terms.items():
                c = GaussianRational.coerce(c)
                if c:
                    e1, e2 = e
                    if e1 < 0 or e2 < 0:
                        raise ValueError("negative exponent in Poly2")
                    clean[(int(e1), int(e2))] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Poly2":
        obj = object.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "Poly2":
        c = GaussianRational.coerce(c)
        return cls._raw({(0, 0): c} if c else {})

    @classmethod
    def monomial(cls, e1: int, e2: int, c=1) -> "Poly2":
        return cls({(e1, e2): c})

    @staticmethod
    def coerce(x) -> "Poly2":
        if type(x) is Poly2:
            return x
        return Poly2.const(x)

    # queries --------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0, 0) in self.terms)

    def constant_term(self) -> GaussianRational:
        return self.terms.get((0, 0), ZERO_GR)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def total_degree(self) -> int:
        return max((e1 + e2 for e1, e2 in self.terms), default=-1)

    def degree_in(self, var: int) -> int:
        return max((e[var] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({e1 + e2 for e1, e2 in self.terms}) <= 1

    def leading(self):
        """Leading (exponent, coefficient) under graded-lex order with t1 > t2."""
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def is_real(self) -> bool:
        return all(c.is_real for c in self.terms.values())

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = Poly2.coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Poly2._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly2._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Poly2.coerce(other))

    def __rsub__(self, other):
        return Poly2.coerce(other) - self

    def scale(self, c) -> "Poly2":
        c = GaussianRational.coerce(c)
        if not c:
            return Poly2._raw({})
        return Poly2._raw({e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly2):
            if isinstance(other, (int, Fraction, GaussianRational)):
                return self.scale(other)
            return NotImplemented
        if len(other.terms) == 1:
            ((f1, f2), d), = other.terms.items()
            return Poly2._raw({(e1 + f1, e2 + f2): c * d for (e1, e2), c in self.terms.items()})
        out = {}
        for (a1, a2), c in self.terms.items():
            for (b1, b2), d in other.terms.items():
                k = (a1 + b1, a2 + b2)
                v = out.get(k)
                out[k] = c * d if v is None else v + c * d
        return Poly2._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly2.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def exact_div(self, other: "Poly2") -> "Poly2":
        """Quotient ``self / other``; raises ValueError if the division is not exact."""
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        if len(other.terms) == 1:
            ((f1, f2), d), = other.terms.items()
            inv = d.inverse()
            out = {}
            for (e1, e2), c in self.terms.items():
                if e1 < f1 or e2 < f2:
                    raise ValueError("inexact polynomial division")
                out[(e1 - f1, e2 - f2)] = c * inv
            return Poly2._raw(out)
        rem = dict(self.terms)
        lb = max(other.terms)
        inv = other.terms[lb].inverse()
        quot = {}
        while rem:
            la = max(rem)
            if la[0] < lb[0] or la[1] < lb[1]:
                raise ValueError("inexact polynomial division")
            m = (la[0] - lb[0], la[1] - lb[1])
            c = rem[la] * inv
            quot[m] = c
            for (b1, b2), d in other.terms.items():
                k = (b1 + m[0], b2 + m[1])
                v = rem.get(k, ZERO_GR) - c * d
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return Poly2._raw(quot)

    # evaluation -----------------------------------------------------------
    def evaluate(self, t1v, t2v) -> GaussianRational:
        t1v = GaussianRational.coerce(t1v)
        t2v = GaussianRational.coerce(t2v)
        p1 = {}
        p2 = {}
        total = ZERO_GR
        for (e1, e2), c in self.terms.items():
            a = p1.get(e1)
            if a is None:
                a = p1[e1] = t1v ** e1
            b = p2.get(e2)
            if b is None:
                b = p2[e2] = t2v ** e2
            total = total + c * a * b
        return total

    def substitute(self, p1: "Poly2", p2: "Poly2") -> "Poly2":
        """Compose: replace t1 by ``p1`` and t2 by ``p2``."""
        p1 = Poly2.coerce(p1)
        p2 = Poly2.coerce(p2)
        pw1 = {0: Poly2.const(1)}
        pw2 = {0: Poly2.const(1)}
        for e1 in range(1, self.degree_in(0) + 1):
            pw1[e1] = pw1[e1 - 1] * p1
        for e2 in range(1, self.degree_in(1) + 1):
            pw2[e2] = pw2[e2 - 1] * p2
        total = Poly2._raw({})
        for (e1, e2), c in self.terms.items():
            total = total + (pw1[e1] * pw2[e2]).scale(c)
        return total

    def conjugate(self) -> "Poly2":
        return Poly2._raw({e: c.conjugate() for e, c in self.terms.items()})

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Poly2):
            if isinstance(other, (int, Fraction, GaussianRational)):
                return self.terms == Poly2.const(other).terms
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Poly2({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"{name}^{k}" if k > 1 else name
                for name, k in (("t1", e[0]), ("t2", e[1]))
                if k
            )
            cs = str(c)
            if c.re and c.im:
                cs = f"({cs})"
            if not mono:
                pieces.append(cs)
            elif c == 1:
                pieces.append(mono)
            elif c == -1:
                pieces.append("-" + mono)
            else:
                pieces.append(f"{cs}*{mono}")
        text = " + ".join(pieces)
        return text.replace("+ -", "- ")

    def to_json(self) -> list:
        return [
            {"e1": e[0], "e2": e[1], "c": self.terms[e].to_json()}
            for e in sorted(self.terms, key=_grlex_key, reverse=True)
        ]

    @classmethod
    def from_json(cls, data) -> "Poly2":
        return cls({(d["e1"], d["e2"]): GaussianRational.from_json(d["c"]) for d in data})

    # dense conversion for the gcd ----------------------------------------
    def _dense(self) -> list:
        """As a list over powers of t1 of dense coefficient lists in t2."""
        out = [[] for _ in range(self.degree_in(0) + 1)]
        for (e1, e2), c in self.terms.items():
            row = out[e1]
            if len(row) <= e2:
                row.extend([ZERO_GR] * (e2 + 1 - len(row)))
            row[e2] = c
        return out

    @classmethod
    def _from_dense(cls, rows: list) -> "Poly2":
        return cls._raw({(e1, e2): c for e1, row in enumerate(rows) for e2, c in enumerate(row) if c})


T1 = Poly2.monomial(1, 0)
T2 = Poly2.monomial(0, 1)


def _mono_content(p: Poly2):
    return (min(e[0] for e in p.terms), min(e[1] for e in p.terms))


def _b_content(rows: list) -> list:
    return reduce(_u_gcd, (r for r in rows if r), [])


def _b_prem(a: list, b: list) -> list:
    """Pseudo-remainder of a by b as polynomials in t1 over Q(i)[t2], up to a scalar."""
    r = [list(x) for x in a]
    lb = b[-1]
    db = len(b) - 1
    while len(r) - 1 >= db:
        lr = r[-1]
        k = len(r) - 1 - db
        new = [_u_mul(x, lb) for x in r]
        for j, y in enumerate(b):
            new[k + j] = _u_sub(new[k + j], _u_mul(lr, y))
        while new and not new[-1]:
            new.pop()
        r = new
    return r


def _u_eval(a: list, x) -> GaussianRational:
    out = ZERO_GR
    for c in reversed(a):
        out = out * x + c
    return out


def _swapped(p: Poly2) -> Poly2:
    return Poly2._raw({(e2, e1): c for (e1, e2), c in p.terms.items()})


_PROBES = (Fraction(2), Fraction(-3), Fraction(5, 2), Fraction(7), Fraction(-11, 3), Fraction(13))


def _degree_bound(da: list, db: list, probes: int = 2):
    """Upper bound on the t1-degree of gcd(a, b) from gcds at t2 = probe.

    Only probes where neither leading coefficient vanishes are used, so the
    specialized gcd has degree >= the true one.  Returns None when no probe
    qualifies.
    """
    best = None
    used = 0
    for x in _PROBES:
        la, lb = _u_eval(da[-1], x), _u_eval(db[-1], x)
        if not la or not lb:
            continue
        ua = _u_trim([_u_eval(r, x) for r in da])
        ub = _u_trim([_u_eval(r, x) for r in db])
        d = len(_u_gcd(ua, ub)) - 1
        best = d if best is None else min(best, d)
        used += 1
        if best == 0 or used == probes:
            break
    return best


def poly_gcd(a: Poly2, b: Poly2) -> Poly2:
    """Greatest common divisor over Q(i) with graded-lex leading coefficient 1."""
    g = _gcd(a, b)
    if g.is_zero():
        return g
    lead = g.leading()[1]
    return g if lead == 1 else g.scale(lead.inverse())


def _gcd(a: Poly2, b: Poly2) -> Poly2:
    """Greatest common divisor over Q(i), up to a unit.

    Monomial contents are split off first; the remaining primitive parts go
    through a primitive pseudo-remainder sequence in t1 over Q(i)[t2].
    """
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    ma, mb = _mono_content(a), _mono_content(b)
    mono = Poly2.monomial(min(ma[0], mb[0]), min(ma[1], mb[1]))
    a = a.exact_div(Poly2.monomial(*ma))
    b = b.exact_div(Poly2.monomial(*mb))
    if a.is_constant() or b.is_constant():
        return mono
    da, db = a._dense(), b._dense()
    ca, cb = _b_content(da), _b_content(db)
    c = _u_gcd(ca, cb)
    if len(da) == 1 or len(db) == 1 or _degree_bound(da, db) == 0:
        return mono * Poly2._from_dense([c])
    sa, sb = _swapped(a)._dense(), _swapped(b)._dense()
    if len(sa) == 1 or len(sb) == 1 or _degree_bound(sa, sb) == 0:
        c2 = _u_gcd(_b_content(sa), _b_content(sb))
        return mono * Poly2._from_dense([[x] for x in c2])
    da = [_u_divmod(x, ca)[0] for x in da]
    db = [_u_divmod(x, cb)[0] for x in db]
    if len(da) < len(db):
        da, db = db, da
    while True:
        r = _b_prem(da, db)
        if not r:
            g = db
            break
        if len(r) == 1:
            g = [[ONE_GR]]
            break
        cr = _b_content(r)
        da, db = db, [_u_divmod(x, cr)[0] for x in r]
    cg = _b_content(g)
    g = [_u_divmod(x, cg)[0] for x in g]
    return mono * Poly2._from_dense([_u_mul(c, x) for x in g])


class RatFunc:
    """Reduced fraction ``num/den`` of polynomials in t1, t2 over Q(i).

    Canonical form: ``gcd(num, den) = 1`` and the graded-lex leading
    coefficient of ``den`` is 1, so equality is structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=1):
        num = Poly2.coerce(num)
        den = Poly2.coerce(den)
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        self._hash = None
        if num.is_zero():
            self.num, self.den = num, Poly2.const(1)
            return
        if not den.is_constant():
            g = poly_gcd(num, den)
            if not g.is_constant():
                num = num.exact_div(g)
                den = den.exact_div(g)
        _, lc = den.leading()
        if lc != 1:
            inv = lc.inverse()
            num = num.scale(inv)
            den = den.scale(inv)
        self.num, self.den = num, den

    @classmethod
    def _raw(cls, num: Poly2, den: Poly2) -> "RatFunc":
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "RatFunc":
        return cls._raw(Poly2.const(c), Poly2.const(1))

    @staticmethod
    def coerce(x) -> "RatFunc":
        if type(x) is RatFunc:
            return x
        if isinstance(x, Poly2):
            return RatFunc._raw(x, Poly2.const(1))
        if isinstance(x, str):
            return RatFunc.parse(x)
        return RatFunc.const(x)

    # queries --------------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> GaussianRational:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.constant_term()

    def is_real(self) -> bool:
        return self.num.is_real() and self.den.is_real()

    def constant_ratio(self, other: "RatFunc"):
        """``self / other`` when it is a constant, else ``None``; no gcd needed."""
        if other.num.is_zero():
            raise DivisionByZero("ratio to the zero rational function")
        if self.num.is_zero():
            return ZERO_GR
        if self.den.terms != other.den.terms or self.num.terms.keys() != other.num.terms.keys():
            return None
        e, c = next(iter(other.num.terms.items()))
        ratio = self.num.terms[e] / c
        for e, c in other.num.terms.items():
            if self.num.terms[e] != c * ratio:
                return None
        return ratio

    def __bool__(self):
        return not self.num.is_zero()

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if type(other) is not RatFunc:
            if not isinstance(other, (int, Fraction, GaussianRational, Poly2)):
                return NotImplemented
            other = RatFunc.coerce(other)
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den == other.den:
            if self.den.is_constant():
                return RatFunc._raw(self.num + other.num, self.den)
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, (RatFunc, int, Fraction, GaussianRational, Poly2)):
            return NotImplemented
        return self + (-RatFunc.coerce(other))

    def __rsub__(self, other):
        return RatFunc.coerce(other) - self

    def __mul__(self, other):
        if type(other) is not RatFunc:
            if isinstance(other, (int, Fraction, GaussianRational)):
                c = GaussianRational.coerce(other)
                if not c:
                    return RAT_ZERO
                return RatFunc._raw(self.num.scale(c), self.den)
            if not isinstance(other, Poly2):
                return NotImplemented
            other = RatFunc.coerce(other)
        if self.num.is_zero() or other.num.is_zero():
            return RAT_ZERO
        if self.den.is_constant() and other.den.is_constant():
            return RatFunc._raw(self.num * other.num, self.den)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, (RatFunc, int, Fraction, GaussianRational, Poly2)):
            return NotImplemented
        other = RatFunc.coerce(other)
        if other.num.is_zero():
            raise DivisionByZero("division by the zero rational function")
        if other.is_constant():
            return self * other.num.constant_term().inverse()
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k)

    def conjugate(self) -> "RatFunc":
        """Apply complex conjugation to the coefficients (t1, t2 fixed)."""
        return RatFunc(self.num.conjugate(), self.den.conjugate())

    # evaluation -----------------------------------------------------------
    def specialize(self, t1v, t2v) -> GaussianRational:
        d = self.den.evaluate(t1v, t2v)
        if not d:
            raise PoleAtSpecialization(f"denominator of {self} vanishes at t1={t1v}, t2={t2v}")
        return self.num.evaluate(t1v, t2v) / d

    def substitute(self, p1, p2) -> "RatFunc":
        d = self.den.substitute(p1, p2)
        if d.is_zero():
            raise PoleAtSpecialization(f"denominator of {self} vanishes under the substitution")
        return RatFunc(self.num.substitute(p1, p2), d)

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if type(other) is not RatFunc:
            if isinstance(other, (int, Fraction, GaussianRational, Poly2)):
                other = RatFunc.coerce(other)
                other = RatFunc(other.num, other.den)
            else:
                return NotImplemented
        return self.num.terms == other.num.terms and self.den.terms == other.den.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        n = str(self.num)
        if len(self.num.terms) > 1 or "/" in n:
            n = f"({n})"
        return f"{n}/({self.den})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "RatFunc":
        return cls(Poly2.from_json(data["num"]), Poly2.from_json(data["den"]))

    @classmethod
    def parse(cls, text: str) -> "RatFunc":
        """Parse an arithmetic expression in ``t1``, ``t2`` and ``i``.

        Integers, ``+ - * /``, parentheses and integer powers (``**`` or
        ``^``) are accepted, e.g. ``"(t1+t2)/(2*t1*t2)"`` or ``"1/2 - 3*i"``.
        """
        tree = ast.parse(text.strip().replace("^", "**"), mode="eval")
        return RatFunc.coerce(_eval_node(tree.body))


RAT_ZERO = RatFunc.const(0)
ZERO = RAT_ZERO
ONE = RatFunc.const(1)

_NAMES = {"t1": RatFunc.coerce(T1), "t2": RatFunc.coerce(T2), "i": RatFunc.const(I), "I": RatFunc.const(I)}


def _eval_node(node):
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return RatFunc.const(node.value)
    if isinstance(node, ast.Name) and node.id in _NAMES:
        return _NAMES[node.id]
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_node(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        left = _eval_node(node.left)
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                raise ValueError("exponents must be integer literals")
            return left ** node.right.value
        right = _eval_node(node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            return left / right
    raise ValueError(f"unsupported expression element: {ast.dump(node)}")


def field_arith(a, b, op: str) -> RatFunc:
    a, b = RatFunc.coerce(a), RatFunc.coerce(b)
    if op in ("add", "+"):
        return a + b
    if op in ("sub", "-"):
        return a - b
    if op in ("mul", "*"):
        return a * b
    if op in ("div", "/"):
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def specialize(f, t1v, t2v) -> GaussianRational:
    return RatFunc.coerce(f).specialize(t1v, t2v)
