"""Sparse exact Laurent polynomials in ``a``, ``q``, ``t``.

Three value types live here:

* :class:`LaurentPoly` -- integer Laurent polynomial in a, q, t, stored as a
  map from exponent triples to nonzero Python ints.
* :class:`RationalInvariant` -- ``num / (q - q^-1)**dpow``; the denominator is
  always a power of ``q - q^-1``, which is all that link HOMFLY polynomials need.
* :class:`GaussianInt` -- elements of Z[i], used for evaluations at
  ``a = -1, q = i``.

All three are immutable.
"""
from __future__ import annotations

import json
from collections import defaultdict
from typing import Mapping

from .errors import DenominatorVanishes, NonIntegralQuotient

__all__ = [
    "LaurentPoly",
    "RationalInvariant",
    "GaussianInt",
    "DenominatorVanishes",
    "NonIntegralQuotient",
    "A",
    "Q",
    "T",
    "ONE",
    "ZERO",
    "Z",
    "poly_ring_ops",
    "rat_normalize",
    "rat_arith",
    "substitute_a",
    "evaluate_unit",
    "UNITS",
]


Exp = tuple  # (e_a, e_q, e_t)


class LaurentPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exp, int] | None = None):
        clean = {}
        if terms:
            for k, c in terms.items():
                if c:
                    if len(k) != 3:
                        raise ValueError(f"exponent key must be a triple, got {k!r}")
                    clean[(int(k[0]), int(k[1]), int(k[2]))] = int(c)
        self._terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def monomial(cls, c: int = 1, a: int = 0, q: int = 0, t: int = 0) -> "LaurentPoly":
        return cls({(a, q, t): c})

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({(0, 0, 0): c})

    @classmethod
    def _promote(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return cls.const(x)
        return NotImplemented

    # mapping-like access
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(sorted(self._terms))

    def coeff(self, a: int = 0, q: int = 0, t: int = 0) -> int:
        return self._terms.get((a, q, t), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    # ring operations
    def __eq__(self, other):
        other = LaurentPoly._promote(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self._terms.items()})

    def __add__(self, other):
        other = LaurentPoly._promote(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = LaurentPoly._promote(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = LaurentPoly._promote(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = defaultdict(int)
        for (a1, q1, t1), c1 in self._terms.items():
            for (a2, q2, t2), c2 in other._terms.items():
                out[(a1 + a2, q1 + q2, t1 + t2)] += c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials can be raised to negative powers")
            ((a, q, t), c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("monomial inverse needs a unit coefficient")
            return LaurentPoly({(-a * -n, -q * -n, -t * -n): c ** (-n)})
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, a: int = 0, q: int = 0, t: int = 0) -> "LaurentPoly":
        """Multiply by the monomial a^a q^q t^t."""
        return LaurentPoly({(ea + a, eq + q, et + t): c for (ea, eq, et), c in self._terms.items()})

    def scale(self, c: int) -> "LaurentPoly":
        return LaurentPoly({k: c * v for k, v in self._terms.items()})

    # substitutions and evaluations
    def map_exponents(self, f) -> "LaurentPoly":
        out: dict = defaultdict(int)
        for k, c in self._terms.items():
            out[f(*k)] += c
        return LaurentPoly(out)

    def mirror(self) -> "LaurentPoly":
        """a -> a^-1, q -> q^-1."""
        return self.map_exponents(lambda a, q, t: (-a, -q, t))

    def at_t(self, value: int) -> "LaurentPoly":
        """Substitute t = +1 or t = -1."""
        if value not in (1, -1):
            raise ValueError("t may only be specialised to +1 or -1")
        out: dict = defaultdict(int)
        for (a, q, t), c in self._terms.items():
            out[(a, q, 0)] += c * (value ** (t % 2))
        return LaurentPoly(out)

    def total(self) -> int:
        """Sum of coefficients (evaluation at a = q = t = 1)."""
        return sum(self._terms.values())

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self._terms.values())

    def exponents(self, var: str) -> set:
        i = "aqt".index(var)
        return {k[i] for k in self._terms}

    # serialization
    def to_json_obj(self) -> dict:
        return {
            "terms": [
                {"a": a, "q": q, "t": t, "c": str(c)}
                for (a, q, t), c in sorted(self._terms.items())
            ]
        }

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "LaurentPoly":
        return cls({(int(d["a"]), int(d["q"]), int(d["t"])): int(d["c"]) for d in obj["terms"]})

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json(cls, s: str) -> "LaurentPoly":
        return cls.from_json_obj(json.loads(s))

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for (a, q, t), c in sorted(self._terms.items()):
            mono = []
            for name, e in (("a", a), ("q", q), ("t", t)):
                if e == 1:
                    mono.append(name)
                elif e:
                    mono.append(f"{name}^{e}")
            body = "*".join(mono)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
A = LaurentPoly.monomial(a=1)
Q = LaurentPoly.monomial(q=1)
T = LaurentPoly.monomial(t=1)
# q - q^-1
Z = LaurentPoly({(0, 1, 0): 1, (0, -1, 0): -1})


def poly_ring_ops(p: LaurentPoly, r: LaurentPoly, op: str) -> LaurentPoly:
    if op == "add":
        return p + r
    if op == "sub":
        return p - r
    if op == "mul":
        return p * r
    raise ValueError(f"unknown op {op!r}")


def _divide_by_z(p: LaurentPoly):
    """Exact division by q - q^-1, or None if it does not divide."""
    if p.is_zero():
        return ZERO
    # slice by (a, t); divide each q-slice by q^2 - 1, then multiply by q
    slices: dict = defaultdict(dict)
    for (a, q, t), c in p.items():
        slices[(a, t)][q] = c
    out = {}
    for (a, t), sl in slices.items():
        r = dict(sl)
        lo, hi = min(r), max(r)
        quot = {}
        for d in range(hi, lo + 1, -1):
            c = r.pop(d, 0)
            if c:
                quot[d - 2] = quot.get(d - 2, 0) + c
                r[d - 2] = r.get(d - 2, 0) + c
        if any(r.values()):
            return None
        for d, c in quot.items():
            if c:
                out[(a, d + 1, t)] = c
    return LaurentPoly(out)


class RationalInvariant:
    """``num / (q - q^-1)**dpow`` kept in lowest terms."""

    __slots__ = ("num", "dpow")

    def __init__(self, num: LaurentPoly, dpow: int = 0, _reduced: bool = False):
        if dpow < 0:
            num = num * Z ** (-dpow)
            dpow = 0
        if not _reduced:
            num, dpow = _reduce(num, dpow)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "dpow", dpow)

    def __setattr__(self, name, value):
        raise AttributeError("RationalInvariant is immutable")

    @classmethod
    def _promote(cls, x):
        if isinstance(x, RationalInvariant):
            return x
        if isinstance(x, (LaurentPoly, int)):
            return cls(LaurentPoly._promote(x), 0)
        return NotImplemented

    def is_laurent(self) -> bool:
        return self.dpow == 0

    def __eq__(self, other):
        other = RationalInvariant._promote(other)
        if other is NotImplemented:
            return NotImplemented
        return self.dpow == other.dpow and self.num == other.num

    def __hash__(self):
        return hash((self.num, self.dpow))

    def __neg__(self):
        return RationalInvariant(-self.num, self.dpow, _reduced=True)

    def _common(self, other):
        d = max(self.dpow, other.dpow)
        return self.num * Z ** (d - self.dpow), other.num * Z ** (d - other.dpow), d

    def __add__(self, other):
        other = RationalInvariant._promote(other)
        if other is NotImplemented:
            return NotImplemented
        x, y, d = self._common(other)
        return RationalInvariant(x + y, d)

    __radd__ = __add__

    def __sub__(self, other):
        other = RationalInvariant._promote(other)
        if other is NotImplemented:
            return NotImplemented
        x, y, d = self._common(other)
        return RationalInvariant(x - y, d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = RationalInvariant._promote(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalInvariant(self.num * other.num, self.dpow + other.dpow)

    __rmul__ = __mul__

    def to_json_obj(self) -> dict:
        obj = self.num.to_json_obj()
        obj["dpow"] = self.dpow
        return obj

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "RationalInvariant":
        return cls(LaurentPoly.from_json_obj(obj), int(obj.get("dpow", 0)))

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json(cls, s: str) -> "RationalInvariant":
        return cls.from_json_obj(json.loads(s))

    def __repr__(self):
        return f"RationalInvariant({self})"

    def __str__(self):
        if self.dpow == 0:
            return str(self.num)
        den = "(q - q^-1)" if self.dpow == 1 else f"(q - q^-1)^{self.dpow}"
        return f"({self.num})/{den}"


def _reduce(num: LaurentPoly, dpow: int):
    while dpow > 0:
        nxt = _divide_by_z(num)
        if nxt is None:
            break
        num, dpow = nxt, dpow - 1
    return num, dpow


def rat_normalize(num: LaurentPoly, dpow: int) -> RationalInvariant:
    if dpow < 0:
        raise ValueError("dpow must be nonnegative")
    return RationalInvariant(num, dpow)


def rat_arith(x: RationalInvariant, y: RationalInvariant, op: str) -> RationalInvariant:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown op {op!r}")


def substitute_a(p: LaurentPoly, N: int) -> LaurentPoly:
    """a^m q^n t^l -> q^(n + N m) t^l."""
    return p.map_exponents(lambda a, q, t: (0, q + N * a, t))


class GaussianInt:
    __slots__ = ("re", "im")

    def __init__(self, re: int = 0, im: int = 0):
        object.__setattr__(self, "re", int(re))
        object.__setattr__(self, "im", int(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianInt is immutable")

    @classmethod
    def _promote(cls, x):
        if isinstance(x, GaussianInt):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        return NotImplemented

    def __eq__(self, other):
        other = GaussianInt._promote(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __add__(self, other):
        other = GaussianInt._promote(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianInt(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianInt(-self.re, -self.im)

    def __sub__(self, other):
        other = GaussianInt._promote(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = GaussianInt._promote(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianInt(self.re * other.re - self.im * other.im,
                           self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.unit_inverse() ** (-n)
        out = GaussianInt(1)
        for _ in range(n):
            out = out * self
        return out

    def conj(self):
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def is_unit(self) -> bool:
        return self.norm() == 1

    def unit_inverse(self):
        if not self.is_unit():
            raise ValueError(f"{self} is not a unit")
        return self.conj()

    def exact_div(self, d: "GaussianInt") -> "GaussianInt":
        n = d.norm()
        if n == 0:
            raise DenominatorVanishes("division by zero in Z[i]")
        num = self * d.conj()
        if num.re % n or num.im % n:
            raise NonIntegralQuotient(f"{self} is not divisible by {d} in Z[i]")
        return GaussianInt(num.re // n, num.im // n)

    def abs_if_axis(self):
        """|z| when z lies on a coordinate axis (the only case for link determinants)."""
        if self.re == 0:
            return abs(self.im)
        if self.im == 0:
            return abs(self.re)
        return None

    def phase_pow(self):
        """k in 0..3 with z = |z| i^k, or None if z is zero or off-axis."""
        if self.re == 0 and self.im == 0:
            return None
        if self.im == 0:
            return 0 if self.re > 0 else 2
        if self.re == 0:
            return 1 if self.im > 0 else 3
        return None

    def __repr__(self):
        return f"GaussianInt({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        return f"{self.re}{self.im:+d}i"


I_UNIT = GaussianInt(0, 1)
UNITS = (GaussianInt(1), GaussianInt(-1), I_UNIT, GaussianInt(0, -1))


def _eval_poly(p: LaurentPoly, a_val: GaussianInt, q_val: GaussianInt, t_val: GaussianInt) -> GaussianInt:
    pa = [a_val ** k for k in range(4)]
    pq = [q_val ** k for k in range(4)]
    pt = [t_val ** k for k in range(4)]
    total = GaussianInt(0)
    for (ea, eq, et), c in p.items():
        # units have order dividing 4
        total = total + pa[ea % 4] * pq[eq % 4] * pt[et % 4] * c
    return total


def evaluate_unit(x, a_val, q_val, t_val=GaussianInt(1)) -> GaussianInt:
    """Evaluate at fourth roots of unity, exactly in Z[i]."""
    x = RationalInvariant._promote(x)
    a_val, q_val, t_val = (GaussianInt._promote(v) for v in (a_val, q_val, t_val))
    for v in (a_val, q_val, t_val):
        if not v.is_unit():
            raise ValueError(f"{v} is not a fourth root of unity")
    num = _eval_poly(x.num, a_val, q_val, t_val)
    if x.dpow == 0:
        return num
    den = q_val - q_val.unit_inverse()
    if den.norm() == 0:
        raise DenominatorVanishes("q - q^-1 vanishes at this point")
    return num.exact_div(den ** x.dpow)
