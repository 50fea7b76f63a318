"""Thin links: superpolynomials, reduced Poincare polynomials and certificates.

A thin knot's reduced sl(N) homology is read off from its HOMFLY polynomial
and signature.  For two-component links the HOMFLY splits as a Laurent part
plus an explicit rational summand whose homology is a truncated polynomial
ring.  Two-bridge links are proved thin by induction on the determinant; the
producer here records that induction as a certificate tree and the verifier
re-checks every step from the diagrams alone.
"""
from __future__ import annotations

import json
from functools import lru_cache
from math import gcd
from dataclasses import dataclass, field

from .diagram import (
    PlanarDiagram,
    TwoBridgeCode,
    _odd_form,
    canonical_key,
    cf_to_pq,
    continued_fraction,
    normalize_code,
    plat_diagram,
    resolve,
    singular_plat_type,
    theta_diagram,
    trace_components,
    untwist_step,
)
from .errors import (
    DiagramsNotRelated,
    FractionalRemainder,
    InternalInconsistency,
    InvalidParameter,
    NotAKnot,
    NotAlternating,
    ParityViolation,
    ZeroDeterminant,
)
from .homfly import default_engine, homfly_twist, homfly_untwist
from .invariants import complex_det, signature_regular, signature_singular
from .laurent import (
    A,
    ONE,
    Q,
    T,
    GaussianInt,
    LaurentPoly,
    RationalInvariant,
    substitute_a,
)

__all__ = [
    "ThinDecomposition",
    "ThinCertificate",
    "is_alternating",
    "superpolynomial",
    "poincare_thin_knot",
    "decompose_link",
    "q_summand",
    "poincare_thin_link",
    "poincare_from_invariants",
    "delta_homogeneous",
    "euler_check",
    "substitution_form",
    "certify_two_bridge",
    "verify_certificate",
    "criterion_crossing_change",
    "crossing_change_candidates",
    "certify_sweep",
    "two_bridge_codes",
    "descriptor_diagram",
    "link_data",
]


# ---------------------------------------------------------------------------
# superpolynomials

def _term_phase(c: int, m: int, n: int) -> GaussianInt:
    return GaussianInt(c) * GaussianInt(-1) ** (m % 2) * GaussianInt(0, 1) ** (n % 4)


def is_alternating(P) -> bool:
    """All terms c a^m q^n give c (-1)^m i^n of one common phase."""
    P = _laurent(P)
    phases = set()
    for (m, n, t), c in P.items():
        if t:
            raise InvalidParameter("expected a polynomial in a and q only")
        v = _term_phase(c, m, n)
        phases.add(v.phase_pow())
    return len(phases) <= 1


def superpolynomial(P, sigma: int) -> LaurentPoly:
    """Sum of |c| a^m q^n t^((sigma - 2m - n) / 2)."""
    P = _laurent(P)
    if not is_alternating(P):
        raise NotAlternating("HOMFLY polynomial is not alternating")
    out = {}
    for (m, n, _), c in P.items():
        twice = sigma - 2 * m - n
        if twice % 2:
            raise ParityViolation(f"odd t-degree for a^{m} q^{n} with sigma {sigma}")
        out[(m, n, twice // 2)] = abs(c)
    return LaurentPoly(out)


def _laurent(P) -> LaurentPoly:
    if isinstance(P, RationalInvariant):
        if P.dpow:
            raise FractionalRemainder("expected a Laurent polynomial")
        return P.num
    return P


def delta_homogeneous(poly: LaurentPoly, expected: int) -> bool:
    """Every term a^m q^n t^l has 2l + 2m + n equal to ``expected``."""
    return all(2 * l + 2 * m + n == expected for (m, n, l) in poly.terms)


# ---------------------------------------------------------------------------
# decomposition of two-component links

@dataclass(frozen=True)
class ThinDecomposition:
    ptilde: LaurentPoly
    sigma: int
    twice_lk: int
    has_q_part: bool


def _q_homfly(sigma: int, twice_lk: int) -> RationalInvariant:
    """q^sigma (-a)^(2 lk) (a q^-1 - a^-1 q) / (q - q^-1)."""
    lead = Q ** sigma * (-A) ** twice_lk
    return RationalInvariant(lead * (A * Q ** -1 - A ** -1 * Q), 1)


def decompose_link(P: RationalInvariant, sigma: int, twice_lk: int, i_parity=None) -> ThinDecomposition:
    """Split off the rational summand of a two-component link's HOMFLY."""
    if sigma is None:
        raise ZeroDeterminant("signature undefined (determinant zero)")
    if complex_det(P).norm() == 0:
        raise ZeroDeterminant("determinant is zero")
    if i_parity is not None and (sigma - i_parity) % 2:
        raise ParityViolation("i(L) and sigma have different parity")
    rest = RationalInvariant._promote(P) - _q_homfly(sigma, twice_lk)
    if rest.dpow:
        raise FractionalRemainder("the remainder is not a Laurent polynomial")
    return ThinDecomposition(rest.num, sigma, twice_lk, True)


def q_summand(N: int, sigma: int, twice_lk: int) -> LaurentPoly:
    """q^sigma (q^N t^-1)^(2 lk) (q^(2-N) + q^(4-N) + ... + q^(N-2))."""
    if N < 2:
        raise InvalidParameter("N must be at least 2")
    base = LaurentPoly({(0, j, 0): 1 for j in range(2 - N, N - 1, 2)})
    return base.shift(q=sigma + N * twice_lk, t=-twice_lk)


def _check_N(N: int, conjectural: bool):
    if not isinstance(N, int) or N < 2:
        raise InvalidParameter("N must be an integer >= 2")
    if N <= 4 and not conjectural:
        raise InvalidParameter("N <= 4 needs conjectural=True")


def poincare_from_invariants(P, sigma: int, twice_lk: int, components: int, N: int) -> LaurentPoly:
    """Reduced Poincare polynomial of a thin link with the given data."""
    if components == 1:
        return substitute_a(superpolynomial(P, sigma), N)
    if components != 2:
        raise InvalidParameter("only knots and two-component links are supported")
    dec = decompose_link(P, sigma, twice_lk)
    return substitute_a(superpolynomial(dec.ptilde, sigma), N) + q_summand(N, sigma, twice_lk)


def poincare_split(P, sigma: int, twice_lk: int, components: int, N: int) -> tuple:
    """(Laurent part, rational-summand part) of the Poincare polynomial."""
    if components == 1:
        return substitute_a(superpolynomial(P, sigma), N), LaurentPoly()
    dec = decompose_link(P, sigma, twice_lk)
    return substitute_a(superpolynomial(dec.ptilde, sigma), N), q_summand(N, sigma, twice_lk)


class LinkData:
    """HOMFLY, signature data and component data of one diagram."""

    __slots__ = ("diagram", "homfly", "sig", "components", "twice_lk")

    def __init__(self, D: PlanarDiagram, engine=None):
        engine = engine or default_engine()
        self.diagram = D
        if D.is_singular:
            self.homfly = engine.homfly_singular(D)
            self.sig = signature_singular(D, engine)
        else:
            self.homfly = engine.homfly(D)
            self.sig = signature_regular(D, engine=engine)
        lc = trace_components(D)
        self.components = lc.num_components
        self.twice_lk = lc.twice_lk if lc.twice_lk is not None else 0

    @property
    def det(self) -> int:
        return self.sig.det

    @property
    def sigma(self) -> int:
        return self.sig.sigma

    def poincare(self, N: int) -> LaurentPoly:
        return poincare_from_invariants(self.homfly, self.sigma, self.twice_lk, self.components, N)

    def split(self, N: int) -> tuple:
        return poincare_split(self.homfly, self.sigma, self.twice_lk, self.components, N)

    def signature_key(self) -> tuple:
        return (self.homfly, self.sigma, self.twice_lk, self.components)


def link_data(D: PlanarDiagram, engine=None) -> LinkData:
    return LinkData(D, engine)


def _code_diagram(code, bit: int = 0) -> PlanarDiagram:
    if isinstance(code, PlanarDiagram):
        return code
    if isinstance(code, tuple) and len(code) == 2:
        code = normalize_code(*code)
    return plat_diagram(_odd_form(code.cf), bit)


def poincare_thin_knot(code, N: int, engine=None, conjectural: bool = False) -> LaurentPoly:
    _check_N(N, conjectural)
    D = _code_diagram(code)
    ld = LinkData(D, engine)
    if ld.components != 1:
        raise NotAKnot("input has more than one component")
    if ld.det == 0:
        raise ZeroDeterminant("determinant is zero")
    return ld.poincare(N)


def poincare_thin_link(x, N: int, bit: int = 0, engine=None, conjectural: bool = False) -> LaurentPoly:
    """For a code, diagram (regular or singular) of a two-component link."""
    _check_N(N, conjectural)
    D = _code_diagram(x, bit)
    ld = LinkData(D, engine)
    if ld.components != 2:
        raise InvalidParameter("expected a two-component link")
    if ld.det == 0:
        raise ZeroDeterminant("determinant is zero")
    return ld.poincare(N)


def euler_check(PN: LaurentPoly, P, N: int) -> bool:
    """Setting t = -1 in the Poincare polynomial gives P(q^N, q).

    For links P carries powers of z = q - q^-1 in the denominator, so both
    sides are multiplied by z^dpow before comparing.
    """
    P = RationalInvariant._promote(P)
    return PN.at_t(-1) * _z_power(P.dpow) == substitute_a(P.num, N)


def _z_power(k: int) -> LaurentPoly:
    return (Q - Q ** -1) ** k


def substitution_form(P, sigma: int, N: int) -> LaurentPoly:
    """(-t)^(sigma/2) P(q^N t^-1, i q t^(-1/2)) for a knot with even sigma.

    Computed on a doubled lattice u = t^(1/2); every u-exponent must come out
    even and every coefficient real.
    """
    P = _laurent(P)
    if sigma % 2:
        raise ParityViolation("signature must be even")
    sign = -1 if (sigma // 2) % 2 else 1
    out = {}
    for (m, n, t), c in P.items():
        coef = GaussianInt(c * sign) * GaussianInt(0, 1) ** (n % 4)
        if coef.im:
            raise ParityViolation("odd q-degree in a knot polynomial")
        u = sigma - 2 * m - n
        if u % 2:
            raise ParityViolation("half-integral t-degree")
        key = (0, N * m + n, u // 2)
        out[key] = out.get(key, 0) + coef.re
    return LaurentPoly(out)


# ---------------------------------------------------------------------------
# certificates

KINDS = ("base_unknot", "base_theta", "twist_step", "skein_regular", "skein_singular_A", "skein_singular_B")


@dataclass
class ThinCertificate:
    kind: str
    link: dict
    det: int
    sigma: int
    twice_lk: int
    N: int
    shifts: list = field(default_factory=list)
    children: list = field(default_factory=list)
    sequence: list = field(default_factory=list)
    twist_sign: int | None = None

    def to_json_obj(self) -> dict:
        obj = {
            "kind": self.kind,
            "link": self.link,
            "det": self.det,
            "sigma": self.sigma,
            "twice_lk": self.twice_lk,
            "N": self.N,
            "shifts": [list(s) for s in self.shifts],
            "sequence": list(self.sequence),
            "children": [c.to_json_obj() for c in self.children],
        }
        if self.twist_sign is not None:
            obj["twist_sign"] = self.twist_sign
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict) -> "ThinCertificate":
        return cls(
            kind=obj["kind"],
            link=dict(obj["link"]),
            det=obj["det"],
            sigma=obj["sigma"],
            twice_lk=obj["twice_lk"],
            N=obj["N"],
            shifts=[tuple(s) for s in obj.get("shifts", [])],
            children=[cls.from_json_obj(c) for c in obj.get("children", [])],
            sequence=list(obj.get("sequence", [])),
            twist_sign=obj.get("twist_sign"),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json(cls, s: str) -> "ThinCertificate":
        return cls.from_json_obj(json.loads(s))

    def count(self) -> int:
        return 1 + sum(c.count() for c in self.children)


def _regular_desc(code, bit: int) -> dict:
    cf = list(_odd_form(code.cf)) if code.p else []
    return {"type": "regular", "p": code.p, "q": code.q, "cf": cf, "orientation": bit if code.p % 2 == 0 else 0,
            "twists": 0}


def _singular_desc(code, bit: int, twists: int) -> dict:
    return {"type": "singular", "p": code.p, "q": code.q, "cf": list(_odd_form(code.cf)), "orientation": bit,
            "twists": twists}


def descriptor_diagram(desc: dict) -> PlanarDiagram:
    """Rebuild the diagram a link descriptor stands for."""
    if desc["type"] == "regular":
        if desc["p"] == 1:
            return plat_diagram([1])
        return plat_diagram(desc["cf"], desc["orientation"])
    return _singular_diagram(tuple(desc["cf"]), desc["orientation"], desc["twists"])


@lru_cache(maxsize=8192)
def _singular_diagram(cf: tuple, bit: int, twists: int) -> PlanarDiagram:
    if twists == 0:
        return plat_diagram(cf, bit, singular_top=True)
    D, sign = untwist_step(_singular_diagram(cf, bit, twists - 1))
    if sign is None:
        raise InternalInconsistency("descriptor asks for more twists than the diagram has")
    return D


def _desc_key(desc: dict) -> str:
    return json.dumps(desc, sort_keys=True)


def _from_fraction(num: int, den: int):
    """Normalized code of the link whose expansion evaluates to num/den."""
    if num == 0:
        return normalize_code(0, 0)
    p = abs(num)
    q = (den if num > 0 else -den) % p
    return normalize_code(p, q)


def _pq(cf) -> tuple:
    return cf_to_pq(cf) if cf else (1, 0)


def _shift(d) -> LaurentPoly:
    return LaurentPoly({(0, d[1], d[0]): 1})


def _inv_shift(d) -> LaurentPoly:
    return LaurentPoly({(0, -d[1], -d[0]): 1})


# grading shifts of the three maps in the two skein sequences
def _seq_minus(N):  # Ls -> L- -> L0 -> Ls
    return (("Ls", "L-", "L0"), ((1, -N), (0, N - 1), (0, 1)))


def _seq_plus(N):  # L0 -> L+ -> Ls -> L0
    return (("L0", "L+", "Ls"), ((0, N - 1), (1, -N), (0, 1)))


def _rotate(seq, middle: str):
    names, shifts = seq
    k = names.index(middle)
    k = (k - 1) % 3
    return names[k:] + names[:k], shifts[k:] + shifts[:k]


class _Producer:
    def __init__(self, N: int, engine):
        self.N = N
        self.engine = engine or default_engine()
        self._data = {}
        self._memo = {}

    def data(self, desc: dict) -> LinkData:
        key = _desc_key(desc)
        if key not in self._data:
            self._data[key] = LinkData(descriptor_diagram(desc), self.engine)
        return self._data[key]

    def diagram_data(self, D: PlanarDiagram) -> LinkData:
        key = canonical_key(D)
        if key not in self._data:
            self._data[key] = LinkData(D, self.engine)
        return self._data[key]

    def identify(self, D: PlanarDiagram, predicted) -> dict:
        """Regular descriptor with the same invariants as ``D``, drawn from
        the predicted code; a miss is a hard failure."""
        target = self.diagram_data(D).signature_key()
        if predicted.p == 0:
            raise InternalInconsistency("resolution predicted to be the unlink")
        bits = (0, 1) if predicted.p % 2 == 0 else (0,)
        for bit in bits:
            desc = _regular_desc(predicted, bit)
            if self.data(desc).signature_key() == target:
                return desc
        raise InternalInconsistency(f"resolution does not match predicted K({predicted.p},{predicted.q})")

    def node(self, kind, desc, ld, shifts=(), children=(), sequence=(), twist_sign=None):
        return ThinCertificate(kind, desc, ld.det, ld.sigma, ld.twice_lk, self.N, list(shifts), list(children),
                               list(sequence), twist_sign)

    def regular(self, code, bit: int) -> ThinCertificate:
        desc = _regular_desc(code, bit)
        key = _desc_key(desc)
        if key in self._memo:
            return self._memo[key]
        ld = self.data(desc)
        if ld.det == 0:
            raise ZeroDeterminant("the unlink is not thin")
        if code.p == 1:
            cert = self.node("base_unknot", desc, ld)
            self._memo[key] = cert
            return cert
        cf = desc["cf"]
        p, q = code.p, code.q
        typ = singular_plat_type(cf, desc["orientation"])
        vertical = _from_fraction(p - q, q)
        # dropping the first block flips the handedness of every later block
        horizontal = _from_fraction(q, -(p % q))
        D = ld.diagram
        sign = D.crossings[0].kind
        L0 = resolve(D, 0, "oriented_smooth")
        c0 = self.identify(L0, vertical if typ == "A" else horizontal)
        cs = self.singular(code, desc["orientation"], 0)
        kids = {"L0": self.regular(normalize_code(c0["p"], c0["q"]), c0["orientation"]), "Ls": cs}
        middle = "L-" if sign == -1 else "L+"
        seq = _seq_minus(self.N) if sign == -1 else _seq_plus(self.N)
        names, shifts = _rotate(seq, middle)
        cert = self.node("skein_regular", desc, ld, shifts, [kids[names[0]], kids[names[2]]], names)
        self._memo[key] = cert
        return cert

    def singular(self, code, bit: int, twists: int) -> ThinCertificate:
        desc = _singular_desc(code, bit, twists)
        key = _desc_key(desc)
        if key in self._memo:
            return self._memo[key]
        ld = self.data(desc)
        if ld.det == 0:
            raise ZeroDeterminant("singular link with zero determinant")
        D = ld.diagram
        nxt, sign = untwist_step(D)
        if sign is not None:
            child = self.singular(code, bit, twists + 1)
            shift = (1, -self.N - 1) if sign == -1 else (-1, self.N + 1)
            cert = self.node("twist_step", desc, ld, [shift], [child], twist_sign=sign)
        elif canonical_key(D) == canonical_key(theta_diagram()):
            cert = self.node("base_theta", desc, ld)
        else:
            cert = self.singular_skein(code, desc, ld)
        self._memo[key] = cert
        return cert

    def singular_skein(self, code, desc, ld) -> ThinCertificate:
        cf = desc["cf"]
        typ = singular_plat_type(cf, desc["orientation"])
        predicted = singular_predictions(cf, typ)
        if predicted["twists"] != desc["twists"]:
            raise InternalInconsistency(
                f"expected {predicted['twists']} twists for type {typ}, found {desc['twists']}")
        D = ld.diagram
        s = D.singular_index
        L0 = resolve(D, s, "oriented_smooth")
        Lp = resolve(D, s, "make_positive")
        Lm = resolve(D, s, "make_negative")
        d0 = self.diagram_data(L0).det
        which = [name for name, X in (("L+", Lp), ("L-", Lm)) if self.diagram_data(X).det + d0 == ld.det]
        if len(which) != 1:
            raise InternalInconsistency("no resolution with additive determinant")
        name = which[0]
        Lx = Lp if name == "L+" else Lm
        c0 = self.identify(L0, predicted["L0"])
        cx = self.identify(Lx, predicted["Lx"])
        kids = {
            "L0": self.regular(normalize_code(c0["p"], c0["q"]), c0["orientation"]),
            name: self.regular(normalize_code(cx["p"], cx["q"]), cx["orientation"]),
        }
        seq = _seq_minus(self.N) if name == "L-" else _seq_plus(self.N)
        names, shifts = _rotate(seq, "Ls")
        kind = "skein_singular_A" if predicted["case"] == "A" else "skein_singular_B"
        return self.node(kind, desc, ld, shifts, [kids[names[0]], kids[names[2]]], names)


def singular_predictions(cf, typ: str) -> dict:
    """Expected resolutions of a special singular plat after untwisting.

    Type A (both strands enter the singular crossing from the same side):
    the other crossings of the top block untwist, leaving L0 = [a3, ...] and
    the crossing change [-1, a2, ...].  Type B with a1 >= 2: L0 = [a2, ...]
    and [a1 - 2, a2, ...], where dropping the first block mirrors the plat
    (so [a2, ...] means the mirror of its code).  Type B with a1 = 1: the a2 crossings of the
    second block untwist and the expansion [a3 + 1, a4, ...] is treated as
    type B.
    """
    cf = list(cf)
    a1 = cf[0]
    if typ == "A":
        p1, q1 = _pq(cf[1:])
        return {"case": "A", "twists": a1 - 1, "L0": _from_fraction(q1, p1), "Lx": _from_fraction(q1 - p1, p1)}
    if a1 >= 2:
        p1, q1 = _pq(cf[1:])
        p, q = _pq(cf)
        return {"case": "B", "twists": 0, "L0": _from_fraction(p1, -q1), "Lx": _from_fraction(p - 2 * q, q)}
    if len(cf) < 3:
        raise InternalInconsistency("type B with a single crossing")
    eff = [cf[2] + 1] + cf[3:]
    inner = singular_predictions(eff, "B")
    inner["twists"] = cf[1]
    return inner


def certify_two_bridge(code, N: int = 5, bit: int = 0, engine=None, conjectural: bool = False,
                       producer=None) -> ThinCertificate:
    """Certificate tree proving K(p, q) thin, by induction on the determinant."""
    _check_N(N, conjectural)
    if not isinstance(code, TwoBridgeCode):
        code = normalize_code(*code)
    if code.p == 0:
        raise ZeroDeterminant("the unlink has determinant zero")
    prod = producer or _Producer(N, engine)
    return prod.regular(code, bit)


# ---------------------------------------------------------------------------
# verification

@dataclass
class VerificationReport:
    nodes: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, desc: dict, check: str, detail: str = ""):
        self.failures.append({"node": desc, "check": check, "detail": detail})

    def to_json_obj(self) -> dict:
        return {"nodes": self.nodes, "ok": self.ok, "failures": self.failures}


def _lowest_q(poly: LaurentPoly) -> LaurentPoly:
    if poly.is_zero():
        return poly
    k = min(poly.terms, key=lambda e: e[1])
    return LaurentPoly({k: poly.terms[k]})


def _highest_q(poly: LaurentPoly) -> LaurentPoly:
    if poly.is_zero():
        return poly
    k = max(poly.terms, key=lambda e: e[1])
    return LaurentPoly({k: poly.terms[k]})


class _Verifier:
    def __init__(self, N: int, engine, report: VerificationReport, memo: dict | None = None):
        self.N = N
        self.engine = engine or default_engine()
        self.report = report
        memo = {} if memo is None else memo
        self._done = memo.setdefault(("done", N), {})
        self._data = memo.setdefault("data", {})

    def data(self, desc) -> LinkData:
        key = _desc_key(desc)
        if key not in self._data:
            self._data[key] = LinkData(descriptor_diagram(desc), self.engine)
        return self._data[key]

    def diagram_data(self, D: PlanarDiagram) -> LinkData:
        key = canonical_key(D)
        if key not in self._data:
            self._data[key] = LinkData(D, self.engine)
        return self._data[key]

    def visit(self, cert: ThinCertificate) -> bool:
        key = json.dumps(cert.to_json_obj(), sort_keys=True)
        if key in self._done:
            # replay the failures found the first time this subtree was seen
            self.report.failures.extend(self._done[key])
            return not self._done[key]
        self.report.nodes += 1
        before = len(self.report.failures)
        try:
            self.check(cert)
        except Exception as exc:  # a crash inside a check is a failure of that node
            self.report.fail(cert.link, "exception", f"{type(exc).__name__}: {exc}")
        for child in cert.children:
            self.visit(child)
        found = self.report.failures[before:]
        self._done[key] = list(found)
        return not found

    def check(self, cert: ThinCertificate):
        N, rep, desc = self.N, self.report, cert.link
        if cert.kind not in KINDS:
            rep.fail(desc, "kind", cert.kind)
            return
        if cert.N != N:
            rep.fail(desc, "N", f"certificate for N={cert.N}")
        ld = self.data(desc)
        if (ld.det, ld.sigma, ld.twice_lk) != (cert.det, cert.sigma, cert.twice_lk):
            rep.fail(desc, "invariants",
                     f"recorded {(cert.det, cert.sigma, cert.twice_lk)}, computed {(ld.det, ld.sigma, ld.twice_lk)}")
            return
        if ld.det == 0:
            rep.fail(desc, "det", "zero determinant")
            return
        PN = ld.poincare(N)
        self.check_delta(desc, ld)
        if cert.kind == "base_unknot":
            if ld.homfly != RationalInvariant(ONE) or ld.sigma != 0 or PN != ONE:
                rep.fail(desc, "base_unknot")
            return
        if cert.kind == "base_theta":
            if canonical_key(ld.diagram) != canonical_key(theta_diagram()):
                rep.fail(desc, "base_theta", "diagram is not the theta graph")
            if ld.sigma != 0 or ld.twice_lk != 0 or PN != q_summand(N, 0, 0):
                rep.fail(desc, "base_theta", "theta invariants")
            return
        if cert.kind == "twist_step":
            self.check_twist(cert, ld, PN)
            return
        self.check_skein(cert, ld, PN)

    def check_delta(self, desc, ld: LinkData):
        """Laurent part concentrated in Delta = 0 and the rational summand's
        extreme terms at Delta = 0 (mod N - 2)."""
        N = self.N
        main, qpart = ld.split(N)
        mod = N - 2
        for (_, j, i) in main.terms:
            if (2 * i + j - ld.sigma) % mod:
                self.report.fail(desc, "delta", f"term q^{j} t^{i}")
                return
        for part in (_lowest_q(qpart), _highest_q(qpart)):
            for (_, j, i) in part.terms:
                if (2 * i + j - ld.sigma) % mod:
                    self.report.fail(desc, "delta", f"rational summand end q^{j} t^{i}")
                    return

    def check_twist(self, cert, ld, PN):
        rep, desc, N = self.report, cert.link, self.N
        if len(cert.children) != 1:
            rep.fail(desc, "twist_step", "needs one child")
            return
        child = cert.children[0]
        want = dict(desc, twists=desc["twists"] + 1)
        if child.link != want:
            rep.fail(desc, "twist_step", "child is not the next untwisting step")
            return
        D2, sign = untwist_step(ld.diagram)
        if sign is None or sign != cert.twist_sign:
            rep.fail(desc, "twist_step", f"diagram twist sign {sign}, recorded {cert.twist_sign}")
            return
        cd = self.data(child.link)
        factor = homfly_twist if sign == -1 else homfly_untwist
        if factor(cd.homfly) != ld.homfly:
            rep.fail(desc, "homfly", "twist factor")
        if ld.sigma != cd.sigma + sign or ld.twice_lk != cd.twice_lk + sign or ld.det != cd.det:
            rep.fail(desc, "twist_bookkeeping", f"sigma {ld.sigma} vs {cd.sigma}, 2lk {ld.twice_lk} vs {cd.twice_lk}")
        shift = (1, -N - 1) if sign == -1 else (-1, N + 1)
        if [tuple(s) for s in cert.shifts] != [shift]:
            rep.fail(desc, "shifts", str(cert.shifts))
        if _shift(shift) * cd.poincare(N) != PN:
            rep.fail(desc, "twist_shift", "Poincare polynomial does not shift")

    def check_skein(self, cert, ld, PN):
        rep, desc, N = self.report, cert.link, self.N
        if len(cert.children) != 2 or len(cert.sequence) != 3:
            rep.fail(desc, "skein", "needs two children and a sequence")
            return
        names = list(cert.sequence)
        if cert.kind == "skein_regular":
            if desc["type"] != "regular":
                rep.fail(desc, "skein", "regular node with singular descriptor")
                return
            D = ld.diagram
            idx = 0
            sign = D.crossings[0].kind
            expect_mid = "L-" if sign == -1 else "L+"
            seq = _seq_minus(N) if sign == -1 else _seq_plus(N)
            parts = {"L0": resolve(D, 0, "oriented_smooth"), "Ls": resolve(D, 0, "make_singular")}
        else:
            if desc["type"] != "singular":
                rep.fail(desc, "skein", "singular node with regular descriptor")
                return
            D = ld.diagram
            idx = D.singular_index
            if untwist_step(D)[1] is not None:
                rep.fail(desc, "skein", "singular crossing still has a twist")
            typ = singular_plat_type(desc["cf"], desc["orientation"])
            pred = singular_predictions(desc["cf"], typ)
            if cert.kind != ("skein_singular_A" if pred["case"] == "A" else "skein_singular_B"):
                rep.fail(desc, "orientation_type", f"tracing gives type {typ}")
            if pred["twists"] != desc["twists"]:
                rep.fail(desc, "orientation_type", "untwisting count disagrees with the expansion")
            expect_mid = "Ls"
            xname = names[0] if names[0] != "L0" else names[2]
            seq = _seq_minus(N) if xname == "L-" else _seq_plus(N)
            parts = {"L0": resolve(D, idx, "oriented_smooth"), "L+": resolve(D, idx, "make_positive"),
                     "L-": resolve(D, idx, "make_negative")}
            for role, child in ((names[0], cert.children[0]), (names[2], cert.children[1])):
                want = pred["L0"] if role == "L0" else pred["Lx"]
                got = normalize_code(child.link["p"], child.link["q"])
                if got != want:
                    rep.fail(desc, "prediction", f"{role}: expected K({want.p},{want.q}), got K({got.p},{got.q})")
        want_names, want_shifts = _rotate(seq, expect_mid)
        if tuple(names) != want_names:
            rep.fail(desc, "sequence", f"{names} vs {list(want_names)}")
            return
        if [tuple(s) for s in cert.shifts] != list(want_shifts):
            rep.fail(desc, "shifts", str(cert.shifts))
            return
        c1, c3 = cert.children
        d1, d3 = self.data(c1.link), self.data(c3.link)
        # the children descriptors must stand for the resolved diagrams
        for role, dd in ((names[0], d1), (names[2], d3)):
            if role not in parts:
                rep.fail(desc, "sequence", f"unknown resolution {role}")
                return
            actual = self.diagram_data(parts[role]) if role != "Ls" else None
            if role == "Ls":
                actual = self.data({**desc, "type": "singular", "twists": 0})
                if canonical_key(actual.diagram) != canonical_key(parts["Ls"]):
                    rep.fail(desc, "resolution", "Ls descriptor is not the singular top")
            if actual.signature_key() != dd.signature_key():
                rep.fail(desc, "resolution", f"{role} child does not match the resolved diagram")
        # (i) determinant additivity
        if ld.det != d1.det + d3.det:
            rep.fail(desc, "det_additivity", f"{ld.det} != {d1.det} + {d3.det}")
        # (ii) HOMFLY from the children
        P = {names[1]: ld.homfly, names[0]: d1.homfly, names[2]: d3.homfly}
        q, a = RationalInvariant(Q), RationalInvariant(A)
        qi, ai = RationalInvariant(Q ** -1), RationalInvariant(A ** -1)
        if "L-" in P and P["Ls"] != q * P["L0"] - a * P["L-"]:
            rep.fail(desc, "homfly", "P(Ls) != q P(L0) - a P(L-)")
        if "L+" in P and P["Ls"] != qi * P["L0"] - ai * P["L+"]:
            rep.fail(desc, "homfly", "P(Ls) != q^-1 P(L0) - a^-1 P(L+)")
        # Delta-grading of the three maps
        sig = {names[0]: d1.sigma, names[1]: ld.sigma, names[2]: d3.sigma}
        mod = N - 2
        maps = [(names[0], names[1]), (names[1], names[2]), (names[2], names[0])]
        for (src, tgt), (di, dj), want in zip(maps, want_shifts, (0, 0, 2)):
            if (2 * di + dj + sig[src] - sig[tgt] - want) % mod:
                rep.fail(desc, "delta_shift", f"map {src}->{tgt}")
        # (v) the sequence splits
        s1, s2 = _shift(want_shifts[0]), _inv_shift(want_shifts[1])
        if ld.components == 1:
            m1, r1 = d1.split(N)
            m3, r3 = d3.split(N)
            rhs = s1 * (m1 + _lowest_q(r1)) + s2 * (m3 + _highest_q(r3))
        else:
            rhs = s1 * d1.poincare(N) + s2 * d3.poincare(N)
        if rhs != PN:
            rep.fail(desc, "exact_sequence", "Poincare polynomial is not the shifted sum")


def verify_certificate(cert: ThinCertificate, N: int | None = None, engine=None,
                       memo: dict | None = None) -> VerificationReport:
    """Re-check every node of a certificate from its diagrams.

    ``memo`` may be shared between calls (for sweeps); it only caches results
    of this verifier, never anything from the producer.
    """
    report = VerificationReport()
    _Verifier(cert.N if N is None else N, engine, report, memo).visit(cert)
    return report


def two_bridge_codes(pmax: int, pmin: int = 1):
    """Normalized codes K(p, q) with 0 < q < p <= pmax (plus the unknot when
    pmin <= 1), one per isotopy class, with the orientations to consider."""
    seen = set()
    out = []
    if pmin <= 1:
        out.append((normalize_code(1, 0), 0))
    for p in range(max(pmin, 2), pmax + 1):
        for q in range(1, p):
            if gcd(p, q) != 1:
                continue
            code = normalize_code(p, q)
            if code in seen:
                continue
            seen.add(code)
            for bit in ((0, 1) if p % 2 == 0 else (0,)):
                out.append((code, bit))
    return out


def certify_sweep(pmax: int, N: int = 5, engine=None, conjectural: bool = False):
    """Produce and independently verify certificates for every two-bridge
    link with p <= pmax.  Yields ``(code, bit, certificate, report)``."""
    _check_N(N, conjectural)
    engine = engine or default_engine()
    prod = _Producer(N, engine)
    memo = {}
    for code, bit in two_bridge_codes(pmax):
        cert = prod.regular(code, bit)
        yield code, bit, cert, verify_certificate(cert, N, engine, memo)


# ---------------------------------------------------------------------------
# crossing-change criterion

def criterion_crossing_change(L1: PlanarDiagram, L2: PlanarDiagram, L0: PlanarDiagram, engine=None) -> dict:
    """Check the hypotheses under which thinness passes from L1 (and its
    smoothing L0) to L2 = L1 with one crossing switched."""
    engine = engine or default_engine()
    k2 = canonical_key(L2)
    k0 = canonical_key(L0)
    idx = None
    for i, c in enumerate(L1.crossings):
        if c.kind == 0:
            continue
        if canonical_key(resolve(L1, i, "switch")) == k2 and canonical_key(resolve(L1, i, "oriented_smooth")) == k0:
            idx = i
            break
    if idx is None:
        raise DiagramsNotRelated("L2 is not L1 with one crossing switched, or L0 is not its smoothing")
    s1 = signature_regular(L1, engine=engine)
    s2 = signature_regular(L2, engine=engine)
    s0 = signature_regular(L0, engine=engine)
    Ls = resolve(L1, idx, "make_singular")
    det_s = complex_det(engine.homfly_singular(Ls)).abs_if_axis()
    verdict = {
        "crossing": idx,
        "det_L1": s1.det,
        "det_L2": s2.det,
        "det_L0": s0.det,
        "det_Ls": det_s,
        "same_phase": s1.phase_pow is not None and s1.phase_pow == s2.phase_pow,
        "det_increases": s1.det < s2.det,
    }
    verdict["applies"] = verdict["same_phase"] and verdict["det_increases"]
    if verdict["applies"]:
        if det_s != s1.det + s0.det or s2.det != det_s + s0.det:
            raise InternalInconsistency("determinant chain fails although the hypotheses hold")
        verdict["implied"] = "L2 is N-thin for N > 4 if L1 and L0 are"
    else:
        verdict["implied"] = None
    return verdict


def crossing_change_candidates(L2: PlanarDiagram, engine=None) -> list:
    """Every crossing of L2 at which the criterion applies (switching it gives L1)."""
    out = []
    for i, c in enumerate(L2.crossings):
        if c.kind == 0:
            continue
        L1 = resolve(L2, i, "switch")
        L0 = resolve(L2, i, "oriented_smooth")
        v = criterion_crossing_change(L1, L2, L0, engine)
        if v["applies"]:
            out.append((i, v))
    return out
