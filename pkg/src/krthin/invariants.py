"""Complex determinant, phase and signature of regular and singular links.

Signature convention: the positive trefoil has signature +2, and for every
link with nonzero determinant ``Det L = det L * i^sigma``.
"""
from __future__ import annotations

from typing import NamedTuple

from .diagram import (
    PlanarDiagram,
    TwoBridgeCode,
    continued_fraction,
    gl_signature,
    normalize_code,
    plat_from_cf,
    resolve,
    trace_components,
)
from .errors import NoAdmissibleSigma, PhaseMismatch, ZeroDeterminant
from .homfly import default_engine
from .laurent import GaussianInt, I_UNIT, RationalInvariant, evaluate_unit

__all__ = [
    "SignatureData",
    "complex_det",
    "signature_regular",
    "signature_singular",
    "signature",
    "twist_bookkeeping",
    "parity_invariant",
    "as_diagram",
]


class SignatureData(NamedTuple):
    """``cdet = det * i^phase_pow``; ``phase_pow`` is None when det = 0."""

    cdet: GaussianInt
    det: int
    phase_pow: int | None
    sigma: int | None

    def to_json_obj(self) -> dict:
        return {
            "cdet": [self.cdet.re, self.cdet.im],
            "det": self.det,
            "phase_pow": self.phase_pow,
            "sigma": self.sigma,
        }


def complex_det(P: RationalInvariant) -> GaussianInt:
    """Evaluate a HOMFLY polynomial at a = -1, q = i."""
    return evaluate_unit(P, GaussianInt(-1), I_UNIT)


def _phase(cdet: GaussianInt):
    phase = cdet.phase_pow()
    if phase is None:
        raise PhaseMismatch(f"{cdet} is not on a coordinate axis")
    return cdet.abs_if_axis(), phase


def as_diagram(x, bit: int = 0) -> PlanarDiagram:
    """Accept a diagram, a :class:`TwoBridgeCode` or a ``(p, q)`` pair."""
    if isinstance(x, PlanarDiagram):
        return x
    if isinstance(x, TwoBridgeCode):
        return plat_from_cf(x.cf, bit)
    p, q = x
    return plat_from_cf(normalize_code(p, q).cf, bit)


def signature_regular(x, bit: int = 0, engine=None) -> SignatureData:
    """Determinant data from the HOMFLY and signature from Goeritz data.

    The two routes are independent; their agreement ``Det = det * i^sigma`` is
    checked and a disagreement raises :class:`PhaseMismatch`.
    """
    D = as_diagram(x, bit)
    if D.is_singular:
        raise ValueError("signature_regular needs a regular diagram")
    cdet = complex_det((engine or default_engine()).homfly(D))
    sigma = gl_signature(D)
    if cdet.norm() == 0:
        return SignatureData(cdet, 0, None, sigma)
    det, phase = _phase(cdet)
    if phase != sigma % 4:
        raise PhaseMismatch(f"phase i^{phase} but signature {sigma}")
    return SignatureData(cdet, det, phase, sigma)


def signature_singular(D: PlanarDiagram, engine=None) -> SignatureData:
    """The unique sigma within 1 of sigma(L0) whose phase matches Det L."""
    engine = engine or default_engine()
    s = D.singular_index
    if s is None:
        raise ValueError("signature_singular needs a singular diagram")
    cdet = complex_det(engine.homfly_singular(D))
    if cdet.norm() == 0:
        raise ZeroDeterminant("singular link with zero determinant")
    det, phase = _phase(cdet)
    s0 = signature_regular(resolve(D, s, "oriented_smooth"), engine=engine).sigma
    matches = [x for x in (s0 - 1, s0, s0 + 1) if x % 4 == phase]
    if len(matches) != 1:
        raise NoAdmissibleSigma(f"no signature near {s0} with phase i^{phase}")
    return SignatureData(cdet, det, phase, matches[0])


def signature(D: PlanarDiagram, engine=None) -> SignatureData:
    return signature_singular(D, engine) if D.is_singular else signature_regular(D, engine=engine)


def twist_bookkeeping(s: SignatureData, twice_lk: int, direction: int) -> tuple:
    """Effect of one twist at the singular point; ``direction`` -1 adds a
    negative twist, +1 a positive one."""
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    factor = GaussianInt(0, -1) if direction == -1 else I_UNIT
    cdet = s.cdet * factor
    phase = None if s.phase_pow is None else (s.phase_pow + direction) % 4
    sigma = None if s.sigma is None else s.sigma + direction
    return SignatureData(cdet, s.det, phase, sigma), twice_lk + direction


def parity_invariant(D: PlanarDiagram) -> int:
    """i(L): 1 + (number of components) mod 2, taken from L- for singular links."""
    return trace_components(D).i_parity


def code_signature(p: int, q: int, bit: int = 0, engine=None) -> SignatureData:
    return signature_regular(plat_from_cf(continued_fraction(p, q), bit), engine=engine)
