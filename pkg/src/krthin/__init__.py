"""Exact HOMFLY, signature and thin sl(N) Khovanov-Rozansky homology of
two-bridge links."""
from .diagram import (
    PlanarDiagram,
    TwoBridgeCode,
    continued_fraction,
    normalize_code,
    parse_pd,
    parse_pd_file,
    plat_from_cf,
)
from .homfly import HomflyEngine, homfly, homfly_singular, jones
from .invariants import complex_det, signature, signature_regular, signature_singular
from .laurent import LaurentPoly, RationalInvariant
from .thinness import (
    ThinCertificate,
    certify_two_bridge,
    poincare_thin_knot,
    poincare_thin_link,
    superpolynomial,
    verify_certificate,
)
from .unreduced import quantum_int, unreduced_fig8, unreduced_torus2n

__version__ = "0.1.0"
