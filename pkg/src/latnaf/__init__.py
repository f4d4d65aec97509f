"""Window non-adjacent digit systems over lattices with an expanding base.

The package builds digit sets for an expanding endomorphism of Z^n (or an
algebraic integer given by its minimal polynomial), computes width-w
non-adjacent expansions, decides whether every lattice point has one, and
checks the expansions' Hamming weight against an independent oracle.
"""

from .digitset import (
    FAMILY_CUSTOM,
    FAMILY_INTERVAL,
    FAMILY_MINIMAL_NORM,
    DigitSet,
    NormContext,
    build_minimal_norm,
    build_rational_interval,
    digit_count,
    from_digits,
    geometry,
    norm_context,
    tiling_w_bound,
    w0_bound,
)
from .errors import (
    BallSizeError,
    InstanceError,
    LatnafError,
    MalformedDigitSetError,
    NormCapError,
    NotExpandingError,
    PrecisionCapError,
)
from .expansion import (
    CycleReport,
    Expansion,
    digit_of,
    expand,
    is_window_form,
    is_wnaf,
    step,
    value,
    word_weight,
)
from .lattice import LatticeInstance, char_poly, is_expanding, residue_system
from .nadscheck import (
    CERT_MINIMAL_NORM,
    CERT_TILING,
    STATUS_CERTIFIED,
    STATUS_COUNTEREXAMPLE,
    STATUS_SEARCH,
    NadsVerdict,
    certify,
    decide,
    invariant_ball_bound,
    search,
)
from .numberfield import (
    NumberFieldInstance,
    build,
    embedding_moduli_sq,
    inv_operator_norm,
    is_expanding_base,
    minkowski_norm_sq,
)
from .optimality import (
    OptimalityCertificate,
    VerifyReport,
    check_hypotheses,
    min_weight_oracle,
    verify_empirically,
)

__all__ = [
    "BallSizeError",
    "CERT_MINIMAL_NORM",
    "CERT_TILING",
    "CycleReport",
    "DigitSet",
    "Expansion",
    "FAMILY_CUSTOM",
    "FAMILY_INTERVAL",
    "FAMILY_MINIMAL_NORM",
    "InstanceError",
    "LatnafError",
    "LatticeInstance",
    "MalformedDigitSetError",
    "NadsVerdict",
    "NormCapError",
    "NormContext",
    "NotExpandingError",
    "NumberFieldInstance",
    "OptimalityCertificate",
    "PrecisionCapError",
    "STATUS_CERTIFIED",
    "STATUS_COUNTEREXAMPLE",
    "STATUS_SEARCH",
    "VerifyReport",
    "build",
    "build_minimal_norm",
    "build_rational_interval",
    "certify",
    "char_poly",
    "check_hypotheses",
    "decide",
    "digit_count",
    "digit_of",
    "embedding_moduli_sq",
    "expand",
    "from_digits",
    "geometry",
    "invariant_ball_bound",
    "inv_operator_norm",
    "is_expanding",
    "is_expanding_base",
    "is_window_form",
    "is_wnaf",
    "min_weight_oracle",
    "minkowski_norm_sq",
    "norm_context",
    "residue_system",
    "search",
    "step",
    "tiling_w_bound",
    "value",
    "verify_empirically",
    "w0_bound",
    "word_weight",
]

__version__ = "0.1.0"
