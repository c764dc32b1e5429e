"""Finite Gamma-semirings, their operator semirings, fuzzy ideals and the
transfer maps between them."""

from .algebra import (
    GammaSemiring,
    ValidationReport,
    load_gamma_semiring,
    parse_gamma_semiring,
    serialize_gamma_semiring,
    sum_of_products,
    ternary_product,
    validate_gamma_semiring,
)
from .correspondence import (
    TheoremReport,
    TransferContext,
    plus,
    plus_prime,
    run_suite,
    star,
    star_prime,
    transfer,
    verify_bijection,
    verify_monotonicity,
    verify_preservation,
)
from .enumeration import (
    GeneratorSpec,
    default_corpus,
    enumerate_fuzzy_ideals,
    generate_gamma_semirings,
    load_example,
)
from .errors import CapExceeded, CarrierMismatch, GammaRingError, ParseError
from .fuzzy import (
    FuzzySubset,
    IdealKind,
    check_gamma_ideal,
    check_semiring_ideal,
    parse_fuzzy_subset,
    pointwise_leq,
    serialize_fuzzy_subset,
)
from .operator import (
    FiniteSemiring,
    FormalSum,
    brute_force_operator_semiring,
    build_left_operator_semiring,
    build_operator_semiring,
    build_right_operator_semiring,
    find_left_unity,
    find_right_unity,
)

__version__ = "0.1.0"
