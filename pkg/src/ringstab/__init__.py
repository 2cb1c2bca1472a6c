"""Exact stabilizability analysis and controller synthesis for SISO plants
over commutative rings that lack coprime factorizations."""

from .closedloop import (
    FeedbackMatrix,
    ParamMatrixQ,
    classical_loop_family,
    extract_controller,
    feedback_matrix,
    is_stable,
)
from .coprime import (
    CFKind,
    CFVerdict,
    CertKind,
    CoprimeCertificate,
    FamilyParams,
    NonexistenceInstance,
    NonexistenceReport,
    QuadIdeal,
    Verdict,
    are_coprime,
    cf_exists,
    generate_family_instance,
    ideal_from_gens,
    ideal_is_principal,
    principal_ideal,
    verify_nonexistence_instance,
)
from .elemfactor import (
    DelayTrace,
    LambdaSet,
    QuadraticTrace,
    SearchTrace,
    Which,
    WitnessPair,
    construct_witnesses_delay,
    construct_witnesses_quadratic,
    lambda_member,
    search_witnesses_delay,
    search_witnesses_quadratic,
)
from .exact import (
    BigRat,
    Poly,
    QuadElem,
    RatMatrix,
    ext_gcd_int,
    ext_gcd_poly,
    poly_divmod,
    poly_gcd,
    quad_norm,
    solve_linear,
)
from .rings import (
    RingDescriptor,
    RingElement,
    TransferFunction,
    causal_representation,
    contains,
    delay,
    divides,
    in_causality_set,
    is_causal,
    is_unit,
    parse_ring_element,
    parse_transfer_function,
    quadratic,
)
from .synthesis import (
    CoprimePairLocal,
    SynthesisConfig,
    SynthesisError,
    SynthesisResult,
    check_condition_ii,
    solve_condition_i,
    synthesize,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
