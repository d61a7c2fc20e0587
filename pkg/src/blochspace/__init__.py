"""Bloch-vector geometry for N-level quantum systems."""
from .errors import BlochError, DimensionMismatch, InvalidMatrix
from .generators import (
    GeneratorBasis,
    StructureConstants,
    build_generator_basis,
    compute_structure_constants,
    rotate_basis,
    structure_constants,
)
from .membership import (
    CoefficientVector,
    Decision,
    MembershipVerdict,
    MomentVector,
    char_coefficients_closed_form,
    char_coefficients_newton,
    classify_batch,
    eigenvalue_oracle,
    is_bloch_vector,
    moments_closed_form,
    moments_trace,
    positivity_from_coefficients,
)
from .sampling import sample_states
from .separability import CompositeDims, Separability, partial_transpose, ppt_verdict
from .statemap import (
    Observable,
    ball_radius,
    bloch_to_matrix,
    expectation,
    matrix_to_bloch,
    overlap,
    purity,
)

__version__ = "0.1.0"
