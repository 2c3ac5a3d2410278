"""Exact (sigma, tau)-quantum calculus: tension functions, quantum derivatives,
right-invertible operator algebra, the theta/zeta/Lambda polynomial bases and
Taylor expansion of D-polynomials.
"""
__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .scalars import REL_TOL, close, format_scalar, is_zero, to_scalar
from .tension import (
    CheckResult,
    Direction,
    QuantumFrame,
    ShiftMap,
    TensionFn,
    ValidationReport,
    classify_directed,
    homogeneity_coefficient,
    potential,
    theta_eval,
    validate_frame,
)
from .derivative import (
    FrameKind,
    ScalarFn,
    default_samples,
    kernel_witness_check,
    leibniz_residual,
    make_preset,
    qderiv,
    qderiv_all,
    qderiv_iter,
    qdiff,
)
from .matrix import LinOp
from .algebra import (
    DifferenceOp,
    GradedKernel,
    OperatorTower,
    OperatorTriple,
    build_difference_instance,
    combine_inverses,
    family_member,
    initial_from_right,
    is_initial_operator,
    kernel_gradation,
    monomial_basis,
    poly_expand_matrix,
    right_from_initial,
    right_inverse,
    taylor_identity_residual,
)
from .basis import (
    ConstantBasis,
    LambdaPoly,
    QuantumInt,
    ThetaPoly,
    ZetaPoly,
    check_degree,
    coeff_extract,
    degree_of_function,
    lambda_poly_eval,
    quantum_factorial,
    quantum_int,
    theta_descent_residual,
    theta_poly_eval,
    zeta_poly_eval,
)
from .taylor import (
    OrbitGrid,
    TaylorExpansion,
    classical_taylor_crosscheck,
    operator_taylor_check,
    orbit_initial,
    orbit_right_inverse,
    taylor_expand,
    taylor_reconstruct,
)
from .expr import Polynomial, parse_polynomial
from .config import RunConfig, dump_frame, frame_from_dict, frame_to_dict, load_frame
