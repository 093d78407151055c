"""Quaternion matrix algebra and linear differential systems."""
from .cramer import cramer_left, cramer_right, inv_general, inv_hermitian
from .drazin import DrazinResult, drazin_det, drazin_verify, matrix_index
from .eigen import SpectralDecomposition, hermitian_eigs, normal_diagonalize, real_roots, transported_eigs
from .errors import (
    DependentVectorsError,
    EnumerationCapError,
    ExactnessError,
    InconsistencyError,
    NonRealRootError,
    NotHermitianError,
    NotNormalError,
    ParseError,
    PreconditionError,
    QuatError,
    ShapeError,
    SingularMatrixError,
)
from .expm import mat_exp, mat_exp_diag
from .lqds import (
    ClosedFormSolution,
    LqdsProblem,
    PolynomialVector,
    general_solution_diagonalizable,
    general_solution_singular,
    particular_singular,
    residual,
    solve,
)
from .matrix import QMatrix, is_hermitian, is_normal, qrank
from .rcdet import cdet, char_poly_hermitian, ddet, det_hermitian, minor_sum, rdet
from .scalar import Backend, Quaternion, qexp, quat
from .textio import parse_quat, render_quat

__version__ = "0.1.0"
