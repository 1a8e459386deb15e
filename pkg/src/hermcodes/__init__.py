"""Subfield subcodes and trace codes of one-point Hermitian codes."""

from .agcode import (
    LinearCode,
    brute_force_min_distance,
    build_hermitian_code,
    designed_min_distance,
    dual_code,
    dual_hermitian_s,
    is_codeword,
)
from .gf import Field, FieldElement, FieldMismatchError, FieldTower, make_tower
from .hermitian import AffinePoint, HermitianCurve, Monomial, pole_order
from .linalg import MatrixGF, dual_basis, kernel_basis, rank, row_space_equal, rref
from .subfield import (
    delsarte_check,
    fd_alpha_codeword,
    main_theorem_sweep,
    subfield_subcode,
    trace_code,
    veron_dimension,
    y_trace_codeword,
)
from .checks import tower_for

__version__ = "0.1.0"
