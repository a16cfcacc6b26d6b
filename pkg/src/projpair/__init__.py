"""Constructive calculus of two orthogonal projections on C^n."""

from .core import (
    DEFAULT_TOL,
    Frame,
    OrthProjection,
    ToleranceConfig,
    load_matrix,
    operator_norm,
    projection_from_frame,
    save_matrix,
    validate_projection,
)
from .errors import *  # noqa: F401,F403
from .index import IndexReport, fredholm_map, pair_index
from .kato import ObliqueProjection, kato_unitary, oblique_similarity, validate_oblique, wolf_condition
from .perturbation import (
    ContourSpec,
    MatrixFamily,
    polynomial_family,
    reduce_family,
    riesz_projection,
    riesz_quadrature,
)
from .randpairs import random_pair
from .subspaces import HalmosSplit, KernelQuadruple, halmos_split, kernel_quadruple, principal_angles
from .supersym import (
    SuperPair,
    SwapResult,
    build_super,
    identity_residuals,
    matrix_sign,
    reconstruct_pq,
    sign_limit_check,
    swap_exists,
    swap_unitary,
)

__version__ = "0.1.0"
