"""Index of a projection pair.

In finite dimensions every operator is Fredholm and trace class, so no
compactness hypothesis is checked. The index
``dim(ran P ∩ ker Q) - dim(ker P ∩ ran Q)`` equals ``tr(P - Q)`` exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOL, as_matrix, check_same_dim, phase_normalize
from .errors import NonIntegerTrace
from .subspaces import kernel_quadruple

__all__ = ["IndexReport", "pair_index", "fredholm_map", "fredholm_dims"]


@dataclass(frozen=True)
class IndexReport:
    dim_ker: int
    dim_coker: int
    index: int
    trace_pq: float
    swap_possible: bool


def pair_index(P, Q, tol=DEFAULT_TOL):
    """Kernel dimensions, index and trace of ``P - Q``.

    Raises
    ------
    NonIntegerTrace
        If ``tr(P - Q)`` is not within ``tol_resid`` of the index, which
        means an invalid pair got past validation.
    """
    p, q = as_matrix(P), as_matrix(Q)
    check_same_dim(p, q)
    kq = kernel_quadruple(p, q, tol)
    dim_ker, dim_coker = kq.k_pq.k, kq.k_1p_1q.k
    index = dim_ker - dim_coker
    trace = float(np.trace(p - q).real)
    if abs(trace - round(trace)) > tol.tol_resid or round(trace) != index:
        raise NonIntegerTrace(f"tr(P - Q) = {trace!r} does not match index {index}")
    return IndexReport(dim_ker, dim_coker, index, trace, index == 0)


def _range_basis(p):
    w, v = np.linalg.eigh(0.5 * (p + p.conj().T))
    return phase_normalize(v[:, w > 0.5])


def fredholm_map(P, Q):
    """Matrix of ``K = QP`` restricted to ran P, as a map into ran Q.

    Columns index the orthonormal basis of ran P and rows that of ran Q, so
    the shape is ``(rank Q, rank P)``.
    """
    p, q = as_matrix(P), as_matrix(Q)
    check_same_dim(p, q)
    return _range_basis(q).conj().T @ _range_basis(p)


def fredholm_dims(k, tol=DEFAULT_TOL):
    """``(dim ker K, dim coker K)`` counting singular values ≤ tol_spec as zero."""
    rows, cols = k.shape
    if k.size == 0:
        return cols, rows
    s = np.linalg.svd(k, compute_uv=False)
    rank = int(np.count_nonzero(s > tol.tol_spec))
    return cols - rank, rows - rank
