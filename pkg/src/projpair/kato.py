"""Kato's intertwining operator for projection pairs close in norm.

For projections with ``||P - Q|| < 1``::

    U = [QP + (1-Q)(1-P)] [1 - (P-Q)²]^{-1/2}

satisfies ``UP = QU``. For orthogonal P, Q it is unitary and the inverse
square root is taken spectrally. For oblique projections the inverse square
root is summed as a binomial series, giving an invertible (generally
non-unitary) similarity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOL, _readonly, as_matrix, check_same_dim, fro, operator_norm
from .errors import NormTooLarge, NotIdempotent, NotSquare, SeriesNotConverged

__all__ = [
    "ObliqueProjection",
    "WolfResult",
    "validate_oblique",
    "kato_unitary",
    "oblique_similarity",
    "wolf_condition",
    "inverse_sqrt_series",
    "MAX_SERIES_TERMS",
]

MAX_SERIES_TERMS = 10_000


@dataclass(frozen=True)
class ObliqueProjection:
    """An idempotent square matrix, not necessarily Hermitian."""

    mat: np.ndarray

    @property
    def dim(self):
        return self.mat.shape[0]


@dataclass(frozen=True)
class WolfResult:
    holds: bool
    p_product: float  # ||P - Q|| ||P||²
    q_product: float  # ||P - Q|| ||Q||²

    def __bool__(self):
        return self.holds


def validate_oblique(m, tol=DEFAULT_TOL):
    mat = as_matrix(m)
    if mat.shape[0] != mat.shape[1] or mat.shape[0] == 0:
        raise NotSquare(f"projection must be square and non-empty, got shape {mat.shape}")
    scale = 1.0 + fro(mat)
    idem = fro(mat @ mat - mat)
    if idem > tol.tol_idem * scale:
        raise NotIdempotent(idem, tol.tol_idem * scale)
    return ObliqueProjection(_readonly(mat))


def _pair(P, Q, tol):
    p, q = as_matrix(P), as_matrix(Q)
    check_same_dim(p, q)
    norm = operator_norm(p - q)
    limit = 1.0 - tol.tol_spec
    if norm >= limit:
        raise NormTooLarge(norm, limit)
    eye = np.eye(p.shape[0])
    bracket = q @ p + (eye - q) @ (eye - p)
    return p, q, bracket


def kato_unitary(P, Q, tol=DEFAULT_TOL):
    """Unitary U with ``UP = QU`` for orthogonal projections with ``||P - Q|| < 1``.

    Raises
    ------
    NormTooLarge
        If ``||P - Q|| >= 1 - tol.tol_spec``.
    """
    p, q, bracket = _pair(P, Q, tol)
    d = p - q
    m = np.eye(p.shape[0]) - d @ d
    w, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    inv_sqrt = (v / np.sqrt(w)) @ v.conj().T
    return bracket @ inv_sqrt


def inverse_sqrt_series(x, tol=DEFAULT_TOL, max_terms=MAX_SERIES_TERMS):
    """Sum ``(1 - X)^{-1/2} = Σ_k C(2k, k) 4^{-k} X^k``.

    Stops once a term's Frobenius norm is at most ``tol.quad_tol``.

    Returns
    -------
    s : ndarray
    terms : int
        Number of terms summed.
    """
    x = as_matrix(x)
    term = np.eye(x.shape[0], dtype=np.complex128)
    total = term.copy()
    for k in range(1, max_terms + 1):
        term = (term @ x) * ((2 * k - 1) / (2 * k))
        total += term
        if fro(term) <= tol.quad_tol:
            return total, k + 1
    raise SeriesNotConverged(
        f"binomial series did not reach {tol.quad_tol:g} within {max_terms} terms"
    )


def oblique_similarity(P, Q, tol=DEFAULT_TOL):
    """Invertible W with ``WP = QW`` for idempotents with ``||P - Q|| < 1``.

    Agrees with :func:`kato_unitary` when both inputs are orthogonal.

    Raises
    ------
    NormTooLarge, SeriesNotConverged
    """
    p, q, bracket = _pair(P, Q, tol)
    d = p - q
    s, _ = inverse_sqrt_series(d @ d, tol)
    return bracket @ s


def wolf_condition(P, Q):
    p, q = as_matrix(P), as_matrix(Q)
    check_same_dim(p, q)
    dn = operator_norm(p - q)
    pp = dn * operator_norm(p) ** 2
    qp = dn * operator_norm(q) ** 2
    return WolfResult(pp < 1 and qp < 1, pp, qp)
