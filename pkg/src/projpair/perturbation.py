"""Riesz projections by contour quadrature and local eigenvalue reduction.

The Riesz projection onto the eigenvalues of ``M`` inside the circle
``|λ - c| = r`` is approximated with the trapezoidal rule on the circle::

    R_N = (1/N) Σ_j r e^{iφ_j} (λ_j - M)^{-1},   λ_j = c + r e^{iφ_j},  φ_j = 2πj/N

The integrand is periodic and analytic, so R_N converges geometrically.
Doubling N keeps every old node, so only the new half is solved for.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .core import DEFAULT_TOL, Frame, _readonly, as_matrix, fro, operator_norm, phase_normalize
from .errors import (
    DimensionMismatch,
    EigenvalueOnContour,
    NormTooLarge,
    NotSquare,
    QuadratureNotConverged,
    RankChanged,
)
from .kato import oblique_similarity

__all__ = [
    "ContourSpec",
    "MatrixFamily",
    "RieszResult",
    "ReducedBlock",
    "MAX_NODES",
    "riesz_quadrature",
    "riesz_projection",
    "reduce_family",
    "polynomial_family",
]

MAX_NODES = 2**16


@dataclass(frozen=True)
class ContourSpec:
    center: complex
    radius: float
    nodes: int = 16

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"radius must be positive, got {self.radius!r}")
        n = self.nodes
        if n < 8 or n & (n - 1):
            raise ValueError(f"nodes must be a power of 2 and at least 8, got {n!r}")


@dataclass(frozen=True)
class MatrixFamily:
    """A black-box map ``z -> A(z)`` returning square matrices of size `dim`.

    ``serial`` marks evaluators that must not be called concurrently; the
    evaluations made here are sequential in either case.
    """

    evaluator: Callable[[complex], np.ndarray]
    dim: int
    serial: bool = False

    def __call__(self, z):
        m = as_matrix(self.evaluator(z))
        if m.shape != (self.dim, self.dim):
            raise DimensionMismatch(
                f"family returned shape {m.shape} at z={z!r}, expected {(self.dim, self.dim)}"
            )
        return m


@dataclass(frozen=True)
class RieszResult:
    projection: np.ndarray
    nodes: int
    # ||R_{2N} - R_N||_F for each doubling, in order.
    history: list = field(default_factory=list)
    idempotency_residual: float = 0.0
    commutator_residual: float = 0.0


@dataclass(frozen=True)
class ReducedBlock:
    block: np.ndarray
    frame: Frame
    similarity: np.ndarray = field(repr=False)
    rank: int = 0


def _node_sum(m, center, radius, nodes, odd_only):
    n = m.shape[0]
    j = np.arange(1 if odd_only else 0, nodes, 2 if odd_only else 1)
    phase = np.exp(2j * np.pi * j / nodes)
    lam = center + radius * phase
    shifted = lam[:, None, None] * np.eye(n) - m[None, :, :]
    rhs = np.broadcast_to(np.eye(n, dtype=np.complex128), shifted.shape)
    res = np.linalg.solve(shifted, rhs)
    return np.tensordot(radius * phase, res, axes=1)


def _check_contour(m, c, tol):
    ev = np.linalg.eigvals(m)
    gap = np.abs(np.abs(ev - c.center) - c.radius)
    margin = tol.tol_spec * (1.0 + abs(c.center) + c.radius)
    if gap.size and gap.min() <= margin:
        i = int(np.argmin(gap))
        raise EigenvalueOnContour(complex(ev[i]), float(gap[i]))
    return int(np.count_nonzero(np.abs(ev - c.center) < c.radius))


def riesz_quadrature(m, c, tol=DEFAULT_TOL, max_nodes=MAX_NODES):
    """Riesz projection with its convergence record.

    Raises
    ------
    EigenvalueOnContour
        If an eigenvalue lies within ``tol_spec (1 + |center| + radius)``
        of the circle.
    QuadratureNotConverged
        If doubling reaches `max_nodes` without two successive estimates
        agreeing to ``quad_tol``.
    """
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {m.shape}")
    _check_contour(m, c, tol)
    center = complex(c.center)
    nodes = c.nodes
    total = _node_sum(m, center, c.radius, nodes, odd_only=False)
    approx = total / nodes
    history = []
    while True:
        if nodes * 2 > max_nodes:
            raise QuadratureNotConverged(
                f"no convergence to {tol.quad_tol:g} within {max_nodes} nodes"
            )
        nodes *= 2
        total = total + _node_sum(m, center, c.radius, nodes, odd_only=True)
        new = total / nodes
        diff = fro(new - approx)
        history.append(diff)
        approx = new
        if diff <= tol.quad_tol:
            break
    return RieszResult(
        projection=_readonly(approx),
        nodes=nodes,
        history=history,
        idempotency_residual=fro(approx @ approx - approx),
        commutator_residual=fro(m @ approx - approx @ m),
    )


def riesz_projection(m, c, tol=DEFAULT_TOL):
    """Spectral projection of `m` for the eigenvalues enclosed by contour `c`.

    The result is idempotent and commutes with `m` but is not Hermitian in
    general.
    """
    return riesz_quadrature(m, c, tol).projection


def _range_frame(r, rank):
    u, _, _ = np.linalg.svd(r)
    return Frame(_readonly(phase_normalize(u[:, :rank])))


def reduce_family(f, z, c, tol=DEFAULT_TOL):
    """Reduce the eigenvalue group of ``f(z)`` inside `c` to a block on ran P(0).

    With ``W`` the similarity satisfying ``W P(z) = P(0) W``, the matrix
    ``W f(z) W^{-1}`` leaves ran P(0) invariant; the returned block is its
    compression to an orthonormal frame of that fixed range.

    Raises
    ------
    RankChanged
        If P(z) and P(0) have different ranks.
    NormTooLarge
        If ``||P(z) - P(0)|| >= 1 - tol_spec``.
    """
    if not isinstance(f, MatrixFamily):
        raise TypeError("f must be a MatrixFamily")
    m0 = f(0.0)
    mz = f(z)
    p0 = riesz_projection(m0, c, tol)
    pz = riesz_projection(mz, c, tol)
    rank0 = int(round(np.trace(p0).real))
    rankz = int(round(np.trace(pz).real))
    if rank0 != rankz:
        raise RankChanged(rank0, rankz)
    norm = operator_norm(pz - p0)
    if norm >= 1.0 - tol.tol_spec:
        raise NormTooLarge(norm, 1.0 - tol.tol_spec)
    w = oblique_similarity(pz, p0, tol)
    conj = w @ np.linalg.solve(w.T, mz.T).T  # W f(z) W^{-1}
    frame = _range_frame(p0, rank0)
    block = frame.mat.conj().T @ conj @ frame.mat
    return ReducedBlock(_readonly(block), frame, _readonly(w), rank0)


def polynomial_family(coefficients):
    """``MatrixFamily`` for ``A(z) = Σ_j z^j C_j`` from a list of equal-shape matrices."""
    coeffs = [as_matrix(cj) for cj in coefficients]
    if not coeffs:
        raise ValueError("a polynomial family needs at least one coefficient")
    n = coeffs[0].shape[0]
    for cj in coeffs:
        if cj.shape != (n, n):
            raise DimensionMismatch("family coefficients must all be square of equal size")

    def evaluate(z):
        out = np.zeros((n, n), dtype=np.complex128)
        for cj in reversed(coeffs):
            out = out * z + cj
        return out

    return MatrixFamily(evaluate, n)
