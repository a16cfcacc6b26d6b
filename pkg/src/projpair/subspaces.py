"""The four invariant subspaces of a projection pair and the splitting built on them.

All intersections are read off as eigenspaces of two Hermitian matrices:

* ``A = P - Q`` has eigenvalue +1 exactly on ``ran P ∩ ker Q`` and -1 on
  ``ker P ∩ ran Q``;
* ``S = P + Q`` has eigenvalue 2 on ``ran P ∩ ran Q`` and 0 on
  ``ker P ∩ ker Q``.

Whatever is orthogonal to all four is the *generic part*, where the pair
decomposes into 2x2 blocks at angles strictly between 0 and pi/2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOL,
    Frame,
    OrthProjection,
    _readonly,
    check_same_dim,
    fro,
    phase_normalize,
    validate_projection,
)
from .errors import AmbiguousSpectrum, OddGenericDimension

__all__ = [
    "KernelQuadruple",
    "HalmosSplit",
    "kernel_quadruple",
    "halmos_split",
    "principal_angles",
]


@dataclass(frozen=True)
class KernelQuadruple:
    """Orthonormal bases of ran P∩ker Q, ran P∩ran Q, ker P∩ker Q, ker P∩ran Q."""

    k_pq: Frame
    k_p_1q: Frame
    k_1p_q: Frame
    k_1p_1q: Frame
    generic_dim: int

    @property
    def dims(self):
        return (self.k_pq.k, self.k_p_1q.k, self.k_1p_q.k, self.k_1p_1q.k)


@dataclass(frozen=True)
class HalmosSplit:
    """``H = H1 ⊕ H2`` with ``H1 = K_{P,Q} ⊕ K_{1-P,1-Q}``.

    ``p2`` and ``q2`` are the compressions of P and Q to ``H2`` expressed in
    the basis ``h2_frame``. ``invariance_residuals`` holds
    ``||P h2 - h2 p2||_F`` and ``||Q h2 - h2 q2||_F``.
    """

    h1_frame: Frame
    h2_frame: Frame
    p2: np.ndarray
    q2: np.ndarray
    invariance_residuals: tuple


def _unwrap(p):
    return p.mat if isinstance(p, OrthProjection) else np.asarray(p, dtype=np.complex128)


def _hermitian_eig(m):
    w, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    return w, v


def _bin(w, v, center, tol):
    """Columns of `v` whose eigenvalue lies within tol_spec of `center`.

    Raises AmbiguousSpectrum for eigenvalues in the guard band
    ``(tol_spec, 10 tol_spec]`` around the bin.
    """
    dist = np.abs(w - center)
    guard = (dist > tol.tol_spec) & (dist <= 10 * tol.tol_spec)
    if np.any(guard):
        raise AmbiguousSpectrum(float(w[np.argmax(guard)]), center)
    sel = dist <= tol.tol_spec
    return Frame(_readonly(phase_normalize(v[:, sel])))


def _spectra(P, Q):
    p, q = _unwrap(P), _unwrap(Q)
    check_same_dim(p, q)
    return p, q, _hermitian_eig(p - q), _hermitian_eig(p + q)


def kernel_quadruple(P, Q, tol=DEFAULT_TOL):
    """Compute the four kernel-intersection subspaces of the pair (P, Q).

    Parameters
    ----------
    P, Q : OrthProjection or array_like
        Orthogonal projections of the same dimension.
    tol : ToleranceConfig

    Returns
    -------
    KernelQuadruple
        Frames are phase-normalized; ``dims`` is ordered
        ``(ran P∩ker Q, ran P∩ran Q, ker P∩ker Q, ker P∩ran Q)``.

    Raises
    ------
    DimensionMismatch, AmbiguousSpectrum
    """
    p, _, (wa, va), (ws, vs) = _spectra(P, Q)
    k_pq = _bin(wa, va, 1.0, tol)
    k_1p_1q = _bin(wa, va, -1.0, tol)
    k_p_1q = _bin(ws, vs, 2.0, tol)
    k_1p_q = _bin(ws, vs, 0.0, tol)
    used = k_pq.k + k_1p_1q.k + k_p_1q.k + k_1p_q.k
    return KernelQuadruple(k_pq, k_p_1q, k_1p_q, k_1p_1q, p.shape[0] - used)


def halmos_split(P, Q, tol=DEFAULT_TOL):
    """Split off the ±1 eigenspaces of ``A = P - Q``.

    ``H2`` is spanned by the remaining eigenvectors of A, so it contains
    ran P∩ran Q and ker P∩ker Q as well as the generic part. On ``H2`` the
    compressed pair has no ±1 eigenvalues of A by construction.
    """
    p, q, (wa, va), _ = _spectra(P, Q)
    plus = _bin(wa, va, 1.0, tol)
    minus = _bin(wa, va, -1.0, tol)
    rest = (np.abs(wa - 1.0) > tol.tol_spec) & (np.abs(wa + 1.0) > tol.tol_spec)
    h2 = phase_normalize(va[:, rest])
    h1 = np.hstack([plus.mat, minus.mat])
    p2 = h2.conj().T @ p @ h2
    q2 = h2.conj().T @ q @ h2
    resid = (fro(p @ h2 - h2 @ p2), fro(q @ h2 - h2 @ q2))
    if h2.shape[1]:
        # Compressions of projections onto a common invariant subspace are projections.
        p2 = validate_projection(p2, tol).mat
        q2 = validate_projection(q2, tol).mat
    return HalmosSplit(Frame(_readonly(h1)), Frame(_readonly(h2)), _readonly(p2), _readonly(q2), resid)


def principal_angles(P, Q, tol=DEFAULT_TOL):
    """Angles of the 2x2 generic blocks of the pair, sorted ascending.

    On the generic part ``A`` has eigenvalues ``±sin θ`` for each block, so
    ``A²`` carries ``sin² θ`` twice. Eigenvalues of ``A`` within tol_spec of
    0 or ±1 belong to the kernel quadruple and are excluded.
    """
    _, _, (wa, _), _ = _spectra(P, Q)
    mag = np.abs(wa)
    generic = np.sort(mag[(mag > tol.tol_spec) & (mag < 1.0 - tol.tol_spec)])
    if generic.size % 2:
        raise OddGenericDimension(
            f"generic part has odd dimension {generic.size}; spectrum of P - Q is not symmetric"
        )
    sines = 0.5 * (generic[0::2] + generic[1::2])
    return [float(a) for a in np.arcsin(np.clip(sines, 0.0, 1.0))]
