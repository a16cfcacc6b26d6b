"""Supersymmetric operators A = P - Q, B = 1 - P - Q and the swap unitary.

``A² + B² = 1`` and ``AB + BA = 0`` hold for every pair of orthogonal
projections. When A has no eigenvalue ±1 the kernel of B is trivial and
``U = sgn(B)`` is a self-adjoint unitary with ``UAU* = -A`` and ``UBU* = B``,
which is the same as ``UPU* = Q`` and ``UQU* = P``. The ±1 eigenspaces of A
are handled separately by pairing bases of ran P∩ker Q and ker P∩ran Q.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .core import DEFAULT_TOL, _readonly, as_matrix, check_same_dim, fro, operator_norm
from .errors import NoSwapExists, NotHermitian, NotSquare, SingularB
from .subspaces import halmos_split, kernel_quadruple

__all__ = [
    "SuperPair",
    "IdentityResiduals",
    "SwapExistence",
    "SwapResult",
    "build_super",
    "identity_residuals",
    "matrix_sign",
    "swap_exists",
    "swap_unitary",
    "sign_limit_check",
    "reconstruct_pq",
]


@dataclass(frozen=True)
class SuperPair:
    a: np.ndarray
    b: np.ndarray

    @property
    def dim(self):
        return self.a.shape[0]


@dataclass(frozen=True)
class IdentityResiduals:
    """Frobenius norms of the six identities that every pair satisfies."""

    sum_of_squares: float  # ||A² + B² - I||
    anticommutator: float  # ||AB + BA||
    p_a2: float  # ||[P, A²]||
    q_a2: float
    p_b2: float
    q_b2: float

    def as_dict(self):
        return dict(self.__dict__)

    def max(self):
        return max(self.__dict__.values())


@dataclass(frozen=True)
class SwapExistence:
    exists: bool
    dim_ker: int
    dim_coker: int

    def __bool__(self):
        return self.exists


@dataclass(frozen=True)
class SwapResult:
    u: np.ndarray = field(repr=False)
    is_symmetry: bool
    t_block_dims: int
    residuals: dict


def build_super(P, Q):
    """Return ``SuperPair(A=P-Q, B=1-P-Q)``."""
    p, q = as_matrix(P), as_matrix(Q)
    check_same_dim(p, q)
    eye = np.eye(p.shape[0])
    return SuperPair(_readonly(p - q), _readonly(eye - p - q))


def _comm(x, y):
    return fro(x @ y - y @ x)


def identity_residuals(sp, P, Q):
    a, b = sp.a, sp.b
    p, q = as_matrix(P), as_matrix(Q)
    a2, b2 = a @ a, b @ b
    return IdentityResiduals(
        sum_of_squares=fro(a2 + b2 - np.eye(sp.dim)),
        anticommutator=fro(a @ b + b @ a),
        p_a2=_comm(p, a2),
        q_a2=_comm(q, a2),
        p_b2=_comm(p, b2),
        q_b2=_comm(q, b2),
    )


def _check_hermitian(b, tol):
    if b.shape[0] != b.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {b.shape}")
    herm = fro(b - b.conj().T)
    bound = tol.tol_herm * (1.0 + fro(b))
    if herm > bound:
        raise NotHermitian(herm, bound)


def matrix_sign(b, tol=DEFAULT_TOL):
    """Sign function of a nonsingular Hermitian matrix via its eigendecomposition.

    Raises
    ------
    SingularB
        If an eigenvalue has magnitude at most ``tol.tol_spec``.
    """
    b = as_matrix(b)
    _check_hermitian(b, tol)
    if b.size == 0:
        return b.copy()
    w, v = np.linalg.eigh(0.5 * (b + b.conj().T))
    smallest = float(np.min(np.abs(w)))
    if smallest <= tol.tol_spec:
        raise SingularB(smallest)
    u = (v * np.sign(w)) @ v.conj().T
    return 0.5 * (u + u.conj().T)


def swap_exists(P, Q, tol=DEFAULT_TOL):
    """A swap unitary exists iff dim ran P∩ker Q == dim ker P∩ran Q."""
    kq = kernel_quadruple(P, Q, tol)
    return SwapExistence(kq.k_pq.k == kq.k_1p_1q.k, kq.k_pq.k, kq.k_1p_1q.k)


def swap_unitary(P, Q, tol=DEFAULT_TOL):
    """Construct a self-adjoint unitary U with ``UPU* = Q`` and ``UQU* = P``.

    On ``H1 = K_{P,Q} ⊕ K_{1-P,1-Q}`` the i-th basis vector of one kernel is
    sent to the i-th of the other and back. On the complement ``H2``, U is
    the sign of the compressed ``B``. Both pieces square to the identity.

    Raises
    ------
    NoSwapExists
        If the two kernels have different dimensions.
    SingularB
        If the compressed B is numerically singular (misclassified spectrum).
    """
    p, q = as_matrix(P), as_matrix(Q)
    kq = kernel_quadruple(p, q, tol)
    if kq.k_pq.k != kq.k_1p_1q.k:
        raise NoSwapExists(kq.k_pq.k, kq.k_1p_1q.k)
    split = halmos_split(p, q, tol)
    n = p.shape[0]

    x, y = kq.k_pq.mat, kq.k_1p_1q.mat
    u = y @ x.conj().T + x @ y.conj().T
    h2 = split.h2_frame.mat
    if h2.shape[1]:
        b2 = np.eye(h2.shape[1]) - split.p2 - split.q2
        u = u + h2 @ matrix_sign(b2, tol) @ h2.conj().T
    u = 0.5 * (u + u.conj().T)

    eye = np.eye(n)
    residuals = {
        "upu_q": fro(u @ p @ u.conj().T - q),
        "uqu_p": fro(u @ q @ u.conj().T - p),
        "unitarity": fro(u.conj().T @ u - eye),
        "square": fro(u @ u - eye),
        "hermiticity": fro(u - u.conj().T),
    }
    is_sym = residuals["square"] <= tol.tol_resid and residuals["hermiticity"] <= tol.tol_resid
    return SwapResult(_readonly(u), is_sym, kq.k_pq.k, residuals)


def sign_limit_check(b, epsilons, tol=DEFAULT_TOL):
    """Operator-norm distance of ``B (|B| + ε)^{-1}`` from ``sgn(B)`` for each ε.

    ``|B|`` is formed as the principal square root of ``B²`` by a Schur
    method, independently of the eigendecomposition inside
    :func:`matrix_sign`.
    """
    b = as_matrix(b)
    sign = matrix_sign(b, tol)
    abs_b = scipy.linalg.sqrtm(b @ b)
    eye = np.eye(b.shape[0])
    out = []
    for eps in epsilons:
        # B (|B| + eps)^{-1} = ((|B| + eps)^{-*} B*)* and both factors are Hermitian.
        approx = np.linalg.solve(abs_b + eps * eye, b).conj().T
        out.append(operator_norm(approx - sign))
    return out


def reconstruct_pq(sp):
    """Recover ``P = (A - B + 1)/2`` and ``Q = (-A - B + 1)/2``."""
    eye = np.eye(sp.dim)
    return 0.5 * (sp.a - sp.b + eye), 0.5 * (-sp.a - sp.b + eye)
