"""Seeded generator of projection pairs with prescribed structure.

A pair is assembled as a direct sum of one-dimensional blocks
``(P, Q) = (1, 0), (0, 1), (1, 1), (0, 0)`` and 2x2 generic blocks
``(proj e1, proj (cos θ, sin θ))``, then conjugated by a random unitary.
With ``a = dim ran P∩ker Q``, ``b = dim ker P∩ran Q``, ``c`` shared-range
dims, ``d`` shared-kernel dims and ``g`` generic blocks::

    rank P = a + c + g,   rank Q = b + c + g,   n = a + b + c + d + 2g
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InfeasibleSpec

__all__ = ["random_unitary", "random_pair", "feasible_generic_range"]

MIN_ANGLE = 0.05


def random_unitary(n, rng):
    """Haar-distributed unitary from the QR factors of a complex Gaussian matrix."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def feasible_generic_range(n, rank_p, rank_q, a, b):
    """Inclusive range ``(g_min, g_max)`` of generic block counts, or raise InfeasibleSpec."""
    if min(n, rank_p, rank_q, a, b) < 0 or n == 0:
        raise InfeasibleSpec("dimensions must be non-negative and n positive")
    if rank_p > n or rank_q > n:
        raise InfeasibleSpec(f"ranks {rank_p}/{rank_q} exceed dimension {n}")
    if a > rank_p:
        raise InfeasibleSpec(f"dim ran P∩ker Q = {a} exceeds rank P = {rank_p}")
    if b > n - rank_p:
        raise InfeasibleSpec(f"dim ker P∩ran Q = {b} exceeds dim ker P = {n - rank_p}")
    m = rank_p - a
    if rank_q - b != m:
        raise InfeasibleSpec(
            f"rank P - a = {rank_p - a} must equal rank Q - b = {rank_q - b}"
        )
    room = n - a - b - m  # = d + g
    if room < 0:
        raise InfeasibleSpec(f"kernel dims {a}+{b} and shared ranks {m} exceed dimension {n}")
    return 0, min(m, room)


def random_pair(n, rank_p, rank_q, kernel_dims=(0, 0), seed=0, generic=None,
                max_angle=None):
    """Generate ``(P, Q)`` as dense complex arrays.

    Parameters
    ----------
    n : int
    rank_p, rank_q : int
    kernel_dims : (int, int)
        Requested ``dim ran P∩ker Q`` and ``dim ker P∩ran Q``.
    seed : int
    generic : int, optional
        Number of 2x2 generic blocks; drawn from the seed when omitted.
    max_angle : float, optional
        Upper bound on the block angles, which bounds ``||P - Q||`` by
        ``sin(max_angle)`` when both kernel dims are zero.

    Raises
    ------
    InfeasibleSpec
    """
    a, b = kernel_dims
    g_lo, g_hi = feasible_generic_range(n, rank_p, rank_q, a, b)
    rng = np.random.default_rng(seed)
    if generic is None:
        g = int(rng.integers(g_lo, g_hi + 1))
    elif g_lo <= generic <= g_hi:
        g = generic
    else:
        raise InfeasibleSpec(f"generic block count {generic} outside feasible range {g_lo}..{g_hi}")
    c = rank_p - a - g
    d = n - a - b - c - 2 * g

    hi = math.pi / 2 - MIN_ANGLE if max_angle is None else max_angle
    if not MIN_ANGLE <= hi <= math.pi / 2 - MIN_ANGLE:
        raise InfeasibleSpec(f"max_angle must lie in [{MIN_ANGLE}, pi/2 - {MIN_ANGLE}]")
    angles = rng.uniform(MIN_ANGLE, hi, size=g)

    p_diag = [1.0] * a + [0.0] * b + [1.0] * c + [0.0] * d
    q_diag = [0.0] * a + [1.0] * b + [1.0] * c + [0.0] * d
    p0 = np.zeros((n, n), dtype=np.complex128)
    q0 = np.zeros((n, n), dtype=np.complex128)
    k = len(p_diag)
    p0[:k, :k] = np.diag(p_diag)
    q0[:k, :k] = np.diag(q_diag)
    for i, theta in enumerate(angles):
        j = k + 2 * i
        v = np.array([math.cos(theta), math.sin(theta)])
        p0[j, j] = 1.0
        q0[j:j + 2, j:j + 2] = np.outer(v, v)

    u = random_unitary(n, rng)
    p = u @ p0 @ u.conj().T
    q = u @ q0 @ u.conj().T
    return 0.5 * (p + p.conj().T), 0.5 * (q + q.conj().T)
