"""Shared constructors and oracles for the test suite."""

import math

import numpy as np
from hypothesis import assume
from hypothesis import strategies as st

from projpair.randpairs import feasible_generic_range


def line_proj(theta):
    """Projection onto span (cos θ, sin θ) in C²."""
    v = np.array([math.cos(theta), math.sin(theta)])
    return np.outer(v, v).astype(np.complex128)


def theta_pair(theta):
    return line_proj(0.0), line_proj(theta)


def e_proj(n, *idx):
    d = np.zeros(n)
    d[list(idx)] = 1.0
    return np.diag(d).astype(np.complex128)


def fro(m):
    return float(np.linalg.norm(m)) if m.size else 0.0


@st.composite
def pair_specs(draw, max_n=12, equal_kernels=None):
    """Feasible (n, rank_p, rank_q, a, b, generic, seed) tuples."""
    n = draw(st.integers(1, max_n))
    if equal_kernels:
        a = b = draw(st.integers(0, n // 2))
    else:
        a = draw(st.integers(0, n))
        b = draw(st.integers(0, n - a))
        if equal_kernels is False:
            assume(a != b)
    m = draw(st.integers(0, n - a - b))
    lo, hi = feasible_generic_range(n, a + m, b + m, a, b)
    g = draw(st.integers(lo, hi))
    seed = draw(st.integers(0, 2**32 - 1))
    return n, a + m, b + m, a, b, g, seed


def sample_specs(rng, count, n_range=(2, 64), unequal=False):
    """Seeded feasible structure specs for the acceptance sweep."""
    out = []
    while len(out) < count:
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        if not unequal and rng.random() < 0.5:
            a = b = int(rng.integers(0, n // 2 + 1))
        else:
            a = int(rng.integers(0, n + 1))
            b = int(rng.integers(0, n - a + 1))
            if unequal and a == b:
                continue
        m = int(rng.integers(0, n - a - b + 1))
        _, hi = feasible_generic_range(n, a + m, b + m, a, b)
        g = int(rng.integers(0, hi + 1))
        out.append((n, a + m, b + m, a, b, g, int(rng.integers(0, 2**31))))
    return out


# --- independent oracles ----------------------------------------------------


def intersection_dim(p, q, p_range=True, q_range=True, tol=1e-8):
    """dim of (ran|ker P) ∩ (ran|ker Q) by a null-space SVD of the stacked conditions.

    x ∈ ran P  ⟺ (1-P)x = 0,  x ∈ ker P ⟺ Px = 0.
    """
    n = p.shape[0]
    eye = np.eye(n)
    cp = eye - p if p_range else p
    cq = eye - q if q_range else q
    s = np.linalg.svd(np.vstack([cp, cq]), compute_uv=False)
    return n - int(np.count_nonzero(s > tol))


def quadruple_oracle(p, q):
    return (
        intersection_dim(p, q, True, False),
        intersection_dim(p, q, True, True),
        intersection_dim(p, q, False, False),
        intersection_dim(p, q, False, True),
    )


def range_basis_svd(p, tol=1e-8):
    u, s, _ = np.linalg.svd(p)
    return u[:, s > 0.5]


def angle_oracle(p, q, tol=1e-6):
    """Principal angles between ran P and ran Q strictly inside (0, π/2), via SVD cosines."""
    fp, fq = range_basis_svd(p), range_basis_svd(q)
    if fp.shape[1] == 0 or fq.shape[1] == 0:
        return []
    cos = np.linalg.svd(fp.conj().T @ fq, compute_uv=False)
    angles = np.arccos(np.clip(cos, 0.0, 1.0))
    return sorted(float(a) for a in angles if tol < a < math.pi / 2 - tol)
