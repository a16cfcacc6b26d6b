"""Matrix carrier, tolerance policy, projection validation and the matrix file format.

Every operator in the package is a dense ``complex128`` numpy array. The
helpers here turn arbitrary array-likes into that carrier, check the
orthogonal-projection axioms at a configurable tolerance, and read/write
the JSON interchange format::

    {"rows": 2, "cols": 2, "data": [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]]}

``data`` holds ``rows * cols`` pairs ``[re, im]`` in row-major order.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatch,
    DimensionTooLarge,
    FrameNotOrthonormal,
    InvalidTolerance,
    MatrixFormatError,
    NotHermitian,
    NotIdempotent,
    NotSquare,
)

__all__ = [
    "ToleranceConfig",
    "DEFAULT_TOL",
    "OrthProjection",
    "Frame",
    "as_matrix",
    "fro",
    "operator_norm",
    "validate_projection",
    "projection_from_frame",
    "phase_normalize",
    "matrix_to_dict",
    "matrix_from_dict",
    "dumps_matrix",
    "loads_matrix",
    "load_matrix",
    "save_matrix",
]


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical thresholds used throughout the package.

    Parameters
    ----------
    tol_herm, tol_idem : float
        Relative bounds on ``||M - M*||_F`` and ``||M^2 - M||_F``; both are
        scaled by ``1 + ||M||_F``.
    tol_spec : float
        Half-width of the eigenvalue classification bins. Must be below 0.5
        so that the bins at -1, 0 and +1 cannot overlap.
    tol_resid : float
        Bound on verification residuals.
    quad_tol : float
        Convergence threshold for contour quadrature and power series.
    max_dim : int
        Largest accepted matrix dimension.
    """

    tol_herm: float = 1e-10
    tol_idem: float = 1e-10
    tol_spec: float = 1e-8
    tol_resid: float = 1e-8
    quad_tol: float = 1e-10
    max_dim: int = 1024

    def __post_init__(self):
        for name in ("tol_herm", "tol_idem", "tol_spec", "tol_resid", "quad_tol"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise InvalidTolerance(f"{name} must be a positive finite number, got {value!r}")
        if self.tol_spec >= 0.5:
            raise InvalidTolerance(f"tol_spec must be < 0.5, got {self.tol_spec!r}")
        if self.max_dim < 1:
            raise InvalidTolerance(f"max_dim must be positive, got {self.max_dim!r}")


DEFAULT_TOL = ToleranceConfig()


def as_matrix(m, name="matrix"):
    """Return `m` as a 2-D ``complex128`` array with finite entries."""
    arr = np.asarray(m.mat if hasattr(m, "mat") else m, dtype=np.complex128)
    if arr.ndim != 2:
        raise MatrixFormatError(f"{name} must be 2-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise MatrixFormatError(f"{name} has non-finite entries")
    return arr


def fro(m):
    """Frobenius norm."""
    return float(np.linalg.norm(m, "fro")) if np.size(m) else 0.0


def operator_norm(m):
    """Largest singular value of `m` (0 for an empty matrix)."""
    arr = as_matrix(m)
    if arr.size == 0:
        return 0.0
    return float(np.linalg.norm(arr, 2))


def _readonly(arr):
    arr = np.array(arr, dtype=np.complex128, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class OrthProjection:
    """A validated orthogonal projection. Build with :func:`validate_projection`."""

    mat: np.ndarray
    herm_residual: float = 0.0
    idem_residual: float = 0.0

    @property
    def dim(self):
        return self.mat.shape[0]

    @property
    def rank(self):
        return int(round(float(np.trace(self.mat).real)))

    def complement(self):
        """The projection ``1 - P``."""
        c = np.eye(self.dim) - self.mat
        return OrthProjection(_readonly(c), self.herm_residual, self.idem_residual)


@dataclass(frozen=True)
class Frame:
    """An ``n x k`` matrix whose columns are an orthonormal basis of a subspace."""

    mat: np.ndarray = field(repr=False)

    @property
    def n(self):
        return self.mat.shape[0]

    @property
    def k(self):
        return self.mat.shape[1]

    def orthonormality_residual(self):
        return fro(self.mat.conj().T @ self.mat - np.eye(self.k))

    @classmethod
    def empty(cls, n):
        return cls(_readonly(np.zeros((n, 0), dtype=np.complex128)))


def validate_projection(m, tol=DEFAULT_TOL):
    """Check that `m` is an orthogonal projection and wrap it.

    Nothing is repaired: a matrix outside tolerance is rejected.

    Raises
    ------
    NotSquare, DimensionTooLarge, NotHermitian, NotIdempotent
    """
    mat = as_matrix(m)
    n, k = mat.shape
    if n != k or n == 0:
        raise NotSquare(f"projection must be square and non-empty, got shape {mat.shape}")
    if n > tol.max_dim:
        raise DimensionTooLarge(f"dimension {n} exceeds cap {tol.max_dim}")
    scale = 1.0 + fro(mat)
    herm = fro(mat - mat.conj().T)
    if herm > tol.tol_herm * scale:
        raise NotHermitian(herm, tol.tol_herm * scale)
    idem = fro(mat @ mat - mat)
    if idem > tol.tol_idem * scale:
        raise NotIdempotent(idem, tol.tol_idem * scale)
    # Spectrum must sit in the bins around 0 and 1.
    ev = np.linalg.eigvalsh(0.5 * (mat + mat.conj().T))
    off = np.minimum(np.abs(ev), np.abs(ev - 1.0))
    if off.size and off.max() > tol.tol_spec:
        raise NotIdempotent(float(off.max()), tol.tol_spec)
    return OrthProjection(_readonly(mat), herm, idem)


def projection_from_frame(f, tol=DEFAULT_TOL):
    """Return the orthogonal projection ``f f*`` onto the span of a frame."""
    mat = as_matrix(f)
    resid = fro(mat.conj().T @ mat - np.eye(mat.shape[1]))
    if resid > tol.tol_resid:
        raise FrameNotOrthonormal(resid)
    p = mat @ mat.conj().T
    return OrthProjection(_readonly(p), fro(p - p.conj().T), fro(p @ p - p))


def phase_normalize(vectors):
    """Rotate each column so its largest-magnitude entry is real and positive.

    Ties go to the lowest row index (``argmax`` semantics).
    """
    v = np.array(vectors, dtype=np.complex128, copy=True)
    if v.size == 0:
        return v
    idx = np.argmax(np.abs(v), axis=0)
    pivots = v[idx, np.arange(v.shape[1])]
    v /= pivots / np.abs(pivots)
    return v


def check_same_dim(*mats):
    dims = {m.shape for m in mats}
    if len(dims) != 1:
        raise DimensionMismatch(f"operands have shapes {sorted(dims)}")


# --- interchange format --------------------------------------------------


def matrix_to_dict(m):
    arr = as_matrix(m)
    rows, cols = arr.shape
    data = [[float(z.real), float(z.imag)] for z in arr.reshape(-1)]
    return {"rows": rows, "cols": cols, "data": data}


def _is_int(x):
    return isinstance(x, int) and not isinstance(x, bool)


def _is_real(x):
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def matrix_from_dict(obj):
    """Decode a matrix document. Raises :class:`MatrixFormatError` on any defect."""
    if not isinstance(obj, dict):
        raise MatrixFormatError("matrix document must be a JSON object")
    missing = {"rows", "cols", "data"} - obj.keys()
    if missing:
        raise MatrixFormatError(f"matrix document missing keys {sorted(missing)}")
    rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    if not (_is_int(rows) and _is_int(cols) and rows > 0 and cols > 0):
        raise MatrixFormatError("rows and cols must be positive integers")
    if not isinstance(data, list) or len(data) != rows * cols:
        got = len(data) if isinstance(data, list) else type(data).__name__
        raise MatrixFormatError(f"data must hold rows*cols = {rows * cols} entries, got {got}")
    out = np.empty(rows * cols, dtype=np.complex128)
    for i, entry in enumerate(data):
        if not (isinstance(entry, list) and len(entry) == 2 and all(map(_is_real, entry))):
            raise MatrixFormatError(f"data[{i}] must be a pair [re, im] of finite numbers")
        out[i] = complex(float(entry[0]), float(entry[1]))
    return out.reshape(rows, cols)


def _reject_constant(name):
    raise MatrixFormatError(f"non-finite literal {name} is not allowed")


def loads_matrix(text):
    try:
        obj = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"invalid JSON: {exc}") from exc
    return matrix_from_dict(obj)


def dumps_matrix(m):
    return json.dumps(matrix_to_dict(m), allow_nan=False) + "\n"


def load_matrix(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise MatrixFormatError(f"cannot read {path}: {exc}") from exc
    return loads_matrix(text)


def save_matrix(path, m):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_matrix(m))
