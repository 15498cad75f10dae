"""Quaternionic matrices in complex-pair form ``M = alpha + j*beta``.

Products follow from ``z j = j conj(z)``::

    (A + jB)(C + jD) = (AC - B* D) + j(A* D + BC)

All spectral work goes through the symplectic embedding

    chi(A + jB) = [[A, -B*], [B, A*]]

which is an injective algebra homomorphism that also intertwines adjoints.
Cholesky is the one factorization done natively, since the Cholesky factor
of ``chi(M)`` is not in general the image of a quaternionic matrix.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    NotHermitian,
    NotPositiveDefinite,
    NotSquare,
    ShapeMismatch,
    Singular,
    StructureViolation,
)
from .quaternion import Quaternion, quat_from_pair, quat_to_pair

__all__ = [
    "QMat",
    "STRUCT_TOL",
    "HARD_TOL",
    "qm_mul",
    "qm_adjoint",
    "qm_complex_projection",
    "qm_embed",
    "qm_extract",
    "qm_re_trace",
    "qm_inverse",
    "qm_solve",
    "qm_positivity",
    "qm_cholesky",
    "qm_residual",
    "is_hermitian",
    "hermitian_eigvals",
]

# relative Frobenius tolerance for structural checks
STRUCT_TOL = 1e-10
# numerical failures that indicate a genuinely broken computation
HARD_TOL = 1e-6


def _as_cmat(a, shape=None) -> np.ndarray:
    arr = np.array(a, dtype=complex)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    elif arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise ShapeMismatch(f"expected a 2-d matrix, got ndim={arr.ndim}")
    if shape is not None and arr.shape != shape:
        raise ShapeMismatch(f"beta shape {arr.shape} != alpha shape {shape}")
    arr.setflags(write=False)
    return arr


class QMat:
    """Quaternionic matrix ``alpha + j*beta`` with complex ``alpha``, ``beta``.

    Instances are immutable; the underlying arrays are flagged read-only.
    ``@`` is the quaternionic product, ``+``/``-`` act componentwise and
    ``*`` accepts real scalars only (complex scalars do not commute with j).
    """

    __slots__ = ("alpha", "beta")
    __array_ufunc__ = None  # keep numpy from broadcasting over QMat operands

    def __init__(self, alpha, beta=None):
        a = _as_cmat(alpha)
        b = np.zeros(a.shape, dtype=complex) if beta is None else _as_cmat(beta, a.shape)
        b.setflags(write=False)
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    def __setattr__(self, name, value):
        raise AttributeError("QMat is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> QMat:
        return cls(np.eye(n, dtype=complex))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> QMat:
        cols = rows if cols is None else cols
        return cls(np.zeros((rows, cols), dtype=complex))

    @classmethod
    def jpart(cls, beta) -> QMat:
        """The purely quaternionic matrix ``j*beta``."""
        b = _as_cmat(beta)
        return cls(np.zeros(b.shape, dtype=complex), b)

    @classmethod
    def from_quaternions(cls, entries) -> QMat:
        rows = [[quat_to_pair(q) for q in row] for row in entries]
        if not rows:
            return cls.zeros(0, 0)
        alpha = [[p[0] for p in row] for row in rows]
        beta = [[p[1] for p in row] for row in rows]
        return cls(alpha, beta)

    def to_quaternions(self) -> list[list[Quaternion]]:
        return [[quat_from_pair(a, b) for a, b in zip(ra, rb)]
                for ra, rb in zip(self.alpha, self.beta)]

    # -- basic properties ---------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.alpha.shape

    @property
    def is_square(self) -> bool:
        return self.alpha.shape[0] == self.alpha.shape[1]

    @property
    def is_complex(self) -> bool:
        """True when the j-part is exactly zero."""
        return not np.any(self.beta)

    def norm(self) -> float:
        """Frobenius norm (sum of squared quaternion moduli)."""
        return float(np.sqrt(np.linalg.norm(self.alpha) ** 2 + np.linalg.norm(self.beta) ** 2))

    @property
    def H(self) -> QMat:
        return qm_adjoint(self)

    def __getitem__(self, key) -> QMat:
        return QMat(self.alpha[key], self.beta[key])

    def entry(self, r: int, c: int) -> Quaternion:
        return quat_from_pair(self.alpha[r, c], self.beta[r, c])

    # -- arithmetic ---------------------------------------------------------

    def __matmul__(self, other):
        if not isinstance(other, QMat):
            return NotImplemented
        return qm_mul(self, other)

    def __add__(self, other):
        if not isinstance(other, QMat):
            return NotImplemented
        _same_shape(self, other)
        return QMat(self.alpha + other.alpha, self.beta + other.beta)

    def __sub__(self, other):
        if not isinstance(other, QMat):
            return NotImplemented
        _same_shape(self, other)
        return QMat(self.alpha - other.alpha, self.beta - other.beta)

    def __neg__(self):
        return QMat(-self.alpha, -self.beta)

    def __mul__(self, s):
        if isinstance(s, (bool, complex, np.complexfloating)) or not np.isscalar(s):
            return NotImplemented
        return QMat(self.alpha * s, self.beta * s)

    __rmul__ = __mul__

    def __truediv__(self, s):
        if isinstance(s, (bool, complex, np.complexfloating)) or not np.isscalar(s):
            return NotImplemented
        return QMat(self.alpha / s, self.beta / s)

    def allclose(self, other: QMat, atol: float = 1e-12) -> bool:
        return self.shape == other.shape and (self - other).norm() <= atol

    def __repr__(self):
        return f"QMat(alpha={self.alpha!r}, beta={self.beta!r})"


def _same_shape(m: QMat, n: QMat):
    if m.shape != n.shape:
        raise ShapeMismatch(f"shapes differ: {m.shape} vs {n.shape}")


def _require_square(m: QMat):
    if not m.is_square:
        raise NotSquare(f"matrix of shape {m.shape} is not square")


def qm_mul(m: QMat, n: QMat) -> QMat:
    if m.shape[1] != n.shape[0]:
        raise ShapeMismatch(f"cannot multiply {m.shape} by {n.shape}")
    a, b, c, d = m.alpha, m.beta, n.alpha, n.beta
    return QMat(a @ c - b.conj() @ d, a.conj() @ d + b @ c)


def qm_adjoint(m: QMat) -> QMat:
    return QMat(m.alpha.conj().T, -m.beta.T)


def qm_residual(x: QMat, y: QMat) -> float:
    """Frobenius norm of ``x - y``."""
    return (x - y).norm()


def qm_complex_projection(m: QMat, check: bool = True) -> np.ndarray:
    """Complex part of ``m``, i.e. ``(M - iMi)/2``.

    With ``check`` the sandwich form is evaluated in quaternion arithmetic and
    compared against ``alpha``.
    """
    if check and m.alpha.size:
        il = QMat(1j * np.eye(m.shape[0]))
        ir = QMat(1j * np.eye(m.shape[1]))
        sandwich = (m - il @ m @ ir) * 0.5
        scale = max(m.norm(), 1.0)
        err = qm_residual(sandwich, QMat(m.alpha))
        if err > 1e-14 * scale:
            raise StructureViolation(f"projection self-check failed, residual {err:.3e}")
    return np.array(m.alpha)


def qm_embed(m: QMat) -> np.ndarray:
    a, b = m.alpha, m.beta
    return np.block([[a, -b.conj()], [b, a.conj()]])


def qm_extract(z, tol: float = STRUCT_TOL) -> QMat:
    z = np.asarray(z, dtype=complex)
    if z.ndim != 2 or z.shape[0] % 2 or z.shape[1] % 2:
        raise StructureViolation(f"shape {z.shape} is not 2n x 2m")
    n, m = z.shape[0] // 2, z.shape[1] // 2
    z11, z12, z21, z22 = z[:n, :m], z[:n, m:], z[n:, :m], z[n:, m:]
    defect = np.sqrt(np.linalg.norm(z22 - z11.conj()) ** 2 + np.linalg.norm(z12 + z21.conj()) ** 2)
    if defect > tol * max(np.linalg.norm(z), np.finfo(float).tiny):
        raise StructureViolation(f"block structure defect {defect:.3e} exceeds tolerance")
    return QMat((z11 + z22.conj()) / 2, (z21 - z12.conj()) / 2)


def qm_re_trace(m: QMat) -> float:
    _require_square(m)
    return float(np.trace(m.alpha).real)


def _check_nonsingular(z: np.ndarray):
    if z.size == 0:
        return
    sv = np.linalg.svd(z, compute_uv=False)
    if sv[-1] <= 1e-12 * sv[0]:
        raise Singular(f"matrix is numerically singular (sigma_min/sigma_max = {sv[-1] / sv[0]:.3e})")


def qm_inverse(m: QMat) -> QMat:
    _require_square(m)
    z = qm_embed(m)
    _check_nonsingular(z)
    return qm_extract(np.linalg.inv(z) if z.size else z)


def qm_solve(m: QMat, y: QMat) -> QMat:
    """Return ``X`` with ``m @ X = y``."""
    _require_square(m)
    if m.shape[1] != y.shape[0]:
        raise ShapeMismatch(f"cannot solve {m.shape} system with rhs {y.shape}")
    z = qm_embed(m)
    _check_nonsingular(z)
    zy = qm_embed(y)
    return qm_extract(np.linalg.solve(z, zy) if z.size else zy)


def is_hermitian(m: QMat, tol: float = STRUCT_TOL) -> bool:
    if not m.is_square:
        return False
    return qm_residual(m, qm_adjoint(m)) <= tol * max(m.norm(), np.finfo(float).tiny)


def hermitian_eigvals(m: QMat) -> np.ndarray:
    """Eigenvalues of ``chi(m)`` for Hermitian ``m``; each appears twice."""
    z = qm_embed(m)
    return np.linalg.eigvalsh((z + z.conj().T) / 2)


def qm_positivity(m: QMat, tol: float = STRUCT_TOL) -> tuple[bool, float]:
    """Return ``(is_positive, min_eigenvalue)`` for Hermitian ``m``."""
    if not is_hermitian(m, tol):
        raise NotHermitian("positivity requires a Hermitian matrix")
    if m.alpha.size == 0:
        return True, float("inf")
    lam_min = float(hermitian_eigvals(m)[0])
    return lam_min >= -tol * m.norm(), lam_min


def qm_cholesky(m: QMat, tol: float = 1e-14) -> QMat:
    """Upper-triangular ``B`` with real positive diagonal and ``B^dagger B = m``."""
    _require_square(m)
    if not is_hermitian(m):
        raise NotHermitian("Cholesky requires a Hermitian matrix")
    n = m.shape[0]
    ra = np.zeros((n, n), dtype=complex)
    rb = np.zeros((n, n), dtype=complex)
    ma, mb = m.alpha, m.beta
    scale = max(float(np.max(np.abs(ma.diagonal()))) if n else 0.0, np.finfo(float).tiny)
    for k in range(n):
        col = QMat(ra[:k, k:k + 1], rb[:k, k:k + 1])
        pivot = ma[k, k].real - col.norm() ** 2
        if pivot <= tol * scale:
            raise NotPositiveDefinite(f"pivot {k} = {pivot:.3e} is not positive")
        rkk = np.sqrt(pivot)
        ra[k, k] = rkk
        if k + 1 < n:
            rest = QMat(ra[:k, k + 1:], rb[:k, k + 1:])
            acc = qm_mul(qm_adjoint(col), rest)
            # pivot is real, so left division is plain scaling
            ra[k, k + 1:] = (ma[k, k + 1:] - acc.alpha[0]) / rkk
            rb[k, k + 1:] = (mb[k, k + 1:] - acc.beta[0]) / rkk
    return QMat(ra, rb)
