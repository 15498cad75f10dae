"""Right eigenvalues and biorthonormal eigenbases of quaternionic matrices.

Right eigenpairs ``M psi = psi lam`` are read off the complex embedding: if
``chi(M) (u; w) = lam (u; w)`` then ``psi = u + j w`` is a right eigenvector
with eigenvalue ``lam``. Eigenvalues of ``chi(M)`` come in conjugate pairs;
each pair is one quaternionic eigenvalue class, represented here by the
member with non-negative imaginary part.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import Defective, LengthMismatch
from .qmat import QMat, qm_adjoint, qm_embed, qm_inverse, _require_square

__all__ = ["BiorthoSystem", "right_eigensystem", "spectral_observable"]

PAIR_TOL = 1e-8
MAX_COND = 1e8


@dataclass(frozen=True)
class BiorthoSystem:
    """Right eigenvectors (columns of ``right``) and their left duals (columns of ``left``).

    ``left^dagger @ right`` is the identity.
    """

    eigenvalues: np.ndarray
    right: QMat
    left: QMat

    def __len__(self):
        return len(self.eigenvalues)

    def psi(self, m: int) -> QMat:
        return self.right[:, m:m + 1]

    def phi(self, m: int) -> QMat:
        return self.left[:, m:m + 1]

    def projector(self, m: int) -> QMat:
        """``|psi_m><phi_m|``; invariant under the choice of eigenvector phase."""
        return self.psi(m) @ qm_adjoint(self.phi(m))

    def gram(self) -> QMat:
        """Matrix of overlaps ``<phi_m|psi_n>``."""
        return qm_adjoint(self.left) @ self.right

    def reconstruct(self) -> QMat:
        """``sum_m psi_m lam_m <phi_m|``."""
        lam = self.eigenvalues
        # right multiplication by a complex scalar acts column-wise on both parts
        scaled = QMat(self.right.alpha * lam, self.right.beta * lam)
        return scaled @ qm_adjoint(self.left)


def _pair_conjugates(w: np.ndarray, scale: float) -> list[int]:
    """Indices of class representatives, greedily matching each eigenvalue with its conjugate."""
    order = sorted(range(len(w)), key=lambda k: -w[k].imag)
    used = np.zeros(len(w), dtype=bool)
    reps = []
    for k in order:
        if used[k]:
            continue
        used[k] = True
        free = np.flatnonzero(~used)
        if free.size == 0:
            raise Defective("unpaired eigenvalue of the complex embedding")
        dist = np.abs(w[free] - np.conj(w[k]))
        p = free[np.argmin(dist)]
        if dist.min() > PAIR_TOL * scale:
            raise Defective(f"eigenvalue {w[k]:.6g} has no conjugate partner (gap {dist.min():.3e})")
        used[p] = True
        reps.append(k)
    return reps


def _jframe(z: np.ndarray) -> np.ndarray:
    """Both embedding columns ``(u; w)`` and ``(-w*; u*)`` of the quaternionic vector ``u + j w``."""
    n = z.shape[0] // 2
    u, w = z[:n], z[n:]
    return np.stack([z, np.concatenate([-w.conj(), u.conj()])], axis=1)


def _select_real_cluster(vecs: np.ndarray, count: int) -> list[np.ndarray]:
    """Pick ``count`` quaternionically independent vectors from a real-eigenvalue eigenspace."""
    q, _ = np.linalg.qr(vecs)
    chosen: list[np.ndarray] = []
    span = np.zeros((vecs.shape[0], 0), dtype=complex)
    for _ in range(count):
        best, best_norm = None, -1.0
        for c in q.T:
            r = c - span @ (span.conj().T @ c)
            if np.linalg.norm(r) > best_norm:
                best, best_norm = r, np.linalg.norm(r)
        best = best / best_norm
        chosen.append(best)
        span, _ = np.linalg.qr(np.hstack([span, _jframe(best)]))
    return chosen


def right_eigensystem(m: QMat) -> BiorthoSystem:
    """Right eigenvalues, eigenvectors and left duals of a diagonalizable ``m``."""
    _require_square(m)
    n = m.shape[0]
    if n == 0:
        return BiorthoSystem(np.zeros(0, dtype=complex), QMat.zeros(0), QMat.zeros(0))
    z = qm_embed(m)
    w, v = np.linalg.eig(z)
    scale = max(1.0, float(np.abs(w).max()))
    reps = _pair_conjugates(w, scale)

    lam = np.array([w[k] for k in reps])
    cols: list[np.ndarray] = [v[:, k] for k in reps]

    # real eigenvalues: both members of a pair may then span the same quaternionic line
    real = [i for i, k in enumerate(reps) if abs(w[k].imag) <= PAIR_TOL * scale]
    while real:
        head = real[0]
        group = [i for i in real if abs(lam[i] - lam[head]) <= PAIR_TOL * scale]
        members = np.flatnonzero(np.abs(w - lam[head]) <= PAIR_TOL * scale)
        picked = _select_real_cluster(v[:, members], len(group))
        for i, vec in zip(group, picked):
            cols[i] = vec
        real = [i for i in real if i not in group]

    vecs = np.stack(cols, axis=1)
    vecs = vecs / np.linalg.norm(vecs, axis=0)
    right = QMat(vecs[:n], vecs[n:])
    cond = np.linalg.cond(qm_embed(right))
    if not np.isfinite(cond) or cond >= MAX_COND:
        raise Defective(f"eigenvector matrix condition number {cond:.3e}")
    # rows of right^-1 are the dual bras <phi_m|
    left = qm_adjoint(qm_inverse(right))
    return BiorthoSystem(lam, right, left)


def spectral_observable(system: BiorthoSystem, weights) -> QMat:
    """``sum_m psi_m w_m <phi_m|`` for real weights."""
    w = np.asarray(weights, dtype=float)
    if w.shape != (len(system),):
        raise LengthMismatch(f"need {len(system)} weights, got {w.size}")
    scaled = QMat(system.right.alpha * w, system.right.beta * w)
    return scaled @ qm_adjoint(system.left)
