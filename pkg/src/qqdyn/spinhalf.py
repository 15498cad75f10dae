"""Closed forms for a spin-1/2 particle in a quasianti-Hermitian quaternionic potential.

The system is

    H_alpha = (omega/2) diag(i, -i),   j H_beta = [[0, j v/x], [j v x, 0]],
    eta = diag(x**2, 1),

with eigenvalues ``i (omega/2 +- v)``. Everything here is evaluated from
trigonometric formulas, never from a matrix exponential, so it can serve as
an independent oracle for :mod:`qqdyn.dynamics`.

Entries written as ``z k`` with complex ``z`` become the pair
``(0, -i conj(z))`` since ``k = j(-i)`` and ``z j = j conj(z)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams
from .metric import GeneralizedDensity, Metric, Observable, QuasiHamiltonian
from .qmat import QMat
from .spectral import BiorthoSystem

__all__ = [
    "SpinHalfParams",
    "sh_system",
    "sh_eigensystem",
    "sh_propagator",
    "sh_propagator_inverse",
    "sh_state",
    "sh_projection",
    "sh_generator",
    "sh_observables",
    "sh_sz_expectation",
    "sh_energy_expectation",
]


@dataclass(frozen=True)
class SpinHalfParams:
    omega: float = 1.0
    v: float = 0.25
    x: float = 2.0

    def __post_init__(self):
        if self.v == 0 or self.x == 0:
            raise InvalidParams("v and x must be non-zero")
        if not all(np.isfinite([self.omega, self.v, self.x])):
            raise InvalidParams("parameters must be finite")

    @property
    def energies(self) -> tuple[float, float]:
        """``(E_plus, E_minus) = (omega/2 + v, omega/2 - v)``."""
        return self.omega / 2 + self.v, self.omega / 2 - self.v


def _metric(p: SpinHalfParams) -> Metric:
    return Metric(QMat(np.diag([p.x ** 2, 1.0]).astype(complex)))


def _times_k(z: np.ndarray) -> np.ndarray:
    """beta part of ``z k`` entrywise."""
    return -1j * np.conj(z)


def sh_system(p: SpinHalfParams) -> tuple[QuasiHamiltonian, Metric]:
    m = _metric(p)
    w, v, x = p.omega, p.v, p.x
    h_alpha = np.diag([0.5j * w, -0.5j * w])
    h_beta = np.array([[0, v / x], [v * x, 0]], dtype=complex)
    # A = H eta^-1, written out to avoid rounding in the division
    a_alpha = np.diag([0.5j * w / x ** 2, -0.5j * w])
    a_beta = np.array([[0, v / x], [v / x, 0]], dtype=complex)
    return QuasiHamiltonian(QMat(h_alpha, h_beta), m, a_alpha, a_beta), m


def sh_eigensystem(p: SpinHalfParams) -> BiorthoSystem:
    """Eigenvalues ``i E_+-``, ``psi_+- = (+-i/x, j)/sqrt2`` and ``phi_+- = (+-x i, j)/sqrt2``."""
    e_plus, e_minus = p.energies
    r = 1 / np.sqrt(2)
    x = p.x
    right = QMat(np.array([[1j / x, -1j / x], [0, 0]]) * r, np.array([[0, 0], [1, 1]]) * r)
    left = QMat(np.array([[1j * x, -1j * x], [0, 0]]) * r, np.array([[0, 0], [1, 1]]) * r)
    return BiorthoSystem(np.array([1j * e_plus, 1j * e_minus]), right, left)


def _propagator(p: SpinHalfParams, t: float) -> QMat:
    e_plus, e_minus = p.energies
    x = p.x
    ep, em = np.exp(-1j * e_plus * t), np.exp(-1j * e_minus * t)
    alpha = 0.5 * np.diag([ep + em, np.conj(ep) + np.conj(em)])
    z01 = (em - ep) / x
    z10 = x * (np.conj(ep) - np.conj(em))
    beta = 0.5 * np.array([[0, _times_k(z01)], [_times_k(z10), 0]])
    return QMat(alpha, beta)


def sh_propagator(p: SpinHalfParams, t: float) -> QMat:
    """``V(t) = exp(-Ht)`` from the spectral decomposition."""
    return _propagator(p, float(t))


def sh_propagator_inverse(p: SpinHalfParams, t: float) -> QMat:
    return _propagator(p, -float(t))


def sh_state(p: SpinHalfParams, t: float) -> GeneralizedDensity:
    """Evolved generalized density matrix for the initial state ``diag(0, 1)``."""
    s, c = np.sin(2 * p.v * t), np.cos(2 * p.v * t)
    alpha = 0.5 * np.diag([1 - c, 1 + c]).astype(complex)
    beta = 0.5 * np.array([[0, -s / p.x], [p.x * s, 0]], dtype=complex)
    return GeneralizedDensity(QMat(alpha, beta), _metric(p))


def sh_projection(p: SpinHalfParams, t: float) -> np.ndarray:
    c = np.cos(2 * p.v * t)
    return 0.5 * np.diag([1 - c, 1 + c]).astype(complex)


def sh_generator(p: SpinHalfParams, t: float) -> np.ndarray:
    """Right-hand side of the projected master equation along the trajectory."""
    g = p.v * np.sin(2 * p.v * t)
    return np.diag([g, -g]).astype(complex)


def sh_observables(p: SpinHalfParams) -> tuple[Observable, Observable]:
    """``s_z = diag(1, -1)/2`` and the energy observable ``|H|``.

    ``s_x`` and ``s_y`` are not eta-pseudo-Hermitian for ``x != +-1`` and are
    deliberately not provided.
    """
    m = _metric(p)
    s_z = Observable(QMat(np.diag([0.5, -0.5]).astype(complex)), "s_z")
    w, v, x = p.omega, p.v, p.x
    # [[w/2, -k v/x], [k x v, w/2]]
    mod_h = QMat(np.diag([w / 2, w / 2]).astype(complex),
                 np.array([[0, _times_k(-v / x)], [_times_k(x * v), 0]]))
    return s_z.registered(m), Observable(mod_h, "mod_h").registered(m)


def sh_sz_expectation(p: SpinHalfParams, t: float) -> float:
    """``Re Tr(s_z rho_tilde(t)) = -cos(2 v t)/2`` for the initial state ``diag(0, 1)``."""
    return -np.cos(2 * p.v * t) / 2


def sh_energy_expectation(p: SpinHalfParams, t: float = 0.0) -> float:
    """``<|H|>`` is conserved and equals ``omega/2``."""
    return p.omega / 2
