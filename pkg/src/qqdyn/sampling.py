"""Seeded random generators for matrices, metrics, Hamiltonians and states.

All generators take a ``numpy.random.Generator`` so results are reproducible
from a single seed.
"""

from __future__ import annotations

import numpy as np

from .qmat import QMat, qm_adjoint, qm_mul

__all__ = [
    "complex_gaussian",
    "random_qmat",
    "random_anti_hermitian",
    "random_symmetric",
    "random_complex_metric",
    "random_quaternionic_metric",
    "random_rho",
    "random_state",
    "random_quasi_hamiltonian",
]


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def random_qmat(rng: np.random.Generator, rows: int, cols: int | None = None) -> QMat:
    cols = rows if cols is None else cols
    return QMat(complex_gaussian(rng, (rows, cols)), complex_gaussian(rng, (rows, cols)))


def random_anti_hermitian(rng, n: int) -> np.ndarray:
    g = complex_gaussian(rng, (n, n))
    return (g - g.conj().T) / 2


def random_symmetric(rng, n: int) -> np.ndarray:
    g = complex_gaussian(rng, (n, n))
    return (g + g.T) / 2


def random_complex_metric(rng, n: int, shift: float = 0.5) -> QMat:
    """``G^dagger G + shift*I`` with a complex Gaussian ``G``."""
    g = complex_gaussian(rng, (n, n)) / np.sqrt(n)
    return QMat(g.conj().T @ g + shift * np.eye(n))


def random_quaternionic_metric(rng, n: int, j_strength: float = 0.5, shift: float = 0.1) -> QMat:
    """``G^dagger G + shift*I`` where every entry of G's j-part has modulus >= ``j_strength``."""
    a = complex_gaussian(rng, (n, n))
    phase = np.exp(2j * np.pi * rng.random((n, n)))
    b = phase * (j_strength + np.abs(rng.standard_normal((n, n))))
    g = QMat(a, b) / np.sqrt(n)
    eta = qm_mul(qm_adjoint(g), g) + QMat.identity(n) * shift
    # exact Hermitian symmetry, removes rounding asymmetry of the product
    return (eta + qm_adjoint(eta)) * 0.5


def random_rho(rng, n: int, rank: int | None = None) -> QMat:
    """Random Hermitian positive semidefinite quaternionic ``G^dagger G``."""
    rank = n if rank is None else rank
    g = random_qmat(rng, rank, n)
    rho = qm_mul(qm_adjoint(g), g)
    return (rho + qm_adjoint(rho)) * 0.5


def random_state(rng, metric, rank: int | None = None):
    """Random generalized density matrix ``rho*eta`` normalized to unit real trace."""
    from .metric import generalized_density

    return generalized_density(random_rho(rng, metric.n, rank), metric)


def random_quasi_hamiltonian(rng, metric, scale: float = 1.0, beta_scale: float = 1.0):
    """``(A_alpha + j A_beta) eta`` with random anti-Hermitian / symmetric parts."""
    from .metric import make_quasi_hamiltonian

    n = metric.n
    return make_quasi_hamiltonian(scale * random_anti_hermitian(rng, n),
                                  scale * beta_scale * random_symmetric(rng, n), metric)

