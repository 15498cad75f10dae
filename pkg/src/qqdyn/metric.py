"""Metric operators, eta-adjoints and generalized density matrices.

A metric ``eta`` is Hermitian positive definite. It defines the alternative
inner product ``(x, eta y)`` and the adjoint ``Q^ddagger = eta^-1 Q^dagger eta``.
Observables satisfy ``eta Q eta^-1 = Q^dagger``; Hamiltonians generating
eta-unitary dynamics satisfy ``eta H eta^-1 = -H^dagger``, equivalently
``H = A eta`` with ``A`` anti-Hermitian.

States are stored as generalized density matrices ``rho_tilde = rho eta``.
Their positivity is phrased through the Cholesky factor ``eta = B^dagger B``:
``B rho_tilde B^-1 = B rho B^dagger >= 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    InvariantBreach,
    MetricNotComplex,
    NotAntiHermitian,
    NotHermitian,
    NotPositive,
    NotPseudoAntiHermitian,
    NotSymmetric,
    ShapeMismatch,
    SimilarityFailed,
)
from .qmat import (
    STRUCT_TOL,
    QMat,
    hermitian_eigvals,
    is_hermitian,
    qm_adjoint,
    qm_cholesky,
    qm_complex_projection,
    qm_inverse,
    qm_positivity,
    qm_re_trace,
    qm_residual,
)

__all__ = [
    "Metric",
    "QuasiHamiltonian",
    "GeneralizedDensity",
    "Observable",
    "Prop1Report",
    "eta_adjoint",
    "pseudo_residual",
    "is_pseudo_hermitian",
    "is_pseudo_anti_hermitian",
    "make_quasi_hamiltonian",
    "hamiltonian_factor",
    "quasi_hamiltonian",
    "generalized_density",
    "pure_state",
    "expectation",
    "projected_expectation",
    "proposition1_check",
    "similarity_to_antihermitian",
]

_TINY = np.finfo(float).tiny


class Metric:
    """Hermitian positive-definite metric with cached factor and inverse.

    ``factor_b`` is the upper-triangular quaternionic Cholesky factor, so
    ``factor_b^dagger @ factor_b == eta``.
    """

    __slots__ = ("eta", "factor_b", "factor_b_inv", "eta_inv", "is_complex")

    def __init__(self, eta):
        if not isinstance(eta, QMat):
            eta = QMat(eta)
        if not eta.is_square:
            raise ShapeMismatch(f"metric must be square, got {eta.shape}")
        if not is_hermitian(eta, 1e-12):
            raise NotHermitian("metric is not Hermitian")
        b = qm_cholesky(eta)
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "factor_b", b)
        object.__setattr__(self, "factor_b_inv", qm_inverse(b))
        object.__setattr__(self, "eta_inv", qm_inverse(eta))
        object.__setattr__(self, "is_complex", eta.is_complex)

    def __setattr__(self, name, value):
        raise AttributeError("Metric is immutable")

    @classmethod
    def identity(cls, n: int) -> Metric:
        return cls(QMat.identity(n))

    @property
    def n(self) -> int:
        return self.eta.shape[0]

    def similarity(self, q: QMat) -> QMat:
        """``B q B^-1``."""
        return self.factor_b @ q @ self.factor_b_inv

    def __repr__(self):
        return f"Metric(n={self.n}, is_complex={self.is_complex})"


def _check_shapes(q: QMat, m: Metric):
    if q.shape != (m.n, m.n):
        raise ShapeMismatch(f"operator shape {q.shape} does not match metric dimension {m.n}")


def eta_adjoint(q: QMat, m: Metric) -> QMat:
    _check_shapes(q, m)
    return m.eta_inv @ qm_adjoint(q) @ m.eta


def pseudo_residual(q: QMat, m: Metric, sign: int = 1) -> float:
    """``||eta q eta^-1 - sign * q^dagger||_F``."""
    _check_shapes(q, m)
    return qm_residual(m.eta @ q @ m.eta_inv, qm_adjoint(q) * sign)


def is_pseudo_hermitian(q: QMat, m: Metric, tol: float = STRUCT_TOL) -> bool:
    return pseudo_residual(q, m, +1) <= tol * max(q.norm(), _TINY)


def is_pseudo_anti_hermitian(h: QMat, m: Metric, tol: float = STRUCT_TOL) -> bool:
    return pseudo_residual(h, m, -1) <= tol * max(h.norm(), _TINY)


@dataclass(frozen=True)
class QuasiHamiltonian:
    """``h = (a_alpha + j a_beta) eta`` with anti-Hermitian ``a_alpha`` and symmetric ``a_beta``."""

    h: QMat
    metric: Metric
    a_alpha: np.ndarray
    a_beta: np.ndarray

    @property
    def n(self) -> int:
        return self.metric.n

    @property
    def h_alpha(self) -> np.ndarray:
        return self.h.alpha

    @property
    def h_beta(self) -> np.ndarray:
        return self.h.beta

    @property
    def factor(self) -> QMat:
        return QMat(self.a_alpha, self.a_beta)


def _anti_hermitian_defect(a: np.ndarray) -> float:
    return float(np.linalg.norm(a + a.conj().T))


def make_quasi_hamiltonian(a_alpha, a_beta, m: Metric, tol: float = STRUCT_TOL) -> QuasiHamiltonian:
    a_alpha = np.asarray(a_alpha, dtype=complex)
    a_beta = np.asarray(a_beta, dtype=complex)
    if a_alpha.shape != (m.n, m.n) or a_beta.shape != (m.n, m.n):
        raise ShapeMismatch("factor blocks must match the metric dimension")
    if _anti_hermitian_defect(a_alpha) > tol * max(np.linalg.norm(a_alpha), _TINY):
        raise NotAntiHermitian("a_alpha is not anti-Hermitian")
    if np.linalg.norm(a_beta - a_beta.T) > tol * max(np.linalg.norm(a_beta), _TINY):
        raise NotSymmetric("a_beta is not symmetric")
    if not m.is_complex:
        raise MetricNotComplex("quasianti-Hermitian construction needs a complex metric")
    h = QMat(a_alpha, a_beta) @ m.eta
    return QuasiHamiltonian(h, m, a_alpha, a_beta)


def hamiltonian_factor(h: QMat, m: Metric, tol: float = STRUCT_TOL) -> QMat:
    """Return ``A = h eta^-1``, which is anti-Hermitian when h is eta-pseudoanti-Hermitian."""
    if not is_pseudo_anti_hermitian(h, m, tol):
        raise NotPseudoAntiHermitian(
            f"residual {pseudo_residual(h, m, -1):.3e} exceeds tolerance")
    a = h @ m.eta_inv
    if qm_residual(qm_adjoint(a), -a) > tol * max(a.norm(), _TINY):
        raise NotPseudoAntiHermitian("factor A = H eta^-1 is not anti-Hermitian")
    return a


def quasi_hamiltonian(h: QMat, m: Metric, tol: float = STRUCT_TOL) -> QuasiHamiltonian:
    """Wrap an explicit Hamiltonian, validating it against ``m``.

    Unlike :func:`make_quasi_hamiltonian` this accepts quaternionic metrics;
    the projected-dynamics operations then refuse it.
    """
    a = hamiltonian_factor(h, m, tol)
    return QuasiHamiltonian(h, m, np.array(a.alpha), np.array(a.beta))


@dataclass(frozen=True)
class GeneralizedDensity:
    """Generalized density matrix ``rho_tilde = rho eta``."""

    rho_tilde: QMat
    metric: Metric = field(repr=False)

    @property
    def alpha(self) -> np.ndarray:
        return self.rho_tilde.alpha

    @property
    def beta(self) -> np.ndarray:
        return self.rho_tilde.beta

    @property
    def rho(self) -> QMat:
        return self.rho_tilde @ self.metric.eta_inv

    @property
    def is_complex(self) -> bool:
        return self.rho_tilde.is_complex

    def re_trace(self) -> float:
        return qm_re_trace(self.rho_tilde)

    def similar(self) -> QMat:
        """``B rho_tilde B^-1``, Hermitian for a valid state."""
        return self.metric.similarity(self.rho_tilde)

    def residuals(self) -> dict[str, float]:
        """Trace defect, pseudo-Hermiticity residual and min eigenvalue of B rho_tilde B^-1."""
        s = self.similar()
        s = (s + qm_adjoint(s)) * 0.5
        eig = hermitian_eigvals(s)
        return {
            "trace": abs(self.re_trace() - 1.0),
            "pseudo_hermitian": pseudo_residual(self.rho_tilde, self.metric, +1),
            "min_eigenvalue": float(eig[0]) if eig.size else 0.0,
        }

    def validate(self, tol: float = 1e-9) -> GeneralizedDensity:
        r = self.residuals()
        if r["trace"] > tol:
            raise InvariantBreach(f"real trace defect {r['trace']:.3e}", "trace", r["trace"])
        if r["pseudo_hermitian"] > tol:
            raise InvariantBreach(f"pseudo-Hermiticity residual {r['pseudo_hermitian']:.3e}",
                                  "pseudo_hermitian", r["pseudo_hermitian"])
        if r["min_eigenvalue"] < -tol:
            raise InvariantBreach(f"B rho B^-1 has eigenvalue {r['min_eigenvalue']:.3e}",
                                  "min_eigenvalue", r["min_eigenvalue"])
        return self


def generalized_density(rho: QMat, m: Metric, tol: float = STRUCT_TOL) -> GeneralizedDensity:
    """Map a Hermitian positive ``rho`` to ``rho eta``, normalized to unit real trace."""
    _check_shapes(rho, m)
    if not is_hermitian(rho, tol):
        raise NotHermitian("rho is not Hermitian")
    ok, lam = qm_positivity(rho, tol)
    if not ok:
        raise NotPositive(f"rho has negative eigenvalue {lam:.3e}")
    rt = rho @ m.eta
    tr = qm_re_trace(rt)
    if tr <= 0:
        raise NotPositive("rho eta has non-positive real trace")
    return GeneralizedDensity(rt / tr, m)


def pure_state(psi: QMat, m: Metric) -> GeneralizedDensity:
    """``|psi><psi| eta`` for a column ``psi`` normalized so that ``<psi|eta|psi> = 1``."""
    if psi.shape != (m.n, 1):
        raise ShapeMismatch(f"pure state must be a column of length {m.n}")
    nrm = qm_re_trace(qm_adjoint(psi) @ m.eta @ psi)
    if nrm <= 0:
        raise NotPositive("state has zero eta-norm")
    psi = psi / np.sqrt(nrm)
    return GeneralizedDensity(psi @ qm_adjoint(psi) @ m.eta, m)


@dataclass(frozen=True)
class Observable:
    q: QMat
    name: str = ""

    @property
    def is_complex(self) -> bool:
        return self.q.is_complex

    def registered(self, m: Metric, tol: float = STRUCT_TOL) -> Observable:
        """Return self after checking eta-pseudo-Hermiticity against ``m``."""
        if not is_pseudo_hermitian(self.q, m, tol):
            label = f" {self.name!r}" if self.name else ""
            raise NotHermitian(f"observable{label} is not eta-pseudo-Hermitian")
        return self


def _as_operator(obs) -> QMat:
    return obs.q if isinstance(obs, Observable) else obs


def expectation(state: GeneralizedDensity, obs) -> float:
    """``Re Tr(rho_tilde Q)``."""
    q = _as_operator(obs)
    if q.shape != state.rho_tilde.shape:
        raise ShapeMismatch(f"observable shape {q.shape} != state shape {state.rho_tilde.shape}")
    return qm_re_trace(state.rho_tilde @ q)


def projected_expectation(state: GeneralizedDensity, obs) -> complex:
    """``Tr(rho_tilde_alpha Q_alpha)``, computed from the complex parts only."""
    q = _as_operator(obs)
    if q.shape != state.rho_tilde.shape:
        raise ShapeMismatch(f"observable shape {q.shape} != state shape {state.rho_tilde.shape}")
    return complex(np.trace(state.alpha @ q.alpha))


@dataclass
class Prop1Report:
    is_complex: bool
    residuals: np.ndarray
    tol: float
    violations: int
    passed: bool

    @property
    def trials(self) -> int:
        return len(self.residuals)

    @property
    def min_violation(self) -> float:
        bad = self.residuals[self.residuals > self.tol]
        return float(bad.min()) if bad.size else float("nan")


def proposition1_check(m: Metric, trials: int = 100, seed: int = 0, tol: float = 1e-10) -> Prop1Report:
    """Test whether complex projections of random states stay eta-quasi-Hermitian.

    States are ``rho = G^dagger G`` with ``G`` a seeded quaternionic Gaussian
    matrix, normalized to ``Re Tr(rho eta) = 1``. For a complex metric every
    projection must pass; for a quaternionic metric the report passes when at
    least one violation was found.
    """
    from .sampling import random_rho

    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    res = np.empty(trials)
    for t in range(trials):
        state = generalized_density(random_rho(rng, m.n), m)
        proj = QMat(qm_complex_projection(state.rho_tilde, check=False))
        res[t] = pseudo_residual(proj, m, +1)
    violations = int(np.count_nonzero(res > tol))
    passed = violations == 0 if m.is_complex else violations >= 1
    return Prop1Report(m.is_complex, res, tol, violations, passed)


def similarity_to_antihermitian(hq: QuasiHamiltonian, tol: float = STRUCT_TOL) -> QMat:
    """``H' = B H B^-1``, which must come out anti-Hermitian."""
    hp = hq.metric.similarity(hq.h)
    err = qm_residual(qm_adjoint(hp), -hp)
    if err > tol * max(hp.norm(), _TINY):
        raise SimilarityFailed(f"B H B^-1 anti-Hermiticity residual {err:.3e}")
    return hp
