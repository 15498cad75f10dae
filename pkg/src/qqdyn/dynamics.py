"""Propagators, trajectories and the projected (complex) master equation.

For a quasianti-Hermitian ``H`` the evolution operator ``V(t) = exp(-Ht)`` is
eta-unitary, ``V^dagger eta V = eta``, and generalized density matrices evolve
as ``rho_tilde(t) = V rho_tilde(0) V^-1``, i.e. by the Liouville-von Neumann
equation ``d rho_tilde/dt = -[H, rho_tilde]``.

With a complex metric the complex part ``rho_tilde_alpha`` obeys

    d/dt rho_alpha = -[H_alpha, rho_alpha] + H_beta* rho_beta - rho_beta* H_beta

whose last two terms form the dissipator ``D``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BadBasis,
    EtaUnitarityBreach,
    InvariantBreach,
    MetricNotComplex,
    NotHermitian,
    ShapeMismatch,
    StateNotComplex,
)
from .expm import expm
from .metric import GeneralizedDensity, Metric, QuasiHamiltonian, expectation
from .qmat import QMat, is_hermitian, qm_adjoint, qm_embed, qm_extract, qm_residual

__all__ = [
    "Propagator",
    "Trajectory",
    "DivisibilityReport",
    "LindbladFit",
    "propagator",
    "is_eta_unitary",
    "eta_unitarity_residual",
    "evolve",
    "liouville_rhs",
    "rho_rhs",
    "projected_rhs",
    "dissipator",
    "integrate",
    "rk4_convergence",
    "divisibility_report",
    "complex_flow",
    "default_lindblad_basis",
    "check_lindblad_basis",
    "lindblad_fit",
]

ETA_UNITARY_TOL = 1e-9
DRIFT_TOL = 1e-6


@dataclass(frozen=True)
class Propagator:
    v: QMat
    t: float
    v_inv: QMat


def eta_unitarity_residual(v: QMat, m: Metric) -> float:
    """``||V^dagger eta V - eta||_F / ||eta||_F``."""
    if v.shape != m.eta.shape:
        raise ShapeMismatch(f"propagator shape {v.shape} != metric shape {m.eta.shape}")
    return qm_residual(qm_adjoint(v) @ m.eta @ v, m.eta) / max(m.eta.norm(), 1e-300)


def is_eta_unitary(v: QMat, m: Metric, tol: float = 1e-10) -> bool:
    return eta_unitarity_residual(v, m) <= tol


def propagator(hq: QuasiHamiltonian, t: float, tol: float = ETA_UNITARY_TOL) -> Propagator:
    """``V(t) = exp(-H t)`` through the complex embedding; ``V^-1`` is ``exp(+H t)``."""
    t = float(t)
    if not math.isfinite(t):
        raise ValueError(f"time must be finite, got {t}")
    z = qm_embed(hq.h) * t
    v = qm_extract(expm(-z))
    v_inv = qm_extract(expm(z))
    res = eta_unitarity_residual(v, hq.metric)
    if res > tol:
        raise EtaUnitarityBreach(f"eta-unitarity residual {res:.3e} at t={t}")
    return Propagator(v, t, v_inv)


def evolve(state0: GeneralizedDensity, prop: Propagator, tol: float = ETA_UNITARY_TOL) -> GeneralizedDensity:
    if prop.v.shape != state0.rho_tilde.shape:
        raise ShapeMismatch("propagator and state dimensions differ")
    out = GeneralizedDensity(prop.v @ state0.rho_tilde @ prop.v_inv, state0.metric)
    return out.validate(tol)


def _rho_tilde(state) -> QMat:
    return state.rho_tilde if isinstance(state, GeneralizedDensity) else state


def _commutator_rhs(h: QMat, r: QMat) -> QMat:
    return r @ h - h @ r


def liouville_rhs(state, hq: QuasiHamiltonian) -> QMat:
    """``-[H, rho_tilde]``."""
    r = _rho_tilde(state)
    if r.shape != hq.h.shape:
        raise ShapeMismatch("state and Hamiltonian dimensions differ")
    return _commutator_rhs(hq.h, r)


def rho_rhs(rho: QMat, hq: QuasiHamiltonian) -> QMat:
    """``-(H rho + rho H^dagger)`` for the Hermitian density matrix ``rho``."""
    if rho.shape != hq.h.shape:
        raise ShapeMismatch("rho and Hamiltonian dimensions differ")
    if not is_hermitian(rho):
        raise NotHermitian("rho must be Hermitian")
    return -(hq.h @ rho + rho @ qm_adjoint(hq.h))


def _require_complex_metric(hq: QuasiHamiltonian):
    if not hq.metric.is_complex:
        raise MetricNotComplex("projected dynamics needs a complex metric")


def _dissipator_parts(r: QMat, hq: QuasiHamiltonian) -> np.ndarray:
    hb, rb = hq.h.beta, r.beta
    return hb.conj() @ rb - rb.conj() @ hb


def projected_rhs(state, hq: QuasiHamiltonian, check: bool = True) -> np.ndarray:
    """Right-hand side of the projected master equation, from complex parts only."""
    _require_complex_metric(hq)
    r = _rho_tilde(state)
    if r.shape != hq.h.shape:
        raise ShapeMismatch("state and Hamiltonian dimensions differ")
    ha, ra = hq.h.alpha, r.alpha
    out = -(ha @ ra - ra @ ha) + _dissipator_parts(r, hq)
    if check:
        full = liouville_rhs(r, hq).alpha
        err = np.linalg.norm(out - full)
        if err > 1e-13 * max(1.0, hq.h.norm() * r.norm()):
            raise InvariantBreach(f"projection identity violated by {err:.3e}", "projection", err)
    return out


def dissipator(state, hq: QuasiHamiltonian, check: bool = True) -> np.ndarray:
    """``D = H_beta* rho_beta - rho_beta* H_beta``; eta-quasi-Hermitian for valid states."""
    _require_complex_metric(hq)
    r = _rho_tilde(state)
    if r.shape != hq.h.shape:
        raise ShapeMismatch("state and Hamiltonian dimensions differ")
    d = _dissipator_parts(r, hq)
    if check:
        eta, eta_inv = hq.metric.eta.alpha, hq.metric.eta_inv.alpha
        err = np.linalg.norm(eta @ d @ eta_inv - d.conj().T)
        if err > 1e-10:
            raise InvariantBreach(f"dissipator quasi-Hermiticity residual {err:.3e}",
                                  "dissipator", err)
    return d


@dataclass
class Trajectory:
    times: np.ndarray
    states: list[GeneralizedDensity]
    observables: dict[str, np.ndarray] = field(default_factory=dict)
    method: str = "expm"

    def __len__(self):
        return len(self.times)

    def max_residuals(self) -> dict[str, float]:
        """Worst trace defect, pseudo-Hermiticity residual and most negative eigenvalue."""
        rs = [s.residuals() for s in self.states]
        return {
            "trace": max(r["trace"] for r in rs),
            "pseudo_hermitian": max(r["pseudo_hermitian"] for r in rs),
            "min_eigenvalue": min(r["min_eigenvalue"] for r in rs),
        }


def _uniform_step(times: np.ndarray) -> float | None:
    if len(times) < 2:
        return None
    steps = np.diff(times)
    dt = (times[-1] - times[0]) / (len(times) - 1)
    if np.all(np.abs(steps - dt) <= 1e-9 * max(abs(dt), 1.0)):
        return float(dt)
    return None


def _rk4_step(h: QMat, r: QMat, dt: float) -> QMat:
    k1 = _commutator_rhs(h, r)
    k2 = _commutator_rhs(h, r + k1 * (dt / 2))
    k3 = _commutator_rhs(h, r + k2 * (dt / 2))
    k4 = _commutator_rhs(h, r + k3 * dt)
    return r + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6)


def integrate(hq: QuasiHamiltonian, state0: GeneralizedDensity, times, method: str = "expm",
              observables: dict | None = None, drift_tol: float = DRIFT_TOL) -> Trajectory:
    """Sample the evolution of ``state0`` (taken at ``times[0]``) on a time grid.

    ``expm`` reuses the one-step propagator on uniform grids and evaluates a
    fresh propagator per point otherwise. ``rk4`` is the classical fourth-order
    Runge-Kutta scheme on ``-[H, rho_tilde]`` and needs a uniform grid.
    """
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size == 0:
        raise ValueError("times must be a non-empty 1-d grid")
    if np.any(np.diff(times) <= 0):
        raise ValueError("times must be strictly increasing")
    if state0.rho_tilde.shape != hq.h.shape:
        raise ShapeMismatch("state and Hamiltonian dimensions differ")
    dt = _uniform_step(times)
    r0 = state0.rho_tilde
    rts: list[QMat] = [r0]
    if method == "expm":
        if dt is not None:
            step = propagator(hq, dt)
            v, v_inv = QMat.identity(hq.n), QMat.identity(hq.n)
            for _ in times[1:]:
                v, v_inv = step.v @ v, v_inv @ step.v_inv
                rts.append(v @ r0 @ v_inv)
        else:
            for t in times[1:]:
                p = propagator(hq, t - times[0])
                rts.append(p.v @ r0 @ p.v_inv)
    elif method == "rk4":
        if dt is None and len(times) > 1:
            raise ValueError("rk4 needs a uniform time grid")
        r = r0
        for _ in times[1:]:
            r = _rk4_step(hq.h, r, dt)
            rts.append(r)
    else:
        raise ValueError(f"unknown method {method!r}")

    states = []
    for t, r in zip(times, rts):
        s = GeneralizedDensity(r, state0.metric)
        try:
            s.validate(drift_tol)
        except InvariantBreach as exc:
            raise InvariantBreach(f"t={t:g}: {exc}", exc.residual_name, exc.residual) from None
        states.append(s)
    obs = {name: np.array([expectation(s, q) for s in states])
           for name, q in (observables or {}).items()}
    return Trajectory(times, states, obs, method)


def rk4_convergence(hq: QuasiHamiltonian, state0: GeneralizedDensity, t_max: float,
                    dts=(0.04, 0.02, 0.01)) -> tuple[np.ndarray, np.ndarray]:
    """Max Frobenius deviation of rk4 from expm for each step, and the observed orders."""
    errors = []
    for dt in dts:
        steps = int(round(t_max / dt))
        grid = np.linspace(0.0, steps * dt, steps + 1)
        ref = integrate(hq, state0, grid, "expm")
        rk = integrate(hq, state0, grid, "rk4")
        errors.append(max(qm_residual(a.rho_tilde, b.rho_tilde)
                          for a, b in zip(ref.states, rk.states)))
    errors = np.array(errors)
    ratios = np.asarray(dts[:-1]) / np.asarray(dts[1:])
    orders = np.log(errors[:-1] / errors[1:]) / np.log(ratios)
    return errors, orders


def complex_flow(hq: QuasiHamiltonian, sigma: np.ndarray, u: float) -> np.ndarray:
    """``P[V(u) sigma V(u)^-1]`` for a complex ``sigma`` (embedded with zero j-part)."""
    p = propagator(hq, u)
    return (p.v @ QMat(sigma) @ p.v_inv).alpha


@dataclass(frozen=True)
class DivisibilityReport:
    t: float
    s: float
    defect: float
    direct: np.ndarray
    composed: np.ndarray
    intermediate: np.ndarray


def divisibility_report(hq: QuasiHamiltonian, state0: GeneralizedDensity, t: float, s: float
                        ) -> DivisibilityReport:
    """Measure ``||Phi_{t+s}[sigma] - Phi_t[Phi_s[sigma]]||_F`` for the complex flow Phi."""
    _require_complex_metric(hq)
    if not state0.is_complex:
        raise StateNotComplex("divisibility needs a complex initial state")
    sigma = state0.alpha
    direct = complex_flow(hq, sigma, t + s)
    mid = complex_flow(hq, sigma, s)
    composed = complex_flow(hq, mid, t)
    return DivisibilityReport(float(t), float(s), float(np.linalg.norm(direct - composed)),
                              direct, composed, mid)


# -- Lindblad-Kossakowski fitting --------------------------------------------

def _cdagger(x: np.ndarray, eta: np.ndarray, eta_inv: np.ndarray) -> np.ndarray:
    return eta_inv @ x.conj().T @ eta


def _gell_mann(n: int) -> list[np.ndarray]:
    mats = []
    for j, k in itertools.combinations(range(n), 2):
        s = np.zeros((n, n), dtype=complex)
        s[j, k] = s[k, j] = 1
        a = np.zeros((n, n), dtype=complex)
        a[j, k], a[k, j] = -1j, 1j
        mats += [s, a]
    for l in range(1, n):
        d = np.zeros((n, n), dtype=complex)
        d[np.arange(l), np.arange(l)] = 1
        d[l, l] = -l
        mats.append(d * np.sqrt(2 / (l * (l + 1))))
    return mats


def default_lindblad_basis(m: Metric) -> list[np.ndarray]:
    """Generalized Gell-Mann matrices orthonormalized under ``(X, Y) -> Tr(X^ddagger Y)``."""
    if not m.is_complex:
        raise MetricNotComplex("the Lindblad basis is defined for complex metrics")
    eta, eta_inv = m.eta.alpha, m.eta_inv.alpha
    basis: list[np.ndarray] = []
    for g in _gell_mann(m.n):
        f = g.copy()
        for _ in range(2):  # second pass cleans up rounding
            for b in basis:
                f = f - np.trace(_cdagger(b, eta, eta_inv) @ f) * b
        nrm = np.sqrt(np.trace(_cdagger(f, eta, eta_inv) @ f).real)
        basis.append(f / nrm)
    return basis


def check_lindblad_basis(basis, m: Metric, tol: float = 1e-10) -> float:
    """Return the Gram-matrix defect; raise BadBasis beyond ``tol``."""
    n = m.n
    if len(basis) != n * n - 1:
        raise BadBasis(f"expected {n * n - 1} matrices, got {len(basis)}")
    eta, eta_inv = m.eta.alpha, m.eta_inv.alpha
    gram = np.array([[np.trace(_cdagger(fr, eta, eta_inv) @ fs) for fs in basis] for fr in basis])
    traces = np.array([np.trace(f) for f in basis])
    defect = max(float(np.abs(gram - np.eye(len(basis))).max(initial=0.0)),
                 float(np.abs(traces).max(initial=0.0)))
    if defect > tol:
        raise BadBasis(f"basis orthonormality defect {defect:.3e}")
    return defect


@dataclass(frozen=True)
class LindbladFit:
    c: np.ndarray
    residual: float
    basis: list
    samples: int


def _kossakowski_terms(rho_a, basis, daggers, pairing):
    d = len(basis)
    terms = np.empty((d, d) + rho_a.shape, dtype=complex)
    for r in range(d):
        for s in range(d):
            if pairing == "printed":
                prod = daggers[r] @ basis[s]
            else:
                prod = daggers[s] @ basis[r]
            terms[r, s] = basis[r] @ rho_a @ daggers[s] - 0.5 * (prod @ rho_a + rho_a @ prod)
    return terms


def _hermitian_basis(d: int) -> np.ndarray:
    out = []
    for r in range(d):
        e = np.zeros((d, d), dtype=complex)
        e[r, r] = 1
        out.append(e)
    for r, s in itertools.combinations(range(d), 2):
        e = np.zeros((d, d), dtype=complex)
        e[r, s] = e[s, r] = 1
        out.append(e)
        e = np.zeros((d, d), dtype=complex)
        e[r, s], e[s, r] = 1j, -1j
        out.append(e)
    return np.array(out)


def lindblad_fit(hq: QuasiHamiltonian, basis=None, samples: int | None = None, seed: int = 0,
                 pairing: str = "printed") -> LindbladFit:
    """Least-squares Hermitian ``C`` so that the Kossakowski sum matches the dissipator.

    Random quaternionic states supply ``(rho_alpha, D)`` pairs. ``pairing``
    selects the anticommutator term ``F_r^dd F_s`` ("printed") or
    ``F_s^dd F_r`` ("standard"). The relative residual is part of the result;
    a large one means no constant ``C`` describes the dissipator.
    """
    from .sampling import random_state

    _require_complex_metric(hq)
    if pairing not in ("printed", "standard"):
        raise ValueError(f"unknown pairing {pairing!r}")
    m = hq.metric
    basis = default_lindblad_basis(m) if basis is None else [np.asarray(f, dtype=complex) for f in basis]
    check_lindblad_basis(basis, m)
    n, d = m.n, len(basis)
    samples = 4 * n ** 4 if samples is None else int(samples)
    eta, eta_inv = m.eta.alpha, m.eta_inv.alpha
    daggers = [_cdagger(f, eta, eta_inv) for f in basis]
    herm = _hermitian_basis(d)

    rng = np.random.default_rng(seed)
    rows, rhs = [], []
    for _ in range(samples):
        state = random_state(rng, m)
        terms = _kossakowski_terms(state.alpha, basis, daggers, pairing)
        # column p: matrix produced by the Hermitian basis element C = herm[p]
        cols = np.einsum("prs,rsij->pij", herm, terms).reshape(len(herm), -1).T
        rows.append(cols)
        rhs.append(dissipator(state, hq).ravel())
    a = np.vstack(rows)
    b = np.concatenate(rhs)
    b_norm = np.linalg.norm(b)
    if b_norm == 0.0:
        return LindbladFit(np.zeros((d, d), dtype=complex), 0.0, basis, samples)
    a_real = np.vstack([a.real, a.imag])
    b_real = np.concatenate([b.real, b.imag])
    coef, *_ = np.linalg.lstsq(a_real, b_real, rcond=None)
    c = np.einsum("p,prs->rs", coef, herm)
    c = (c + c.conj().T) / 2
    residual = float(np.linalg.norm(a_real @ coef - b_real) / b_norm)
    return LindbladFit(c, residual, basis, samples)
