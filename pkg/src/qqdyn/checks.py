"""Seeded property suites behind ``qqdyn check``.

Each suite returns a list of :class:`CheckResult`; a result holds the worst
residual observed for one property and the limit it is compared against.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import sampling
from .dynamics import (
    dissipator,
    evolve,
    liouville_rhs,
    projected_rhs,
    propagator,
    eta_unitarity_residual,
    rk4_convergence,
)
from .metric import (
    Metric,
    Observable,
    eta_adjoint,
    expectation,
    projected_expectation,
    proposition1_check,
    pseudo_residual,
)
from .qmat import QMat, qm_adjoint, qm_embed, qm_residual
from .spinhalf import SpinHalfParams, sh_state, sh_system

__all__ = ["CheckResult", "SUITES", "run_suite", "invariants_suite", "prop1_suite", "convergence_suite"]


@dataclass
class CheckResult:
    name: str
    value: float
    limit: float
    passed: bool
    note: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        extra = f"  ({self.note})" if self.note else ""
        return f"{tag}  {self.name:<36s} {self.value:.3e}  limit {self.limit:.1e}{extra}"


def _below(name, value, limit, note=""):
    return CheckResult(name, float(value), limit, bool(value <= limit), note)


def _random_system(rng, n):
    metric = Metric(sampling.random_complex_metric(rng, n))
    hq = sampling.random_quasi_hamiltonian(rng, metric)
    return metric, hq


def invariants_suite(seed: int = 0, n: int = 3, trials: int = 20, tol: float | None = None
                     ) -> list[CheckResult]:
    """Structural invariants on ``trials`` random systems of dimension ``n``."""
    rng = np.random.default_rng(seed)
    worst = {k: 0.0 for k in (
        "embedding homomorphism", "embedding adjoint", "eta-adjoint involution",
        "quasianti-Hermiticity", "eta-unitarity", "trace conservation",
        "pseudo-Hermiticity", "projection identity", "dissipator quasi-Hermiticity",
        "complex observable sufficiency")}
    min_eig = np.inf
    for _ in range(trials):
        a, b = sampling.random_qmat(rng, n), sampling.random_qmat(rng, n)
        scale = a.norm() * b.norm()
        worst["embedding homomorphism"] = max(worst["embedding homomorphism"], np.linalg.norm(
            qm_embed(a @ b) - qm_embed(a) @ qm_embed(b)) / scale)
        worst["embedding adjoint"] = max(worst["embedding adjoint"], np.linalg.norm(
            qm_embed(qm_adjoint(a)) - qm_embed(a).conj().T))

        metric, hq = _random_system(rng, n)
        worst["eta-adjoint involution"] = max(worst["eta-adjoint involution"], qm_residual(
            eta_adjoint(eta_adjoint(a, metric), metric), a) / a.norm())
        worst["quasianti-Hermiticity"] = max(worst["quasianti-Hermiticity"],
                                             pseudo_residual(hq.h, metric, -1) / hq.h.norm())
        state0 = sampling.random_state(rng, metric)
        for t in (0.1, 1.0, 5.0):
            prop = propagator(hq, t)
            worst["eta-unitarity"] = max(worst["eta-unitarity"], eta_unitarity_residual(prop.v, metric))
            r = evolve(state0, prop, tol=1e-6).residuals()
            worst["trace conservation"] = max(worst["trace conservation"], r["trace"])
            worst["pseudo-Hermiticity"] = max(worst["pseudo-Hermiticity"], r["pseudo_hermitian"])
            min_eig = min(min_eig, r["min_eigenvalue"])
        worst["projection identity"] = max(worst["projection identity"], np.linalg.norm(
            projected_rhs(state0, hq, check=False) - liouville_rhs(state0, hq).alpha))
        d = dissipator(state0, hq, check=False)
        eta, eta_inv = metric.eta.alpha, metric.eta_inv.alpha
        worst["dissipator quasi-Hermiticity"] = max(worst["dissipator quasi-Hermiticity"],
                                                    np.linalg.norm(eta @ d @ eta_inv - d.conj().T))
        # eta-quasi-Hermitian complex observable: Q = eta^-1 K with K Hermitian
        k = sampling.complex_gaussian(rng, (n, n))
        obs = Observable(QMat(eta_inv @ (k + k.conj().T) / 2))
        worst["complex observable sufficiency"] = max(worst["complex observable sufficiency"], abs(
            expectation(state0, obs) - projected_expectation(state0, obs)))

    limits = {
        "embedding homomorphism": 1e-12, "embedding adjoint": 1e-12,
        "eta-adjoint involution": 1e-11, "quasianti-Hermiticity": 1e-10,
        "eta-unitarity": 1e-9, "trace conservation": 1e-10, "pseudo-Hermiticity": 1e-9,
        "projection identity": 1e-13, "dissipator quasi-Hermiticity": 1e-10,
        "complex observable sufficiency": 1e-12,
    }
    out = [_below(k, v, tol if tol is not None else limits[k]) for k, v in worst.items()]
    lim = tol if tol is not None else 1e-9
    out.append(CheckResult("positivity (min eigenvalue)", float(min_eig), -lim, bool(min_eig >= -lim)))
    return out


def prop1_suite(seed: int = 0, n: int = 3, trials: int = 100, tol: float | None = None
                ) -> list[CheckResult]:
    """Both directions of the complex-metric criterion for quasi-Hermitian projections."""
    tol = 1e-10 if tol is None else tol
    rng = np.random.default_rng(seed)
    fwd_metric = Metric(sampling.random_complex_metric(rng, n))
    fwd = proposition1_check(fwd_metric, trials, seed, tol)
    out = [CheckResult("prop1 forward violations", fwd.violations, 0, fwd.passed,
                       f"max residual {fwd.residuals.max():.2e} over {trials} trials")]
    if n < 2:
        out.append(CheckResult("prop1 converse violations", 0, 1, True,
                               "skipped: a 1x1 Hermitian metric is always real"))
        return out
    conv_metric = Metric(sampling.random_quaternionic_metric(rng, n))
    conv = proposition1_check(conv_metric, trials, seed, tol)
    ok = conv.passed and conv.min_violation > 1e-6
    out.append(CheckResult("prop1 converse violations", conv.violations, 1, ok,
                           f"{conv.violations}/{trials} violated, smallest {conv.min_violation:.2e}"))
    return out


def convergence_suite(seed: int = 0, n: int = 2, trials: int = 1, tol: float | None = None,
                      t_max: float = 10.0) -> list[CheckResult]:
    """Observed rk4 order against expm on the spin-1/2 system."""
    p = SpinHalfParams()
    hq, _ = sh_system(p)
    errors, orders = rk4_convergence(hq, sh_state(p, 0.0), t_max, (0.04, 0.02, 0.01))
    return [CheckResult(f"rk4 order dt {a:g}->{b:g}", float(o), 4.0, bool(3.5 <= o <= 4.5),
                        f"errors {ea:.2e} -> {eb:.2e}, allowed [3.5, 4.5]")
            for (a, b), o, ea, eb in zip([(0.04, 0.02), (0.02, 0.01)], orders, errors[:-1], errors[1:])]


SUITES = {
    "invariants": invariants_suite,
    "prop1": prop1_suite,
    "convergence": convergence_suite,
}


def run_suite(name: str, seed: int = 0, n: int = 3, trials: int | None = None,
              tol: float | None = None) -> list[CheckResult]:
    names = list(SUITES) if name == "all" else [name]
    results = []
    for s in names:
        kwargs = {"seed": seed, "n": n, "tol": tol}
        if trials is not None:
            kwargs["trials"] = trials
        results += SUITES[s](**kwargs)
    return results
