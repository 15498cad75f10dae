import numpy as np
import pytest

from qqdyn.dynamics import (
    check_lindblad_basis, complex_flow, default_lindblad_basis, dissipator, divisibility_report,
    eta_unitarity_residual, evolve, integrate, is_eta_unitary, lindblad_fit, liouville_rhs,
    projected_rhs, propagator, rho_rhs, rk4_convergence,
)
from qqdyn.errors import BadBasis, InvariantBreach, MetricNotComplex, NotHermitian, StateNotComplex
from qqdyn.metric import GeneralizedDensity, Metric, make_quasi_hamiltonian, quasi_hamiltonian
from qqdyn.qmat import QMat, qm_adjoint, qm_re_trace
from qqdyn.sampling import (
    random_anti_hermitian, random_complex_metric, random_quasi_hamiltonian, random_quaternionic_metric,
    random_rho, random_state, random_symmetric,
)
from qqdyn.spinhalf import (
    SpinHalfParams, sh_propagator, sh_propagator_inverse, sh_projection, sh_state, sh_system,
)

P = SpinHalfParams()
HQ, ETA = sh_system(P)


def random_system(rng, n=None):
    n = int(rng.integers(2, 7)) if n is None else n
    m = Metric(random_complex_metric(rng, n))
    return m, random_quasi_hamiltonian(rng, m)


# -- propagator ----------------------------------------------------------------

def test_propagator_at_zero_is_identity():
    p = propagator(HQ, 0.0)
    assert p.v.allclose(QMat.identity(2), 0) and p.v_inv.allclose(QMat.identity(2), 0)


@pytest.mark.parametrize("t", [np.pi, 0.1, 1.0, 10.0, -2.5])
def test_propagator_matches_closed_form(t):
    p = propagator(HQ, t)
    assert (p.v - sh_propagator(P, t)).norm() <= 1e-10
    assert (p.v_inv - sh_propagator_inverse(P, t)).norm() <= 1e-10


def test_group_law(rng):
    for _ in range(30):
        m, hq = random_system(rng)
        t, s = rng.uniform(-3, 3, size=2)
        lhs = propagator(hq, t + s).v
        rhs = propagator(hq, t).v @ propagator(hq, s).v
        assert (lhs - rhs).norm() <= 1e-10 * max(1.0, lhs.norm())


def test_eta_unitarity_random(rng):
    for _ in range(30):
        m, hq = random_system(rng)
        for t in rng.uniform(0, 10, size=3):
            assert eta_unitarity_residual(propagator(hq, t).v, m) <= 1e-9


def test_eta_unitarity_quaternionic_metric(rng):
    m = Metric(random_quaternionic_metric(rng, 3))
    hq = quasi_hamiltonian(QMat(random_anti_hermitian(rng, 3), random_symmetric(rng, 3)) @ m.eta, m)
    assert is_eta_unitary(propagator(hq, 2.0).v, m, 1e-9)


def test_is_eta_unitary_cases(rng):
    q, _ = np.linalg.qr(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
    assert is_eta_unitary(QMat(q), Metric.identity(3))
    for t in (0.1, 1.0, 10.0):
        v = sh_propagator(P, t)
        assert is_eta_unitary(v, ETA, 1e-10)
        assert not is_eta_unitary(v * 1.01, ETA, 1e-10)


def test_propagator_rejects_non_finite_time():
    with pytest.raises(ValueError):
        propagator(HQ, float("nan"))


# -- state evolution --------------------------------------------------------------

def test_evolve_zero_time_keeps_state():
    s0 = sh_state(P, 0.0)
    assert evolve(s0, propagator(HQ, 0.0)).rho_tilde.allclose(s0.rho_tilde, 0)


def test_evolve_quarter_period():
    # 2vt = pi/2: (1/2)[[1, -j/x], [j x, 1]] with x = 2
    st = evolve(sh_state(P, 0.0), propagator(HQ, np.pi))
    expected = QMat(np.diag([0.5, 0.5]), [[0, -0.25], [1.0, 0]])
    assert st.rho_tilde.allclose(expected, 1e-12)


def test_pseudo_norm_conservation(rng):
    for _ in range(500):
        m, hq = random_system(rng, int(rng.integers(1, 5)))
        s0 = random_state(rng, m)
        st = evolve(s0, propagator(hq, rng.uniform(0, 5)))
        assert abs(st.re_trace() - s0.re_trace()) <= 1e-12


def test_evolve_reports_breach():
    s0 = sh_state(P, 0.0)
    p = propagator(HQ, 1.0)
    bad = type(p)(p.v * 1.1, p.t, p.v_inv)
    with pytest.raises(InvariantBreach) as exc:
        evolve(s0, bad)
    assert exc.value.residual_name == "trace"


# -- right-hand sides ---------------------------------------------------------------

def test_liouville_rhs_vanishes_on_commuting_state():
    # I/2 = rho eta with rho = eta^-1 / 2
    st = GeneralizedDensity(QMat.identity(2) * 0.5, ETA).validate()
    assert liouville_rhs(st, HQ).norm() == 0


def test_liouville_rhs_central_difference():
    h = 1e-5
    for t in np.linspace(0.3, 12, 9):
        fd = (sh_state(P, t + h).rho_tilde - sh_state(P, t - h).rho_tilde) / (2 * h)
        assert (fd - liouville_rhs(sh_state(P, t), HQ)).norm() <= 1e-8


def test_rho_rhs_reduces_to_commutator_for_identity_metric(rng):
    m = Metric.identity(3)
    hq = make_quasi_hamiltonian(random_anti_hermitian(rng, 3), random_symmetric(rng, 3), m)
    rho = random_rho(rng, 3)
    assert (rho_rhs(rho, hq) - (rho @ hq.h - hq.h @ rho)).norm() <= 1e-13 * rho.norm()


def test_rho_rhs_consistent_with_liouville(rng):
    for _ in range(100):
        m, hq = random_system(rng)
        rho = random_rho(rng, m.n)
        out = rho_rhs(rho, hq)
        assert (out @ m.eta - liouville_rhs(rho @ m.eta, hq)).norm() <= 1e-12 * max(1.0, out.norm() * m.eta.norm())
        assert (out - qm_adjoint(out)).norm() <= 1e-12 * max(1.0, out.norm())


def test_rho_rhs_central_difference():
    h = 1e-5
    eta_inv = ETA.eta_inv
    for t in np.linspace(0.3, 12, 7):
        fd = (sh_state(P, t + h).rho_tilde - sh_state(P, t - h).rho_tilde) @ eta_inv / (2 * h)
        assert (fd - rho_rhs(sh_state(P, t).rho, HQ)).norm() <= 1e-8


def test_rho_rhs_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        rho_rhs(QMat([[0, 1], [0, 0]]), HQ)


def test_projected_rhs_closed_complex_dynamics(rng):
    m = Metric(random_complex_metric(rng, 3))
    hq = make_quasi_hamiltonian(random_anti_hermitian(rng, 3), np.zeros((3, 3)), m)
    k = random_rho(rng, 3)
    st = GeneralizedDensity(QMat(k.alpha) @ m.eta / qm_re_trace(QMat(k.alpha) @ m.eta), m)
    ha, ra = hq.h.alpha, st.alpha
    np.testing.assert_allclose(projected_rhs(st, hq), -(ha @ ra - ra @ ha), atol=1e-14)


def test_projected_rhs_spinhalf():
    # 2vt = pi/2: diag(v, -v)
    np.testing.assert_allclose(projected_rhs(sh_state(P, np.pi), HQ), np.diag([0.25, -0.25]), atol=1e-15)
    for t in np.linspace(0, 20, 11):
        g = 0.25 * np.sin(0.5 * t)
        np.testing.assert_allclose(projected_rhs(sh_state(P, t), HQ), np.diag([g, -g]), atol=1e-15)


def test_projection_identity_random(rng):
    for _ in range(500):
        m, hq = random_system(rng, int(rng.integers(1, 5)))
        st = random_state(rng, m)
        err = np.linalg.norm(projected_rhs(st, hq, check=False) - liouville_rhs(st, hq).alpha)
        assert err <= 1e-13


def test_projected_rhs_needs_complex_metric(rng):
    m = Metric(random_quaternionic_metric(rng, 2))
    hq = quasi_hamiltonian(QMat(random_anti_hermitian(rng, 2)) @ m.eta, m)
    with pytest.raises(MetricNotComplex):
        projected_rhs(random_state(rng, m), hq)
    with pytest.raises(MetricNotComplex):
        dissipator(random_state(rng, m), hq)


def test_dissipator_cases(rng):
    np.testing.assert_array_equal(dissipator(sh_state(P, 0.0), HQ), np.zeros((2, 2)))
    np.testing.assert_allclose(dissipator(sh_state(P, np.pi), HQ), np.diag([0.25, -0.25]), atol=1e-15)
    for _ in range(100):
        m, hq = random_system(rng)
        st = random_state(rng, m)
        ha, ra = hq.h.alpha, st.alpha
        diff = projected_rhs(st, hq) - dissipator(st, hq)
        assert np.linalg.norm(diff + (ha @ ra - ra @ ha)) <= 1e-13


def test_dissipator_quasi_hermitian(rng):
    for _ in range(500):
        m, hq = random_system(rng, int(rng.integers(1, 5)))
        d = dissipator(random_state(rng, m), hq, check=False)
        eta, eta_inv = m.eta.alpha, m.eta_inv.alpha
        assert np.linalg.norm(eta @ d @ eta_inv - d.conj().T) <= 1e-10


# -- trajectories -----------------------------------------------------------------------

def test_integrate_single_point():
    s0 = sh_state(P, 0.0)
    for method in ("expm", "rk4"):
        tr = integrate(HQ, s0, [0.0], method)
        assert len(tr) == 1 and tr.states[0].rho_tilde.allclose(s0.rho_tilde, 0)


def test_integrate_expm_matches_closed_form():
    times = np.linspace(0, 20, 401)
    tr = integrate(HQ, sh_state(P, 0.0), times)
    for t, st in zip(times, tr.states):
        assert (st.rho_tilde - sh_state(P, t).rho_tilde).norm() <= 1e-10


def test_integrate_nonuniform_grid():
    times = np.array([0.0, 0.1, 0.5, 2.0, 7.3])
    tr = integrate(HQ, sh_state(P, 0.0), times)
    for t, st in zip(times, tr.states):
        assert (st.rho_tilde - sh_state(P, t).rho_tilde).norm() <= 1e-12
    with pytest.raises(ValueError):
        integrate(HQ, sh_state(P, 0.0), times, "rk4")


def test_integrate_grid_validation():
    with pytest.raises(ValueError):
        integrate(HQ, sh_state(P, 0.0), [0.0, 0.2, 0.1])
    with pytest.raises(ValueError):
        integrate(HQ, sh_state(P, 0.0), [0.0, 1.0], "euler")


def test_integrate_records_observables():
    from qqdyn.spinhalf import sh_observables
    s_z, mod_h = sh_observables(P)
    times = np.linspace(0, 10, 51)
    tr = integrate(HQ, sh_state(P, 0.0), times, observables={"sz": s_z, "energy": mod_h})
    np.testing.assert_allclose(tr.observables["sz"], -np.cos(0.5 * times) / 2, atol=1e-12)
    np.testing.assert_allclose(tr.observables["energy"], 0.5, atol=1e-12)


def test_trajectory_invariants_random(rng):
    for _ in range(10):
        m, hq = random_system(rng)
        tr = integrate(hq, random_state(rng, m, rank=1), np.linspace(0, 5, 26))
        r = tr.max_residuals()
        assert r["trace"] <= 1e-10 and r["pseudo_hermitian"] <= 1e-9 and r["min_eigenvalue"] >= -1e-9


def test_rk4_drift_guard():
    with pytest.raises(InvariantBreach):
        integrate(HQ, sh_state(P, 0.0), np.arange(0, 120.0, 6.0), "rk4")


def test_rk4_order():
    errors, orders = rk4_convergence(HQ, sh_state(P, 0.0), 20.0, (0.02, 0.01))
    assert errors[0] / errors[1] == pytest.approx(16, rel=0.5)
    assert 3.5 <= orders[0] <= 4.5


# -- divisibility ---------------------------------------------------------------------------

def closed_form_flow(sigma, u):
    return (sh_propagator(P, u) @ QMat(sigma) @ sh_propagator_inverse(P, u)).alpha


def test_divisibility_trivial_cases(rng):
    s0 = sh_state(P, 0.0)
    for t, s in ((1.3, 0.0), (0.0, 0.0), (0.0, 2.1)):
        assert divisibility_report(HQ, s0, t, s).defect <= 1e-12
    m, hq = random_system(rng, 3)
    k = random_rho(rng, 3)
    st = GeneralizedDensity(QMat(k.alpha) @ m.eta / qm_re_trace(QMat(k.alpha) @ m.eta), m)
    assert divisibility_report(hq, st, 0.7, 0.0).defect <= 1e-12


def test_divisibility_spinhalf_pinned():
    # closed forms: Phi_2pi[diag(0,1)] = diag(1,0) and Phi_pi maps both diag(1,0) and
    # diag(0,1) to diag(1/2,1/2), so the defect is ||diag(1/2,-1/2)||_F = 1/sqrt(2)
    sigma = np.diag([0.0, 1.0]).astype(complex)
    direct = closed_form_flow(sigma, 2 * np.pi)
    composed = closed_form_flow(closed_form_flow(sigma, np.pi), np.pi)
    oracle = np.linalg.norm(direct - composed)
    assert oracle == pytest.approx(1 / np.sqrt(2), abs=1e-14)
    rep = divisibility_report(HQ, sh_state(P, 0.0), np.pi, np.pi)
    assert rep.defect == pytest.approx(0.7071067811865476, abs=1e-10)
    np.testing.assert_allclose(rep.direct, direct, atol=1e-12)
    np.testing.assert_allclose(rep.intermediate, sh_projection(P, np.pi), atol=1e-12)


def test_divisibility_preconditions(rng):
    with pytest.raises(StateNotComplex):
        divisibility_report(HQ, sh_state(P, 1.0), 1.0, 1.0)
    m = Metric(random_quaternionic_metric(rng, 2))
    hq = quasi_hamiltonian(QMat(random_anti_hermitian(rng, 2)) @ m.eta, m)
    with pytest.raises(MetricNotComplex):
        divisibility_report(hq, random_state(rng, m), 1.0, 1.0)


def test_complex_flow_matches_closed_projection():
    sigma = np.diag([0.0, 1.0]).astype(complex)
    for t in (0.3, 2.0, 9.0):
        np.testing.assert_allclose(complex_flow(HQ, sigma, t), sh_projection(P, t), atol=1e-12)


# -- Lindblad fitting ---------------------------------------------------------------------

def test_default_basis_orthonormal():
    basis = default_lindblad_basis(ETA)
    assert len(basis) == 3
    assert check_lindblad_basis(basis, ETA, 1e-12) <= 1e-12


def test_default_basis_random_metric(rng):
    m = Metric(random_complex_metric(rng, 3))
    assert check_lindblad_basis(default_lindblad_basis(m), m) <= 1e-10


def test_bad_basis_rejected():
    basis = default_lindblad_basis(ETA)
    with pytest.raises(BadBasis):
        check_lindblad_basis(basis[:2], ETA)
    with pytest.raises(BadBasis):
        check_lindblad_basis([b * 2 for b in basis], ETA)
    with pytest.raises(BadBasis):
        lindblad_fit(HQ, basis=[np.eye(2), basis[1], basis[2]])


def test_fit_without_quaternionic_potential(rng):
    m = Metric(random_complex_metric(rng, 2))
    hq = make_quasi_hamiltonian(random_anti_hermitian(rng, 2), np.zeros((2, 2)), m)
    fit = lindblad_fit(hq, seed=4)
    assert fit.residual == 0.0 and not np.any(fit.c)


def test_fit_deterministic_and_hermitian():
    a = lindblad_fit(HQ, seed=11)
    b = lindblad_fit(HQ, seed=11)
    np.testing.assert_array_equal(a.c, b.c)
    assert a.residual == b.residual
    assert np.linalg.norm(a.c - a.c.conj().T) <= 1e-12
    assert a.samples == 4 * 2 ** 4
    assert 0 <= a.residual <= 1


def test_fit_pairing_option():
    a = lindblad_fit(HQ, seed=2, pairing="printed")
    b = lindblad_fit(HQ, seed=2, pairing="standard")
    assert np.linalg.norm(b.c - b.c.conj().T) <= 1e-12
    assert a.residual != b.residual
    with pytest.raises(ValueError):
        lindblad_fit(HQ, pairing="other")
