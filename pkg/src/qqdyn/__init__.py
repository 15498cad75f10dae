"""Quasianti-Hermitian quaternionic Hamiltonian dynamics and its complex projection."""

from . import errors as _errors
from .errors import *  # noqa: F401,F403
from .quaternion import Quaternion, quat_conj, quat_from_pair, quat_inverse, quat_mul, quat_to_pair
from .qmat import (
    QMat,
    qm_adjoint,
    qm_cholesky,
    qm_complex_projection,
    qm_embed,
    qm_extract,
    qm_inverse,
    qm_mul,
    qm_positivity,
    qm_re_trace,
    qm_solve,
)
from .metric import (
    GeneralizedDensity,
    Metric,
    Observable,
    QuasiHamiltonian,
    eta_adjoint,
    expectation,
    generalized_density,
    hamiltonian_factor,
    is_pseudo_anti_hermitian,
    is_pseudo_hermitian,
    make_quasi_hamiltonian,
    proposition1_check,
    pure_state,
    quasi_hamiltonian,
    similarity_to_antihermitian,
)
from .spectral import BiorthoSystem, right_eigensystem, spectral_observable
from .dynamics import (
    Propagator,
    Trajectory,
    dissipator,
    divisibility_report,
    evolve,
    integrate,
    is_eta_unitary,
    lindblad_fit,
    liouville_rhs,
    projected_rhs,
    propagator,
    rho_rhs,
)
from .spinhalf import SpinHalfParams, sh_eigensystem, sh_observables, sh_propagator, sh_state, sh_system

__version__ = "0.1.0"

__all__ = _errors.__all__ + [
    "BiorthoSystem",
    "GeneralizedDensity",
    "Metric",
    "Observable",
    "Propagator",
    "QMat",
    "QuasiHamiltonian",
    "Quaternion",
    "SpinHalfParams",
    "Trajectory",
    "dissipator",
    "divisibility_report",
    "eta_adjoint",
    "evolve",
    "expectation",
    "generalized_density",
    "hamiltonian_factor",
    "integrate",
    "is_eta_unitary",
    "is_pseudo_anti_hermitian",
    "is_pseudo_hermitian",
    "lindblad_fit",
    "liouville_rhs",
    "make_quasi_hamiltonian",
    "projected_rhs",
    "propagator",
    "proposition1_check",
    "pure_state",
    "qm_adjoint",
    "qm_cholesky",
    "qm_complex_projection",
    "qm_embed",
    "qm_extract",
    "qm_inverse",
    "qm_mul",
    "qm_positivity",
    "qm_re_trace",
    "qm_solve",
    "quasi_hamiltonian",
    "quat_conj",
    "quat_from_pair",
    "quat_inverse",
    "quat_mul",
    "quat_to_pair",
    "rho_rhs",
    "right_eigensystem",
    "sh_eigensystem",
    "sh_observables",
    "sh_propagator",
    "sh_state",
    "sh_system",
    "similarity_to_antihermitian",
    "spectral_observable",
]
