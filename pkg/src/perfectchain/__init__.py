"""perfectchain: persymmetric Jacobi matrices with spectrum {2 k^2} and the
dispersionless, perfectly transmitting mass-spring chains built from them.

Every analytic claim has two independent routes through this package
(closed form vs solver, recursion vs binomials, modal propagator vs Verlet,
float vs exact rational), and the test suite checks them against each other.
"""

from perfectchain.chain import (
    AsymptoticsReport,
    ChainDesign,
    MagicDesign,
    asymptotic_report,
    default_m1,
    default_omega,
    design_chain,
    design_chain_closed_form,
    design_chain_closed_form_exact,
    design_chain_exact,
    dynamical_matrix,
    magic_design,
    monotonicity_check,
)
from perfectchain.dynamics import (
    ChainState,
    ModalPropagator,
    Trajectory,
    energy,
    initial_pulse,
    integrate_verlet,
    mirror_fidelity,
    propagate_modes,
    snapshot_series,
)
from perfectchain.eigensolve import (
    DegenerateClusterWarning,
    EigenSystem,
    SolverError,
    eigensystem,
    eigenvalues,
    eigenvalues_bisect,
    sturm_count,
)
from perfectchain.exact import (
    binomial,
    exact_isqrt,
    normalize_to_coprime_integers,
)
from perfectchain.inverse import (
    BreakdownError,
    DbgState,
    WeightVector,
    analytic_first_entries,
    characteristic_moments,
    deboor_golub,
    deboor_golub_exact,
    deboor_golub_exact_state,
    moment_weighted_sum,
    persymmetric_weights,
    persymmetric_weights_exact,
    square_integer_weights,
)
from perfectchain.jacobi import (
    BidiagonalFactor,
    FactorizationReport,
    JacobiMatrix,
    bidiagonal_factor,
    is_persymmetric,
    shifted_complement,
    sign_normalize,
    square_spectrum_matrix,
    target_spectrum,
    trace_exact,
    verify_factorization,
)
from perfectchain._kernels import backend_name

__version__ = "0.1.0"

__all__ = [
    "AsymptoticsReport", "BidiagonalFactor", "BreakdownError", "ChainDesign",
    "ChainState", "DbgState", "DegenerateClusterWarning", "EigenSystem",
    "FactorizationReport", "JacobiMatrix", "MagicDesign", "ModalPropagator",
    "SolverError", "Trajectory", "WeightVector", "analytic_first_entries",
    "asymptotic_report", "backend_name", "bidiagonal_factor", "binomial",
    "characteristic_moments", "deboor_golub", "deboor_golub_exact",
    "deboor_golub_exact_state", "default_m1", "default_omega", "design_chain",
    "design_chain_closed_form", "design_chain_closed_form_exact",
    "design_chain_exact", "dynamical_matrix", "eigensystem", "eigenvalues",
    "eigenvalues_bisect", "energy", "exact_isqrt", "initial_pulse",
    "integrate_verlet", "is_persymmetric", "magic_design", "mirror_fidelity",
    "moment_weighted_sum", "monotonicity_check", "normalize_to_coprime_integers",
    "persymmetric_weights", "persymmetric_weights_exact", "propagate_modes",
    "shifted_complement", "sign_normalize", "snapshot_series",
    "square_integer_weights", "square_spectrum_matrix", "sturm_count",
    "target_spectrum", "trace_exact", "verify_factorization",
]
