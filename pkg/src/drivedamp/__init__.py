"""Exact steady state and entanglement of two pumped, damped bosonic modes
coupled by a two-mode squeezing interaction, each with its own structured
zero-temperature bath."""

from .bath_rates import (
    BathResponses,
    RateTable,
    SpectralDensity,
    half_fourier_rate,
    rate_table,
    spectral_density,
)
from .errors import (
    ConvergenceError,
    DriveDampError,
    InstabilityError,
    PhysicalityError,
    SingularFrequencyError,
    SteadyStateError,
    TruncationWarning,
)
from .gaussian_cv import (
    NegativityResult,
    covariance_from_moments,
    log_negativity,
    partial_transpose,
    symplectic_eigenvalues,
    two_mode_squeezed_covariance,
    vacuum_covariance,
)
from .lindblad_oracle import (
    FockConfig,
    FockResult,
    MomentSystem,
    fock_steady_state,
    lyapunov_steady_moments,
    negativity_from_fock,
)
from .model_core import (
    Detunings,
    SystemParams,
    ValidationReport,
    detunings,
    kappa_from_ratio,
    validate,
)
from .steady_state import (
    BogoliubovTransform,
    MasterCoefficients,
    NormalModeFrequencies,
    SteadyState,
    bare_mode_moments,
    bogoliubov,
    master_coefficients,
    normal_mode_frequencies,
    steady_occupations,
    steady_state,
)
from .sweep import COLUMNS, SweepRow, SweepSpec, make_grid, rows_to_csv, run_point, run_sweep
from .verification import CheckResult, run_verification, sample_stable_params

__version__ = "0.1.0"
