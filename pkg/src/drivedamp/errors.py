"""Exception types shared across the package.

Every error carries a short machine-readable ``code`` so that batch drivers
can record failures per grid point instead of crashing.
"""

from __future__ import annotations


class DriveDampError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "error"


class InstabilityError(DriveDampError):
    """Parameters at or above the parametric threshold; normal modes are not real."""

    code = "unstable"


class SteadyStateError(DriveDampError):
    """Pumping overcomes damping (or damping is absent); no Gaussian steady state."""

    code = "no_steady_state"


class SingularFrequencyError(DriveDampError):
    """A bath response was requested at frequency exactly zero, where the
    principal-value logarithm is undefined."""

    code = "singular_frequency"


class PhysicalityError(DriveDampError):
    """Moments or covariance matrix violate the uncertainty principle."""

    code = "unphysical"


class ConvergenceError(DriveDampError):
    """Brute-force integration did not reach a steady state within the horizon."""

    code = "no_convergence"


class TruncationWarning(UserWarning):
    """Truncated number-state space is likely too small for the predicted occupations."""
