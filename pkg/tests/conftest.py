import numpy as np
import pytest

from drivedamp import SystemParams


@pytest.fixture
def asym_params() -> SystemParams:
    """Detuned-mode reference point in the entangling regime."""
    return SystemParams(
        omega_a=1.0, omega_b=0.6, omega_p=10.0, kappa=1.84,
        zeta1=0.003, zeta2=0.01, nu1=1.0, nu2=1.0,
    )


@pytest.fixture
def sym_params() -> SystemParams:
    """Equal-mode reference point; kappa is |delta1+delta2|/10."""
    return SystemParams(
        omega_a=1.0, omega_b=1.0, omega_p=10.0, kappa=1.8,
        zeta1=0.01, zeta2=0.01, nu1=1.0, nu2=1.0,
    )


def local_rotation(theta_a: float, theta_b: float) -> np.ndarray:
    """Independent phase-space rotation on each mode (a local symplectic map)."""

    def rot(t: float) -> np.ndarray:
        return np.array([[np.cos(t), np.sin(t)], [-np.sin(t), np.cos(t)]])

    out = np.zeros((4, 4))
    out[:2, :2] = rot(theta_a)
    out[2:, 2:] = rot(theta_b)
    return out
