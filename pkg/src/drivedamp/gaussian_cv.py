"""Two-mode Gaussian-state toolbox: quadrature covariance matrices,
symplectic spectra, partial transpose, and logarithmic negativity.

Conventions: quadrature order (x_a, p_a, x_b, p_b) with x = (a + a^dag)/sqrt2
and p = (a - a^dag)/(i sqrt2), so the vacuum covariance is identity/2 and a
state is physical iff both symplectic eigenvalues are >= 1/2.  Logarithmic
negativity uses the natural logarithm; base-2 and the plain (non-logarithmic)
negativity are exposed alongside it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .errors import PhysicalityError
from .steady_state import SteadyState

#: Standard symplectic form for two modes in (x_a, p_a, x_b, p_b) order.
SYMPLECTIC_FORM = np.array(
    [
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ]
)

#: Momentum sign flip on the second mode (partial transpose in phase space).
PT_FLIP = np.diag([1.0, 1.0, 1.0, -1.0])

#: Symplectic eigenvalues may dip below 1/2 by at most this much before a
#: matrix is rejected as unphysical; reported values are never floored.
PHYSICALITY_TOL = 1e-10

#: A state counts as entangled only when the smallest partial-transpose
#: symplectic eigenvalue is below 1/2 by more than this margin.
ENTANGLEMENT_TOL = 1e-12


def vacuum_covariance() -> NDArray[np.float64]:
    return 0.5 * np.eye(4)


def two_mode_squeezed_covariance(r: float) -> NDArray[np.float64]:
    """Standard-form covariance of a two-mode squeezed vacuum with parameter r."""
    a = 0.5 * math.cosh(2.0 * r)
    c = 0.5 * math.sinh(2.0 * r)
    sigma = a * np.eye(4)
    sigma[0, 2] = sigma[2, 0] = -c
    sigma[1, 3] = sigma[3, 1] = c
    return sigma


def covariance_from_moments(state: SteadyState) -> NDArray[np.float64]:
    """Quadrature covariance of a zero-mean state with moments
    (n_a, n_b, <ab>) and vanishing <aa>, <bb>, <a^dag b>.

    Raises :class:`PhysicalityError` if the moments violate the
    Cauchy-Schwarz bound |<ab>|^2 <= n_a (n_b + 1).
    """
    n_a, n_b, m = state.n_a, state.n_b, state.m_ab
    if n_a < -PHYSICALITY_TOL or n_b < -PHYSICALITY_TOL:
        raise PhysicalityError(f"negative occupation: n_a={n_a}, n_b={n_b}")
    bound = n_a * (n_b + 1.0)
    if abs(m) ** 2 > bound * (1.0 + 1e-9) + PHYSICALITY_TOL:
        raise PhysicalityError(
            f"pair correlation too large: |<ab>|^2 = {abs(m)**2:.6g} exceeds "
            f"n_a*(n_b+1) = {bound:.6g}"
        )
    c_re, c_im = m.real, m.imag
    va = n_a + 0.5
    vb = n_b + 0.5
    return np.array(
        [
            [va, 0.0, c_re, c_im],
            [0.0, va, c_im, -c_re],
            [c_re, c_im, vb, 0.0],
            [c_im, -c_re, 0.0, vb],
        ]
    )


def _require_symmetric(sigma: NDArray[np.float64]) -> NDArray[np.float64]:
    sigma = np.asarray(sigma, dtype=float)
    if sigma.shape != (4, 4):
        raise ValueError(f"expected a 4x4 covariance matrix, got shape {sigma.shape}")
    scale = max(1.0, float(np.max(np.abs(sigma))))
    if np.max(np.abs(sigma - sigma.T)) > 1e-12 * scale:
        raise ValueError("covariance matrix must be symmetric")
    return sigma


def symplectic_eigenvalues(sigma: NDArray[np.float64]) -> tuple[float, float]:
    """Both symplectic eigenvalues, sorted descending.

    Taken as the moduli of the (pairwise conjugate) eigenvalues of
    Omega @ sigma, which LAPACK reduces through the real Schur form; works
    for arbitrary symmetric positive matrices, not just standard form.
    """
    sigma = _require_symmetric(sigma)
    mods = np.sort(np.abs(np.linalg.eigvals(SYMPLECTIC_FORM @ sigma)))[::-1]
    scale = max(1.0, mods[0])
    if abs(mods[0] - mods[1]) > 1e-8 * scale or abs(mods[2] - mods[3]) > 1e-8 * scale:
        raise ValueError("eigenvalues of Omega @ sigma did not pair up; matrix is not a valid covariance")
    return float(0.5 * (mods[0] + mods[1])), float(0.5 * (mods[2] + mods[3]))


def standard_form_symplectic_eigenvalues(
    a: float, b: float, c_plus: float, c_minus: float
) -> tuple[float, float]:
    """Closed-form symplectic spectrum for a standard-form covariance
    [[a I, C], [C^T, b I]] with C = diag(c_plus, c_minus).

    Kept as an independent cross-check of :func:`symplectic_eigenvalues`.
    """
    delta = a * a + b * b + 2.0 * c_plus * c_minus
    det = (a * b - c_plus * c_plus) * (a * b - c_minus * c_minus)
    disc = math.sqrt(max(delta * delta - 4.0 * det, 0.0))
    nu_plus = math.sqrt(0.5 * (delta + disc))
    nu_minus = math.sqrt(max(0.5 * (delta - disc), 0.0))
    return nu_plus, nu_minus


def is_physical(sigma: NDArray[np.float64], tol: float = PHYSICALITY_TOL) -> bool:
    """True iff sigma + (i/2) Omega >= 0, i.e. both symplectic eigenvalues
    are >= 1/2 up to ``tol`` (the tolerance applies only to this check)."""
    _, nu_minus = symplectic_eigenvalues(sigma)
    return nu_minus >= 0.5 - tol


def partial_transpose(sigma: NDArray[np.float64]) -> NDArray[np.float64]:
    """Momentum sign flip on the second mode; an involution."""
    return PT_FLIP @ np.asarray(sigma, dtype=float) @ PT_FLIP


@dataclass(frozen=True)
class NegativityResult:
    """Entanglement verdict for a two-mode Gaussian state.

    ``log_negativity`` uses the natural logarithm; ``nu_tilde_minus`` is the
    raw smallest symplectic eigenvalue after partial transpose (never
    floored).  ``entangled`` is equivalent to ``log_negativity > 0``.
    """

    log_negativity: float
    nu_tilde_minus: float
    entangled: bool

    @property
    def log_negativity_base2(self) -> float:
        return self.log_negativity / math.log(2.0)

    @property
    def negativity(self) -> float:
        """Plain (non-logarithmic) negativity, (trace-norm - 1)/2."""
        if not self.entangled:
            return 0.0
        return (1.0 - 2.0 * self.nu_tilde_minus) / (4.0 * self.nu_tilde_minus)


def log_negativity(sigma: NDArray[np.float64]) -> NegativityResult:
    """Logarithmic negativity of a physical two-mode covariance matrix."""
    sigma = _require_symmetric(sigma)
    _, nu_minus = symplectic_eigenvalues(sigma)
    if nu_minus < 0.5 - PHYSICALITY_TOL:
        raise PhysicalityError(
            f"covariance is unphysical: smallest symplectic eigenvalue {nu_minus:.12g} < 1/2"
        )
    _, nu_tilde = symplectic_eigenvalues(partial_transpose(sigma))
    entangled = nu_tilde < 0.5 - ENTANGLEMENT_TOL
    value = -math.log(2.0 * nu_tilde) if entangled else 0.0
    return NegativityResult(log_negativity=value, nu_tilde_minus=nu_tilde, entangled=entangled)
