"""Independent verification of the analytic steady state.

Two oracle routes, deliberately disjoint from the closed-form pipeline:

1. :func:`lyapunov_steady_moments` solves the linear moment equations of the
   secular master equation (a small Lyapunov-type system) instead of reusing
   the occupation formula.
2. :func:`fock_steady_state` integrates the full master equation for a
   truncated number-state density matrix until the second moments stop
   moving, then maps the result back to the bare modes.

Both are desk-scale checks, not production solvers.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy import sparse
from scipy.integrate import solve_ivp
from scipy.linalg import expm

from .errors import ConvergenceError, TruncationWarning
from .errors import SteadyStateError
from .model_core import SystemParams, detunings
from .steady_state import (
    BogoliubovTransform,
    MasterCoefficients,
    bogoliubov,
    master_coefficients,
)

# ---------------------------------------------------------------------------
# moment-equation route
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MomentSystem:
    """Linear ODE system dx/dt = drift @ x + source for the slow moments:
    occupation of each normal mode plus a cross-moment magnitude that must
    decay to zero.  The drift is Hurwitz exactly when a steady state exists."""

    drift: NDArray[np.float64]
    source: NDArray[np.float64]

    @property
    def is_hurwitz(self) -> bool:
        return bool(np.all(np.linalg.eigvals(self.drift).real < 0.0))


def moment_system(mc: MasterCoefficients) -> MomentSystem:
    g1 = mc.emit1 - mc.absorb1
    g2 = mc.emit2 - mc.absorb2
    drift = np.diag([-2.0 * g1, -2.0 * g2, -(g1 + g2)])
    source = np.array([2.0 * mc.absorb1, 2.0 * mc.absorb2, 0.0])
    return MomentSystem(drift=drift, source=source)


def lyapunov_steady_moments(mc: MasterCoefficients) -> tuple[float, float]:
    """Steady normal-mode occupations from the moment equations.

    Solves drift @ x = -source with a general linear solver; the occupation
    formula is never reused, so agreement with the analytic route is a real
    cross-check.
    """
    ms = moment_system(mc)
    if not ms.is_hurwitz:
        raise SteadyStateError(
            "moment drift is not Hurwitz; the moment equations have no stable fixed point"
        )
    x = np.linalg.solve(ms.drift, -ms.source)
    return float(x[0]), float(x[1])


# ---------------------------------------------------------------------------
# truncated number-state route
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FockConfig:
    """Settings for the brute-force integration.

    ``t_final``/``dt`` default to values derived from the relaxation rates
    (a horizon of ~20 relaxation times, checkpointed every relaxation time).
    ``convergence_tol`` bounds the allowed drift of any second moment per
    unit time at the end.
    """

    dim_per_mode: int = 8
    t_final: float | None = None
    dt: float | None = None
    convergence_tol: float = 1e-10

    def __post_init__(self) -> None:
        if self.dim_per_mode < 2:
            raise ValueError("dim_per_mode must be at least 2")


def destroy(dim: int) -> NDArray[np.float64]:
    """Annihilation operator on a truncated number basis."""
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1)


def _mode_operators(dim: int) -> tuple[sparse.csr_matrix, sparse.csr_matrix]:
    a = sparse.csr_matrix(destroy(dim))
    eye = sparse.identity(dim, format="csr")
    return sparse.kron(a, eye, format="csr"), sparse.kron(eye, a, format="csr")


def _liouvillian(mc: MasterCoefficients, dim: int) -> sparse.csr_matrix:
    """Sparse generator on the row-major-vectorized density matrix.

    Row-major convention: vec(A rho B) = (A kron B^T) vec(rho).
    """
    a1, a2 = _mode_operators(dim)
    n = dim * dim
    eye = sparse.identity(n, format="csr", dtype=complex)

    def lindblad(op: sparse.spmatrix, rate: float) -> sparse.spmatrix:
        opd = op.conj().T.tocsr()
        num = (opd @ op).tocsr()
        return rate * (
            2.0 * sparse.kron(op, op.conj())
            - sparse.kron(num, eye)
            - sparse.kron(eye, num.T)
        )

    h = (mc.shift1 * (a1.conj().T @ a1) + mc.shift2 * (a2.conj().T @ a2)).tocsr()
    gen = -1j * (sparse.kron(h, eye) - sparse.kron(eye, h.T))
    gen = gen + lindblad(a1, mc.emit1) + lindblad(a1.conj().T.tocsr(), mc.absorb1)
    gen = gen + lindblad(a2, mc.emit2) + lindblad(a2.conj().T.tocsr(), mc.absorb2)
    return gen.tocsr()


def _expect(rho: NDArray[np.complex128], op: sparse.spmatrix) -> complex:
    return complex((op.T.multiply(rho)).sum())


def _second_moments(rho: NDArray[np.complex128], dim: int) -> dict[str, complex]:
    a1, a2 = _mode_operators(dim)
    return {
        "n1": _expect(rho, (a1.conj().T @ a1).tocsr()),
        "n2": _expect(rho, (a2.conj().T @ a2).tocsr()),
        "c12": _expect(rho, (a1 @ a2).tocsr()),
        "c1d2": _expect(rho, (a1.conj().T @ a2).tocsr()),
        "s11": _expect(rho, (a1 @ a1).tocsr()),
        "s22": _expect(rho, (a2 @ a2).tocsr()),
    }


@dataclass(frozen=True)
class FockResult:
    """Outcome of the brute-force integration (density matrix in the
    normal-mode number basis plus derived moments of both bases)."""

    rho: NDArray[np.complex128]
    dim: int
    n_mode1: float
    n_mode2: float
    n_a: float
    n_b: float
    m_ab: complex
    covariance: NDArray[np.float64]
    trace_error: float
    hermiticity_error: float
    t_reached: float
    converged: bool
    truncation_ok: bool


def fock_relax(
    mc: MasterCoefficients, cfg: FockConfig
) -> tuple[NDArray[np.complex128], float, bool, float, float]:
    """Integrate the master equation from the normal-mode vacuum.

    Returns (rho, t_reached, converged, trace_error, hermiticity_error).
    Raises :class:`ConvergenceError` if the second moments are still moving
    faster than ``convergence_tol`` per unit time at ``t_final``.
    """
    dim = cfg.dim_per_mode
    gap = min(mc.emit1 - mc.absorb1, mc.emit2 - mc.absorb2)
    if gap <= 0:
        raise SteadyStateError("no relaxation: absorption reaches emission on some mode")
    tau = 1.0 / (2.0 * gap)
    chunk = cfg.dt if cfg.dt is not None else tau
    t_final = cfg.t_final if cfg.t_final is not None else 40.0 * tau

    gen = _liouvillian(mc, dim)
    y = np.zeros(dim * dim * dim * dim, dtype=complex)
    y[0] = 1.0  # |0,0><0,0| row-major vectorized

    def rhs(_t: float, state: NDArray[np.complex128]) -> NDArray[np.complex128]:
        return gen @ state

    t = 0.0
    trace_err = 0.0
    herm_err = 0.0
    prev = _second_moments(y.reshape(dim * dim, dim * dim), dim)
    converged = False
    while t < t_final:
        t_next = min(t + chunk, t_final)
        sol = solve_ivp(rhs, (t, t_next), y, method="RK45", rtol=1e-9, atol=1e-13)
        if not sol.success:
            raise ConvergenceError(f"integrator failed near t={t:.4g}: {sol.message}")
        y = sol.y[:, -1]
        rho = y.reshape(dim * dim, dim * dim)
        trace_err = max(trace_err, abs(np.trace(rho).real - 1.0) + abs(np.trace(rho).imag))
        herm_err = max(herm_err, float(np.max(np.abs(rho - rho.conj().T))))
        cur = _second_moments(rho, dim)
        drift_rate = max(abs(cur[k] - prev[k]) for k in cur) / (t_next - t)
        prev = cur
        t = t_next
        if drift_rate < cfg.convergence_tol:
            converged = True
            break

    if not converged:
        raise ConvergenceError(
            f"second moments still drifting at t={t_final:.4g} "
            f"(last rate {drift_rate:.3g} > tol {cfg.convergence_tol:.3g})"
        )
    return y.reshape(dim * dim, dim * dim), t, converged, trace_err, herm_err


def _bare_moments(
    bt: BogoliubovTransform, nm: dict[str, complex]
) -> dict[str, complex]:
    """Map normal-mode second moments to bare-mode second moments, keeping
    every cross term (they vanish only in the exact steady state)."""
    al, be = bt.alpha, bt.beta
    a2, b2 = bt.alpha_sq, bt.beta_sq
    e1, e2 = nm["n1"], nm["n2"]
    c12, c1d2 = nm["c12"], nm["c1d2"]
    s11, s22 = nm["s11"], nm["s22"]
    cross = al * be.conjugate()
    return {
        "n_a": a2 * e1 + b2 * (e2 + 1.0) + cross * c12 + (cross * c12).conjugate(),
        "n_b": b2 * (e1 + 1.0) + a2 * e2 + cross.conjugate() * c12 + (cross.conjugate() * c12).conjugate(),
        "m_ab": cross * (e1 + 1.0) + cross.conjugate() * e2 + a2 * c12 + b2 * c12.conjugate(),
        "m_aa": al * al * s11 + 2.0 * al * be * c1d2.conjugate() + be * be * s22.conjugate(),
        "m_bb": (be * be).conjugate() * s11.conjugate()
        + 2.0 * (al * be).conjugate() * c1d2
        + (al * al).conjugate() * s22,
        "c_ab": (al * be).conjugate() * (s11.conjugate() + s22)
        + (al * al).conjugate() * c1d2
        + (be * be).conjugate() * c1d2.conjugate(),
    }


def covariance_from_general_moments(mom: dict[str, complex]) -> NDArray[np.float64]:
    """Quadrature covariance of a zero-mean state from all five independent
    second moments (no structural zeros assumed; oracle-side assembly)."""
    n_a, n_b = mom["n_a"].real, mom["n_b"].real
    m_aa, m_bb = mom["m_aa"], mom["m_bb"]
    m_ab, c_ab = mom["m_ab"], mom["c_ab"]
    sigma = np.empty((4, 4))
    sigma[0, 0] = n_a + 0.5 + m_aa.real
    sigma[1, 1] = n_a + 0.5 - m_aa.real
    sigma[0, 1] = sigma[1, 0] = m_aa.imag
    sigma[2, 2] = n_b + 0.5 + m_bb.real
    sigma[3, 3] = n_b + 0.5 - m_bb.real
    sigma[2, 3] = sigma[3, 2] = m_bb.imag
    sigma[0, 2] = sigma[2, 0] = (m_ab + c_ab).real
    sigma[1, 3] = sigma[3, 1] = (c_ab - m_ab).real
    sigma[0, 3] = sigma[3, 0] = (m_ab + c_ab).imag
    sigma[1, 2] = sigma[2, 1] = (m_ab - c_ab).imag
    return sigma


def fock_steady_state(p: SystemParams, cfg: FockConfig | None = None) -> FockResult:
    """Brute-force steady state of the truncated master equation.

    Integrates from the normal-mode vacuum until the second moments settle,
    then maps to bare-mode moments and a quadrature covariance.  Issues a
    :class:`TruncationWarning` when the predicted occupations are too large
    for the chosen truncation (n >= dim/4).
    """
    cfg = cfg or FockConfig()
    mc = master_coefficients(p)
    bt = bogoliubov(detunings(p), p.kappa)

    n1_pred, n2_pred = lyapunov_steady_moments(mc)
    truncation_ok = max(n1_pred, n2_pred) < cfg.dim_per_mode / 4.0
    if not truncation_ok:
        warnings.warn(
            f"predicted occupations ({n1_pred:.3g}, {n2_pred:.3g}) approach the "
            f"truncation dim {cfg.dim_per_mode}; moments will be unreliable",
            TruncationWarning,
            stacklevel=2,
        )

    rho, t_reached, converged, trace_err, herm_err = fock_relax(mc, cfg)
    nm = _second_moments(rho, cfg.dim_per_mode)
    bare = _bare_moments(bt, nm)
    return FockResult(
        rho=rho,
        dim=cfg.dim_per_mode,
        n_mode1=nm["n1"].real,
        n_mode2=nm["n2"].real,
        n_a=bare["n_a"].real,
        n_b=bare["n_b"].real,
        m_ab=bare["m_ab"],
        covariance=covariance_from_general_moments(bare),
        trace_error=trace_err,
        hermiticity_error=herm_err,
        t_reached=t_reached,
        converged=converged,
        truncation_ok=truncation_ok,
    )


# ---------------------------------------------------------------------------
# number-basis negativity
# ---------------------------------------------------------------------------


def two_mode_squeezer(xi: float, dim: int) -> NDArray[np.complex128]:
    """Truncated pair-creation unitary exp(xi (a1^dag a2^dag - a2 a1)).

    The generator is anti-Hermitian on the truncated space, so the matrix
    exponential is unitary up to round-off; verified to 1e-8.
    """
    a = destroy(dim)
    ad = a.T
    pair_up = np.kron(ad, ad)
    gen = xi * (pair_up - pair_up.T)
    u = expm(gen)
    err = float(np.max(np.abs(u.conj().T @ u - np.eye(dim * dim))))
    if err > 1e-8:
        raise RuntimeError(f"truncated squeezer lost unitarity: max deviation {err:.3g}")
    return u.astype(complex)


def to_bare_basis(rho: NDArray[np.complex128], bt: BogoliubovTransform) -> NDArray[np.complex128]:
    """Conjugate a normal-mode density matrix by the pair-creation unitary
    matching the transform magnitudes (phases are local and do not affect
    entanglement)."""
    dim = int(round(math.sqrt(rho.shape[0])))
    xi = math.atanh(abs(bt.beta) / abs(bt.alpha))
    u = two_mode_squeezer(xi, dim)
    return u @ rho @ u.conj().T


def negativity_from_fock(rho: NDArray[np.complex128]) -> float:
    """Logarithmic negativity from the partial transpose in the number basis.

    E = ln ||rho^PT||_1 via the eigenvalues of the partially transposed
    density matrix; clamped at 0 (PPT states give trace norm 1).
    """
    rho = np.asarray(rho, dtype=complex)
    n = rho.shape[0]
    dim = int(round(math.sqrt(n)))
    if dim * dim != n or rho.shape != (n, n):
        raise ValueError(f"expected a two-mode density matrix of square dimension, got {rho.shape}")
    if abs(np.trace(rho) - 1.0) > 1e-6:
        raise ValueError(f"density matrix trace is {np.trace(rho):.8g}, expected 1")
    if float(np.max(np.abs(rho - rho.conj().T))) > 1e-8:
        raise ValueError("density matrix is not Hermitian")
    eigs = np.linalg.eigvalsh(rho)
    if eigs.min() < -1e-8:
        raise ValueError(f"density matrix is not positive (min eigenvalue {eigs.min():.3g})")
    pt = rho.reshape(dim, dim, dim, dim).transpose(0, 3, 2, 1).reshape(n, n)
    trace_norm = float(np.sum(np.abs(np.linalg.eigvalsh(pt))))
    return max(0.0, math.log(trace_norm))
