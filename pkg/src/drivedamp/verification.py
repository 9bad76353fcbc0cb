"""Self-verification suite backing the ``verify`` command.

The fast level re-derives the closed-form bath responses by quadrature and
cross-checks the analytic occupations against the moment-equation solve; the
full level adds brute-force truncated number-state integrations.  Every check
is seeded and deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .bath_rates import (
    SpectralDensity,
    dissipative_rate_regulated,
    half_fourier_rate,
    lamb_shift_quadrature,
    spectral_density,
)
from .errors import DriveDampError
from .gaussian_cv import (
    covariance_from_moments,
    log_negativity,
    partial_transpose,
    symplectic_eigenvalues,
    two_mode_squeezed_covariance,
)
from .lindblad_oracle import (
    FockConfig,
    fock_steady_state,
    lyapunov_steady_moments,
    negativity_from_fock,
    two_mode_squeezer,
)
from .model_core import Detunings, SystemParams, detunings, kappa_from_ratio
from .steady_state import (
    bogoliubov,
    master_coefficients,
    normal_mode_frequencies,
    steady_occupations,
    steady_state,
)

#: Asymmetric reference point used throughout the verification suite
#: (detuned modes, fixed bath couplings in the entangling regime).
REFERENCE_PARAMS = SystemParams(
    omega_a=1.0,
    omega_b=0.6,
    omega_p=10.0,
    kappa=1.84,
    zeta1=0.003,
    zeta2=0.01,
    nu1=1.0,
    nu2=1.0,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def sample_stable_params(
    rng: np.random.Generator, max_tries: int = 1000, ratio_span: float = 10.0
) -> SystemParams:
    """Random parameter set with a well-defined Gaussian steady state.

    Draws in the strongly detuned pumped regime and rejects sets that are
    above threshold, lack a steady state, or have a sideband frequency too
    close to zero for the shift logarithm.  The bath couplings share a
    log-uniform common scale (which drops out of the steady state exactly)
    with a log-uniform asymmetry ratio within ``ratio_span`` either way.
    Draws whose occupations reach 0.25 are rejected as well: the truncated
    brute-force oracle's fixed point carries an intrinsic missing-tail bias
    of order (n/(1+n))^dim, so certifying 1e-4 agreement at the default
    dim of 8 needs occupations safely below ~0.3.  Hotter occupations are
    exercised separately at larger truncation in the oracle tests.
    """
    for _ in range(max_tries):
        scale = 10.0 ** rng.uniform(-4.0, -1.5)
        ratio = ratio_span ** rng.uniform(-1.0, 1.0)
        base = SystemParams(
            omega_a=1.0,
            omega_b=rng.uniform(0.4, 1.6),
            omega_p=rng.uniform(3.0, 15.0),
            kappa=0.0,
            zeta1=scale * math.sqrt(ratio),
            zeta2=scale / math.sqrt(ratio),
            nu1=rng.uniform(0.5, 2.0),
            nu2=rng.uniform(0.5, 2.0),
        )
        p = replace(base, kappa=kappa_from_ratio(base, rng.uniform(0.03, 0.18)))
        try:
            freqs = normal_mode_frequencies(detunings(p), p.kappa)
        except DriveDampError:
            continue
        sidebands = (
            p.omega_p + freqs.mode1,
            p.omega_p - freqs.mode1,
            p.omega_p + freqs.mode2,
            p.omega_p - freqs.mode2,
        )
        if min(abs(s) for s in sidebands) < 1e-3:
            continue
        try:
            n1, n2 = steady_occupations(master_coefficients(p))
        except DriveDampError:
            continue
        if max(n1, n2) >= 0.25:
            continue
        return p
    raise RuntimeError("could not draw a stable parameter set")


def _relative_error(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    if scale == 0.0:
        return 0.0
    return abs(a - b) / scale


# ---------------------------------------------------------------------------
# individual checks
# ---------------------------------------------------------------------------


def check_shift_quadrature(n_triples: int = 50, tol: float = 1e-6, seed: int = 2023) -> CheckResult:
    """Closed-form frequency shift vs adaptive principal-value quadrature."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_triples):
        omega = rng.uniform(-50.0, 50.0)
        while abs(omega) < 1e-2:
            omega = rng.uniform(-50.0, 50.0)
        j = SpectralDensity(zeta=10.0 ** rng.uniform(-3, 0), nu=rng.choice([0.5, 1.0, 2.0]))
        closed = half_fourier_rate(j, omega)
        pv = lamb_shift_quadrature(j, omega)
        denom = max(abs(pv), abs(closed))
        worst = max(worst, abs(closed.imag - pv) / denom)
    return CheckResult(
        name="shift_quadrature",
        passed=worst <= tol,
        detail=f"worst relative error {worst:.3e} over {n_triples} triples (tol {tol:g})",
    )


def check_rate_regulated(n_points: int = 10, tol: float = 1e-4, seed: int = 2024) -> CheckResult:
    """Closed-form dissipative rate vs damped time-regulator quadrature."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_points):
        j = SpectralDensity(zeta=10.0 ** rng.uniform(-2, 0), nu=rng.uniform(0.5, 2.0))
        omega = rng.uniform(0.1, 5.0) * j.nu
        target = math.pi * spectral_density(j, omega)
        est = dissipative_rate_regulated(j, omega)
        worst = max(worst, abs(est - target) / target)
    return CheckResult(
        name="rate_regulated",
        passed=worst <= tol,
        detail=f"worst relative error {worst:.3e} over {n_points} points (tol {tol:g})",
    )


def check_lyapunov_agreement(n_draws: int = 100, tol: float = 1e-10, seed: int = 2025) -> CheckResult:
    """Analytic occupations vs linear moment solve on random stable draws."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_draws):
        mc = master_coefficients(sample_stable_params(rng))
        n1, n2 = steady_occupations(mc)
        l1, l2 = lyapunov_steady_moments(mc)
        worst = max(worst, _relative_error(n1, l1), _relative_error(n2, l2))
    return CheckResult(
        name="lyapunov_agreement",
        passed=worst <= tol,
        detail=f"worst relative error {worst:.3e} over {n_draws} draws (tol {tol:g})",
    )


def check_gaussian_toolbox(tol_neg: float = 1e-9, tol_id: float = 1e-10) -> CheckResult:
    """Known negativities and symplectic identities of the Gaussian toolbox."""
    worst_neg = 0.0
    for r in (0.1, 0.5, 1.0):
        res = log_negativity(two_mode_squeezed_covariance(r))
        worst_neg = max(worst_neg, abs(res.log_negativity - 2.0 * r))
    worst_id = 0.0
    rng = np.random.default_rng(2026)
    for _ in range(20):
        sigma = two_mode_squeezed_covariance(rng.uniform(0.0, 1.0))
        sigma = sigma + rng.uniform(0.0, 0.5) * np.eye(4)
        theta = rng.uniform(0.0, 2 * np.pi)
        rot = np.eye(4)
        rot[2:, 2:] = [[np.cos(theta), np.sin(theta)], [-np.sin(theta), np.cos(theta)]]
        sigma = rot @ sigma @ rot.T
        nu_p, nu_m = symplectic_eigenvalues(sigma)
        worst_id = max(worst_id, abs(nu_p**2 * nu_m**2 - np.linalg.det(sigma)))
        worst_id = max(worst_id, float(np.max(np.abs(partial_transpose(partial_transpose(sigma)) - sigma))))
    passed = worst_neg <= tol_neg and worst_id <= tol_id
    return CheckResult(
        name="gaussian_toolbox",
        passed=passed,
        detail=f"negativity error {worst_neg:.3e} (tol {tol_neg:g}), identity error {worst_id:.3e} (tol {tol_id:g})",
    )


def check_commutation(n_draws: int = 10_000, tol: float = 1e-12, seed: int = 2027) -> CheckResult:
    """Transform normalization |alpha|^2 - |beta|^2 = 1 over random stable draws."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_draws):
        total = rng.uniform(0.5, 40.0) * rng.choice([-1.0, 1.0])
        kappa = rng.uniform(0.0, 0.49) * abs(total)
        d1 = 0.5 * total + rng.uniform(-0.2, 0.2) * total
        d2 = total - d1
        bt = bogoliubov(Detunings(delta1=d1, delta2=d2, total=d1 + d2), kappa)
        worst = max(worst, abs(bt.alpha_sq - bt.beta_sq - 1.0))
    return CheckResult(
        name="commutation",
        passed=worst <= tol,
        detail=f"worst |alpha^2 - beta^2 - 1| = {worst:.3e} over {n_draws} draws (tol {tol:g})",
    )


def check_fock_reference(tol: float = 1e-4) -> CheckResult:
    """Truncated integration vs analytic covariance at the reference point."""
    analytic = covariance_from_moments(steady_state(REFERENCE_PARAMS))
    fock = fock_steady_state(REFERENCE_PARAMS, FockConfig(dim_per_mode=8))
    worst = float(np.max(np.abs(fock.covariance - analytic)))
    ok = worst <= tol and fock.trace_error <= 1e-8
    return CheckResult(
        name="fock_reference",
        passed=ok,
        detail=(
            f"max covariance deviation {worst:.3e} (tol {tol:g}), "
            f"trace error {fock.trace_error:.3e}"
        ),
    )


def check_fock_draws(n_draws: int = 5, tol: float = 1e-4, seed: int = 2028) -> CheckResult:
    """Truncated integration vs analytic covariance on random draws with
    occupations small enough for the default truncation."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    done = 0
    while done < n_draws:
        p = sample_stable_params(rng)
        state = steady_state(p)
        if max(state.n_mode1, state.n_mode2) >= 0.5:
            continue
        fock = fock_steady_state(p, FockConfig(dim_per_mode=8))
        worst = max(worst, float(np.max(np.abs(fock.covariance - covariance_from_moments(state)))))
        done += 1
    return CheckResult(
        name="fock_draws",
        passed=worst <= tol,
        detail=f"max covariance deviation {worst:.3e} over {n_draws} draws (tol {tol:g})",
    )


def check_fock_negativity(tol: float = 1e-3) -> CheckResult:
    """Number-basis negativity of a truncated pair-squeezed vacuum vs 2r."""
    r, dim = 0.3, 12
    u = two_mode_squeezer(r, dim)
    vac = np.zeros((dim * dim, dim * dim), dtype=complex)
    vac[0, 0] = 1.0
    value = negativity_from_fock(u @ vac @ u.conj().T)
    err = abs(value - 2.0 * r)
    return CheckResult(
        name="fock_negativity",
        passed=err <= tol,
        detail=f"|E - 2r| = {err:.3e} at r={r}, dim={dim} (tol {tol:g})",
    )


FAST_CHECKS = (
    check_shift_quadrature,
    check_rate_regulated,
    check_lyapunov_agreement,
    check_gaussian_toolbox,
    check_commutation,
)

FULL_CHECKS = FAST_CHECKS + (
    check_fock_reference,
    check_fock_draws,
    check_fock_negativity,
)


def run_verification(level: str = "fast") -> list[CheckResult]:
    """Run the named verification level; returns one result per check."""
    if level == "fast":
        checks = FAST_CHECKS
    elif level == "full":
        checks = FULL_CHECKS
    else:
        raise ValueError(f"unknown verification level {level!r} (expected 'fast' or 'full')")
    return [check() for check in checks]
