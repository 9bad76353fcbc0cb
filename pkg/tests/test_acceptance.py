"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines as they complete.
"""

import dataclasses
import math
import time

import numpy as np
import pytest

from drivedamp import (
    SystemParams,
    SweepSpec,
    bare_mode_moments,
    bogoliubov,
    detunings,
    fock_steady_state,
    lyapunov_steady_moments,
    make_grid,
    master_coefficients,
    normal_mode_frequencies,
    rows_to_csv,
    run_sweep,
    steady_occupations,
    steady_state,
)
from drivedamp.bath_rates import (
    BathResponses,
    RateTable,
    SpectralDensity,
    half_fourier_rate,
    lamb_shift_quadrature,
    rate_table,
)
from drivedamp.gaussian_cv import (
    covariance_from_moments,
    log_negativity,
    symplectic_eigenvalues,
    two_mode_squeezed_covariance,
)
from drivedamp.lindblad_oracle import FockConfig, negativity_from_fock, two_mode_squeezer
from drivedamp.steady_state import master_coefficients_from_parts
from drivedamp.verification import sample_stable_params


def report(number: int, passed: bool, detail: str) -> None:
    print(f"ACCEPTANCE {number} {'PASS' if passed else 'FAIL'}: {detail}")
    assert passed, f"criterion {number}: {detail}"


def symmetric_base() -> SystemParams:
    # kappa resolved from the ratio rule |delta1+delta2|/10 = 1.8
    return SystemParams(omega_a=1.0, omega_b=1.0, omega_p=10.0, kappa=1.8,
                        zeta1=0.01, zeta2=0.01, nu1=1.0, nu2=1.0)


@pytest.fixture(scope="module")
def symmetric_sweep():
    grid = make_grid(1e-4, 5e-2, 60)
    spec = SweepSpec(base=symmetric_base(), zeta1_grid=grid, zeta2_grid=grid)
    start = time.perf_counter()
    rows = run_sweep(spec)
    elapsed = time.perf_counter() - start
    values = np.array([r.log_negativity for r in rows]).reshape(60, 60)
    return spec, values, elapsed


def test_criterion_1_symmetric_grid_structure(symmetric_sweep):
    _spec, values, elapsed = symmetric_sweep
    i2, i1 = np.unravel_index(np.argmax(values), values.shape)
    on_diagonal = abs(i1 - i2) <= 1
    ray_spread = 0.0
    for k in range(-59, 60):
        diag = np.diagonal(values, offset=k)
        if len(diag) > 1:
            ray_spread = max(ray_spread, float(diag.max() - diag.min()))
    passed = on_diagonal and ray_spread <= 1e-10 and elapsed < 5.0
    report(
        1,
        passed,
        f"60x60 grid max at indices ({i1}, {i2}), ray spread {ray_spread:.2e} "
        f"(tol 1e-10), runtime {elapsed:.2f}s (limit 5s)",
    )


def test_criterion_2_peak_value_convention(symmetric_sweep):
    _spec, values, _elapsed = symmetric_sweep
    peak = float(values.max())
    base2 = peak / math.log(2.0)
    plain = (math.exp(peak) - 1.0) / 2.0
    candidates = {"natural-log": peak, "base-2": base2, "plain": plain}
    matching = {name: v for name, v in candidates.items() if abs(v - 0.2) <= 0.05}
    report(
        2,
        bool(matching),
        f"peak entanglement by convention: natural-log {peak:.5f}, base-2 {base2:.5f}, "
        f"plain {plain:.5f}; within 0.2 +/- 0.05 under: {sorted(matching) or 'none'}",
    )


def test_criterion_3_asymmetric_slice_nonmonotonic():
    base = SystemParams(omega_a=1.0, omega_b=0.6, omega_p=10.0, kappa=1.84,
                        zeta1=0.01, zeta2=0.01, nu1=1.0, nu2=1.0)
    spec = SweepSpec(base=base, zeta1_grid=make_grid(1e-4, 3e-2, 60), zeta2_grid=(0.01,))
    start = time.perf_counter()
    rows = run_sweep(spec)
    elapsed = time.perf_counter() - start
    values = [r.log_negativity for r in rows]
    peak = int(np.argmax(values))
    interior = 0 < peak < len(values) - 1
    peak_zeta1 = rows[peak].zeta1
    within_factor_2 = 0.0015 <= peak_zeta1 <= 0.006
    passed = interior and within_factor_2 and elapsed < 1.0
    report(
        3,
        passed,
        f"slice peak at zeta1={peak_zeta1:.5g} (expect 0.003 within factor 2), "
        f"interior={interior}, runtime {elapsed:.2f}s (limit 1s)",
    )


def test_criterion_4_no_pump_limit():
    p = SystemParams(omega_a=1.0, omega_b=1.3, omega_p=0.0, kappa=0.4,
                     zeta1=0.02, zeta2=0.005, nu1=1.0, nu2=1.5)
    mc = master_coefficients(p)
    occ = steady_occupations(mc)
    passed = mc.absorb1 == 0.0 and mc.absorb2 == 0.0 and occ == (0.0, 0.0)
    report(
        4,
        passed,
        f"undriven coefficients absorb1={mc.absorb1!r}, absorb2={mc.absorb2!r}, "
        f"occupations={occ!r} (all exact zeros required)",
    )


def test_criterion_5_oracle_equivalence_moments():
    rng = np.random.default_rng(404)
    draws = [sample_stable_params(rng) for _ in range(100)]

    start = time.perf_counter()
    worst_lyap = 0.0
    for p in draws:
        mc = master_coefficients(p)
        analytic = steady_occupations(mc)
        solved = lyapunov_steady_moments(mc)
        for a, s in zip(analytic, solved):
            scale = max(abs(a), abs(s))
            worst_lyap = max(worst_lyap, abs(a - s) / scale if scale else 0.0)
    lyap_time = time.perf_counter() - start

    start = time.perf_counter()
    worst_fock = 0.0
    compared = 0
    for p in draws:
        state = steady_state(p)
        if max(state.n_mode1, state.n_mode2) >= 0.5:
            continue
        fock = fock_steady_state(p, FockConfig(dim_per_mode=8))
        sigma = covariance_from_moments(state)
        worst_fock = max(worst_fock, float(np.max(np.abs(fock.covariance - sigma))))
        compared += 1
    fock_time = time.perf_counter() - start

    passed = worst_lyap <= 1e-10 and worst_fock <= 1e-4 and lyap_time < 10.0 and fock_time < 600.0
    report(
        5,
        passed,
        f"100 draws: moment-solve worst rel err {worst_lyap:.2e} (tol 1e-10, {lyap_time:.1f}s); "
        f"truncated-integration worst moment err {worst_fock:.2e} over {compared} draws "
        f"(tol 1e-4, {fock_time:.1f}s)",
    )


def test_criterion_6_rate_integral_correctness():
    rng = np.random.default_rng(405)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(50):
        omega = rng.uniform(-50.0, 50.0)
        while abs(omega) < 1e-2:
            omega = rng.uniform(-50.0, 50.0)
        j = SpectralDensity(zeta=10.0 ** rng.uniform(-3, 0), nu=rng.choice([0.5, 1.0, 2.0]))
        closed = half_fourier_rate(j, omega)
        pv = lamb_shift_quadrature(j, omega)
        worst = max(worst, abs(closed.imag - pv) / max(abs(pv), abs(closed)))
    elapsed = time.perf_counter() - start
    passed = worst <= 1e-6 and elapsed < 5.0
    report(
        6,
        passed,
        f"closed form vs principal-value quadrature: worst rel err {worst:.2e} "
        f"over 50 triples (tol 1e-6), runtime {elapsed:.2f}s (limit 5s)",
    )


def test_criterion_7_gaussian_toolbox():
    worst_tmsv = max(
        abs(log_negativity(two_mode_squeezed_covariance(r)).log_negativity - 2.0 * r)
        for r in (0.1, 0.5, 1.0)
    )

    rng = np.random.default_rng(406)
    worst_det = 0.0
    worst_purity = 0.0
    for _ in range(50):
        sigma = two_mode_squeezed_covariance(rng.uniform(0.0, 1.0))
        sigma_noisy = sigma + rng.uniform(0.0, 0.5) * np.eye(4)
        nu_p, nu_m = symplectic_eigenvalues(sigma_noisy)
        worst_det = max(worst_det, abs(nu_p**2 * nu_m**2 - np.linalg.det(sigma_noisy)))
        pure_p, pure_m = symplectic_eigenvalues(sigma)
        worst_purity = max(worst_purity, abs(pure_p - 0.5), abs(pure_m - 0.5))

    dim = 12
    u = two_mode_squeezer(0.3, dim)
    vac = np.zeros((dim * dim, dim * dim), dtype=complex)
    vac[0, 0] = 1.0
    fock_err = abs(negativity_from_fock(u @ vac @ u.conj().T) - 0.6)

    passed = worst_tmsv <= 1e-9 and worst_det <= 1e-10 and worst_purity <= 1e-10 and fock_err <= 1e-3
    report(
        7,
        passed,
        f"pair-squeezed E=2r err {worst_tmsv:.2e} (tol 1e-9); det identity err {worst_det:.2e} "
        f"and purity err {worst_purity:.2e} (tol 1e-10); number-basis E err {fock_err:.2e} (tol 1e-3)",
    )


def test_criterion_8_invariant_suite():
    from drivedamp.model_core import Detunings

    rng = np.random.default_rng(407)

    worst_comm = 0.0
    for _ in range(10_000):
        total = rng.uniform(0.5, 40.0) * rng.choice([-1.0, 1.0])
        kappa = rng.uniform(0.0, 0.49) * abs(total)
        d1 = 0.5 * total + rng.uniform(-0.2, 0.2) * total
        bt = bogoliubov(Detunings(delta1=d1, delta2=total - d1, total=total), kappa)
        worst_comm = max(worst_comm, abs(bt.alpha_sq - bt.beta_sq - 1.0))
    comm_ok = worst_comm <= 1e-12

    p = SystemParams(omega_a=1.0, omega_b=0.6, omega_p=10.0, kappa=1.84,
                     zeta1=0.003, zeta2=0.01)
    scale_ok = all(
        steady_state(dataclasses.replace(p, zeta1=p.zeta1 * s, zeta2=p.zeta2 * s))
        == steady_state(p)
        for s in (0.5, 2.0, 4.0)
    )

    d = detunings(p)
    bt = bogoliubov(d, p.kappa)
    freqs = normal_mode_frequencies(d, p.kappa)
    rates = rate_table(p, freqs)

    def bump_shifts(resp: BathResponses) -> BathResponses:
        return BathResponses(
            sum_frequency=resp.sum_frequency,
            diff_frequency=resp.diff_frequency,
            at_plus_sum=resp.at_plus_sum + 3.7j,
            at_minus_sum=resp.at_minus_sum - 1.2j,
            at_minus_diff=resp.at_minus_diff + 0.9j,
            at_plus_diff=resp.at_plus_diff - 2.4j,
        )

    garbled = RateTable(bath1=bump_shifts(rates.bath1), bath2=bump_shifts(rates.bath2))
    occ_clean = steady_occupations(master_coefficients_from_parts(bt, freqs, rates))
    occ_garbled = steady_occupations(master_coefficients_from_parts(bt, freqs, garbled))
    lamb_ok = (
        occ_clean == occ_garbled
        and bare_mode_moments(bt, occ_clean) == bare_mode_moments(bt, occ_garbled)
    )

    physical_ok = True
    for _ in range(100):
        state = steady_state(sample_stable_params(rng))
        _, nu_minus = symplectic_eigenvalues(covariance_from_moments(state))
        physical_ok = physical_ok and nu_minus >= 0.5 - 1e-10

    grid = make_grid(1e-4, 5e-2, 12)
    spec = SweepSpec(base=symmetric_base(), zeta1_grid=grid, zeta2_grid=grid)
    first = rows_to_csv(run_sweep(spec, parallelism=1))
    again = rows_to_csv(run_sweep(spec, parallelism=1))
    parallel = rows_to_csv(run_sweep(spec, parallelism=4))
    csv_ok = first == again == parallel

    passed = comm_ok and scale_ok and lamb_ok and physical_ok and csv_ok
    report(
        8,
        passed,
        f"commutation worst {worst_comm:.2e} over 1e4 draws (tol 1e-12); "
        f"common-scale invariance exact: {scale_ok}; shift independence exact: {lamb_ok}; "
        f"physicality on 100 draws: {physical_ok}; CSV determinism + parallel/serial bytes: {csv_ok}",
    )
