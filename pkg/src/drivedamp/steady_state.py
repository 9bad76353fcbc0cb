"""Normal-mode transform, master-equation coefficients, and the exact
Gaussian steady state of the bare modes.

In the frame co-rotating with the pump the quadratic mode coupling is removed
by a two-mode (squeezing-type) normal-mode transform

    a = alpha * mode1 + beta * mode2^dag,     b^dag = beta * mode1 + alpha * mode2,

with |alpha|^2 - |beta|^2 = 1.  In the secular weak-coupling limit each
normal mode then relaxes independently with an emission rate and an
absorption rate built from the bath responses, and the steady state is a
product of thermal states in the normal modes.  Mapping back to the bare
modes gives a zero-mean Gaussian state whose only nonzero second moments are
the occupations <a^dag a>, <b^dag b> and the pair correlation <a b>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bath_rates import RateTable, rate_table
from .errors import InstabilityError, SteadyStateError
from .model_core import MAX_OCCUPATION, Detunings, SystemParams, below_threshold, detunings


@dataclass(frozen=True)
class BogoliubovTransform:
    """Coefficients of the normal-mode transform; alpha on the +i axis,
    beta on the -i axis, |alpha|^2 - |beta|^2 = 1."""

    alpha: complex
    beta: complex

    @property
    def alpha_sq(self) -> float:
        return abs(self.alpha) ** 2

    @property
    def beta_sq(self) -> float:
        return abs(self.beta) ** 2


@dataclass(frozen=True)
class NormalModeFrequencies:
    mode1: float
    mode2: float


def _threshold_root(d: Detunings, kappa: float) -> float:
    """sqrt((delta1+delta2)^2 - 4 kappa^2), guarding the stability margin."""
    if not below_threshold(d, kappa):
        raise InstabilityError(
            "at or above parametric threshold: require (delta1+delta2)^2 > 4*kappa^2 "
            f"with margin (got total detuning {d.total:.6g}, kappa {kappa:.6g})"
        )
    return math.sqrt(d.total * d.total - 4.0 * kappa * kappa)


def bogoliubov(d: Detunings, kappa: float) -> BogoliubovTransform:
    """Normal-mode transform coefficients below the parametric threshold."""
    root = _threshold_root(d, kappa)
    ratio = abs(d.total) / root  # >= 1
    alpha = 1j * math.sqrt(0.5 * ratio + 0.5)
    beta = -1j * math.sqrt(0.5 * ratio - 0.5)
    return BogoliubovTransform(alpha=alpha, beta=beta)


def normal_mode_frequencies(d: Detunings, kappa: float) -> NormalModeFrequencies:
    """Frequencies of the two normal modes in the co-rotating frame.

    Evaluated with the principal (positive) square root throughout, so the
    sign of the total detuning is carried by the final term.
    """
    root = _threshold_root(d, kappa)
    ratio = abs(d.total) / root
    half_split = 0.5 * (d.delta1 - d.delta2)
    shared = -2.0 * kappa * kappa / root + 0.5 * d.total * ratio
    return NormalModeFrequencies(mode1=half_split + shared, mode2=-half_split + shared)


@dataclass(frozen=True)
class MasterCoefficients:
    """Coefficients of the secular master equation for the normal modes.

    ``shift1``/``shift2`` are the renormalized normal-mode frequencies (bare
    frequency minus the bath-induced shifts); they never enter the steady
    state.  ``emit``/``absorb`` are the non-negative rates of the lowering
    and raising dissipators; a Gaussian steady state exists iff emission
    beats absorption on both modes.
    """

    shift1: float
    shift2: float
    emit1: float
    absorb1: float
    emit2: float
    absorb2: float

    @property
    def steady_state_exists(self) -> bool:
        return self.emit1 > self.absorb1 and self.emit2 > self.absorb2


def master_coefficients_from_parts(
    bt: BogoliubovTransform,
    freqs: NormalModeFrequencies,
    rates: RateTable,
) -> MasterCoefficients:
    """Combine transform weights and bath responses into the six coefficients.

    Only the real (dissipative) parts of the responses enter the rates; the
    imaginary parts only renormalize the frequencies.
    """
    a2 = bt.alpha_sq
    b2 = bt.beta_sq
    r1, r2 = rates.bath1, rates.bath2
    shift1 = freqs.mode1 - a2 * (r1.at_plus_sum.imag + r1.at_minus_sum.imag) \
        - b2 * (r2.at_minus_diff.imag + r2.at_plus_diff.imag)
    shift2 = freqs.mode2 - a2 * (r2.at_plus_sum.imag + r2.at_minus_sum.imag) \
        - b2 * (r1.at_minus_diff.imag + r1.at_plus_diff.imag)
    return MasterCoefficients(
        shift1=shift1,
        shift2=shift2,
        emit1=a2 * r1.at_plus_sum.real,
        absorb1=b2 * r2.at_plus_diff.real,
        emit2=a2 * r2.at_plus_sum.real,
        absorb2=b2 * r1.at_plus_diff.real,
    )


def master_coefficients(p: SystemParams) -> MasterCoefficients:
    """Full chain from system parameters to master-equation coefficients."""
    d = detunings(p)
    bt = bogoliubov(d, p.kappa)
    freqs = normal_mode_frequencies(d, p.kappa)
    rates = rate_table(p, freqs)
    return master_coefficients_from_parts(bt, freqs, rates)


def steady_occupations(mc: MasterCoefficients) -> tuple[float, float]:
    """Thermal occupations of the two normal modes in the steady state.

    n = absorb / (emit - absorb) per mode.  Raises
    :class:`SteadyStateError` when absorption reaches emission (no Gaussian
    steady state) or when an occupation exceeds ``MAX_OCCUPATION`` (too close
    to threshold to be numerically meaningful).
    """
    if not mc.steady_state_exists:
        raise SteadyStateError(
            "pumping overcomes damping; no Gaussian steady state "
            f"(emit1-absorb1={mc.emit1 - mc.absorb1:.6g}, "
            f"emit2-absorb2={mc.emit2 - mc.absorb2:.6g})"
        )
    n1 = mc.absorb1 / (mc.emit1 - mc.absorb1)
    n2 = mc.absorb2 / (mc.emit2 - mc.absorb2)
    if n1 > MAX_OCCUPATION or n2 > MAX_OCCUPATION:
        raise SteadyStateError(
            f"steady occupations diverge (n1={n1:.3g}, n2={n2:.3g}); "
            "parameters are effectively at threshold"
        )
    return n1, n2


@dataclass(frozen=True)
class SteadyState:
    """Steady state: normal-mode occupations plus bare-mode second moments.

    All first moments vanish, as do <a a>, <b b> and <a^dag b>; the state is
    fully described by the occupations ``n_a``, ``n_b`` and the complex pair
    correlation ``m_ab`` = <a b>.
    """

    n_mode1: float
    n_mode2: float
    n_a: float
    n_b: float
    m_ab: complex


def bare_mode_moments(bt: BogoliubovTransform, occ: tuple[float, float]) -> SteadyState:
    """Second moments of the bare modes for thermal normal-mode occupations."""
    n1, n2 = occ
    if n1 < 0 or n2 < 0 or not (math.isfinite(n1) and math.isfinite(n2)):
        raise ValueError(f"occupations must be finite and non-negative, got ({n1}, {n2})")
    a2 = bt.alpha_sq
    b2 = bt.beta_sq
    n_a = a2 * n1 + b2 * (n2 + 1.0)
    n_b = b2 * (n1 + 1.0) + a2 * n2
    m_ab = bt.alpha * bt.beta.conjugate() * (n1 + 1.0) + bt.alpha.conjugate() * bt.beta * n2
    return SteadyState(n_mode1=n1, n_mode2=n2, n_a=n_a, n_b=n_b, m_ab=m_ab)


def steady_state(p: SystemParams) -> SteadyState:
    """Exact Gaussian steady state of the bare modes for the given parameters."""
    d = detunings(p)
    bt = bogoliubov(d, p.kappa)
    freqs = normal_mode_frequencies(d, p.kappa)
    rates = rate_table(p, freqs)
    mc = master_coefficients_from_parts(bt, freqs, rates)
    return bare_mode_moments(bt, steady_occupations(mc))
