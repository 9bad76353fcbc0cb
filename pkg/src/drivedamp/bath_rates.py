"""One-sided Fourier transforms of the bath correlation functions.

Each zero-temperature bath enters the master equation only through

    R(w) = int_0^inf dt int_0^inf dW  J(W) exp(i (W - w) t),

evaluated at a handful of signed sideband frequencies ``w``.  For the
Lorentzian-cutoff density J(W) = zeta W / (nu^2 + W^2) both parts are known
in closed form:

    Re R(w) = pi J(w)                       for w > 0, else 0
    Im R(w) = zeta [pi nu / 2 - w ln(|w|/nu)] / (nu^2 + w^2)

The imaginary (frequency-shift) part is the principal-value integral
P int_0^inf J(W)/(W - w) dW; :func:`lamb_shift_quadrature` recomputes it by
adaptive quadrature and :func:`dissipative_rate_regulated` recovers the real
part from a damped time regulator, so the closed forms are never trusted
unverified.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterator

from scipy.integrate import quad

from .errors import SingularFrequencyError
from .model_core import SystemParams

if TYPE_CHECKING:
    from .steady_state import NormalModeFrequencies


@dataclass(frozen=True)
class SpectralDensity:
    """Ohmic spectral density with Lorentzian cutoff: J(w) = zeta w / (nu^2 + w^2)."""

    zeta: float
    nu: float

    def __post_init__(self) -> None:
        if self.zeta < 0:
            raise ValueError(f"zeta must be non-negative, got {self.zeta}")
        if not self.nu > 0:
            raise ValueError(f"nu must be positive, got {self.nu}")


def spectral_density(j: SpectralDensity, omega: float) -> float:
    """Evaluate J at a non-negative frequency."""
    if omega < 0:
        raise ValueError(f"spectral density is defined for omega >= 0, got {omega}")
    return j.zeta * omega / (j.nu * j.nu + omega * omega)


def half_fourier_rate(j: SpectralDensity, omega: float) -> complex:
    """Closed-form one-sided bath response R at a signed frequency.

    Real part: dissipative rate, pi*J(omega) for omega > 0 and exactly 0
    otherwise (zero-temperature bath cannot excite).  Imaginary part:
    principal-value frequency shift, valid for either sign of omega.

    Raises
    ------
    SingularFrequencyError
        If ``omega`` is exactly 0, where the shift's logarithm is undefined.
    """
    if omega == 0.0:
        raise SingularFrequencyError(
            "bath response requested at frequency exactly 0 (shift logarithm undefined); "
            "this indicates a degenerate parameter configuration"
        )
    if j.zeta == 0.0:
        return 0.0 + 0.0j
    denom = j.nu * j.nu + omega * omega
    re = math.pi * j.zeta * omega / denom if omega > 0 else 0.0
    im = j.zeta * (0.5 * math.pi * j.nu - omega * math.log(abs(omega) / j.nu)) / denom
    return complex(re, im)


def lamb_shift_quadrature(
    j: SpectralDensity,
    omega: float,
    *,
    epsabs: float = 1e-13,
    epsrel: float = 1e-11,
) -> float:
    """Frequency shift by adaptive principal-value quadrature (oracle path).

    Computes P int_0^inf J(W)/(W - omega) dW with a Cauchy-weight rule on an
    interval straddling the pole (for omega > 0) and ordinary adaptive
    quadrature elsewhere, including the full tail to infinity.  Deliberately
    shares nothing with the closed form in :func:`half_fourier_rate`.
    """
    if omega == 0.0:
        raise SingularFrequencyError("principal value undefined at frequency exactly 0")
    if j.zeta == 0.0:
        return 0.0

    def f(w: float) -> float:
        return j.zeta * w / (j.nu * j.nu + w * w)

    scale = max(j.nu, abs(omega))
    if omega > 0:
        hi = 2.0 * omega
        pole_part, _ = quad(f, 0.0, hi, weight="cauchy", wvar=omega,
                            epsabs=epsabs, epsrel=epsrel, limit=500)
        mid, _ = quad(lambda w: f(w) / (w - omega), hi, hi + 100.0 * scale,
                      epsabs=epsabs, epsrel=epsrel, limit=500)
        tail, _ = quad(lambda w: f(w) / (w - omega), hi + 100.0 * scale, math.inf,
                       epsabs=epsabs, epsrel=epsrel, limit=500)
        return pole_part + mid + tail
    head, _ = quad(lambda w: f(w) / (w - omega), 0.0, 10.0 * scale,
                   epsabs=epsabs, epsrel=epsrel, limit=500)
    tail, _ = quad(lambda w: f(w) / (w - omega), 10.0 * scale, math.inf,
                   epsabs=epsabs, epsrel=epsrel, limit=500)
    return head + tail


def dissipative_rate_regulated(
    j: SpectralDensity,
    omega: float,
    *,
    regulators: tuple[float, ...] = (4e-3, 2e-3, 1e-3),
) -> float:
    """Dissipative rate from the time-domain definition with a damped regulator.

    Inserting exp(-eps*t) in the time integral turns the delta function into a
    Lorentzian of width eps; the eps -> 0 limit is taken by Richardson
    extrapolation over the given regulator sequence (each half the previous).
    Oracle path for the real part of :func:`half_fourier_rate`.
    """
    if j.zeta == 0.0:
        return 0.0

    def regulated(eps: float) -> float:
        def f(w: float) -> float:
            d = w - omega
            return j.zeta * w / (j.nu * j.nu + w * w) * eps / (eps * eps + d * d)

        scale = max(j.nu, abs(omega))
        head, _ = quad(f, 0.0, 10.0 * scale, points=[max(omega, 0.0)],
                       epsabs=1e-14, epsrel=1e-12, limit=500)
        tail, _ = quad(f, 10.0 * scale, math.inf, epsabs=1e-14, epsrel=1e-12, limit=500)
        return head + tail

    vals = [regulated(e) for e in regulators]
    # leading error is ~linear in eps for this kernel
    return 2.0 * vals[-1] - vals[-2]


@dataclass(frozen=True)
class BathResponses:
    """One bath's response at its four secular sideband frequencies.

    ``sum_frequency`` is pump + the frequency of the normal mode this bath
    damps directly; ``diff_frequency`` is pump - the other normal mode's
    frequency.  The four values are R evaluated at +/- each of these.
    """

    sum_frequency: float
    diff_frequency: float
    at_plus_sum: complex
    at_minus_sum: complex
    at_minus_diff: complex
    at_plus_diff: complex

    def entries(self) -> Iterator[tuple[str, float, complex]]:
        """Labelled (name, evaluation frequency, value) triples for audit."""
        yield ("+sum", self.sum_frequency, self.at_plus_sum)
        yield ("-sum", -self.sum_frequency, self.at_minus_sum)
        yield ("-diff", -self.diff_frequency, self.at_minus_diff)
        yield ("+diff", self.diff_frequency, self.at_plus_diff)


@dataclass(frozen=True)
class RateTable:
    """Responses of both baths at every frequency the master equation needs."""

    bath1: BathResponses
    bath2: BathResponses


def _bath_responses(j: SpectralDensity, sum_freq: float, diff_freq: float) -> BathResponses:
    return BathResponses(
        sum_frequency=sum_freq,
        diff_frequency=diff_freq,
        at_plus_sum=half_fourier_rate(j, sum_freq),
        at_minus_sum=half_fourier_rate(j, -sum_freq),
        at_minus_diff=half_fourier_rate(j, -diff_freq),
        at_plus_diff=half_fourier_rate(j, diff_freq),
    )


def rate_table(p: SystemParams, freqs: "NormalModeFrequencies") -> RateTable:
    """Evaluate both baths at the sidebands set by the normal-mode frequencies.

    Bath 1 (mode a) pairs its sum sideband with normal mode 1 and its
    difference sideband with normal mode 2; bath 2 is the mirror image.
    Propagates :class:`SingularFrequencyError` if any sideband is exactly 0.
    """
    j1 = SpectralDensity(zeta=p.zeta1, nu=p.nu1)
    j2 = SpectralDensity(zeta=p.zeta2, nu=p.nu2)
    return RateTable(
        bath1=_bath_responses(j1, p.omega_p + freqs.mode1, p.omega_p - freqs.mode2),
        bath2=_bath_responses(j2, p.omega_p + freqs.mode2, p.omega_p - freqs.mode1),
    )
