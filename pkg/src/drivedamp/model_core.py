"""Parameter containers, physical-validity checks, and the co-rotating-frame
reduction shared by every other module.

Two bosonic modes (frequencies ``omega_a``, ``omega_b``) are coupled by a
pair-creation interaction of strength ``kappa`` driven by a classical pump at
``omega_p``; each mode is damped by its own zero-temperature bath with an
Ohmic spectral density with Lorentzian cutoff (coupling ``zeta``, cutoff
``nu``).  All frequencies are conventionally expressed in units of
``omega_a``; the library itself does not assume ``omega_a == 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DriveDampError, SteadyStateError

#: Relative margin required below the parametric threshold: we demand
#: (delta1+delta2)^2 - 4*kappa^2 > STABILITY_MARGIN * (delta1+delta2)^2
#: to keep the square root in the normal-mode transform well conditioned.
STABILITY_MARGIN = 1e-10

#: Occupations above this are treated as divergent (at threshold for all
#: practical purposes) rather than returned as meaningless huge numbers.
MAX_OCCUPATION = 1e12


@dataclass(frozen=True)
class SystemParams:
    """Immutable parameter set for the driven, damped two-mode system.

    Attributes
    ----------
    omega_a, omega_b:
        Bare mode frequencies (> 0).
    omega_p:
        Classical pump frequency; the frame co-rotating at ``omega_p`` is
        used throughout.  ``omega_p = 0`` means no pumping.
    kappa:
        Pair coupling strength (>= 0).
    zeta1, zeta2:
        Bath coupling constants (>= 0) for mode a and mode b respectively.
    nu1, nu2:
        Lorentzian cutoff frequencies of the two bath spectral densities (> 0).
    """

    omega_a: float
    omega_b: float
    omega_p: float
    kappa: float
    zeta1: float
    zeta2: float
    nu1: float = 1.0
    nu2: float = 1.0

    def __post_init__(self) -> None:
        if not self.omega_a > 0:
            raise ValueError(f"omega_a must be positive, got {self.omega_a}")
        if not self.omega_b > 0:
            raise ValueError(f"omega_b must be positive, got {self.omega_b}")
        if not self.nu1 > 0:
            raise ValueError(f"nu1 must be positive, got {self.nu1}")
        if not self.nu2 > 0:
            raise ValueError(f"nu2 must be positive, got {self.nu2}")
        if self.kappa < 0:
            raise ValueError(f"kappa must be non-negative, got {self.kappa}")
        if self.zeta1 < 0 or self.zeta2 < 0:
            raise ValueError("bath couplings zeta1, zeta2 must be non-negative")


@dataclass(frozen=True)
class Detunings:
    """Mode detunings from the pump, and their sum (kept with the same
    arithmetic so downstream threshold checks are consistent)."""

    delta1: float
    delta2: float
    total: float


def detunings(p: SystemParams) -> Detunings:
    """Detunings of both modes from the pump in the co-rotating frame."""
    d1 = p.omega_a - p.omega_p
    d2 = p.omega_b - p.omega_p
    return Detunings(delta1=d1, delta2=d2, total=d1 + d2)


def kappa_from_ratio(p_or_d: SystemParams | Detunings, ratio: float) -> float:
    """Resolve a pair coupling given as a fraction of ``|delta1 + delta2|``.

    Convenience for command-line use; the library itself only ever stores the
    resolved absolute coupling.
    """
    d = p_or_d if isinstance(p_or_d, Detunings) else detunings(p_or_d)
    return abs(d.total) * ratio


def below_threshold(d: Detunings, kappa: float) -> bool:
    """True when the normal-mode transform is real and well conditioned."""
    s2 = d.total * d.total
    return s2 - 4.0 * kappa * kappa > STABILITY_MARGIN * s2


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of :func:`validate`: a list of violated conditions by name.

    An empty ``issues`` tuple means every downstream computation is
    well-defined for the given parameters.
    """

    issues: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.issues


def validate(p: SystemParams) -> ValidationReport:
    """Collect every condition the steady-state pipeline needs into one report.

    Never raises: each failed condition contributes one message.  Checks the
    sub-threshold condition, flags vanishing bath couplings, and (when the
    normal modes exist) runs the rate/coefficient chain to detect singular
    bath frequencies and steady-state nonexistence.
    """
    issues: list[str] = []
    d = detunings(p)

    if not below_threshold(d, p.kappa):
        issues.append(
            "S1 violated: (delta1+delta2)^2 must exceed 4*kappa^2 "
            f"(got {d.total**2:.6g} vs {4 * p.kappa**2:.6g}); "
            "at or above parametric threshold"
        )

    if p.zeta1 == 0.0:
        issues.append("zeta1 = 0: mode a has no bath; dissipative steady state needs zeta1 > 0")
    if p.zeta2 == 0.0:
        issues.append("zeta2 = 0: mode b has no bath; dissipative steady state needs zeta2 > 0")

    if below_threshold(d, p.kappa):
        # Local import: the coefficient chain lives downstream of this module.
        from .steady_state import master_coefficients

        try:
            mc = master_coefficients(p)
        except DriveDampError as exc:
            issues.append(f"rate evaluation failed: {exc}")
        else:
            if mc.emit1 == mc.absorb1 == 0.0 and mc.emit2 == mc.absorb2 == 0.0:
                issues.append("steady state undefined: C-D=0 and E-F=0 (all bath rates vanish)")
            elif not mc.steady_state_exists:
                issues.append(
                    "no steady state: pumping overcomes damping "
                    f"(emit1-absorb1={mc.emit1 - mc.absorb1:.6g}, "
                    f"emit2-absorb2={mc.emit2 - mc.absorb2:.6g})"
                )
            else:
                try:
                    from .steady_state import steady_occupations

                    steady_occupations(mc)
                except SteadyStateError as exc:
                    issues.append(f"steady state ill-conditioned: {exc}")

    return ValidationReport(issues=tuple(issues))
