"""Grid evaluation of the steady-state entanglement and deterministic CSV output.

A sweep runs the full pipeline independently at every (zeta1, zeta2) grid
point.  Points are pure functions of their parameters, so they may be
evaluated with bounded parallelism; results are always assembled in
row-major order (zeta2 outer, zeta1 inner) and the CSV rendering is fixed
(17 significant digits, '.' decimal separator, '\\n' line endings) so that
identical inputs produce byte-identical output regardless of schedule.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .errors import DriveDampError
from .gaussian_cv import covariance_from_moments, log_negativity
from .model_core import SystemParams
from .steady_state import steady_state

#: All emittable CSV columns, in canonical order.
COLUMNS = (
    "zeta1",
    "zeta2",
    "n_l",
    "n_m",
    "log_negativity",
    "log_negativity_base2",
    "nu_tilde_minus",
    "stable",
    "error_code",
)


@dataclass(frozen=True)
class SweepRow:
    """Result of one grid point; numeric fields are None when the point failed."""

    zeta1: float
    zeta2: float
    n_l: float | None
    n_m: float | None
    log_negativity: float | None
    log_negativity_base2: float | None
    nu_tilde_minus: float | None
    stable: bool
    error_code: str | None


@dataclass(frozen=True)
class SweepSpec:
    """A rectangular (zeta1, zeta2) grid over a fixed base parameter set."""

    base: SystemParams
    zeta1_grid: tuple[float, ...]
    zeta2_grid: tuple[float, ...]
    outputs: tuple[str, ...] = COLUMNS

    def __post_init__(self) -> None:
        for name, grid in (("zeta1_grid", self.zeta1_grid), ("zeta2_grid", self.zeta2_grid)):
            if len(grid) == 0:
                raise ValueError(f"{name} must be non-empty")
            if any(z <= 0 for z in grid):
                raise ValueError(f"{name} entries must be positive")
            if any(b <= a for a, b in zip(grid, grid[1:])):
                raise ValueError(f"{name} must be strictly increasing")
        unknown = set(self.outputs) - set(COLUMNS)
        if unknown:
            raise ValueError(f"unknown output columns: {sorted(unknown)}")


def make_grid(lo: float, hi: float, n: int, spacing: str = "log") -> tuple[float, ...]:
    """Strictly increasing grid of n points over [lo, hi]."""
    if n < 1:
        raise ValueError("grid needs at least one point")
    if n == 1:
        return (float(lo),)
    if not 0 < lo < hi:
        raise ValueError(f"need 0 < lo < hi, got lo={lo}, hi={hi}")
    if spacing == "log":
        return tuple(np.logspace(np.log10(lo), np.log10(hi), n))
    if spacing in ("lin", "linear"):
        return tuple(np.linspace(lo, hi, n))
    raise ValueError(f"unknown spacing {spacing!r} (expected 'log' or 'lin')")


def run_point(p: SystemParams) -> SweepRow:
    """Evaluate one parameter set; any domain error becomes an error row."""
    try:
        state = steady_state(p)
        neg = log_negativity(covariance_from_moments(state))
    except DriveDampError as exc:
        return SweepRow(
            zeta1=p.zeta1,
            zeta2=p.zeta2,
            n_l=None,
            n_m=None,
            log_negativity=None,
            log_negativity_base2=None,
            nu_tilde_minus=None,
            stable=False,
            error_code=exc.code,
        )
    return SweepRow(
        zeta1=p.zeta1,
        zeta2=p.zeta2,
        n_l=state.n_mode1,
        n_m=state.n_mode2,
        log_negativity=neg.log_negativity,
        log_negativity_base2=neg.log_negativity_base2,
        nu_tilde_minus=neg.nu_tilde_minus,
        stable=True,
        error_code=None,
    )


def run_sweep(spec: SweepSpec, parallelism: int = 1) -> list[SweepRow]:
    """Evaluate the whole grid, zeta2 outer and zeta1 inner.

    Rows come back in grid order no matter how many workers evaluate them.
    """
    if parallelism < 1:
        raise ValueError("parallelism must be a positive integer")
    points = [
        replace(spec.base, zeta1=z1, zeta2=z2)
        for z2 in spec.zeta2_grid
        for z1 in spec.zeta1_grid
    ]
    if parallelism == 1:
        return [run_point(p) for p in points]
    with ThreadPoolExecutor(max_workers=parallelism) as pool:
        return list(pool.map(run_point, points))


def _format_field(value: float | bool | str | None) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return value
    return format(value, ".17g")


def rows_to_csv(rows: list[SweepRow], columns: tuple[str, ...] = COLUMNS) -> str:
    """Render rows with the fixed formatting contract (header always present)."""
    unknown = set(columns) - set(COLUMNS)
    if unknown:
        raise ValueError(f"unknown output columns: {sorted(unknown)}")
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_format_field(getattr(row, c)) for c in columns))
    return "\n".join(lines) + "\n"
