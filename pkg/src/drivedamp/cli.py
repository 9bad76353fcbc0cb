"""Command-line front end.

Subcommands:

* ``point``  - evaluate one parameter set, emit a one-row CSV.
* ``sweep``  - evaluate a (zeta1, zeta2) grid, emit CSV and optionally a
  rendered figure and/or a companion gnuplot script.
* ``verify`` - run the self-verification suite.

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 all points
failed.  ``DRIVEDAMP_THREADS`` overrides the worker count.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

from .model_core import SystemParams, detunings, kappa_from_ratio
from .sweep import COLUMNS, SweepSpec, make_grid, rows_to_csv, run_point, run_sweep
from .verification import run_verification

USAGE_ERROR = 1
VERIFY_FAILURE = 2
ALL_POINTS_FAILED = 3

_DEFAULTS = {
    "omega_a": 1.0,
    "omega_b": 1.0,
    "omega_p": 10.0,
    "nu1": 1.0,
    "nu2": 1.0,
    "zeta1": 0.01,
    "zeta2": 0.01,
    "threads": 1,
}

_DEFAULT_RANGE = "1e-4:5e-2:60:log"
_DEFAULT_KAPPA_RATIO = 0.1


class _Parser(argparse.ArgumentParser):
    """argparse parser with usage errors mapped to exit code 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


class UsageError(Exception):
    pass


def _build_parser() -> _Parser:
    physical = argparse.ArgumentParser(add_help=False)
    physical.add_argument("--omega-a", type=float, help="mode a frequency (default 1.0)")
    physical.add_argument("--omega-b", type=float, help="mode b frequency (default 1.0)")
    physical.add_argument("--omega-p", type=float, help="pump frequency (default 10)")
    physical.add_argument("--kappa", type=float, help="pair coupling strength")
    physical.add_argument(
        "--kappa-ratio",
        type=float,
        help="pair coupling as a fraction of |delta1+delta2| (default 0.1; mutually exclusive with --kappa)",
    )
    physical.add_argument("--nu1", type=float, help="bath 1 cutoff (default 1)")
    physical.add_argument("--nu2", type=float, help="bath 2 cutoff (default 1)")
    physical.add_argument("--config", help="flat key = value config file; flags override it")

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--out", help="output CSV path (default stdout)")
    output.add_argument("--columns", help="comma-separated subset of output columns")

    parser = _Parser(prog="drivedamp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_point = sub.add_parser("point", parents=[physical, output], help="evaluate one parameter set")
    p_point.add_argument("--zeta1", type=float, help="bath 1 coupling (default 0.01)")
    p_point.add_argument("--zeta2", type=float, help="bath 2 coupling (default 0.01)")

    p_sweep = sub.add_parser("sweep", parents=[physical, output], help="evaluate a coupling grid")
    p_sweep.add_argument("--zeta1", type=float, help="pin zeta1 to a single value")
    p_sweep.add_argument("--zeta2", type=float, help="pin zeta2 to a single value")
    p_sweep.add_argument("--zeta1-range", help="zeta1 grid as lo:hi:n[:log|:lin] (default 1e-4:5e-2:60:log)")
    p_sweep.add_argument("--zeta2-range", help="zeta2 grid as lo:hi:n[:log|:lin]")
    p_sweep.add_argument("--threads", type=int, help="worker count (default 1; DRIVEDAMP_THREADS overrides)")
    p_sweep.add_argument("--plot", help="also render the sweep to this image file")
    p_sweep.add_argument("--gnuplot-script", help="also write a companion gnuplot script here")

    p_verify = sub.add_parser("verify", parents=[], help="run the self-verification suite")
    p_verify.add_argument("--level", choices=("fast", "full"), default="fast")

    return parser


def _read_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise UsageError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
                key, _, value = line.partition("=")
                values[key.strip().lower().replace("-", "_")] = value.strip()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    return values


def _resolve(args: argparse.Namespace, name: str, cast, config: dict[str, str]):
    """CLI flag > config file > built-in default."""
    given = getattr(args, name, None)
    if given is not None:
        return given
    if name in config:
        try:
            return cast(config[name])
        except ValueError as exc:
            raise UsageError(f"config value for {name} is not valid: {config[name]!r}") from exc
    return _DEFAULTS.get(name)


def _resolve_params(args: argparse.Namespace, config: dict[str, str]) -> SystemParams:
    fields = {name: _resolve(args, name, float, config) for name in
              ("omega_a", "omega_b", "omega_p", "nu1", "nu2", "zeta1", "zeta2")}
    kappa = _resolve(args, "kappa", float, config)
    ratio = _resolve(args, "kappa_ratio", float, config)
    if kappa is not None and ratio is not None:
        raise UsageError("--kappa and --kappa-ratio are mutually exclusive")
    try:
        p = SystemParams(kappa=0.0, **fields)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if kappa is None:
        kappa = kappa_from_ratio(detunings(p), ratio if ratio is not None else _DEFAULT_KAPPA_RATIO)
    if kappa < 0:
        raise UsageError(f"kappa must be non-negative, got {kappa}")
    return replace(p, kappa=kappa)


def _parse_range(text: str, flag: str) -> tuple[float, ...]:
    parts = text.split(":")
    if len(parts) not in (3, 4):
        raise UsageError(f"{flag} expects lo:hi:n[:log|:lin], got {text!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
        spacing = parts[3] if len(parts) == 4 else "lin"
        return make_grid(lo, hi, n, spacing)
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from exc


def _resolve_axis(args: argparse.Namespace, axis: int, config: dict[str, str]) -> tuple[float, ...]:
    flag = f"--zeta{axis}"
    fixed = getattr(args, f"zeta{axis}")
    ranged = getattr(args, f"zeta{axis}_range")
    if fixed is not None and ranged is not None:
        raise UsageError(f"{flag} and {flag}-range are mutually exclusive")
    if fixed is not None:
        return (fixed,)
    if ranged is not None:
        return _parse_range(ranged, f"{flag}-range")
    cfg_fixed = config.get(f"zeta{axis}")
    cfg_range = config.get(f"zeta{axis}_range")
    if cfg_fixed is not None and cfg_range is not None:
        raise UsageError(f"config sets both zeta{axis} and zeta{axis}_range")
    if cfg_fixed is not None:
        try:
            return (float(cfg_fixed),)
        except ValueError as exc:
            raise UsageError(f"config value for zeta{axis} is not valid: {cfg_fixed!r}") from exc
    if cfg_range is not None:
        return _parse_range(cfg_range, f"{flag}-range")
    return _parse_range(_DEFAULT_RANGE, f"{flag}-range")


def _resolve_columns(args: argparse.Namespace, config: dict[str, str]) -> tuple[str, ...]:
    text = getattr(args, "columns", None) or config.get("columns")
    if text is None:
        return COLUMNS
    columns = tuple(c.strip() for c in text.split(",") if c.strip())
    unknown = set(columns) - set(COLUMNS)
    if unknown:
        raise UsageError(f"unknown columns: {', '.join(sorted(unknown))}")
    if not columns:
        raise UsageError("--columns must name at least one column")
    return columns


def _resolve_threads(args: argparse.Namespace, config: dict[str, str]) -> int:
    env = os.environ.get("DRIVEDAMP_THREADS")
    if env is not None:
        try:
            threads = int(env)
        except ValueError:
            raise UsageError(f"DRIVEDAMP_THREADS must be a positive integer, got {env!r}") from None
    else:
        threads = _resolve(args, "threads", int, config)
    if threads < 1:
        raise UsageError(f"thread count must be a positive integer, got {threads}")
    return threads


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _gnuplot_script(spec: SweepSpec, csv_path: str | None, columns: tuple[str, ...]) -> str:
    data = csv_path if csv_path is not None else "sweep.csv"
    two_d = len(spec.zeta1_grid) > 1 and len(spec.zeta2_grid) > 1
    neg_col = columns.index("log_negativity") + 1 if "log_negativity" in columns else 5
    lines = [
        "# companion gnuplot script for the sweep CSV",
        "set datafile separator ','",
        f"data = '{data}'",
    ]
    if two_d:
        lines += [
            "set logscale xy",
            "set view map",
            "set xlabel 'zeta1'",
            "set ylabel 'zeta2'",
            f"splot data skip 1 using 1:2:{neg_col} with points pt 5 ps 1 palette notitle",
        ]
    else:
        varying = 1 if len(spec.zeta1_grid) > 1 else 2
        lines += [
            "set logscale x",
            f"set xlabel 'zeta{varying}'",
            "set ylabel 'log negativity'",
            f"plot data skip 1 using {varying}:{neg_col} with lines notitle",
        ]
    return "\n".join(lines) + "\n"


def _cmd_point(args: argparse.Namespace) -> int:
    config = _read_config(args.config) if args.config else {}
    params = _resolve_params(args, config)
    columns = _resolve_columns(args, config)
    row = run_point(params)
    _emit(rows_to_csv([row], columns), args.out or config.get("out"))
    return 0 if row.stable else ALL_POINTS_FAILED


def _cmd_sweep(args: argparse.Namespace) -> int:
    config = _read_config(args.config) if args.config else {}
    params = _resolve_params(args, config)
    columns = _resolve_columns(args, config)
    try:
        spec = SweepSpec(
            base=params,
            zeta1_grid=_resolve_axis(args, 1, config),
            zeta2_grid=_resolve_axis(args, 2, config),
            outputs=columns,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rows = run_sweep(spec, parallelism=_resolve_threads(args, config))
    out = args.out or config.get("out")
    _emit(rows_to_csv(rows, columns), out)
    if args.gnuplot_script:
        with open(args.gnuplot_script, "w", encoding="utf-8", newline="") as fh:
            fh.write(_gnuplot_script(spec, out, columns))
    if args.plot:
        from .plots import render_sweep_figure

        render_sweep_figure(spec, rows, args.plot)
    return ALL_POINTS_FAILED if all(not r.stable for r in rows) else 0


def _cmd_verify(args: argparse.Namespace) -> int:
    results = run_verification(args.level)
    for res in results:
        print(f"{'PASS' if res.passed else 'FAIL'} {res.name}: {res.detail}")
    return 0 if all(r.passed for r in results) else VERIFY_FAILURE


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "point":
            return _cmd_point(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        return _cmd_verify(args)
    except UsageError as exc:
        print(f"drivedamp: error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
