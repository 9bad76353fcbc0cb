import dataclasses

import numpy as np
import pytest

from drivedamp import SystemParams
from drivedamp.cli import main
from drivedamp.sweep import (
    COLUMNS,
    SweepSpec,
    make_grid,
    rows_to_csv,
    run_point,
    run_sweep,
)


def base_params(**overrides):
    fields = dict(omega_a=1.0, omega_b=1.0, omega_p=10.0, kappa=1.8,
                  zeta1=0.01, zeta2=0.01, nu1=1.0, nu2=1.0)
    fields.update(overrides)
    return SystemParams(**fields)


class TestRunPoint:
    def test_entangled_reference(self):
        row = run_point(base_params())
        assert row.stable
        assert row.error_code is None
        assert row.log_negativity > 0
        assert row.nu_tilde_minus < 0.5

    def test_no_pump_ground_state(self):
        # undriven but coupled: the steady state is the (pair-squeezed) ground state
        row = run_point(base_params(omega_p=0.0, kappa=0.3))
        assert row.stable
        assert row.n_l == 0.0 and row.n_m == 0.0
        assert row.log_negativity > 0.0

    def test_uncoupled_modes_are_separable(self):
        row = run_point(base_params(kappa=0.0))
        assert row.stable
        assert row.log_negativity == 0.0

    def test_instability_becomes_error_row(self):
        row = run_point(base_params(kappa=9.3))
        assert not row.stable
        assert row.error_code == "unstable"
        assert row.n_l is None and row.log_negativity is None

    def test_missing_bath_becomes_error_row(self):
        row = run_point(base_params(zeta1=0.0))
        assert not row.stable
        assert row.error_code == "no_steady_state"


class TestRunSweep:
    def spec(self, n1=6, n2=5):
        return SweepSpec(
            base=base_params(),
            zeta1_grid=make_grid(1e-4, 5e-2, n1),
            zeta2_grid=make_grid(1e-4, 5e-2, n2),
        )

    def test_row_major_ordering(self):
        spec = self.spec()
        rows = run_sweep(spec)
        assert len(rows) == 30
        expected = [(z1, z2) for z2 in spec.zeta2_grid for z1 in spec.zeta1_grid]
        assert [(r.zeta1, r.zeta2) for r in rows] == expected

    def test_serial_parallel_identical_bytes(self):
        spec = self.spec()
        serial = rows_to_csv(run_sweep(spec, parallelism=1))
        parallel = rows_to_csv(run_sweep(spec, parallelism=4))
        assert serial == parallel

    def test_repeat_runs_identical_bytes(self):
        spec = self.spec()
        assert rows_to_csv(run_sweep(spec)) == rows_to_csv(run_sweep(spec))

    def test_rescaled_grid_reindexes_the_same_values(self):
        spec = self.spec()
        doubled = SweepSpec(
            base=spec.base,
            zeta1_grid=tuple(2.0 * z for z in spec.zeta1_grid),
            zeta2_grid=tuple(2.0 * z for z in spec.zeta2_grid),
        )
        a = [r.log_negativity for r in run_sweep(spec)]
        b = [r.log_negativity for r in run_sweep(doubled)]
        assert a == b

    def test_asymmetric_slice_peaks_off_diagonal(self):
        spec = SweepSpec(
            base=base_params(omega_b=0.6, kappa=1.84, zeta2=0.01),
            zeta1_grid=make_grid(1e-4, 3e-2, 40),
            zeta2_grid=(0.01,),
        )
        rows = run_sweep(spec)
        values = [r.log_negativity for r in rows]
        peak = int(np.argmax(values))
        assert 0 < peak < len(values) - 1  # interior maximum
        assert 0.0015 <= rows[peak].zeta1 <= 0.006

    def test_bad_grids_rejected(self):
        with pytest.raises(ValueError):
            SweepSpec(base=base_params(), zeta1_grid=(), zeta2_grid=(0.01,))
        with pytest.raises(ValueError):
            SweepSpec(base=base_params(), zeta1_grid=(0.2, 0.1), zeta2_grid=(0.01,))
        with pytest.raises(ValueError):
            SweepSpec(base=base_params(), zeta1_grid=(0.0, 0.1), zeta2_grid=(0.01,))
        with pytest.raises(ValueError):
            SweepSpec(base=base_params(), zeta1_grid=(0.01,), zeta2_grid=(0.01,),
                      outputs=("zeta1", "nope"))


class TestCsv:
    def test_header_and_full_precision(self):
        rows = run_sweep(SweepSpec(base=base_params(), zeta1_grid=(0.01,), zeta2_grid=(0.01,)))
        text = rows_to_csv(rows)
        lines = text.split("\n")
        assert lines[0] == ",".join(COLUMNS)
        assert text.endswith("\n")
        fields = lines[1].split(",")
        assert fields[0] == "0.01"
        assert fields[-2] == "true"
        assert fields[-1] == ""
        # round-trip at full precision
        assert float(fields[4]) == rows[0].log_negativity

    def test_error_rows_have_empty_numeric_fields(self):
        rows = [run_point(base_params(kappa=9.3))]
        line = rows_to_csv(rows).split("\n")[1]
        fields = line.split(",")
        assert fields[2:7] == ["", "", "", "", ""]
        assert fields[7] == "false"
        assert fields[8] == "unstable"

    def test_column_subset(self):
        rows = [run_point(base_params())]
        text = rows_to_csv(rows, columns=("zeta1", "log_negativity"))
        header, line, _ = text.split("\n")
        assert header == "zeta1,log_negativity"
        assert len(line.split(",")) == 2


class TestCli:
    def test_point_stdout(self, capsys):
        code = main(["point", "--zeta1", "0.01", "--zeta2", "0.01"])
        out = capsys.readouterr().out
        assert code == 0
        assert out.splitlines()[0] == ",".join(COLUMNS)
        assert len(out.splitlines()) == 2

    def test_point_kappa_flags_are_exclusive(self, capsys):
        code = main(["point", "--kappa", "1.8", "--kappa-ratio", "0.1"])
        assert code == 1

    def test_point_unstable_exit_code(self):
        assert main(["point", "--kappa", "9.3", "--omega-b", "0.6"]) == 3

    def test_sweep_to_file(self, tmp_path):
        out = tmp_path / "sweep.csv"
        code = main([
            "sweep", "--zeta1-range", "1e-3:1e-2:4:log",
            "--zeta2-range", "1e-3:1e-2:3:log", "--out", str(out),
        ])
        assert code == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 1 + 12

    def test_sweep_all_failed_exit_code(self, tmp_path):
        out = tmp_path / "sweep.csv"
        code = main([
            "sweep", "--kappa", "9.5", "--zeta1-range", "1e-3:1e-2:3:log",
            "--zeta2", "0.01", "--out", str(out),
        ])
        assert code == 3

    def test_sweep_threads_env_override(self, tmp_path, monkeypatch):
        out1 = tmp_path / "a.csv"
        out2 = tmp_path / "b.csv"
        argv = ["sweep", "--zeta1-range", "1e-3:1e-2:5:log", "--zeta2", "0.01"]
        assert main(argv + ["--out", str(out1)]) == 0
        monkeypatch.setenv("DRIVEDAMP_THREADS", "4")
        assert main(argv + ["--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()
        monkeypatch.setenv("DRIVEDAMP_THREADS", "zero")
        assert main(argv + ["--out", str(out1)]) == 1

    def test_config_file_with_flag_override(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text(
            "# asymmetric slice\n"
            "omega_b = 0.6\n"
            "kappa = 1.84\n"
            "zeta1 = 0.003   # slice position\n"
            "zeta2 = 0.01\n"
        )
        assert main(["point", "--config", str(cfg)]) == 0
        base = capsys.readouterr().out
        assert float(base.splitlines()[1].split(",")[0]) == 0.003
        # flags win over the file
        assert main(["point", "--config", str(cfg), "--zeta1", "0.005"]) == 0
        overridden = capsys.readouterr().out
        assert float(overridden.splitlines()[1].split(",")[0]) == 0.005

    def test_config_rejects_garbage(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("omega_b 0.6\n")
        assert main(["point", "--config", str(cfg)]) == 1

    def test_columns_flag(self, capsys):
        assert main(["point", "--columns", "zeta1,log_negativity"]) == 0
        out = capsys.readouterr().out
        assert out.splitlines()[0] == "zeta1,log_negativity"
        assert main(["point", "--columns", "bogus"]) == 1

    def test_gnuplot_script_emitted(self, tmp_path):
        out = tmp_path / "slice.csv"
        script = tmp_path / "slice.gp"
        code = main([
            "sweep", "--zeta1-range", "1e-3:1e-2:5:log", "--zeta2", "0.01",
            "--out", str(out), "--gnuplot-script", str(script),
        ])
        assert code == 0
        text = script.read_text()
        assert "set datafile separator" in text
        assert str(out) in text

    def test_plot_rendered(self, tmp_path):
        out = tmp_path / "grid.csv"
        png = tmp_path / "grid.png"
        code = main([
            "sweep", "--zeta1-range", "1e-3:1e-2:4:log",
            "--zeta2-range", "1e-3:1e-2:4:log",
            "--out", str(out), "--plot", str(png),
        ])
        assert code == 0
        assert png.exists() and png.stat().st_size > 0

    def test_verify_fast(self, capsys):
        assert main(["verify", "--level", "fast"]) == 0
        out = capsys.readouterr().out
        assert "PASS shift_quadrature" in out
        assert "FAIL" not in out
