import csv
import io
import subprocess
import sys

import numpy as np
import pytest

from multiphoton import (
    BoundViolated,
    GridNotIncreasing,
    NetworkConfig,
    SweepSpec,
    ValidationError,
    preset,
    run_sweep,
    swap_demo,
    verify_bounds,
)
from multiphoton.cli import main
from multiphoton.sweep import PRESETS, columns, sweep_csv

BASE = NetworkConfig(N=7, m=3, kappa=1.0, g0=0.01, j0=0.0)


def parse(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], np.array(rows[1:], dtype=float)


def test_presets_are_explicit():
    assert set(PRESETS) == {
        "fig2a", "fig2b", "fig3a", "fig3b", "fig4a", "fig4b",
        "figA1a", "figA1b", "figA2a", "figA2b", "figA3a", "figA3b",
    }
    for name in PRESETS:
        spec = preset(name)
        assert (spec.base.N, spec.base.m, spec.base.kappa) == (7, 3, 1.0)
        assert len(spec.grid) == 101 and spec.time is None
    assert preset("fig2b").base.g0 == 0.005 and preset("fig2a").n_list == (2, 3, 5)
    assert preset("figA1a").d_list == (2, 3, 5)
    assert preset("fig4b").base.j0 == 0.1 and preset("fig4b").n_list == (5,)
    assert preset("figA3a").d_list == (3,)
    assert preset("fig3a").grid[0] == 0.001 and preset("fig3a").grid[-1] == 0.02
    with pytest.raises(ValidationError):
        preset("fig9")


def test_fig2a_shape():
    header, data = parse(sweep_csv(preset("fig2a")))
    assert header[:3] == ["vary", "F_t[n=2]", "F_r[n=2]"]
    for n in (2, 3, 5):
        F_t = data[:, header.index(f"F_t[n={n}]")]
        F_r = data[:, header.index(f"F_r[n={n}]")]
        assert F_t[0] > 0.99 and F_r[0] < 1e-2
        assert F_t[-1] < 1e-2 and F_r[-1] > 0.8
    assert np.all((data[:, 1:] >= 0) & (data[:, 1:] <= 1))


def test_fig3a_rows_within_bound():
    header, data = parse(sweep_csv(preset("fig3a")))
    assert header == ["vary", "sigma_t[n=2]", "est_t[n=2]", "bound_t[n=2]"]
    assert np.all(data[:, 1] <= data[:, 3])
    assert np.all(data[:, 2] <= data[:, 3])


def test_average_columns_are_labelled():
    spec = preset("figA2a", mc_samples=10)
    assert columns(spec) == [
        "vary", "sigma_t[d=3]", "avg_est_t[d=3]", "avg_bound_t[d=3]",
        "mc_F_t[d=3]", "mc_F_r[d=3]", "mc_se_F_t[d=3]", "mc_se_F_r[d=3]",
    ]


def test_grid_validation():
    with pytest.raises(GridNotIncreasing):
        SweepSpec(base=BASE, vary="j0", grid=(0.0, 0.0), n_list=(2,))
    with pytest.raises(GridNotIncreasing):
        SweepSpec(base=BASE, vary="j0", grid=(0.0,), n_list=(2,))
    with pytest.raises(ValidationError):
        SweepSpec(base=BASE, vary="j0", grid=(0.0, 0.1))
    with pytest.raises(ValidationError):
        SweepSpec(base=BASE, vary="kappa", grid=(0.0, 0.1), n_list=(2,))
    with pytest.raises(ValidationError):
        SweepSpec(base=BASE, vary="g0", grid=(0.0, 0.1), n_list=(2,), outputs=("F_x",))


def test_tau_is_recomputed_per_g0():
    spec = SweepSpec(base=BASE, vary="g0", grid=(0.005, 0.01), n_list=(1,), outputs=("F_t",))
    rows = run_sweep(spec)
    # each point sits at its own swap time, so both transmit almost perfectly
    assert all(r.values["F_t[n=1]"] > 0.999 for r in rows)


def test_sweep_errors_are_hard_failures():
    spec = SweepSpec(base=BASE, vary="g0", grid=(0.0, 0.01), n_list=(1,))
    with pytest.raises(ValidationError):
        run_sweep(spec)


def test_parallel_sweep_keeps_grid_order():
    spec = preset("figA1b", seed=3, mc_samples=200)
    assert sweep_csv(spec, workers=4) == sweep_csv(spec, workers=1)


@pytest.mark.parametrize("name", ["fig3a", "fig3b", "figA2a", "figA2b"])
def test_verify_transmit_presets_pass(name):
    report = verify_bounds(preset(name))
    assert report.checks == 101


def test_verify_fig4_grids():
    verify_bounds(preset("fig4b"))
    verify_bounds(preset("fig4a"))


def test_verify_reports_first_violation():
    fields = {f: getattr(preset("fig3a"), f) for f in SweepSpec.__dataclass_fields__}
    fields["bound_scale"] = 0.01
    with pytest.raises(BoundViolated) as info:
        verify_bounds(SweepSpec(**fields))
    assert info.value.row.vary_value == 0.001
    assert info.value.column == "bound_t[n=2]"


def test_verify_needs_bound_columns():
    with pytest.raises(ValidationError):
        verify_bounds(preset("fig2a"))


def test_swap_demo():
    out = io.StringIO()
    demo = swap_demo(BASE.replace(j0=0.1), 3, out=out)
    assert demo.transmit.F_t >= 0.998
    assert demo.reflect.F_r >= 0.88
    assert demo.tau == pytest.approx(444.288, abs=1e-3)
    assert abs(demo.amplitudes.aN1 - 1) < 1e-12
    assert "tau = 444.288294" in out.getvalue()
    zero = swap_demo(BASE, 0)
    assert zero.transmit.F_t == zero.transmit.F_r == 1.0


def test_reproduce_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["reproduce", "fig2a", "--seed", "7", "--out", str(a)]) == 0
    assert main(["reproduce", "fig2a", "--seed", "7", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert b"\r" not in a.read_bytes()


def test_config_file_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "run.yaml"
    cfg.write_text(
        "N: 7\nm: 3\nkappa: 1.0\ng0: 0.01\nj0: 0.0\ntime: tau\nn_list: [2]\nd_list: []\n"
        "vary: j0\ngrid_start: 0.0\ngrid_stop: 0.1\ngrid_points: 5\nmc_samples: 0\nseed: 1\n"
    )
    assert main(["sweep", "--config", str(cfg)]) == 0
    header, data = parse(capsys.readouterr().out)
    assert header[1] == "F_t[n=2]" and data.shape == (5, 5)
    assert main(["sweep", "--config", str(cfg), "--n", "3,5", "--grid-points", "3"]) == 0
    header, data = parse(capsys.readouterr().out)
    assert "F_t[n=5]" in header and "F_t[n=2]" not in header and data.shape[0] == 3


def test_config_rejects_unknown_keys(tmp_path):
    cfg = tmp_path / "bad.yaml"
    cfg.write_text("N: 7\ncolour: red\n")
    assert main(["sweep", "--config", str(cfg)]) == 2


def test_exit_codes(tmp_path):
    assert main(["sweep", "--vary", "j0", "--grid-start", "0", "--grid-stop", "0",
                 "--grid-points", "2", "--n", "2"]) == 2
    assert main(["swap-demo", "--N", "6", "--g0", "0.01"]) == 2
    assert main(["verify", "--preset", "fig3a"]) == 0
    assert main(["verify", "--preset", "fig3a", "--bound-scale", "0.01"]) == 3


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "multiphoton", "swap-demo", "--N", "7", "--m", "3", "--g0", "0.01", "--n", "2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert "tau = 444.288294" in proc.stdout


def test_numerical_pathology_exit_code(monkeypatch):
    def broken(a):
        raise np.linalg.LinAlgError("did not converge")

    monkeypatch.setattr(np.linalg, "eigh", broken)
    assert main(["swap-demo", "--N", "7", "--g0", "0.01"]) == 4
