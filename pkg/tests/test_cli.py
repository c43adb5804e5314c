import numpy as np
import pytest

from majoranon import io
from majoranon.cli import EXIT_CONFIG, EXIT_CONTRACT, EXIT_IO, EXIT_OK, main


def run(tmp_path, *args, name="out"):
    out = tmp_path / name
    return main(["run", *args, "--out", str(out)]), out


def test_run_pseudo_energy_only(tmp_path):
    code, out = run(tmp_path, "--preset", "lowmass", "--outputs", "pseudo_energy", "--no-figures")
    assert code == EXIT_OK
    assert sorted(p.name for p in out.iterdir()) == ["pseudo_energy.csv"]
    s = io.read_series_csv(out / "pseudo_energy.csv")
    pe = s.values["pseudo_energy"]
    assert pe[0] == pytest.approx(1.0, abs=1e-12)
    assert pe.min() < 0.5 and np.all(np.abs(pe) <= 1 + 1e-12)


def test_run_full_outputs(tmp_path):
    code, out = run(tmp_path, "--preset", "lowmass", "--zeta-step", "0.1")
    assert code == EXIT_OK
    names = {p.name for p in out.iterdir()}
    assert {"map_psi1.ppm", "map_psi2.ppm", "map_psi1.csv", "intensities.csv", "centroid_width.csv"} <= names
    assert {"pseudo_energy.png", "maps.png", "profiles.png"} <= names
    z, m = io.read_map_csv(out / "map_psi1.csv")
    assert m.shape == (51, 13)
    img = io.read_ppm(out / "map_psi1.ppm")
    assert img.shape == (51, 13, 3)
    # bright ridge starts on the packet center
    assert np.argmax(img[0].sum(axis=1)) == 6


def test_run_is_deterministic(tmp_path, monkeypatch):
    args = ("--preset", "highmass", "--model", "device", "--zeta-step", "0.5", "--no-figures")
    monkeypatch.setenv("SIM_THREADS", "1")
    _, a = run(tmp_path, *args, name="a")
    monkeypatch.setenv("SIM_THREADS", "3")
    _, b = run(tmp_path, *args, name="b")
    for f in sorted(a.glob("*.csv")):
        assert f.read_bytes() == (b / f.name).read_bytes()


def test_lattice_and_reference_models(tmp_path):
    code, _ = run(tmp_path, "--preset", "lowmass", "--model", "lattice", "--zeta-max", "1", "--no-figures", name="l")
    assert code == EXIT_OK
    code, _ = run(
        tmp_path, "--preset", "lowmass", "--evolver", "majorana_reference", "--zeta-max", "0.5",
        "--outputs", "pseudo_energy", "--no-figures", name="r",
    )
    assert code == EXIT_OK


def test_compare(tmp_path, capsys):
    code = main(["compare", "--preset", "highmass", "--out", str(tmp_path), "--no-figures"])
    assert code == EXIT_OK
    s = io.read_series_csv(tmp_path / "compare_pseudo_energy.csv")
    assert set(s.values) == {"majoranon", "dirac"} and len(s) == 501
    assert "majoranon_first_minimum" in capsys.readouterr().out


@pytest.mark.parametrize(
    "args",
    [
        ["--preset", "lowmass", "--sigma", "-1"],
        ["--preset", "nope"],
        ["--preset", "lowmass", "--model", "device", "--evolver", "dirac_plus"],
        ["--preset", "lowmass", "--mu", "abc"],
    ],
)
def test_config_errors_exit_2(tmp_path, args):
    assert run(tmp_path, *args)[0] == EXIT_CONFIG


def test_unknown_flag_exit_2(tmp_path):
    assert main(["run", "--frobnicate", "--out", str(tmp_path)]) == EXIT_CONFIG


def test_bad_threads_exit_2(tmp_path, monkeypatch):
    monkeypatch.setenv("SIM_THREADS", "many")
    assert run(tmp_path, "--preset", "lowmass", "--model", "device", "--zeta-max", "0.5")[0] == EXIT_CONFIG


def test_io_errors_exit_4(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert main(["run", "--preset", "lowmass", "--out", str(blocker / "sub")]) == EXIT_IO
    assert main(["run", "--config", str(tmp_path / "none.cfg"), "--out", str(tmp_path / "o")]) == EXIT_IO


def test_contract_violation_exit_3(tmp_path, monkeypatch):
    from majoranon import runner

    monkeypatch.setattr(runner, "NORM_GUARD", -1.0)
    assert run(tmp_path, "--preset", "lowmass", "--zeta-max", "0.1")[0] == EXIT_CONTRACT


def test_validate_subset(capsys):
    assert main(["validate", "--only", "2", "4"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "[PASS]  2" in out and "2/2 criteria passed" in out
    assert main(["validate", "--only", "42"]) == EXIT_CONFIG
