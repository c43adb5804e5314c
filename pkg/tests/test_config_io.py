import logging

import numpy as np
import pytest

from majoranon import io
from majoranon.config import PRESETS, parse_config, preset_config, read_config_file
from majoranon.errors import ConfigError, DegenerateInputError, InvalidParameterError
from majoranon.observables import ObservableSeries


def test_lowmass_preset():
    cfg = parse_config(overrides={"preset": "lowmass"})
    assert cfg.mu == 0.65 and cfg.kappa == 0.064
    assert cfg.n_cells == 13 and cfg.n_sites == 26
    assert cfg.sigma == 1.1 and cfg.measure_zetas == (0.55, 4.4)
    assert cfg.model == "spinor" and cfg.evolver == "majorana_composed"
    assert cfg.zeta_samples[0] == 0 and cfg.zeta_samples[-1] == 5.0 and len(cfg.zeta_samples) == 101


def test_highmass_preset():
    cfg = preset_config("highmass")
    assert (cfg.n_cells, cfg.n_sites, cfg.kappa, cfg.mu, cfg.sigma) == (15, 30, 0.072, 1.2, 1.3)
    assert cfg.measure_zetas == (0.9, 3.5)
    assert cfg.beta == pytest.approx(1.2 * 0.072)


def test_preset_expansion_is_pure():
    assert preset_config("lowmass") == preset_config("lowmass")
    assert PRESETS["lowmass"]["mu"] == 0.65


def test_override_wins_and_is_logged(caplog):
    with caplog.at_level(logging.INFO, logger="majoranon.config"):
        cfg = parse_config(overrides={"preset": "lowmass", "mu": "0.7"})
    assert cfg.mu == 0.7 and cfg.kappa == 0.064 and cfg.sigma == 1.1
    assert any("mu" in r.message for r in caplog.records)


def test_file_precedence(tmp_path):
    f = tmp_path / "c.cfg"
    f.write_text("preset = highmass\nmu = 2.0  # heavier\nsigma = 1.0\n")
    cfg = parse_config(f, {"sigma": "1.5"})
    assert (cfg.mu, cfg.sigma, cfg.kappa) == (2.0, 1.5, 0.072)


def test_negative_sigma_rejected(tmp_path):
    f = tmp_path / "c.cfg"
    f.write_text("preset = lowmass\nsigma = -1\n")
    with pytest.raises(ConfigError, match="sigma"):
        parse_config(f)


def test_unknown_key_reports_line(tmp_path):
    f = tmp_path / "c.cfg"
    f.write_text("preset = lowmass\n\ncolour = red\n")
    with pytest.raises(ConfigError, match=r"c\.cfg:3.*colour"):
        read_config_file(f)


def test_type_mismatch_and_duplicates(tmp_path):
    f = tmp_path / "c.cfg"
    f.write_text("preset = lowmass\nn_cells = 12.5\n")
    with pytest.raises(ConfigError, match="n_cells"):
        parse_config(f)
    f.write_text("mu = 1\nmu = 2\n")
    with pytest.raises(ConfigError, match="duplicate"):
        parse_config(f)
    f.write_text("just words\n")
    with pytest.raises(ConfigError, match=":1"):
        parse_config(f)


def test_missing_file_is_io_error(tmp_path):
    with pytest.raises(OSError):
        parse_config(tmp_path / "absent.cfg")


def test_custom_requires_all_fields():
    with pytest.raises(ConfigError, match="kappa"):
        parse_config(overrides={"preset": "custom", "n_cells": "10", "mu": "1"})
    cfg = parse_config(
        overrides={"n_cells": "10", "kappa": "0.1", "mu": "1", "sigma": "2", "n0": "5", "p0": "0"}
    )
    assert cfg.preset == "custom"


def test_zeta_grid_units():
    cfg = parse_config(overrides={"preset": "lowmass", "z_max_mm": "10", "z_step_mm": "2.5"})
    assert cfg.zeta_samples == pytest.approx((0.0, 0.16, 0.32, 0.48, 0.64))
    cfg = parse_config(overrides={"preset": "lowmass", "zeta_samples": "0, 0.55, 4.4"})
    assert cfg.zeta_samples == (0.0, 0.55, 4.4)
    with pytest.raises(ConfigError):
        parse_config(overrides={"preset": "lowmass", "zeta_samples": "1, 0.5"})
    with pytest.raises(ConfigError):
        parse_config(overrides={"preset": "lowmass", "zeta_step": "0"})


def test_model_evolver_validation():
    assert preset_config("lowmass", model="device").model == "device"
    assert parse_config(overrides={"preset": "lowmass", "model": "lattice"}).evolver == "dirac_plus"
    with pytest.raises(ConfigError):
        parse_config(overrides={"preset": "lowmass", "model": "lattice", "evolver": "majorana_reference"})
    with pytest.raises(ConfigError):
        parse_config(overrides={"preset": "lowmass", "outputs": "pseudo_energy,sound"})


def series(n):
    return ObservableSeries(
        zeta=np.linspace(0, 1, n), kappa=0.064, values={"pseudo_energy": np.cos(np.linspace(0, 1, n)) * 0.999}
    )


def test_series_csv_lines(tmp_path):
    path = io.write_series_csv(series(3), tmp_path / "s.csv")
    lines = path.read_bytes().split(b"\n")
    assert lines[0] == b"zeta,Z_mm,pseudo_energy" and len(lines) == 5 and lines[-1] == b""
    assert b"\r" not in path.read_bytes()
    empty = io.write_series_csv(ObservableSeries(zeta=[], values={"pseudo_energy": []}), tmp_path / "e.csv")
    assert empty.read_text() == "zeta,Z_mm,pseudo_energy\n"


def test_series_csv_round_trip(tmp_path):
    s = series(17)
    back = io.read_series_csv(io.write_series_csv(s, tmp_path / "s.csv"))
    assert np.array_equal(back.zeta, s.zeta)
    assert np.array_equal(back.values["pseudo_energy"], s.values["pseudo_energy"])


def test_map_csv(tmp_path):
    m = np.random.default_rng(0).random((4, 6))
    path = io.write_map_csv([0, 1, 2, 3], m, tmp_path / "m.csv")
    rows = path.read_text().splitlines()
    assert len(rows) == 5 and all(len(r.split(",")) == 7 for r in rows)
    assert rows[0].startswith("zeta,site_1,")
    z, back = io.read_map_csv(path)
    assert np.array_equal(back, m) and list(z) == [0, 1, 2, 3]
    with pytest.raises(InvalidParameterError):
        io.write_map_csv([0, 1], m, tmp_path / "bad.csv")


@pytest.mark.parametrize("cmap, top", [("gray", (255, 255, 255)), ("viridis", (253, 231, 37))])
def test_heatmap_single_pixel(tmp_path, cmap, top):
    img = io.read_ppm(io.render_heatmap([[0.3]], tmp_path / "p.ppm", cmap))
    assert img.shape == (1, 1, 3) and tuple(img[0, 0]) == top


def test_heatmap_layout(tmp_path):
    m = np.array([[1.0, 0.0, 0.0], [0.0, 0.5, 0.0]])
    path = io.render_heatmap(m, tmp_path / "p.ppm", "gray")
    assert path.read_bytes().startswith(b"P6\n3 2\n255\n")
    img = io.read_ppm(path)
    assert tuple(img[0, 0]) == (255, 255, 255) and tuple(img[1, 1]) == (128, 128, 128)


def test_heatmap_errors(tmp_path):
    with pytest.raises(DegenerateInputError):
        io.render_heatmap(np.zeros((2, 2)), tmp_path / "z.ppm")
    with pytest.raises(InvalidParameterError):
        io.render_heatmap(np.zeros((0, 0)), tmp_path / "e.ppm")
    with pytest.raises(InvalidParameterError):
        io.render_heatmap([[1.0]], tmp_path / "c.ppm", "jet")
