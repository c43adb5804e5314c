"""Experiment configuration: presets, flat ``key = value`` files and CLI overrides.

Precedence is preset < config file < command-line flags; an explicit value that
replaces a preset value is logged.  Units: ``kappa`` in mm^-1, ``mu`` and the zeta
keys dimensionless, ``z_*_mm`` keys in mm (converted with ``kappa``).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

from majoranon.errors import ConfigError
from majoranon.evolvers import MODELS

log = logging.getLogger(__name__)

OUTPUTS = ("pseudo_energy", "intensities", "map", "centroid_width")
COLORMAPS = ("gray", "viridis")

# Fabrication and geometry of the two chips, carried as metadata only.
PRESETS = {
    "lowmass": {
        "n_cells": 13,
        "kappa": 0.064,
        "mu": 0.65,
        "sigma": 1.1,
        "n0": 7.0,
        "p0": 0.0,
        "measure_zetas": (0.55, 4.4),
        "metadata": {
            "waveguides": 26,
            "pulse_duration_fs": 150,
            "pulse_energy_nJ": 300,
            "writing_velocity_mm_per_min": 100,
            "velocity_modulation_mm_per_min": 6,
            "waveguide_separation_um": 18.5,
            "fanout_length_mm": 40,
            "fanout_separation_um": 40,
            "plane_separation_um": 45,
            "coupler_length_mm": 12,
            "segmentation_step_mm": 1.76,
            "beam_waist_um": 40,
            "wavelength_nm": 633,
            "device_length_mm": 150,
        },
    },
    "highmass": {
        "n_cells": 15,
        "kappa": 0.072,
        "mu": 1.2,
        "sigma": 1.3,
        "n0": 8.0,
        "p0": 0.0,
        "measure_zetas": (0.9, 3.5),
        "metadata": {
            "waveguides": 30,
            "pulse_duration_fs": 120,
            "pulse_energy_nJ": 260,
            "writing_velocity_mm_per_min": 90,
            "velocity_modulation_mm_per_min": 14,
            "waveguide_separation_um": 19.5,
            "fanout_length_mm": 46,
            "fanout_separation_um": 55,
            "plane_separation_um": 55,
            "coupler_length_mm": 22,
            "segmentation_step_mm": 1.85,
            "beam_waist_um": 50,
            "wavelength_nm": 633,
            "device_length_mm": 150,
        },
    },
}

PHYSICS_KEYS = ("n_cells", "kappa", "mu", "sigma", "n0", "p0")


def _as_int(raw: str) -> int:
    value = float(raw)
    if not value.is_integer():
        raise ValueError("not an integer")
    return int(value)


def _as_float(raw: str) -> float:
    value = float(raw)
    if not math.isfinite(value):
        raise ValueError("not finite")
    return value


def _as_float_list(raw: str) -> tuple:
    return tuple(_as_float(x) for x in raw.split(",") if x.strip())


def _as_name_set(raw: str) -> frozenset:
    return frozenset(x.strip() for x in raw.split(",") if x.strip())


def _as_bool(raw: str) -> bool:
    low = raw.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError("not a boolean")


KEYS = {
    "preset": str,
    "model": str,
    "evolver": str,
    "n_cells": _as_int,
    "kappa": _as_float,
    "mu": _as_float,
    "sigma": _as_float,
    "n0": _as_float,
    "p0": _as_float,
    "zeta_max": _as_float,
    "zeta_step": _as_float,
    "zeta_samples": _as_float_list,
    "z_max_mm": _as_float,
    "z_step_mm": _as_float,
    "measure_zetas": _as_float_list,
    "outputs": _as_name_set,
    "colormap": str,
    "reference_step": _as_float,
    "figures": _as_bool,
}


@dataclass(frozen=True)
class ExperimentConfig:
    preset: str
    model: str
    evolver: str
    n_cells: int
    kappa: float
    mu: float
    sigma: float
    n0: float
    p0: float
    zeta_samples: tuple
    measure_zetas: tuple = ()
    outputs: frozenset = frozenset(OUTPUTS)
    colormap: str = "viridis"
    reference_step: float = 1e-3
    figures: bool = True
    metadata: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def n_sites(self) -> int:
        return 2 * self.n_cells

    @property
    def beta(self) -> float:
        return self.mu * self.kappa


@dataclass
class _Value:
    raw: str
    origin: str


def read_config_file(path) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment.  Returns ``{key: _Value}``."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise OSError(f"cannot read config file {path}: {exc.strerror or exc}") from exc
    entries = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, raw = (part.strip() for part in line.split("=", 1))
        if key not in KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        if key in entries:
            raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
        entries[key] = _Value(raw, f"{path}:{lineno}")
    return entries


def _coerce(key: str, value: _Value):
    try:
        return KEYS[key](value.raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{value.origin}: bad value {value.raw!r} for key {key!r} ({exc})") from None


def _zeta_grid(zmax: float, step: float) -> tuple:
    if not step > 0:
        raise ConfigError(f"zeta step must be positive, got {step!r}")
    if zmax < 0:
        raise ConfigError(f"zeta maximum must be >= 0, got {zmax!r}")
    n = int(math.floor(zmax / step + 1e-9))
    return tuple(round(i * step, 12) for i in range(n + 1))


def parse_config(path=None, overrides: Optional[dict] = None) -> ExperimentConfig:
    """Build a validated ``ExperimentConfig``.

    ``overrides`` maps keys to raw strings (as typed on the command line) and wins
    over the file, which wins over the preset.
    """
    entries = read_config_file(path) if path is not None else {}
    for key, raw in (overrides or {}).items():
        if key not in KEYS:
            raise ConfigError(f"command line: unknown key {key!r}")
        entries[key] = _Value(str(raw), "command line")
    values = {key: _coerce(key, v) for key, v in entries.items()}

    preset = values.get("preset", "custom")
    if preset not in (*PRESETS, "custom"):
        raise ConfigError(f"{entries['preset'].origin}: unknown preset {preset!r}")
    merged: dict = {}
    if preset != "custom":
        base = PRESETS[preset]
        merged.update({k: v for k, v in base.items() if k != "metadata"})
        merged["metadata"] = dict(base["metadata"])
        for key in values:
            if key in base and key != "preset" and values[key] != base[key]:
                log.info("override %s=%r replaces preset %s value %r", key, values[key], preset, base[key])
    else:
        missing = [k for k in PHYSICS_KEYS if k not in values]
        if missing:
            raise ConfigError(f"custom preset requires explicit {', '.join(missing)}")
    merged.update(values)
    merged["preset"] = preset
    return _validate(merged, entries)


def _validate(m: dict, entries: dict) -> ExperimentConfig:
    def fail(key, msg):
        origin = entries[key].origin if key in entries else "preset"
        raise ConfigError(f"{origin}: {key}: {msg}")

    model = m.get("model", "spinor")
    if model not in MODELS:
        fail("model", f"must be one of {sorted(MODELS)}")
    evolver = m.get("evolver", MODELS[model][0] if model != "spinor" else "majorana_composed")
    if evolver not in MODELS[model]:
        fail("evolver", f"{evolver!r} not available for model {model!r} (choose from {', '.join(MODELS[model])})")
    if m["n_cells"] < 2:
        fail("n_cells", "must be >= 2")
    for key in ("kappa", "sigma"):
        if not m[key] > 0:
            fail(key, "must be positive")
    if m["mu"] < 0:
        fail("mu", "must be >= 0")
    outputs = m.get("outputs", frozenset(OUTPUTS))
    unknown = outputs - set(OUTPUTS)
    if unknown:
        fail("outputs", f"unknown output(s) {', '.join(sorted(unknown))}")
    colormap = m.get("colormap", "viridis")
    if colormap not in COLORMAPS:
        fail("colormap", f"must be one of {COLORMAPS}")
    if m.get("reference_step", 1e-3) <= 0:
        fail("reference_step", "must be positive")

    kappa = m["kappa"]
    if "zeta_samples" in m:
        zetas = tuple(m["zeta_samples"])
    elif "z_max_mm" in m or "z_step_mm" in m:
        zetas = _zeta_grid(m.get("z_max_mm", 5.0 / kappa) * kappa, m.get("z_step_mm", 0.05 / kappa) * kappa)
    else:
        zetas = _zeta_grid(m.get("zeta_max", 5.0), m.get("zeta_step", 0.05))
    if not zetas:
        fail("zeta_samples", "no samples")
    if any(z < 0 for z in zetas) or any(b <= a for a, b in zip(zetas, zetas[1:])):
        fail("zeta_samples", "samples must be >= 0 and strictly increasing")
    measure = tuple(m.get("measure_zetas", ()))
    if any(z < 0 for z in measure):
        fail("measure_zetas", "must be >= 0")

    return ExperimentConfig(
        preset=m["preset"],
        model=model,
        evolver=evolver,
        n_cells=m["n_cells"],
        kappa=kappa,
        mu=m["mu"],
        sigma=m["sigma"],
        n0=m["n0"],
        p0=m["p0"],
        zeta_samples=zetas,
        measure_zetas=measure,
        outputs=frozenset(outputs),
        colormap=colormap,
        reference_step=m.get("reference_step", 1e-3),
        figures=m.get("figures", True),
        metadata=m.get("metadata", {}),
    )


def preset_config(name: str, **overrides) -> ExperimentConfig:
    """Expanded preset, optionally with typed overrides."""
    cfg = parse_config(overrides={"preset": name})
    return replace(cfg, **overrides) if overrides else cfg
