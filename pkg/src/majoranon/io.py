"""CSV and portable-pixmap writers for series and intensity maps.

Numbers are written with 17 significant digits, which round-trips IEEE doubles
exactly.  Line endings are LF.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from majoranon.errors import DegenerateInputError, InvalidParameterError
from majoranon.observables import ObservableSeries


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_series_csv(series: ObservableSeries, path, columns=None) -> Path:
    """Header ``zeta,Z_mm,<observables...>``, one row per sample.

    ``Z_mm`` is left empty when the series carries no ``kappa``.
    """
    path = Path(path)
    columns = list(series.values) if columns is None else list(columns)
    z_mm = series.z_mm
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["zeta", "Z_mm", *columns])
        for i, zeta in enumerate(series.zeta):
            writer.writerow(
                [fmt(zeta), "" if z_mm is None else fmt(z_mm[i]), *(fmt(series.values[c][i]) for c in columns)]
            )
    return path


def read_series_csv(path, kappa=None) -> ObservableSeries:
    with Path(path).open(newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    if header[:2] != ["zeta", "Z_mm"]:
        raise InvalidParameterError(f"{path}: not a series CSV")
    names = header[2:]
    data = np.array([[float(x) for x in row[2:]] for row in body]).reshape(len(body), len(names))
    return ObservableSeries(
        zeta=[float(row[0]) for row in body],
        values={name: data[:, j] for j, name in enumerate(names)},
        kappa=kappa,
    )


def write_map_csv(zeta, matrix, path, label: str = "site") -> Path:
    """Header ``zeta,site_1,...,site_C``; one row per zeta sample."""
    path = Path(path)
    matrix = np.asarray(matrix, dtype=float)
    zeta = np.asarray(zeta, dtype=float).reshape(-1)
    if matrix.ndim != 2 or matrix.shape[0] != zeta.size:
        raise InvalidParameterError("map needs one row per zeta sample")
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["zeta", *(f"{label}_{j}" for j in range(1, matrix.shape[1] + 1))])
        for z, row in zip(zeta, matrix):
            writer.writerow([fmt(z), *(fmt(v) for v in row)])
    return path


def read_map_csv(path) -> tuple[np.ndarray, np.ndarray]:
    with Path(path).open(newline="") as fh:
        rows = list(csv.reader(fh))
    body = np.array([[float(x) for x in row] for row in rows[1:]]).reshape(len(rows) - 1, len(rows[0]))
    return body[:, 0], body[:, 1:]


# anchor colours sampled from the perceptually uniform "viridis" ramp
_VIRIDIS = np.array(
    [
        [68, 1, 84],
        [59, 82, 139],
        [33, 145, 140],
        [94, 201, 98],
        [253, 231, 37],
    ],
    dtype=float,
)


def _colorize(levels: np.ndarray, colormap: str) -> np.ndarray:
    if colormap == "gray":
        g = np.rint(levels * 255.0)
        return np.stack([g, g, g], axis=-1).astype(np.uint8)
    if colormap == "viridis":
        pos = levels * (len(_VIRIDIS) - 1)
        lo = np.clip(np.floor(pos).astype(int), 0, len(_VIRIDIS) - 2)
        frac = (pos - lo)[..., None]
        rgb = _VIRIDIS[lo] * (1.0 - frac) + _VIRIDIS[lo + 1] * frac
        return np.rint(rgb).astype(np.uint8)
    raise InvalidParameterError(f"unknown colormap {colormap!r}")


def render_heatmap(matrix, path, colormap: str = "viridis") -> Path:
    """Binary PPM (P6): rows are zeta samples (top = first), columns are sites.

    Intensities map linearly onto the colour ramp, normalized to the matrix maximum.
    """
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.size == 0:
        raise InvalidParameterError("heatmap needs a nonempty 2-D matrix")
    peak = matrix.max()
    if not peak > 0:
        raise DegenerateInputError("heatmap matrix has no positive entry to normalize by")
    levels = np.clip(matrix / peak, 0.0, 1.0)
    rgb = _colorize(levels, colormap)
    rows, cols = matrix.shape
    path = Path(path)
    with path.open("wb") as fh:
        fh.write(f"P6\n{cols} {rows}\n255\n".encode("ascii"))
        fh.write(rgb.tobytes())
    return path


def read_ppm(path) -> np.ndarray:
    """Decode a P6 file written by ``render_heatmap`` into a ``(rows, cols, 3)`` array."""
    data = Path(path).read_bytes()
    parts = data.split(b"\n", 3)
    if parts[0] != b"P6":
        raise InvalidParameterError(f"{path}: not a binary PPM")
    cols, rows = (int(x) for x in parts[1].split())
    return np.frombuffer(parts[3], dtype=np.uint8).reshape(rows, cols, 3)
