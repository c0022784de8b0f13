"""Deterministic artifact writers: JSON reports and CSV tables.

Fixed seed and config must reproduce byte-identical files, so floats are
emitted through Python's shortest round-trip repr and JSON keys keep their
construction order.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

RNG_ALGORITHM = "numpy-pcg64"


def sanitize(obj):
    """Convert numpy scalars/arrays and tuples into plain JSON types."""
    if isinstance(obj, dict):
        return {str(k): sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [sanitize(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [sanitize(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def rng_meta(seed: int) -> dict:
    return {"rng_algorithm": RNG_ALGORITHM, "seed": int(seed)}


def write_json(path, obj) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(sanitize(obj), indent=2, allow_nan=True)
    path.write_text(text + "\n")


def write_csv(path, header, rows) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(v) for v in row])


def _cell(v):
    if isinstance(v, (np.floating, float)):
        return repr(float(v))
    if isinstance(v, (np.integer, int)):
        return int(v)
    return v


def trace_header(n: int) -> list:
    cols = ["t"]
    for k in range(1, n + 1):
        cols += [f"x_{k}", f"y_{k}"]
    return cols + ["H", "grad_norm"]


def trajectory_header(n: int) -> list:
    cols = ["t"]
    for k in range(1, n + 1):
        cols += [f"x_{k}", f"y_{k}"]
    return cols + ["H"]
