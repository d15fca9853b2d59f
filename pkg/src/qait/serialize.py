"""JSON encoding used across the package.

A complex scalar is ``[re, im]``; a matrix is ``{"n": dim, "rows": [[[re, im], ...], ...]}``
and a vector is ``{"n": dim, "amps": [[re, im], ...]}``.  Floats are written with
Python's shortest round-trip ``repr`` so output is byte-stable.
"""
from __future__ import annotations

import json

import numpy as np

from .hilbert import Operator, StateVector


def _float(x) -> float:
    x = float(x)
    # normalise -0.0 so identical values always print identically
    return 0.0 if x == 0 else x


def complex_to_json(z) -> list[float]:
    z = complex(z)
    return [_float(z.real), _float(z.imag)]


def complex_from_json(obj) -> complex:
    if isinstance(obj, (int, float)):
        return complex(obj)
    re, im = obj
    return complex(float(re), float(im))


def matrix_to_json(m) -> dict:
    arr = m.matrix if isinstance(m, Operator) else np.asarray(m, dtype=complex)
    out = {"n": int(arr.shape[0]), "rows": [[complex_to_json(z) for z in row] for row in arr]}
    if arr.shape[0] != arr.shape[1]:
        out["m"] = int(arr.shape[1])
    return out


def matrix_from_json(obj) -> np.ndarray:
    rows = obj["rows"]
    arr = np.array([[complex_from_json(z) for z in row] for row in rows], dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != int(obj["n"]):
        raise ValueError(f"matrix declares n={obj['n']} but has shape {arr.shape}")
    if arr.shape[1] != int(obj.get("m", obj["n"])):
        raise ValueError(f"matrix column count {arr.shape[1]} does not match its header")
    return arr


def vector_to_json(v) -> dict:
    arr = v.amplitudes if isinstance(v, StateVector) else np.asarray(v, dtype=complex)
    return {"n": int(arr.shape[0]), "amps": [complex_to_json(z) for z in arr]}


def vector_from_json(obj) -> StateVector:
    amps = [complex_from_json(z) for z in obj["amps"]]
    if len(amps) != int(obj["n"]):
        raise ValueError(f"vector declares n={obj['n']} but has {len(amps)} amplitudes")
    return StateVector(amps)


def dumps(obj) -> str:
    """Deterministic JSON text (stable key order, round-trip floats)."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)
