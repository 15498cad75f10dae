"""Matrix JSON encoding.

Schema::

    {"rows": n, "cols": m,
     "alpha": [[[re, im], ...], ...],
     "beta":  [[[re, im], ...], ...]}    # optional, zero when omitted

Real entries may also be given as bare numbers.
"""

from __future__ import annotations

import numpy as np

from .errors import ConfigError
from .qmat import QMat

__all__ = ["qmat_to_json", "qmat_from_json", "cmat_to_json", "cmat_from_json"]


def cmat_to_json(a) -> list:
    a = np.asarray(a, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in a]


def _entry(z) -> complex:
    if isinstance(z, (int, float)) and not isinstance(z, bool):
        return complex(z)
    if isinstance(z, (list, tuple)) and len(z) == 2 and all(
            isinstance(c, (int, float)) and not isinstance(c, bool) for c in z):
        return complex(z[0], z[1])
    raise ConfigError(f"matrix entry {z!r} is not a number or [re, im] pair")


def cmat_from_json(rows, shape=None) -> np.ndarray:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ConfigError("matrix must be a list of rows")
    out = np.array([[_entry(z) for z in r] for r in rows], dtype=complex)
    if rows and len({len(r) for r in rows}) != 1:
        raise ConfigError("matrix rows have unequal length")
    if shape is not None:
        if not rows:
            out = out.reshape(shape) if 0 in shape else out
        if out.shape != shape:
            raise ConfigError(f"matrix has shape {out.shape}, expected {shape}")
    return out


def qmat_to_json(m: QMat) -> dict:
    rows, cols = m.shape
    return {"rows": rows, "cols": cols,
            "alpha": cmat_to_json(m.alpha), "beta": cmat_to_json(m.beta)}


def qmat_from_json(obj) -> QMat:
    if not isinstance(obj, dict) or "alpha" not in obj:
        raise ConfigError("matrix JSON needs an 'alpha' field")
    rows = obj.get("rows", len(obj["alpha"]))
    cols = obj.get("cols", len(obj["alpha"][0]) if obj["alpha"] else 0)
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 0 or cols < 0:
        raise ConfigError("rows and cols must be non-negative integers")
    shape = (rows, cols)
    alpha = cmat_from_json(obj["alpha"], shape)
    beta = cmat_from_json(obj["beta"], shape) if obj.get("beta") is not None else None
    return QMat(alpha.reshape(shape), None if beta is None else beta.reshape(shape))
