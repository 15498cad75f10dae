"""Scaling-and-squaring matrix exponential with a diagonal Pade approximant.

The argument is scaled by ``2**-s`` until its 1-norm is at most 0.5, the
[6/6] Pade approximant is evaluated, and the result squared ``s`` times. At
that threshold the truncation error of the approximant is below 1e-17.
"""

from math import factorial

import numpy as np

SQUARING_THRESHOLD = 0.5
PADE_DEGREE = 6


def _pade_coefficients(q: int) -> np.ndarray:
    return np.array([factorial(2 * q - k) * factorial(q)
                     / (factorial(2 * q) * factorial(k) * factorial(q - k))
                     for k in range(q + 1)])


_COEFFS = _pade_coefficients(PADE_DEGREE)


def expm(a, threshold: float = SQUARING_THRESHOLD) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expm needs a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n == 0:
        return a.copy()
    norm = np.linalg.norm(a, 1)
    s = 0
    if norm > threshold:
        s = int(np.ceil(np.log2(norm / threshold)))
    x = a / 2.0 ** s

    # even powers go to both numerator and denominator, odd ones flip sign
    eye = np.eye(n, dtype=complex)
    even = _COEFFS[0] * eye
    odd = np.zeros_like(x)
    power = eye
    for k in range(1, PADE_DEGREE + 1):
        power = power @ x
        if k % 2:
            odd = odd + _COEFFS[k] * power
        else:
            even = even + _COEFFS[k] * power
    f = np.linalg.solve(even - odd, even + odd)
    for _ in range(s):
        f = f @ f
    return f
