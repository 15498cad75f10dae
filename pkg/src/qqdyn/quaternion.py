"""Real quaternions q = q0 + q1 i + q2 j + q3 k.

The complex-pair convention used across the package puts ``j`` on the left:
``q = alpha + j*beta`` with ``alpha = q0 + q1 i`` and ``beta = q2 - q3 i``.
The useful commutation rule is ``z j = j conj(z)`` for complex ``z``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ZeroDivisor

__all__ = [
    "Quaternion",
    "quat_mul",
    "quat_conj",
    "quat_inverse",
    "quat_norm",
    "quat_to_pair",
    "quat_from_pair",
]


@dataclass(frozen=True)
class Quaternion:
    q0: float = 0.0
    q1: float = 0.0
    q2: float = 0.0
    q3: float = 0.0

    def __post_init__(self):
        for name in ("q0", "q1", "q2", "q3"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @classmethod
    def from_pair(cls, alpha: complex, beta: complex) -> Quaternion:
        return quat_from_pair(alpha, beta)

    def to_pair(self) -> tuple[complex, complex]:
        return quat_to_pair(self)

    def conj(self) -> Quaternion:
        return quat_conj(self)

    def norm(self) -> float:
        return quat_norm(self)

    def inverse(self) -> Quaternion:
        return quat_inverse(self)

    def components(self) -> tuple[float, float, float, float]:
        return (self.q0, self.q1, self.q2, self.q3)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return quat_mul(self, other)
        if isinstance(other, (int, float)):
            return Quaternion(self.q0 * other, self.q1 * other, self.q2 * other, self.q3 * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return self * other
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, (int, float)):
            other = Quaternion(other)
        if not isinstance(other, Quaternion):
            return NotImplemented
        return Quaternion(self.q0 + other.q0, self.q1 + other.q1,
                          self.q2 + other.q2, self.q3 + other.q3)

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(-self.q0, -self.q1, -self.q2, -self.q3)

    def __sub__(self, other):
        if isinstance(other, (int, float)):
            other = Quaternion(other)
        if not isinstance(other, Quaternion):
            return NotImplemented
        return self + (-other)

    def isclose(self, other: Quaternion, atol: float = 1e-14) -> bool:
        return all(abs(a - b) <= atol for a, b in zip(self.components(), other.components()))

    def __repr__(self):
        return f"Quaternion({self.q0!r}, {self.q1!r}, {self.q2!r}, {self.q3!r})"


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def quat_mul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product ``a*b``."""
    a0, a1, a2, a3 = a.q0, a.q1, a.q2, a.q3
    b0, b1, b2, b3 = b.q0, b.q1, b.q2, b.q3
    return Quaternion(
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    )


def quat_conj(q: Quaternion) -> Quaternion:
    return Quaternion(q.q0, -q.q1, -q.q2, -q.q3)


def quat_norm(q: Quaternion) -> float:
    return math.sqrt(q.q0 * q.q0 + q.q1 * q.q1 + q.q2 * q.q2 + q.q3 * q.q3)


def quat_inverse(q: Quaternion) -> Quaternion:
    n2 = q.q0 * q.q0 + q.q1 * q.q1 + q.q2 * q.q2 + q.q3 * q.q3
    if n2 == 0.0:
        raise ZeroDivisor("quaternion of zero norm has no inverse")
    c = quat_conj(q)
    return Quaternion(c.q0 / n2, c.q1 / n2, c.q2 / n2, c.q3 / n2)


def quat_to_pair(q: Quaternion) -> tuple[complex, complex]:
    """Split ``q`` into ``(alpha, beta)`` with ``q = alpha + j*beta``."""
    return complex(q.q0, q.q1), complex(q.q2, -q.q3)


def quat_from_pair(alpha: complex, beta: complex) -> Quaternion:
    alpha = complex(alpha)
    beta = complex(beta)
    return Quaternion(alpha.real, alpha.imag, beta.real, -beta.imag)
