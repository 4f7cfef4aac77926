"""Unit quaternions as SU(2): w + x i + y j + z k."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

NORM_TOL = 1e-12


@dataclass(frozen=True)
class UnitQuaternion:
    w: float
    x: float
    y: float
    z: float

    def __post_init__(self):
        n2 = self.w**2 + self.x**2 + self.y**2 + self.z**2
        if abs(n2 - 1.0) > NORM_TOL:
            raise ValueError(f"quaternion norm^2 {n2!r} is not 1")

    @classmethod
    def normalized(cls, w, x, y, z) -> "UnitQuaternion":
        n = math.sqrt(w * w + x * x + y * y + z * z)
        if n == 0:
            raise ValueError("cannot normalize the zero quaternion")
        return cls(w / n, x / n, y / n, z / n)

    @classmethod
    def pure(cls, v) -> "UnitQuaternion":
        """Trace-zero element from a 3-vector (i, j, k components), normalized."""
        return cls.normalized(0.0, float(v[0]), float(v[1]), float(v[2]))

    @classmethod
    def from_array(cls, a) -> "UnitQuaternion":
        return cls(*(float(c) for c in a))

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    def vector(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def __mul__(self, other: "UnitQuaternion") -> "UnitQuaternion":
        return UnitQuaternion.normalized(*qmul(self.as_array(), other.as_array()))

    def conj(self) -> "UnitQuaternion":
        return UnitQuaternion(self.w, -self.x, -self.y, -self.z)

    inverse = conj

    def trace(self) -> float:
        """Trace of the corresponding SU(2) matrix."""
        return 2.0 * self.w

    def to_json(self) -> list[float]:
        return [self.w, self.x, self.y, self.z]

    def matrix(self) -> np.ndarray:
        """2x2 complex matrix: 1 -> I, i -> diag(i,-i), j -> [[0,-1],[1,0]], k -> [[0,-i],[-i,0]]."""
        w, x, y, z = self.w, self.x, self.y, self.z
        return np.array([[w + 1j * x, -y - 1j * z], [y - 1j * z, w - 1j * x]])


ONE = UnitQuaternion(1.0, 0.0, 0.0, 0.0)
I = UnitQuaternion(0.0, 1.0, 0.0, 0.0)
J = UnitQuaternion(0.0, 0.0, 1.0, 0.0)
K = UnitQuaternion(0.0, 0.0, 0.0, 1.0)


def qmul(p, q) -> np.ndarray:
    """Hamilton product of quaternion arrays (last axis = w, x, y, z)."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    a1, b1, c1, d1 = np.moveaxis(p, -1, 0)
    a2, b2, c2, d2 = np.moveaxis(q, -1, 0)
    return np.stack(
        [
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ],
        axis=-1,
    )


def qconj(p) -> np.ndarray:
    p = np.array(p, dtype=float)
    p[..., 1:] *= -1
    return p


def conjugate_by(g, v, power: int = 1) -> np.ndarray:
    """g^power * v * g^-power for quaternion arrays."""
    if power == 1:
        return qmul(qmul(g, v), qconj(g))
    if power == -1:
        return qmul(qmul(qconj(g), v), g)
    raise ValueError("power must be +-1")


def rotation_about_i(angle: float) -> UnitQuaternion:
    """Element cos(a/2) + i sin(a/2) of the stabilizer circle of i; conjugation rotates j,k by ``angle``."""
    return UnitQuaternion(math.cos(angle / 2), math.sin(angle / 2), 0.0, 0.0)


def commutator(a: UnitQuaternion, b: UnitQuaternion) -> UnitQuaternion:
    """a b a^-1 b^-1."""
    return UnitQuaternion.normalized(*qmul(qmul(qmul(a.as_array(), b.as_array()), a.conj().as_array()), b.conj().as_array()))
