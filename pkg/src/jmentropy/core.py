"""Geometric and information-theoretic primitives.

Conventions used throughout the package:

* all entropies are in bits (base-2 logarithms),
* the ``0 log 0 = 0`` continuity convention holds at distribution endpoints,
* unit vectors are renormalized when within 1e-12 of unit length and
  rejected otherwise,
* a qubit state is a Bloch vector ``c`` with ``|c| <= 1`` (pure iff
  ``|c| = 1``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    DegeneratePlaneError,
    DomainError,
    InvalidDistributionError,
    NormalizationError,
)

UNIT_TOL = 1e-12
PURE_TOL = 1e-9


@dataclass(frozen=True, slots=True)
class UnitVector3:
    """A direction on the unit sphere (a spin axis)."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        n = math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)
        if abs(n - 1.0) > UNIT_TOL:
            raise NormalizationError(
                f"({self.x}, {self.y}, {self.z}) has norm {n}, "
                f"more than {UNIT_TOL} away from 1"
            )
        if n != 1.0:  # renormalize drift within tolerance
            object.__setattr__(self, "x", self.x / n)
            object.__setattr__(self, "y", self.y / n)
            object.__setattr__(self, "z", self.z / n)

    @classmethod
    def normalize(cls, x: float, y: float, z: float) -> "UnitVector3":
        """Construct from any non-zero 3-vector by normalizing it."""
        n = math.sqrt(x * x + y * y + z * z)
        if n < 1e-300:
            raise NormalizationError("cannot normalize the zero vector")
        return cls(x / n, y / n, z / n)

    @classmethod
    def from_array(cls, v: Sequence[float]) -> "UnitVector3":
        vx, vy, vz = (float(t) for t in v)
        return cls(vx, vy, vz)

    @property
    def arr(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def dot(self, other: "UnitVector3 | BlochState") -> float:
        if isinstance(other, BlochState):
            c = other.c
            return self.x * c[0] + self.y * c[1] + self.z * c[2]
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other: "UnitVector3") -> np.ndarray:
        return np.cross(self.arr, other.arr)

    def __neg__(self) -> "UnitVector3":
        return UnitVector3(-self.x, -self.y, -self.z)


@dataclass(frozen=True, slots=True)
class BlochState:
    """A qubit state represented by its Bloch vector ``c``, ``|c| <= 1``."""

    c: np.ndarray

    def __post_init__(self) -> None:
        c = np.array(self.c, dtype=float).reshape(3)
        n = float(np.linalg.norm(c))
        if n > 1.0 + UNIT_TOL:
            raise NormalizationError(f"Bloch vector norm {n} exceeds 1")
        if n > 1.0:  # shave rounding overshoot
            c = c / n
        c.flags.writeable = False
        object.__setattr__(self, "c", c)

    @classmethod
    def pure(cls, direction: UnitVector3) -> "BlochState":
        return cls(direction.arr)

    @classmethod
    def maximally_mixed(cls) -> "BlochState":
        return cls(np.zeros(3))

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.c))

    @property
    def is_pure(self) -> bool:
        return abs(self.norm - 1.0) <= PURE_TOL


@dataclass(frozen=True, slots=True)
class ProbVector:
    """A discrete probability distribution (entries in [0,1], summing to 1)."""

    entries: tuple[float, ...]

    def __post_init__(self) -> None:
        cleaned = []
        for p in self.entries:
            p = float(p)
            if p < -UNIT_TOL or p > 1.0 + UNIT_TOL:
                raise InvalidDistributionError(f"probability {p} outside [0, 1]")
            cleaned.append(min(max(p, 0.0), 1.0))
        total = math.fsum(cleaned)
        if abs(total - 1.0) > UNIT_TOL:
            raise InvalidDistributionError(
                f"probabilities sum to {total}, not 1 within {UNIT_TOL}"
            )
        object.__setattr__(self, "entries", tuple(cleaned))

    @classmethod
    def of(cls, ps: Iterable[float]) -> "ProbVector":
        return cls(tuple(float(p) for p in ps))

    def __iter__(self) -> Iterator[float]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> float:
        return self.entries[i]


def angle_between(a: UnitVector3, b: UnitVector3) -> float:
    """Angle between two axes in radians, in [0, pi]."""
    d = a.dot(b)
    return math.acos(min(1.0, max(-1.0, d)))


def binary_entropy(x: float) -> float:
    """Shannon entropy of the two-outcome distribution (x, 1-x), in bits."""
    x = float(x)
    if x < -UNIT_TOL or x > 1.0 + UNIT_TOL:
        raise DomainError(f"binary_entropy argument {x} outside [0, 1]")
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def shannon_entropy(p: ProbVector | Iterable[float]) -> float:
    """Shannon entropy of a distribution, in bits, with 0 log 0 = 0."""
    if not isinstance(p, ProbVector):
        p = ProbVector.of(p)
    return -math.fsum(q * math.log2(q) for q in p if q > 0.0)


def plane_basis(a: UnitVector3, b: UnitVector3) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal basis (e1, e2) of the plane spanned by a and b.

    e1 = a, and e2 is chosen so that b = cos(eta) e1 + sin(eta) e2 with
    sin(eta) >= 0, i.e. angles increase from a toward b.
    """
    av, bv = a.arr, b.arr
    u = bv - (av @ bv) * av
    nu = float(np.linalg.norm(u))
    if nu < PURE_TOL:
        raise DegeneratePlaneError(
            "axes are (anti)parallel within 1e-9; they span no plane"
        )
    return av, u / nu


def planar_state(theta: float, a: UnitVector3, b: UnitVector3) -> BlochState:
    """Pure state in the a-b plane at angle ``theta`` from a, rotated toward b."""
    e1, e2 = plane_basis(a, b)
    return BlochState(math.cos(theta) * e1 + math.sin(theta) * e2)
