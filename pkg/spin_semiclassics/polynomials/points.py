"""Points, intervals and point sets on the unit sphere."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

UNIT_TOLERANCE = 1e-12


@dataclass(frozen=True)
class SpherePoint:
    """A point on S² in polar angles.

    ``theta`` lies in [0, π] and ``phi`` in (−π, π]. At the poles the azimuth is
    fixed to 0, which is also the phase convention used for coherent states.

    Attributes:
        theta: Polar angle in radians.
        phi: Azimuthal angle in radians.
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self) -> None:
        """Normalize the angles to their canonical ranges."""
        theta = float(self.theta)
        phi = float(self.phi)
        if not 0.0 <= theta <= math.pi:
            # fold through the poles
            theta = math.fmod(theta, 2 * math.pi)
            if theta < 0:
                theta += 2 * math.pi
            if theta > math.pi:
                theta = 2 * math.pi - theta
                phi += math.pi
        phi = math.atan2(math.sin(phi), math.cos(phi))
        if phi == -math.pi:
            phi = math.pi
        if theta in (0.0, math.pi):
            phi = 0.0
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    @classmethod
    def from_cartesian(cls, x: float, y: float, z: float) -> SpherePoint:
        """Build a point from (possibly unnormalized) Cartesian coordinates.

        Args:
            x: First ambient coordinate.
            y: Second ambient coordinate.
            z: Third ambient coordinate.

        Returns:
            The radial projection onto S².

        Raises:
            ValueError: If the vector is zero.
        """
        r = math.sqrt(x * x + y * y + z * z)
        if r == 0.0:
            raise ValueError("Cannot project the origin onto the sphere.")
        cos_theta = max(-1.0, min(1.0, z / r))
        return cls(theta=math.acos(cos_theta), phi=math.atan2(y, x))

    @classmethod
    def north_pole(cls) -> SpherePoint:
        """Return (0, 0, 1)."""
        return cls(0.0, 0.0)

    @classmethod
    def south_pole(cls) -> SpherePoint:
        """Return (0, 0, −1)."""
        return cls(math.pi, 0.0)

    @property
    def x(self) -> float:
        """First Cartesian coordinate."""
        return math.sin(self.theta) * math.cos(self.phi)

    @property
    def y(self) -> float:
        """Second Cartesian coordinate."""
        return math.sin(self.theta) * math.sin(self.phi)

    @property
    def z(self) -> float:
        """Third Cartesian coordinate."""
        return math.cos(self.theta)

    @property
    def xyz(self) -> np.ndarray:
        """Unit 3-vector view."""
        return np.array([self.x, self.y, self.z])

    def geodesic_distance(self, other: SpherePoint) -> float:
        """Great-circle distance to another point."""
        return geodesic_distance(self.xyz, other.xyz)

    def __repr__(self) -> str:
        return f"SpherePoint(x={self.x:.12g}, y={self.y:.12g}, z={self.z:.12g})"


@dataclass(frozen=True)
class RealInterval:
    """A closed interval [lo, hi], used for ranges of real polynomials.

    Attributes:
        lo: Lower endpoint.
        hi: Upper endpoint.
        argmin: A point where ``lo`` is attained, when known.
        argmax: A point where ``hi`` is attained, when known.
    """

    lo: float
    hi: float
    argmin: SpherePoint | None = None
    argmax: SpherePoint | None = None

    def __post_init__(self) -> None:
        """Validate the endpoint order."""
        if self.lo > self.hi:
            raise ValueError(f"Empty interval: lo={self.lo} > hi={self.hi}")

    @property
    def width(self) -> float:
        """Length of the interval."""
        return self.hi - self.lo

    def contains(self, value: float, tol: float = 0.0) -> bool:
        """Whether ``value`` lies in the interval widened by ``tol``."""
        return self.lo - tol <= value <= self.hi + tol


def geodesic_distance(u: np.ndarray, v: np.ndarray) -> float:
    """Great-circle distance between two unit vectors (stable for tiny angles)."""
    return float(math.atan2(np.linalg.norm(np.cross(u, v)), float(np.dot(u, v))))


@lru_cache(maxsize=8)
def fibonacci_sphere(n: int) -> np.ndarray:
    """Golden-section spiral lattice with ``n`` nearly uniform points.

    Args:
        n: Number of points.

    Returns:
        Read-only array of shape (n, 3) with unit rows.
    """
    k = np.arange(n)
    golden_angle = np.pi * (3.0 - np.sqrt(5.0))
    z = 1.0 - (2.0 * k + 1.0) / n
    r = np.sqrt(1.0 - z * z)
    phi = k * golden_angle
    pts = np.column_stack([r * np.cos(phi), r * np.sin(phi), z])
    pts.setflags(write=False)
    return pts


def cartesian_to_angles(xyz: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Polar angles (θ, φ) of an array of unit vectors with shape (..., 3)."""
    z = np.clip(xyz[..., 2], -1.0, 1.0)
    return np.arccos(z), np.arctan2(xyz[..., 1], xyz[..., 0])
