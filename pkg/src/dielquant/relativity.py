"""Kinematics in spacetime filled with a medium whose signal speed is c/n.

Events are stored with time coordinate ct/n so that the medium light cone is
the ordinary 45-degree cone in (ct/n, x, y, z).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np


@dataclass(frozen=True)
class FourVector:
    t_coord: float
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __post_init__(self):
        if not np.all(np.isfinite(self.as_array())):
            raise ValueError("four-vector components must be finite")

    @classmethod
    def from_time(cls, t, x=0.0, y=0.0, z=0.0, n=1.0, c=1.0) -> "FourVector":
        return cls(c * t / n, x, y, z)

    def time(self, n=1.0, c=1.0) -> float:
        return self.t_coord * n / c

    def as_array(self) -> np.ndarray:
        return np.array([self.t_coord, self.x, self.y, self.z], dtype=float)

    def __sub__(self, other: "FourVector") -> "FourVector":
        return FourVector(*(self.as_array() - other.as_array()))


@dataclass(frozen=True)
class MaterialBoost:
    """Standard-configuration boost along +x with frame speed v."""

    v: float
    n: float = 1.0
    c: float = 1.0

    def __post_init__(self):
        if not self.n >= 1.0:
            raise ValueError(f"refractive index must be >= 1, got {self.n}")
        if not abs(self.v) < self.c / self.n:
            raise ValueError(f"|v| = {abs(self.v)} is not below the medium light speed c/n = {self.c / self.n}")

    @property
    def beta(self) -> float:
        return self.n * self.v / self.c

    def inverse(self) -> "MaterialBoost":
        return MaterialBoost(-self.v, self.n, self.c)


def lorentz_factor(v, n=1.0, c=1.0) -> float:
    beta2 = (n * np.linalg.norm(np.atleast_1d(v)) / c) ** 2
    if not beta2 < 1.0:
        raise ValueError(f"speed {np.linalg.norm(np.atleast_1d(v))} is not below c/n = {c / n}")
    return 1.0 / np.sqrt(1.0 - beta2)


def gamma(boost: MaterialBoost) -> float:
    return lorentz_factor(boost.v, boost.n, boost.c)


def boost_event(X_primed: FourVector, boost: MaterialBoost) -> FourVector:
    """Map an event from the moving frame S' to S.

    x = g (x' + v t'),  t = g (t' + n^2 v x' / c^2),  y and z unchanged.
    """
    g = gamma(boost)
    n, c, v = boost.n, boost.c, boost.v
    t_p = X_primed.time(n, c)
    t = g * (t_p + n * n * v * X_primed.x / (c * c))
    x = g * (X_primed.x + v * t_p)
    return FourVector.from_time(t, x, X_primed.y, X_primed.z, n=n, c=c)


def interval_squared(dX: FourVector) -> float:
    """dx^2 + dy^2 + dz^2 - (c/n)^2 dt^2, with (c/n) dt the stored time coordinate."""
    return dX.x ** 2 + dX.y ** 2 + dX.z ** 2 - dX.t_coord ** 2


def proper_time_step(dt: float, v, n: float = 1.0, c: float = 1.0) -> float:
    return dt / (lorentz_factor(v, n, c) * n)


@dataclass(frozen=True)
class Worldline:
    """Sampled particle history: times ``t`` (N,) and positions ``x`` (N, 3)."""

    t: np.ndarray
    x: np.ndarray
    m0: float = 1.0
    n: float = 1.0
    c: float = 1.0

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float)
        x = np.asarray(self.x, dtype=float)
        if x.ndim == 1:
            x = np.column_stack([x, np.zeros_like(x), np.zeros_like(x)])
        if t.ndim != 1 or x.shape != (t.size, 3):
            raise ValueError("worldline needs t of shape (N,) and x of shape (N, 3)")
        if t.size < 3 or np.any(np.diff(t) <= 0):
            raise ValueError("worldline times must be strictly increasing with at least 3 samples")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "x", x)
        speeds = np.linalg.norm(self.velocities()[1:-1], axis=1)
        if speeds.size and speeds.max() >= self.c / self.n:
            raise ValueError(f"sampled speed {speeds.max()} reaches the medium light speed c/n")

    def velocities(self) -> np.ndarray:
        return np.gradient(self.x, self.t, axis=0, edge_order=2)

    @classmethod
    def from_function(cls, path, t, m0=1.0, n=1.0, c=1.0) -> "Worldline":
        t = np.asarray(t, dtype=float)
        return cls(t, np.array([path(ti) for ti in t]), m0=m0, n=n, c=c)


class FourKinematics(NamedTuple):
    velocity: np.ndarray
    momentum: np.ndarray
    force: np.ndarray


def _four_velocity(xdot: np.ndarray, n: float, c: float) -> np.ndarray:
    # gamma c (1, dx/d(ct/n), ...) = gamma (c, n xdot)
    g = lorentz_factor(xdot, n, c)
    return g * np.concatenate([[c], n * xdot])


def four_kinematics(w: Worldline, index: int) -> FourKinematics:
    """Four-velocity, four-momentum and four-force at an interior sample.

    Derivatives are central differences on the samples; the force is
    dP/dt * dt/dtau with dt/dtau = gamma n.
    """
    N = w.t.size
    if not 0 < index < N - 1:
        raise ValueError(f"index {index} is not an interior sample of a {N}-point worldline")
    xdot = w.velocities()
    lo, hi = index - 1, index + 1
    P = np.array([w.m0 * _four_velocity(xdot[k], w.n, w.c) for k in (lo, index, hi)])
    U = P[1] / w.m0
    dPdt = (P[2] - P[0]) / (w.t[hi] - w.t[lo])
    F = dPdt * lorentz_factor(xdot[index], w.n, w.c) * w.n
    return FourKinematics(U, P[1], F)


def three_momentum_nonrel(m: float, xdot, n: float = 1.0) -> np.ndarray:
    """Low-speed momentum n m xdot in a medium of index n."""
    return n * m * np.asarray(xdot, dtype=float)
