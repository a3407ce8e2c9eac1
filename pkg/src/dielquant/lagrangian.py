"""Finite-difference checks of Lagrangian dynamics parameterized by tau = t/n.

Lagrangians are plain callables ``L(q, qdot_tau, tau) -> float`` where ``q`` and
``qdot_tau`` are length-J arrays and ``qdot_tau`` is dq/dtau.  Coordinate maps
are callables ``x_i(tau, q) -> 3-vector``.  Everything here is stateless; the
callables must be safe to evaluate concurrently if the caller parallelizes.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import solve_ivp

MOMENTUM_STEP = 1e-6
# derivatives of derivatives need a wider step or roundoff dominates
MAP_STEP = 1e-3

Lagrangian = Callable[[np.ndarray, np.ndarray, float], float]


def _step(x0: float, rel: float) -> float:
    return rel * max(abs(x0), 1.0)


def richardson_derivative(f: Callable[[float], float], x0: float, rel_step: float = MOMENTUM_STEP):
    """Central difference at steps h and h/2, extrapolated once (O(h^4))."""
    h = _step(x0, rel_step)
    d_h = (f(x0 + h) - f(x0 - h)) / (2 * h)
    d_h2 = (f(x0 + h / 2) - f(x0 - h / 2)) / h
    return (4 * d_h2 - d_h) / 3


def _partial(func, vec, j, rel_step):
    vec = np.asarray(vec, dtype=float)

    def along(s):
        shifted = vec.copy()
        shifted[j] = s
        return func(shifted)

    return richardson_derivative(along, vec[j], rel_step)


def _finite(value, what):
    if not np.all(np.isfinite(value)):
        raise ValueError(f"{what} is not finite near the evaluation point")
    return value


@dataclass(frozen=True)
class TrajectoryGrid:
    """Coordinates sampled on a uniform tau grid; ``q`` has shape (N, J)."""

    tau0: float
    h: float
    q: np.ndarray

    def __post_init__(self):
        q = np.asarray(self.q, dtype=float)
        if q.ndim == 1:
            q = q[:, None]
        if not self.h > 0:
            raise ValueError("grid step must be positive")
        if q.shape[0] < 5:
            raise ValueError(f"trajectory grid needs at least 5 nodes, got {q.shape[0]}")
        object.__setattr__(self, "q", q)

    @property
    def size(self) -> int:
        return self.q.shape[0]

    @property
    def J(self) -> int:
        return self.q.shape[1]

    @property
    def taus(self) -> np.ndarray:
        return self.tau0 + self.h * np.arange(self.size)

    @classmethod
    def from_function(cls, q_of_tau, tau0, h, size) -> "TrajectoryGrid":
        taus = tau0 + h * np.arange(size)
        return cls(tau0, h, np.array([np.atleast_1d(q_of_tau(t)) for t in taus], dtype=float))


def _node_derivative(y, h, i):
    """Central difference d/dtau at node i.

    One stencil everywhere: switching stencils between neighbouring nodes
    makes the error jump, and a second differentiation amplifies the jump.
    """
    return (y[i + 1] - y[i - 1]) / (2 * h)


def grid_velocities(grid: TrajectoryGrid) -> np.ndarray:
    """dq/dtau at every interior node; rows 0 and N-1 are NaN."""
    N = grid.size
    qdot = np.full_like(grid.q, np.nan)
    for i in range(1, N - 1):
        qdot[i] = _node_derivative(grid.q, grid.h, i)
    return qdot


def canonical_momentum(L: Lagrangian, q, qdot_tau, j: int, tau: float = 0.0) -> float:
    """p_j = dL/d(dq_j/dtau) by Richardson-extrapolated central difference."""
    q = np.atleast_1d(np.asarray(q, dtype=float))
    qdot_tau = np.atleast_1d(np.asarray(qdot_tau, dtype=float))
    if not 0 <= j < qdot_tau.size:
        raise ValueError(f"coordinate index {j} out of range for J={qdot_tau.size}")
    _finite(L(q, qdot_tau, tau), "Lagrangian")
    p = _partial(lambda v: L(q, v, tau), qdot_tau, j, MOMENTUM_STEP)
    return float(_finite(p, "canonical momentum"))


def lagrangian_force(L: Lagrangian, q, qdot_tau, j: int, tau: float = 0.0) -> float:
    """dL/dq_j at fixed velocities."""
    q = np.atleast_1d(np.asarray(q, dtype=float))
    qdot_tau = np.atleast_1d(np.asarray(qdot_tau, dtype=float))
    return float(_finite(_partial(lambda v: L(v, qdot_tau, tau), q, j, MOMENTUM_STEP), "dL/dq"))


def euler_lagrange_residual(L: Lagrangian, grid: TrajectoryGrid, j: int) -> np.ndarray:
    """d/dtau(dL/d qdot_j) - dL/dq_j at nodes 2..N-3."""
    N = grid.size
    if not 0 <= j < grid.J:
        raise ValueError(f"coordinate index {j} out of range for J={grid.J}")
    taus = grid.taus
    qdot = grid_velocities(grid)
    p = np.full(N, np.nan)
    for i in range(1, N - 1):
        p[i] = canonical_momentum(L, grid.q[i], qdot[i], j, taus[i])
    out = np.empty(N - 4)
    for k, i in enumerate(range(2, N - 2)):
        dp = _node_derivative(p, grid.h, i)
        out[k] = dp - lagrangian_force(L, grid.q[i], qdot[i], j, taus[i])
    return out


def momentum_along_grid(L: Lagrangian, grid: TrajectoryGrid, j: int) -> np.ndarray:
    """Canonical momentum p_j at the interior nodes 1..N-2."""
    qdot = grid_velocities(grid)
    taus = grid.taus
    return np.array([canonical_momentum(L, grid.q[i], qdot[i], j, taus[i]) for i in range(1, grid.size - 1)])


@dataclass(frozen=True)
class GeneralizedSystem:
    """Particles whose positions are given by generalized coordinates.

    ``positions[i](tau, q)`` returns the 3-position of particle i.
    """

    J: int
    positions: Sequence[Callable]
    masses: Sequence[float]
    n: float = 1.0

    def __post_init__(self):
        if len(self.positions) != len(self.masses):
            raise ValueError("one mass per coordinate map is required")
        if self.J < 1:
            raise ValueError("J must be positive")
        if not self.n >= 1.0:
            raise ValueError("refractive index must be >= 1")

    def position(self, i, q, tau=0.0) -> np.ndarray:
        return np.asarray(self.positions[i](tau, np.atleast_1d(np.asarray(q, dtype=float))), dtype=float)

    def jacobian(self, i, q, tau=0.0) -> np.ndarray:
        """dx_i/dq as a (3, J) array."""
        q = np.atleast_1d(np.asarray(q, dtype=float))
        cols = [_partial(lambda v: self.position(i, v, tau), q, j, MAP_STEP) for j in range(self.J)]
        return np.column_stack(cols)

    def explicit_tau_derivative(self, i, q, tau=0.0) -> np.ndarray:
        return richardson_derivative(lambda s: self.position(i, q, s), tau, MAP_STEP)

    def particle_velocity(self, i, q, qdot_tau, tau=0.0) -> np.ndarray:
        """u_i = sum_j dx_i/dq_j dq_j/dtau + dx_i/dtau."""
        qdot_tau = np.atleast_1d(np.asarray(qdot_tau, dtype=float))
        return self.jacobian(i, q, tau) @ qdot_tau + self.explicit_tau_derivative(i, q, tau)

    def kinetic_energy(self, q, qdot_tau, tau=0.0) -> float:
        total = 0.0
        for i, m in enumerate(self.masses):
            u = self.particle_velocity(i, q, qdot_tau, tau)
            total += 0.5 * m * (u @ u)
        return float(total)

    def kinetic_momentum(self, q, qdot_tau, j, tau=0.0) -> float:
        """dT/d(dq_j/dtau) = sum_i m_i u_i . dx_i/dq_j."""
        total = 0.0
        for i, m in enumerate(self.masses):
            u = self.particle_velocity(i, q, qdot_tau, tau)
            total += m * u @ self.jacobian(i, q, tau)[:, j]
        return float(total)


def _forces_at(applied_forces, q, tau, count):
    f = applied_forces(q, tau) if callable(applied_forces) else applied_forces
    f = np.asarray(f, dtype=float).reshape(count, 3)
    return f


def generalized_force(system: GeneralizedSystem, applied_forces, q, tau: float, j: int) -> float:
    """Q_j = sum_i f_i . dx_i/dq_j.

    ``applied_forces`` is an (I, 3) array or a callable ``(q, tau) -> (I, 3)``.
    """
    if not 0 <= j < system.J:
        raise ValueError(f"coordinate index {j} out of range for J={system.J}")
    f = _forces_at(applied_forces, q, tau, len(system.masses))
    return float(sum(f[i] @ system.jacobian(i, q, tau)[:, j] for i in range(len(system.masses))))


def dalembert_residual(system: GeneralizedSystem, applied_forces, grid: TrajectoryGrid, virtual_displacement) -> float:
    """Generalized D'Alembert sum at the grid midpoint.

    sum_j [d/dtau(dT/d qdot_j) - dT/dq_j - Q_j] dq_j, zero along true motion.
    """
    dq = np.atleast_1d(np.asarray(virtual_displacement, dtype=float))
    if dq.size != system.J or grid.J != system.J:
        raise ValueError("virtual displacement, grid and system must share J")
    N = grid.size
    mid = N // 2
    taus = grid.taus
    qdot = grid_velocities(grid)
    total = 0.0
    for j in range(system.J):
        pT = np.full(N, np.nan)
        for i in (mid - 1, mid + 1):
            pT[i] = system.kinetic_momentum(grid.q[i], qdot[i], j, taus[i])
        dpT = _node_derivative(pT, grid.h, mid)
        q_mid, v_mid, t_mid = grid.q[mid], qdot[mid], taus[mid]
        dTdq = _partial(lambda v: system.kinetic_energy(v, v_mid, t_mid), q_mid, j, MAP_STEP)
        Qj = generalized_force(system, applied_forces, q_mid, t_mid, j)
        total += (dpT - dTdq - Qj) * dq[j]
    return float(total)


_ODE_TOL = dict(method="DOP853", rtol=1e-13, atol=1e-14)


def solve_tau_dynamics(accel, q0, qdot_tau0, tau0: float, h: float, size: int) -> TrajectoryGrid:
    """Integrate q'' = accel(q, q', tau) in tau and sample on a uniform grid."""
    q0 = np.atleast_1d(np.asarray(q0, dtype=float))
    v0 = np.atleast_1d(np.asarray(qdot_tau0, dtype=float))
    J = q0.size
    taus = tau0 + h * np.arange(size)

    def rhs(tau, y):
        return np.concatenate([y[J:], np.atleast_1d(accel(y[:J], y[J:], tau))])

    sol = solve_ivp(rhs, (taus[0], taus[-1]), np.concatenate([q0, v0]), t_eval=taus, **_ODE_TOL)
    if not sol.success:
        raise RuntimeError(sol.message)
    return TrajectoryGrid(tau0, h, sol.y[:J].T)


def solve_time_dynamics(accel, q0, qdot_t0, times, n: float) -> np.ndarray:
    """Same dynamics integrated in lab time t, with d/dtau = n d/dt.

    ``accel`` is the tau-form acceleration; returns q at ``times`` as (N, J).
    """
    q0 = np.atleast_1d(np.asarray(q0, dtype=float))
    v0 = np.atleast_1d(np.asarray(qdot_t0, dtype=float))
    J = q0.size
    times = np.asarray(times, dtype=float)

    def rhs(t, y):
        a_tau = np.atleast_1d(accel(y[:J], n * y[J:], t / n))
        return np.concatenate([y[J:], a_tau / n ** 2])

    sol = solve_ivp(rhs, (times[0], times[-1]), np.concatenate([q0, v0]), t_eval=times, **_ODE_TOL)
    if not sol.success:
        raise RuntimeError(sol.message)
    return sol.y[:J].T
