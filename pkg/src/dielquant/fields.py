"""Classical plane waves in a linear dielectric and their interface relations.

Gaussian-style conventions: E = -(1/c) dA/dt, B = curl A, energy flux c E x B.
Waves propagate along +z at normal incidence; reflection is taken to be zero.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

FLUX_SAMPLES = 1024
_ZHAT = np.array([0.0, 0.0, 1.0])


@dataclass(frozen=True)
class PlaneWave:
    amplitude: float
    omega: float
    n: float = 1.0
    phase: float = 0.0
    polarization: tuple = (1.0, 0.0, 0.0)
    c: float = 1.0

    def __post_init__(self):
        if not self.n >= 1.0:
            raise ValueError(f"refractive index must be >= 1, got {self.n}")
        if not self.omega > 0:
            raise ValueError("omega must be positive")
        if not self.c > 0:
            raise ValueError("c must be positive")
        e = np.asarray(self.polarization, dtype=float)
        if e.shape != (3,) or abs(np.linalg.norm(e) - 1.0) > 1e-12 or abs(e @ _ZHAT) > 1e-12:
            raise ValueError("polarization must be a unit vector transverse to z")
        object.__setattr__(self, "polarization", tuple(float(x) for x in e))

    @property
    def wavenumber(self) -> float:
        return self.n * self.omega / self.c

    @property
    def e_hat(self) -> np.ndarray:
        return np.array(self.polarization)

    def replace(self, **changes) -> "PlaneWave":
        kw = dict(amplitude=self.amplitude, omega=self.omega, n=self.n, phase=self.phase,
                  polarization=self.polarization, c=self.c)
        kw.update(changes)
        return PlaneWave(**kw)


@dataclass(frozen=True)
class MediumInterface:
    n1: float
    n2: float

    def __post_init__(self):
        if not (self.n1 >= 1.0 and self.n2 >= 1.0):
            raise ValueError("both refractive indices must be >= 1")


@dataclass(frozen=True)
class FieldSample:
    A: np.ndarray
    E: np.ndarray
    B: np.ndarray = field(repr=False)


def vector_potential(wave: PlaneWave, z, t):
    """Scalar component of A along the polarization; broadcasts over z and t."""
    return wave.amplitude * np.cos(-wave.omega * np.asarray(t) + wave.wavenumber * np.asarray(z) + wave.phase)


def sample_fields(wave: PlaneWave, z: float, t: float) -> FieldSample:
    theta = -wave.omega * t + wave.wavenumber * z + wave.phase
    e = wave.e_hat
    A = wave.amplitude * np.cos(theta) * e
    # dA/dt = omega A_f sin(theta) e
    E = -(wave.omega * wave.amplitude / wave.c) * np.sin(theta) * e
    # curl(f(z) e) = f'(z) zhat x e
    B = -wave.wavenumber * wave.amplitude * np.sin(theta) * np.cross(_ZHAT, e)
    return FieldSample(A=A, E=E, B=B)


def poynting_z(wave: PlaneWave, z: float, t: float) -> float:
    s = sample_fields(wave, z, t)
    return float(wave.c * np.cross(s.E, s.B)[2])


def time_averaged_flux(wave: PlaneWave, samples: int = FLUX_SAMPLES) -> float:
    """One-period average of c (E x B)_z at z = 0 by the midpoint rule."""
    period = 2.0 * np.pi / wave.omega
    ts = (np.arange(samples) + 0.5) * period / samples
    theta = -wave.omega * ts + wave.phase
    e = wave.e_hat
    E = -(wave.omega * wave.amplitude / wave.c) * np.sin(theta)[:, None] * e
    B = -wave.wavenumber * wave.amplitude * np.sin(theta)[:, None] * np.cross(_ZHAT, e)
    S = wave.c * np.cross(E, B)[:, 2]
    return float(S.mean())


def refracted_amplitude(A_incident: float, interface: MediumInterface) -> float:
    """Amplitude after crossing a reflectionless interface: sqrt(n1) A1 = sqrt(n2) A2."""
    return float(np.sqrt(interface.n1 / interface.n2) * A_incident)


def flux_continuity_residual(interface: MediumInterface, A_incident: float,
                             omega: float = 1.0, c: float = 1.0) -> float:
    A_t = refracted_amplitude(A_incident, interface)
    incident = PlaneWave(A_incident, omega, n=interface.n1, c=c)
    transmitted = PlaneWave(A_t, omega, n=interface.n2, c=c)
    return time_averaged_flux(incident) - time_averaged_flux(transmitted)


def energy_density(wave: PlaneWave) -> float:
    """Cycle-peak plane-wave energy density n^2 omega^2 A^2 / c^2."""
    return (wave.n * wave.omega * wave.amplitude / wave.c) ** 2
