"""Invariant suite run by ``dielquant verify``.

Every check reduces to a nonnegative residual compared against a tolerance.
Random inputs come from a seeded generator so repeated runs are identical.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from . import fields, fock, lagrangian, quantization, relativity
from .fock import QuantizationScheme

SCHEMES = tuple(QuantizationScheme)
INDICES = (1.0, 1.33, 1.5, 2.0, 2.4)


@dataclass(frozen=True)
class VerifyConfig:
    dim: int = fock.DEFAULT_DIM
    grid: int = 8
    hbar: float = 1.0
    c: float = 1.0
    omega: float = 1.0
    seed: int = 20240601

    def __post_init__(self):
        fock.FockSpace(self.dim)
        if min(self.hbar, self.c, self.omega) <= 0:
            raise ValueError("hbar, c and omega must be positive")
        if self.grid < 2:
            raise ValueError("grid size must be at least 2")


@dataclass(frozen=True)
class Check:
    module: str
    name: str
    residual: float
    tolerance: float
    # extra pass condition that no tolerance can relax (e.g. a strict inequality)
    condition: bool = True

    @property
    def passed(self) -> bool:
        return bool(self.condition) and bool(self.residual <= self.tolerance)


def _max(values) -> float:
    return float(np.max(np.abs(np.asarray(values))))


# fock algebra

def check_safe_commutator(cfg):
    worst = 0.0
    for dim in range(3, cfg.dim + 1):
        a, ad = fock.boson_pair(fock.FockSpace(dim))
        block = fock.commutator(a, ad).safe_block()
        worst = max(worst, _max(block - np.eye(dim - 1)))
    return Check("fock", "truncation-safe [a, a^dag] = 1", worst, 1e-12)


def check_polariton_scaling(cfg):
    space = fock.FockSpace(cfg.dim)
    worst = max(_max(fock.commutator(*fock.polariton_pair(space, n)).safe_block() - n * np.eye(cfg.dim - 1))
                for n in INDICES)
    return Check("fock", "polariton [zeta, zeta^dag] = n", worst, 1e-12)


def check_quadrature_scaling(cfg):
    space = fock.FockSpace(cfg.dim)
    eye = np.eye(cfg.dim - 1)
    worst = 0.0
    for n in INDICES:
        P, Q = fock.quadratures(fock.polariton_pair(space, n), cfg.omega, cfg.hbar)
        worst = max(worst, _max(fock.commutator(Q, P).safe_block() - 1j * n * cfg.hbar * eye))
    P, Q = fock.quadratures(fock.boson_pair(space), cfg.omega, cfg.hbar)
    worst = max(worst, _max(fock.commutator(Q, P).safe_block() - 1j * cfg.hbar * eye))
    return Check("fock", "[Q, P] = i n hbar (zeta) and i hbar (boson)", worst, 1e-12)


def check_spectrum_linearity(cfg):
    space = fock.FockSpace(cfg.dim)
    pair = fock.boson_pair(space)
    m = np.arange(cfg.dim // 2)
    worst = 0.0
    for n in INDICES:
        for scheme, quantum in ((QuantizationScheme.CORRECTED, n), (QuantizationScheme.GINZBURG, 1.0)):
            levels = fock.certified_levels(fock.hamiltonian(scheme, pair, n, cfg.omega, cfg.hbar))
            expected = quantum * cfg.hbar * cfg.omega * (m + 0.5)
            worst = max(worst, _max((levels - expected) / expected))
    return Check("fock", "spectrum n hbar w (m+1/2) vs hbar w (m+1/2)", worst, 1e-10)


def check_hermiticity(cfg):
    space = fock.FockSpace(cfg.dim)
    worst = 0.0
    for n in INDICES:
        for ladder in (fock.boson_pair(space), fock.polariton_pair(space, n)):
            ops = list(fock.quadratures(ladder, cfg.omega, cfg.hbar))
            ops += [fock.hamiltonian(s, ladder, n, cfg.omega, cfg.hbar) for s in SCHEMES]
            worst = max(worst, max(op.hermiticity_error() for op in ops))
    return Check("fock", "P, Q, H Hermitian", worst, 1e-12)


# classical fields

def check_wave_equation(cfg):
    rng = np.random.default_rng(cfg.seed)
    worst = 0.0
    for _ in range(100):
        wave = fields.PlaneWave(rng.uniform(0.1, 2), rng.uniform(0.5, 3), n=rng.uniform(1, 3),
                                phase=rng.uniform(0, 2 * np.pi), c=cfg.c)
        z, t = rng.uniform(-5, 5, size=2)
        hz, ht = 1e-3 / wave.wavenumber, 1e-3 / wave.omega
        A = lambda zz, tt: fields.sample_fields(wave, zz, tt).A @ wave.e_hat
        a_zz = (A(z + hz, t) - 2 * A(z, t) + A(z - hz, t)) / hz ** 2
        a_tt = (A(z, t + ht) - 2 * A(z, t) + A(z, t - ht)) / ht ** 2
        scale = wave.wavenumber ** 2 * wave.amplitude
        worst = max(worst, abs(a_zz - (wave.n / wave.c) ** 2 * a_tt) / scale)
    return Check("fields", "wave equation by finite differences", worst, 1e-6)


def check_flux_continuity(cfg):
    rng = np.random.default_rng(cfg.seed + 1)
    worst = 0.0
    for _ in range(50):
        n1, n2 = rng.uniform(1, 3, size=2)
        A = rng.uniform(0, 2)
        iface = fields.MediumInterface(n1, n2)
        incident = fields.time_averaged_flux(fields.PlaneWave(A, cfg.omega, n=n1, c=cfg.c))
        worst = max(worst, abs(fields.flux_continuity_residual(iface, A, cfg.omega, cfg.c)) / incident)
    return Check("fields", "Poynting flux continuity", worst, 1e-10)


def check_amplitude_chain(cfg):
    rng = np.random.default_rng(cfg.seed + 2)
    worst = 0.0
    for _ in range(50):
        n1, n2, n3 = rng.uniform(1, 3, size=3)
        A = rng.uniform(0.1, 2)
        two_step = fields.refracted_amplitude(fields.refracted_amplitude(A, fields.MediumInterface(n1, n2)),
                                              fields.MediumInterface(n2, n3))
        direct = fields.refracted_amplitude(A, fields.MediumInterface(n1, n3))
        worst = max(worst, abs(two_step - direct))
    return Check("fields", "refraction n1->n2->n3 equals n1->n3", worst, 1e-12)


def check_energy_density_ratio(cfg):
    worst = 0.0
    for n in np.linspace(1, 3, 20):
        vac = fields.PlaneWave(1.0, cfg.omega, n=1.0, c=cfg.c)
        med = fields.PlaneWave(1.0 / np.sqrt(n), cfg.omega, n=n, c=cfg.c)
        worst = max(worst, abs(fields.energy_density(med) / fields.energy_density(vac) - n))
    return Check("fields", "medium/vacuum energy density = n", worst, 1e-12)


# medium relativity

def _random_boost(rng, c):
    n = rng.uniform(1, 3)
    return relativity.MaterialBoost(rng.uniform(-0.9, 0.9) * c / n, n, c)


def check_interval_invariance(cfg):
    rng = np.random.default_rng(cfg.seed + 3)
    worst = 0.0
    for _ in range(200):
        b = _random_boost(rng, cfg.c)
        e1, e2 = (relativity.FourVector(*rng.uniform(-10, 10, size=4)) for _ in range(2))
        before = relativity.interval_squared(e2 - e1)
        after = relativity.interval_squared(relativity.boost_event(e2, b) - relativity.boost_event(e1, b))
        scale = max(np.sum((e2 - e1).as_array() ** 2), 1e-300)
        worst = max(worst, abs(after - before) / scale)
    return Check("relativity", "interval preserved by material boost", worst, 1e-9)


def check_light_cone(cfg):
    rng = np.random.default_rng(cfg.seed + 4)
    worst = 0.0
    for _ in range(200):
        b = _random_boost(rng, cfg.c)
        direction = rng.normal(size=3)
        direction /= np.linalg.norm(direction)
        w = rng.uniform(0.1, 10)
        event = relativity.FourVector(w, *(w * direction))
        worst = max(worst, abs(relativity.interval_squared(relativity.boost_event(event, b))))
    return Check("relativity", "null intervals stay null", worst, 1e-10)


def check_round_trip(cfg):
    rng = np.random.default_rng(cfg.seed + 5)
    worst = 0.0
    for _ in range(200):
        b = _random_boost(rng, cfg.c)
        e = relativity.FourVector(*rng.uniform(-10, 10, size=4))
        back = relativity.boost_event(relativity.boost_event(e, b), b.inverse())
        worst = max(worst, _max(back.as_array() - e.as_array()))
    return Check("relativity", "boost(v) then boost(-v) is identity", worst, 1e-10)


def check_vacuum_gamma(cfg):
    g = relativity.gamma(relativity.MaterialBoost(0.6 * cfg.c, 1.0, cfg.c))
    return Check("relativity", "vacuum gamma(0.6c) = 1.25", abs(g - 1.25), 1e-12)


def _momentum_error(speed, n, c):
    t = np.linspace(0, 1, 11)
    w = relativity.Worldline(t, np.outer(t, [speed, 0, 0]), m0=1.0, n=n, c=c)
    p = relativity.four_kinematics(w, 5).momentum[1]
    return abs(p - relativity.three_momentum_nonrel(1.0, speed, n)) / (n * speed)


def check_nonrelativistic_limit(cfg):
    n = 1.5
    v = 0.1 * cfg.c / n
    order = np.log2(_momentum_error(v, n, cfg.c) / _momentum_error(v / 2, n, cfg.c))
    return Check("relativity", "momentum -> n m xdot with O(v^2) error (order - 2)", abs(order - 2.0), 0.05)


# lagrangian engine

def check_momentum_oracle(cfg):
    # L = a v^3 + b v^2 q + v q^2 - q^4; dL/dv = 3 a v^2 + 2 b v q + q^2
    worst = 0.0
    for a, b, q, v in [(1.0, 0.5, 0.3, 0.7), (-0.2, 2.0, 1.1, -1.3), (0.7, -1.0, -0.4, 2.5)]:
        L = lambda qq, vv, tau, a=a, b=b: a * vv[0] ** 3 + b * vv[0] ** 2 * qq[0] + vv[0] * qq[0] ** 2 - qq[0] ** 4
        exact = 3 * a * v ** 2 + 2 * b * v * q + q ** 2
        worst = max(worst, abs(lagrangian.canonical_momentum(L, [q], [v], 0) - exact) / abs(exact))
    return Check("lagrangian", "canonical momentum matches analytic dL/dv", worst, 1e-8)


def free_particle(m):
    return lambda q, v, tau: 0.5 * m * float(v @ v)


def check_free_particle_law(cfg):
    worst = 0.0
    for m in (0.5, 1.0, 2.0):
        for n in (1.0, 1.5, 2.0):
            for xdot in (0.01, 0.1):
                p = lagrangian.canonical_momentum(free_particle(m), [0.0], [n * xdot], 0)
                worst = max(worst, abs(p - m * n * xdot) / (m * n * xdot))
    return Check("lagrangian", "free particle p = m n xdot", worst, 1e-8)


def oscillator_grid(n, size=1000, m=1.0, k=1.0, tau_span=1.0):
    """q(t) = cos(sqrt(k/m) t / n) sampled on a uniform tau grid."""
    w0 = np.sqrt(k / m)
    h = tau_span / (size - 1)
    return lagrangian.TrajectoryGrid.from_function(lambda tau: np.cos(w0 * (n * tau) / n), 0.0, h, size)


def oscillator(m=1.0, k=1.0):
    return lambda q, v, tau: 0.5 * m * v[0] ** 2 - 0.5 * k * q[0] ** 2


def check_euler_lagrange_oscillator(cfg):
    worst = max(_max(lagrangian.euler_lagrange_residual(oscillator(), oscillator_grid(n), 0)) for n in (1.0, 1.5, 2.0))
    return Check("lagrangian", "Euler-Lagrange residual, oscillator", worst, 1e-6)


def check_vacuum_reduction(cfg):
    # n = 1: tau = t and the medium formulas are ordinary mechanics
    p = lagrangian.canonical_momentum(free_particle(2.0), [0.0], [0.3], 0)
    grid = oscillator_grid(1.0)
    res = _max(lagrangian.euler_lagrange_residual(oscillator(), grid, 0))
    return Check("lagrangian", "n = 1 reduces to textbook mechanics", max(abs(p - 0.6), res), 1e-6)


def check_time_rescaling(cfg):
    k_over_m = 2.0
    accel = lambda q, v, tau: -k_over_m * q
    taus = np.linspace(0, 5, 101)
    ref = lagrangian.solve_tau_dynamics(accel, [1.0], [0.3], 0.0, taus[1] - taus[0], taus.size)
    worst = 0.0
    for n in (1.5, 2.0):
        lab = lagrangian.solve_time_dynamics(accel, [1.0], [0.3 / n], n * taus, n)
        worst = max(worst, _max(lab - ref.q))
    return Check("lagrangian", "(n, t) and (1, tau) give the same q(tau)", worst, 1e-10)


def pendulum_system(length=1.0, mass=1.0, n=1.0):
    pos = lambda tau, q: np.array([length * np.sin(q[0]), -length * np.cos(q[0]), 0.0])
    return lagrangian.GeneralizedSystem(1, [pos], [mass], n)


def check_dalembert_pendulum(cfg):
    g, length, mass = 9.81, 1.0, 1.0
    system = pendulum_system(length, mass)
    gravity = np.array([[0.0, -mass * g, 0.0]])
    grid = lagrangian.solve_tau_dynamics(lambda q, v, tau: -(g / length) * np.sin(q), [0.8], [0.0], 0.0, 5e-5, 41)
    rng = np.random.default_rng(cfg.seed + 6)
    worst = max(abs(lagrangian.dalembert_residual(system, gravity, grid, rng.normal(size=1))) for _ in range(5))
    return Check("lagrangian", "D'Alembert residual, pendulum", worst, 1e-6)


# quantization pipeline

def three_modes(n=1.0, c=1.0):
    return quantization.ModeSet((1.0, 1.0, 1.0), [(0, 0, 1), (1, 0, 0), (1, 1, 0)], n=n, c=c)


def check_mode_identities(cfg):
    modes = three_modes(c=cfg.c)
    worst = quantization.orthonormality_residual(modes, cfg.grid)
    for (l, lam) in modes.labels():
        for (l2, lam2) in modes.labels():
            worst = max(worst, quantization.curl_identity_residual(modes, l, lam, l2, lam2, cfg.grid))
    return Check("quantization", "orthonormality and curl identity", worst, 1e-12)


def check_discrete_lagrangian(cfg):
    worst = 0.0
    rng = np.random.default_rng(cfg.seed + 7)
    for n in (1.0, 1.5, 2.4):
        modes = three_modes(n, cfg.c)
        M, K = quantization.discrete_lagrangian_matrices(modes, cfg.grid)
        omegas = np.array([modes.omega(l) for l, _ in modes.labels()])
        kin, pot = n ** 2 * np.ones(len(modes)), n ** 2 * omegas ** 2
        worst = max(worst, _max((np.diag(M) - kin) / kin), _max((np.diag(K) - pot) / pot),
                    _max(M - np.diag(np.diag(M))) / n ** 2, _max(K - np.diag(np.diag(K))) / pot.max())
        q, qdot = rng.normal(size=(2, len(modes)))
        direct = quantization.field_lagrangian(modes, q, qdot, cfg.grid)
        reduced = quantization.mode_lagrangian(modes, q, qdot)
        worst = max(worst, abs(direct - reduced) / max(abs(reduced), 1.0))
    return Check("quantization", "per-mode Lagrangian coefficients (n^2, n^2 w^2)", worst, 1e-10)


def check_hamiltonian_form(cfg):
    """Ginzburg: transform gives 1/2 (P^2 + w^2 Q^2) exactly.

    Corrected: alpha*beta is invariant under P = s p, Q = q / s, so no such
    rescaling reaches the unit normal form; what the transform must preserve
    is the oscillator quantum n hbar w of the quantized Hamiltonian.
    """
    w = cfg.omega
    worst = 0.0
    for n in INDICES:
        alpha, beta = quantization.transformed_hamiltonian_coefficients(QuantizationScheme.GINZBURG, n, w)
        worst = max(worst, abs(alpha - 1.0), abs(beta - w ** 2) / w ** 2)
        alpha, beta = quantization.transformed_hamiltonian_coefficients(QuantizationScheme.CORRECTED, n, w)
        quantum = quantization.oscillator_quantum(alpha, beta, cfg.hbar)
        worst = max(worst, abs(quantum - n * cfg.hbar * w) / (n * cfg.hbar * w))
    return Check("quantization", "transformed Hamiltonian normal form / quantum", worst, 1e-12)


def check_correspondence_dichotomy(cfg):
    ns = np.linspace(1, 3, 9)
    worst = 0.0
    smallest_violation = np.inf
    for n1 in ns:
        for n2 in ns:
            if n1 == n2:
                continue
            corr = quantization.correspondence_residual(QuantizationScheme.CORRECTED, n1, n2, cfg.omega, 1.0, cfg.hbar, cfg.c)
            ginz = quantization.correspondence_residual(QuantizationScheme.GINZBURG, n1, n2, cfg.omega, 1.0, cfg.hbar, cfg.c)
            worst = max(worst, corr, abs(ginz - abs(n2 / n1 - np.sqrt(n2 / n1))))
            smallest_violation = min(smallest_violation, ginz)
    return Check("quantization", "Corrected residual 0, Ginzburg |n2/n1 - sqrt(n2/n1)| > 0",
                 worst, 1e-12, condition=smallest_violation > 0)


def check_prefactor_ratio(cfg):
    worst = 0.0
    for n in np.linspace(1, 3, 20):
        ginz = quantization.field_prefactor(QuantizationScheme.GINZBURG, n, cfg.omega, 1.0, cfg.hbar, cfg.c)
        corr = quantization.field_prefactor(QuantizationScheme.CORRECTED, n, cfg.omega, 1.0, cfg.hbar, cfg.c)
        worst = max(worst, abs(ginz / corr - 1 / np.sqrt(n)))
    return Check("quantization", "Ginzburg/Corrected prefactor = 1/sqrt(n)", worst, 1e-12)


def check_energy_correspondence(cfg):
    worst = 0.0
    for n in np.linspace(1, 3, 20):
        vac = fields.PlaneWave(1.0, cfg.omega, n=1.0, c=cfg.c)
        med = fields.PlaneWave(1.0 / np.sqrt(n), cfg.omega, n=n, c=cfg.c)
        classical = fields.energy_density(med) / fields.energy_density(vac)
        worst = max(worst, abs(quantization.energy_ratio(QuantizationScheme.CORRECTED, n, cfg.dim, cfg.omega, cfg.hbar) - classical))
    return Check("quantization", "Corrected energy ratio = classical density ratio", worst, 1e-12)


ALL_CHECKS: tuple[Callable[[VerifyConfig], Check], ...] = (
    check_safe_commutator, check_polariton_scaling, check_quadrature_scaling, check_spectrum_linearity,
    check_hermiticity,
    check_wave_equation, check_flux_continuity, check_amplitude_chain, check_energy_density_ratio,
    check_interval_invariance, check_light_cone, check_round_trip, check_vacuum_gamma,
    check_nonrelativistic_limit,
    check_momentum_oracle, check_free_particle_law, check_euler_lagrange_oscillator, check_vacuum_reduction,
    check_time_rescaling, check_dalembert_pendulum,
    check_mode_identities, check_discrete_lagrangian, check_hamiltonian_form, check_correspondence_dichotomy,
    check_prefactor_ratio, check_energy_correspondence,
)


def run_checks(cfg: VerifyConfig | None = None, tolerance: float | None = None) -> list[Check]:
    """Run the whole suite in a fixed order; ``tolerance`` overrides every check's own."""
    cfg = cfg or VerifyConfig()
    results = [check(cfg) for check in ALL_CHECKS]
    if tolerance is not None:
        results = [replace(r, tolerance=tolerance) for r in results]
    return results
