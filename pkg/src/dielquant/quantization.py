"""Macroscopic field quantization in a dielectric, Ginzburg and corrected forms.

Both schemes expand A = c sum_l q_l u_l(r) over the same periodic-box plane
waves u = e exp(ik.r)/sqrt(V); they differ only in the momentum conjugate
to q (n^2 qdot vs n qdot) and everything downstream of it.
"""
from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass

import numpy as np

from . import fock
from .fock import QuantizationScheme

GINZBURG = QuantizationScheme.GINZBURG
CORRECTED = QuantizationScheme.CORRECTED


def _check_index(n):
    if not n >= 1.0:
        raise ValueError(f"refractive index must be >= 1, got {n}")


def polarization_basis(k) -> tuple[np.ndarray, np.ndarray]:
    """Two unit vectors orthogonal to k and to each other.

    e1 comes from the coordinate axis least aligned with k, projected off k;
    e2 = khat x e1.
    """
    k = np.asarray(k, dtype=float)
    khat = k / np.linalg.norm(k)
    axis = np.zeros(3)
    axis[int(np.argmin(np.abs(khat)))] = 1.0
    e1 = axis - (axis @ khat) * khat
    e1 /= np.linalg.norm(e1)
    return e1, np.cross(khat, e1)


@dataclass(frozen=True)
class ModeSet:
    """Plane-wave modes of a periodic box; each wavevector carries two polarizations."""

    box: tuple
    wavevectors: tuple
    n: float = 1.0
    c: float = 1.0

    def __post_init__(self):
        box = tuple(float(L) for L in self.box)
        if len(box) != 3 or min(box) <= 0:
            raise ValueError("box needs three positive side lengths")
        wv = tuple(tuple(int(m) for m in w) for w in self.wavevectors)
        if any(len(w) != 3 for w in wv):
            raise ValueError("wavevectors are integer triples")
        if any(w == (0, 0, 0) for w in wv):
            raise ValueError("the zero wavevector has no propagating mode")
        _check_index(self.n)
        object.__setattr__(self, "box", box)
        object.__setattr__(self, "wavevectors", wv)

    @property
    def volume(self) -> float:
        Lx, Ly, Lz = self.box
        return Lx * Ly * Lz

    def __len__(self):
        return 2 * len(self.wavevectors)

    def labels(self):
        return [(l, lam) for l in range(len(self.wavevectors)) for lam in (1, 2)]

    def _check(self, l, lam):
        if not (0 <= l < len(self.wavevectors)) or lam not in (1, 2):
            raise ValueError(f"no mode (l={l}, polarization={lam})")

    def k(self, l) -> np.ndarray:
        self._check(l, 1)
        return 2 * np.pi * np.array(self.wavevectors[l]) / np.array(self.box)

    def polarization(self, l, lam) -> np.ndarray:
        self._check(l, lam)
        return polarization_basis(self.k(l))[lam - 1]

    def omega(self, l) -> float:
        return self.c * float(np.linalg.norm(self.k(l))) / self.n

    def max_index(self) -> int:
        return max(abs(m) for w in self.wavevectors for m in w)

    def min_grid(self) -> int:
        return 2 * self.max_index() + 1


def mode_function(modes: ModeSet, l: int, lam: int, r) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    if r.shape != (3,) or np.any(r < 0) or np.any(r > np.array(modes.box)):
        raise ValueError(f"position {r} is outside the quantization box")
    e = modes.polarization(l, lam)
    return e * np.exp(1j * (modes.k(l) @ r)) / np.sqrt(modes.volume)


def _grid(modes: ModeSet, G: int):
    if G < modes.min_grid():
        raise ValueError(f"grid size {G} too coarse; need G >= {modes.min_grid()}")
    axes = [L * np.arange(G) / G for L in modes.box]
    pts = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, 3)
    return pts, modes.volume / G ** 3


def _sampled(modes, pts, l, lam):
    """(u, curl u) sampled at pts, with curl -> i k x."""
    k = modes.k(l)
    e = modes.polarization(l, lam)
    phase = np.exp(1j * pts @ k)[:, None] / np.sqrt(modes.volume)
    return e * phase, 1j * np.cross(k, e) * phase


def _inner(f, g, dV):
    return complex(np.sum(np.conj(f) * g) * dV)


def overlap_matrix(modes: ModeSet, G: int) -> np.ndarray:
    pts, dV = _grid(modes, G)
    U = [_sampled(modes, pts, l, lam)[0] for l, lam in modes.labels()]
    return np.array([[_inner(f, g, dV) for g in U] for f in U])


def orthonormality_residual(modes: ModeSet, G: int) -> float:
    """max |<u, u'> - delta| over mode pairs, by uniform-grid quadrature."""
    S = overlap_matrix(modes, G)
    return float(np.max(np.abs(S - np.eye(len(modes)))))


def curl_identity_residual(modes: ModeSet, l, lam, l2, lam2, G: int) -> float:
    """|int curl u* . curl u' - int u* . curl curl u'| on the grid."""
    pts, dV = _grid(modes, G)
    u1, curl1 = _sampled(modes, pts, l, lam)
    u2, curl2 = _sampled(modes, pts, l2, lam2)
    k2 = modes.k(l2)
    curlcurl2 = np.cross(1j * k2, curl2)
    return abs(_inner(curl1, curl2, dV) - _inner(u1, curlcurl2, dV))


def discrete_lagrangian_matrices(modes: ModeSet, G: int) -> tuple[np.ndarray, np.ndarray]:
    """Kinetic and potential coefficient matrices from substituting the expansion.

    With A = c sum q_l u_l the field Lagrangian 1/2 int (n^2/c^2 |dA/dt|^2 - |curl A|^2)
    becomes 1/2 (qdot^T M qdot - q^T K q); M and K are returned.
    """
    pts, dV = _grid(modes, G)
    samples = [_sampled(modes, pts, l, lam) for l, lam in modes.labels()]
    c, n = modes.c, modes.n
    M = np.array([[(n ** 2 / c ** 2) * c ** 2 * _inner(f[0], g[0], dV) for g in samples] for f in samples])
    K = np.array([[c ** 2 * _inner(f[1], g[1], dV) for g in samples] for f in samples])
    return M, K


def field_lagrangian(modes: ModeSet, q, qdot, G: int) -> float:
    """Field Lagrangian of A = c sum q_l u_l evaluated directly on the grid."""
    pts, dV = _grid(modes, G)
    q = np.asarray(q, dtype=float)
    qdot = np.asarray(qdot, dtype=float)
    A_dot = np.zeros((pts.shape[0], 3), dtype=complex)
    curl_A = np.zeros_like(A_dot)
    for idx, (l, lam) in enumerate(modes.labels()):
        u, cu = _sampled(modes, pts, l, lam)
        A_dot += modes.c * qdot[idx] * u
        curl_A += modes.c * q[idx] * cu
    kinetic = (modes.n / modes.c) ** 2 * np.sum(np.abs(A_dot) ** 2) * dV
    potential = np.sum(np.abs(curl_A) ** 2) * dV
    return float(0.5 * (kinetic - potential))


def mode_lagrangian(modes: ModeSet, q, qdot) -> float:
    """1/2 sum (n^2 qdot^2 - n^2 omega^2 q^2)."""
    omegas = np.array([modes.omega(l) for l, _ in modes.labels()])
    q = np.asarray(q, dtype=float)
    qdot = np.asarray(qdot, dtype=float)
    n2 = modes.n ** 2
    return float(0.5 * np.sum(n2 * qdot ** 2 - n2 * omegas ** 2 * q ** 2))


def conjugate_momentum_coefficient(scheme, n: float) -> float:
    """p / qdot: n^2 for Ginzburg, n for the proper-time momentum."""
    scheme = QuantizationScheme.parse(scheme)
    _check_index(n)
    return float(n ** 2) if scheme is GINZBURG else float(n)


def transform_scales(scheme, n: float) -> tuple[float, float]:
    """(P/p, Q/q) of the scheme's canonical transformation."""
    scheme = QuantizationScheme.parse(scheme)
    _check_index(n)
    if scheme is GINZBURG:
        return 1.0 / n, float(n)
    return float(np.sqrt(n)), 1.0 / np.sqrt(n)


TRANSFORM_TEXT = {GINZBURG: "P = p/n, Q = n q", CORRECTED: "P = sqrt(n) p, Q = q/sqrt(n)"}


def canonical_transform(scheme, n: float, p, q):
    sp, sq = transform_scales(scheme, n)
    return sp * np.asarray(p), sq * np.asarray(q)


def hamiltonian_coefficients(scheme, n: float, omega: float) -> tuple[float, float]:
    """(alpha, beta) with H = 1/2 (alpha p^2 + beta q^2) for one mode."""
    scheme = QuantizationScheme.parse(scheme)
    _check_index(n)
    if scheme is GINZBURG:
        return 1.0 / n ** 2, n ** 2 * omega ** 2
    return 1.0, n ** 2 * omega ** 2


def transformed_hamiltonian_coefficients(scheme, n: float, omega: float) -> tuple[float, float]:
    """Coefficients of H = 1/2 (alpha' P^2 + beta' Q^2) after the canonical transform."""
    alpha, beta = hamiltonian_coefficients(scheme, n, omega)
    sp, sq = transform_scales(scheme, n)
    return alpha / sp ** 2, beta / sq ** 2


def oscillator_quantum(alpha: float, beta: float, hbar: float = 1.0) -> float:
    """Level spacing of H = 1/2 (alpha P^2 + beta Q^2) when [Q, P] = i hbar."""
    return hbar * float(np.sqrt(alpha * beta))


def field_prefactor(scheme, n: float, omega: float, V: float, hbar: float = 1.0, c: float = 1.0) -> float:
    """Per-mode amplitude multiplying (a e^{ikr} + a^dag e^{-ikr}) in the field operator."""
    scheme = QuantizationScheme.parse(scheme)
    if min(n, omega, V, hbar, c) <= 0:
        raise ValueError("field prefactor arguments must be positive")
    _check_index(n)
    medium = n ** 2 if scheme is GINZBURG else n
    return c * float(np.sqrt(hbar / (2 * medium * omega * V)))


def correspondence_residual(scheme, n1: float, n2: float, omega: float = 1.0, V: float = 1.0,
                            hbar: float = 1.0, c: float = 1.0) -> float:
    """How far the prefactor ratio across two media is from the classical sqrt(n2/n1)."""
    ratio = field_prefactor(scheme, n1, omega, V, hbar, c) / field_prefactor(scheme, n2, omega, V, hbar, c)
    return abs(ratio - float(np.sqrt(n2 / n1)))


def energy_ratio(scheme, n: float, dim: int = fock.DEFAULT_DIM, omega: float = 1.0, hbar: float = 1.0) -> float:
    """Per-quantum energy over hbar omega, read off the diagonalized Hamiltonian.

    Both schemes quantize with boson operators, as each procedure assumes.
    """
    space = fock.FockSpace(dim)
    H = fock.hamiltonian(scheme, fock.boson_pair(space), n, omega, hbar)
    levels = fock.certified_levels(H)
    return float(np.mean(np.diff(levels)) / (hbar * omega))


@dataclass(frozen=True)
class SchemeReport:
    scheme: str
    n: float
    n_ref: float
    momentum_coeff: float
    transform: str
    prefactor: float
    commutator_scale: float
    energy_ratio: float
    correspondence_residual: float

    def __post_init__(self):
        for name in ("n", "n_ref", "momentum_coeff", "prefactor", "commutator_scale",
                     "energy_ratio", "correspondence_residual"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"report field {name} is not finite")

    def as_dict(self) -> dict:
        return asdict(self)


def build_report(scheme, n: float, n_ref: float = 1.0, omega: float = 1.0, V: float = 1.0,
                 hbar: float = 1.0, c: float = 1.0, dim: int = fock.DEFAULT_DIM) -> SchemeReport:
    scheme = QuantizationScheme.parse(scheme)
    space = fock.FockSpace(dim)
    lower, upper = fock.boson_pair(space)
    return SchemeReport(
        scheme=scheme.value,
        n=float(n),
        n_ref=float(n_ref),
        momentum_coeff=conjugate_momentum_coefficient(scheme, n),
        transform=TRANSFORM_TEXT[scheme],
        prefactor=field_prefactor(scheme, n, omega, V, hbar, c),
        commutator_scale=fock.commutator_scale(lower, upper).real,
        energy_ratio=energy_ratio(scheme, n, dim, omega, hbar),
        correspondence_residual=correspondence_residual(scheme, n_ref, n, omega, V, hbar, c),
    )


def compare_schemes(n_values, omega=1.0, V=1.0, hbar=1.0, c=1.0, dim=fock.DEFAULT_DIM) -> list[SchemeReport]:
    """Reports for both schemes, ordered by scheme then ascending n; n_ref is the first entry."""
    n_values = [float(x) for x in n_values]
    if not n_values:
        raise ValueError("need at least one refractive index")
    n_ref = n_values[0]
    return [build_report(s, n, n_ref, omega, V, hbar, c, dim)
            for s, n in itertools.product(QuantizationScheme, sorted(n_values))]
