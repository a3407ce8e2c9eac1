"""Truncated single-mode Fock-space operators.

Ladder, quadrature and Hamiltonian matrices on the levels |0>, ..., |dim-1>.
Truncation breaks [a, a^dag] = 1 at the top level, so every commutator and
spectrum statement is made on the *safe subspace* (levels 0..dim-2) or on the
lowest dim/2 eigenvalues.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

DEFAULT_DIM = 20
HERMITIAN_TOL = 1e-10


class QuantizationScheme(enum.Enum):
    """Which macroscopic quantization procedure an operator or report follows."""

    GINZBURG = "Ginzburg"
    CORRECTED = "Corrected"

    @classmethod
    def parse(cls, value: "str | QuantizationScheme") -> "QuantizationScheme":
        if isinstance(value, cls):
            return value
        for member in cls:
            if member.value.lower() == str(value).lower() or member.name.lower() == str(value).lower():
                return member
        raise ValueError(f"unknown quantization scheme {value!r}")


@dataclass(frozen=True)
class FockSpace:
    dim: int = DEFAULT_DIM

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 3:
            raise ValueError(f"Fock space dimension must be an integer >= 3, got {self.dim}")


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Dense complex operator on a :class:`FockSpace`.

    The entries are stored read-only; arithmetic returns new instances.
    """

    space: FockSpace
    entries: np.ndarray

    # defer numpy-scalar arithmetic to our __rmul__
    __array_ufunc__ = None

    def __post_init__(self):
        m = np.array(self.entries, dtype=np.complex128)
        if m.shape != (self.space.dim, self.space.dim):
            raise ValueError(f"entries have shape {m.shape}, expected {(self.space.dim,) * 2}")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.space.dim

    def dag(self) -> "OperatorMatrix":
        return OperatorMatrix(self.space, self.entries.conj().T)

    def _check(self, other: "OperatorMatrix"):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        if other.space.dim != self.space.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return None

    def __matmul__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return OperatorMatrix(self.space, self.entries @ other.entries)

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return OperatorMatrix(self.space, self.entries + other.entries)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return OperatorMatrix(self.space, self.entries - other.entries)

    def __mul__(self, scalar):
        if isinstance(scalar, OperatorMatrix):
            return NotImplemented
        return OperatorMatrix(self.space, complex(scalar) * self.entries)

    __rmul__ = __mul__

    def __neg__(self):
        return OperatorMatrix(self.space, -self.entries)

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.conj().T)))

    def safe_block(self, drop: int = 1) -> np.ndarray:
        """Entries restricted to levels 0..dim-1-drop."""
        k = self.dim - drop
        return self.entries[:k, :k]


def ladder_matrix(dim: int) -> np.ndarray:
    """Raw annihilation matrix with a[m-1, m] = sqrt(m); any dim >= 1."""
    if dim < 1:
        raise ValueError("dim must be positive")
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(np.complex128)


def annihilator(space: FockSpace) -> OperatorMatrix:
    return OperatorMatrix(space, ladder_matrix(space.dim))


def creator(space: FockSpace) -> OperatorMatrix:
    return annihilator(space).dag()


def identity(space: FockSpace) -> OperatorMatrix:
    return OperatorMatrix(space, np.eye(space.dim))


def boson_pair(space: FockSpace) -> tuple[OperatorMatrix, OperatorMatrix]:
    a = annihilator(space)
    return a, a.dag()


def commutator(A: OperatorMatrix, B: OperatorMatrix) -> OperatorMatrix:
    if A.dim != B.dim:
        raise ValueError(f"dimension mismatch: {A.dim} vs {B.dim}")
    return A @ B - B @ A


def polariton_pair(space: FockSpace, n: float) -> tuple[OperatorMatrix, OperatorMatrix]:
    """Medium ladder operators zeta = sqrt(n) a, whose commutator is n."""
    if not n >= 1.0:
        raise ValueError(f"refractive index must be >= 1, got {n}")
    a = annihilator(space)
    zeta = np.sqrt(n) * a
    return zeta, zeta.dag()


def quadratures(ladder, omega: float, hbar: float = 1.0) -> tuple[OperatorMatrix, OperatorMatrix]:
    """Momentum and position quadratures (P, Q) built from a ladder pair."""
    if not omega > 0 or not hbar > 0:
        raise ValueError("omega and hbar must be positive")
    lower, upper = ladder
    P = 1j * np.sqrt(hbar * omega / 2.0) * (upper - lower)
    Q = np.sqrt(hbar / (2.0 * omega)) * (upper + lower)
    return P, Q


def hamiltonian(scheme, ladder, n: float, omega: float, hbar: float = 1.0) -> OperatorMatrix:
    """Single-mode effective Hamiltonian for ``scheme``.

    Ginzburg: (hbar omega / 2)(zeta^dag zeta + zeta zeta^dag), with ``ladder`` the zeta pair.
    Corrected: (n hbar omega / 2)(a^dag a + a a^dag), with ``ladder`` the boson pair.
    Pairing the right ladder with the scheme is the caller's job.
    """
    scheme = QuantizationScheme.parse(scheme)
    if not n >= 1.0:
        raise ValueError(f"refractive index must be >= 1, got {n}")
    if not omega > 0 or not hbar > 0:
        raise ValueError("omega and hbar must be positive")
    lower, upper = ladder
    symmetric = upper @ lower + lower @ upper
    scale = hbar * omega / 2.0
    if scheme is QuantizationScheme.CORRECTED:
        scale *= n
    return scale * symmetric


def spectrum(H: OperatorMatrix) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian operator.

    Only the lowest dim/2 values are trustworthy; truncation distorts the top.
    """
    err = H.hermiticity_error()
    if err > HERMITIAN_TOL:
        raise ValueError(f"operator is not Hermitian (max |H - H^dag| = {err:.3e})")
    return np.linalg.eigvalsh(H.entries)


def certified_levels(H: OperatorMatrix) -> np.ndarray:
    return spectrum(H)[: H.dim // 2]


def commutator_scale(A: OperatorMatrix, B: OperatorMatrix) -> complex:
    """Mean diagonal of [A, B] on the safe subspace."""
    block = commutator(A, B).safe_block()
    return complex(np.mean(np.diag(block)))
