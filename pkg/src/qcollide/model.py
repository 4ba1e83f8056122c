"""States and collision unitaries for registers of 2 to 4 qubits.

Qubit 0 is the system of interest; the remaining qubits are thermal
environment ancillas. Basis ordering is big-endian over the qubit list
(qubit 0 is the most significant bit, with ground=0 and excited=1).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import qmat

NORMALIZATION_TOL = 1e-12

QUBIT_LABELS = ("A", "B", "C", "D")

# Largest inverse-temperature gap fed to exp(); beyond this the ancilla is
# numerically in its ground state anyway.
_BETA_GAP_CAP = 1e6


@dataclass(frozen=True)
class PureQubit:
    """Single-qubit pure state a|g> + b|e>."""

    a: complex
    b: complex

    def __post_init__(self) -> None:
        norm = abs(self.a) ** 2 + abs(self.b) ** 2
        if abs(norm - 1.0) > NORMALIZATION_TOL:
            raise ValueError(f"pure state is not normalized: |a|^2+|b|^2 = {norm!r}")


@dataclass(frozen=True)
class ThermalAncilla:
    """Diagonal single-qubit thermal state with ground/excited weights."""

    w_g: float
    w_e: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.w_g <= 1.0 and 0.0 <= self.w_e <= 1.0):
            raise ValueError(f"weights must lie in [0, 1], got ({self.w_g}, {self.w_e})")
        if abs(self.w_g + self.w_e - 1.0) > NORMALIZATION_TOL:
            raise ValueError(f"weights must sum to 1, got {self.w_g + self.w_e!r}")
        if self.w_e > self.w_g:
            warnings.warn(
                "ancilla has inverted populations (w_e > w_g), i.e. negative temperature",
                stacklevel=2,
            )


@dataclass(frozen=True)
class CollisionUnitary:
    """Unitary acting on a register, coupling one qubit pair with strength p."""

    matrix: np.ndarray
    pair: tuple[int, int]
    p: float
    n_qubits: int


@dataclass(frozen=True)
class Register:
    """Density matrix of the full system-plus-ancillas register."""

    rho: np.ndarray
    n_qubits: int
    labels: tuple[str, ...]

    @property
    def dim(self) -> int:
        return 2 ** self.n_qubits


def pure_qubit_density(q: PureQubit) -> np.ndarray:
    """Rank-1 projector of a pure qubit; entry (0, 1) is a * conj(b)."""
    vec = np.array([q.a, q.b], dtype=complex)
    return np.outer(vec, vec.conj())


def thermal_density(t: ThermalAncilla) -> np.ndarray:
    return np.diag([t.w_g, t.w_e]).astype(complex)


def thermal_from_beta(beta_gap: float) -> ThermalAncilla:
    """Thermal weights from the dimensionless product of inverse temperature and gap.

    w_g = 1 / (1 + exp(-beta_gap)); beta_gap = 0 gives the maximally mixed
    ancilla and large values approach the pure ground state.
    """
    if beta_gap < 0:
        raise ValueError(f"beta_gap must be non-negative, got {beta_gap}")
    w_g = 1.0 / (1.0 + math.exp(-min(beta_gap, _BETA_GAP_CAP)))
    return ThermalAncilla(w_g, 1.0 - w_g)


def pair_collision_unitary(n_qubits: int, pair: tuple[int, int], p: float) -> CollisionUnitary:
    """Build the excitation-exchange collision unitary for one qubit pair.

    Basis states where the pair is doubly ground or doubly excited are left
    fixed, as are all spectator qubits. A single excitation within the pair
    hops to the other qubit with amplitude sqrt(p) and stays with amplitude
    sqrt(1-p); the hop sourced from the higher-indexed qubit of the pair
    carries a minus sign, its reverse a plus sign, making the matrix real
    orthogonal.
    """
    if not 2 <= n_qubits <= 4:
        raise ValueError(f"n_qubits must be 2..4, got {n_qubits}")
    i, j = pair
    if not 0 <= i < j < n_qubits:
        raise ValueError(f"pair {pair} invalid for {n_qubits} qubits (need 0 <= i < j < n)")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"interaction probability must lie in [0, 1], got {p}")
    dim = 2 ** n_qubits
    bit_i = 1 << (n_qubits - 1 - i)
    bit_j = 1 << (n_qubits - 1 - j)
    stay = math.sqrt(1.0 - p)
    hop = math.sqrt(p)
    u = np.zeros((dim, dim), dtype=complex)
    for m in range(dim):
        exc_i = bool(m & bit_i)
        exc_j = bool(m & bit_j)
        if exc_i == exc_j:
            u[m, m] = 1.0
            continue
        u[m, m] = stay
        swapped = m ^ bit_i ^ bit_j
        u[swapped, m] = -hop if exc_j else hop
    return CollisionUnitary(matrix=u, pair=(i, j), p=float(p), n_qubits=n_qubits)


def composite_initial(system: PureQubit, ancillas: list[ThermalAncilla] | tuple[ThermalAncilla, ...]) -> Register:
    """Uncorrelated initial register: system state tensored with each ancilla in order."""
    ancillas = tuple(ancillas)
    if not 1 <= len(ancillas) <= 3:
        raise ValueError(f"need 1 to 3 ancillas, got {len(ancillas)}")
    rho = pure_qubit_density(system)
    for anc in ancillas:
        rho = qmat.kron(rho, thermal_density(anc))
    n = 1 + len(ancillas)
    return Register(rho=rho, n_qubits=n, labels=QUBIT_LABELS[:n])
