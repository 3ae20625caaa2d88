"""Dense operators on n-qudit spaces, generalized Paulis and the Fourier gate.

Basis convention, fixed for the whole package: the computational index of
an n-qudit state is k = sum_i k_i * d**(n-i), i.e. qudit 1 is the most
significant digit.  Every other module states its bases relative to this.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import reduce

import numpy as np

DEFAULT_TOL = 1e-10
SIZE_BOUND_ENV = "PARABRAID_SIZE_BOUND"
DEFAULT_SIZE_BOUND = 4096


class SizeBoundError(ValueError):
    """Raised when a requested space exceeds the configured desk-scale bound."""


def size_bound() -> int:
    """Current d**n cap; override with the PARABRAID_SIZE_BOUND env var."""
    raw = os.environ.get(SIZE_BOUND_ENV)
    if raw is None:
        return DEFAULT_SIZE_BOUND
    return int(raw)


@dataclass(frozen=True)
class QuditSystem:
    """n qudits of dimension d, total space dimension d**n."""

    d: int
    n: int

    def __post_init__(self) -> None:
        if self.d < 2:
            raise ValueError(f"qudit dimension must be >= 2, got {self.d}")
        if self.n < 1:
            raise ValueError(f"qudit count must be >= 1, got {self.n}")
        if self.d**self.n > size_bound():
            raise SizeBoundError(
                f"space dimension {self.d}**{self.n} exceeds the bound {size_bound()}"
            )

    @property
    def dim(self) -> int:
        return self.d**self.n

    def index(self, digits) -> int:
        """Computational index of a digit tuple (qudit 1 most significant)."""
        if len(digits) != self.n:
            raise ValueError(f"expected {self.n} digits, got {len(digits)}")
        k = 0
        for digit in digits:
            k = k * self.d + (digit % self.d)
        return k

    def digits(self, index: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.n):
            index, rem = divmod(index, self.d)
            out.append(rem)
        return tuple(reversed(out))


class DenseOperator:
    """A dense complex matrix acting on an n-qudit space of dimension d**n."""

    __slots__ = ("mat", "d", "n")

    def __init__(self, mat: np.ndarray, d: int, n: int):
        mat = np.asarray(mat, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"operator must be a square matrix, got shape {mat.shape}")
        if mat.shape[0] != d**n:
            raise ValueError(f"matrix dimension {mat.shape[0]} is not {d}**{n}")
        mat.setflags(write=False)
        self.mat = mat
        self.d = d
        self.n = n

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @classmethod
    def identity(cls, system: QuditSystem) -> "DenseOperator":
        return cls(np.eye(system.dim), system.d, system.n)

    def _like(self, mat: np.ndarray) -> "DenseOperator":
        return DenseOperator(mat, self.d, self.n)

    def dag(self) -> "DenseOperator":
        return self._like(self.mat.conj().T)

    def __matmul__(self, other: "DenseOperator") -> "DenseOperator":
        if other.dim != self.dim:
            raise ValueError("dimension mismatch in operator product")
        return self._like(self.mat @ other.mat)

    def __mul__(self, scalar: complex) -> "DenseOperator":
        return self._like(self.mat * scalar)

    __rmul__ = __mul__

    def __add__(self, other: "DenseOperator") -> "DenseOperator":
        return self._like(self.mat + other.mat)

    def __sub__(self, other: "DenseOperator") -> "DenseOperator":
        return self._like(self.mat - other.mat)

    def power(self, k: int) -> "DenseOperator":
        return self._like(np.linalg.matrix_power(self.mat, k))

    def max_diff(self, other: "DenseOperator") -> float:
        return float(np.max(np.abs(self.mat - other.mat)))

    def unitarity_defect(self) -> float:
        gram = self.mat @ self.mat.conj().T
        return float(np.max(np.abs(gram - np.eye(self.dim))))

    def is_unitary(self, tol: float = DEFAULT_TOL) -> bool:
        return self.unitarity_defect() <= tol

    def equal(self, other: "DenseOperator", tol: float = DEFAULT_TOL) -> bool:
        return self.max_diff(other) <= tol

    def commutator_norm(self, other: "DenseOperator") -> float:
        return float(np.max(np.abs(self.mat @ other.mat - other.mat @ self.mat)))

    def is_monomial(self, tol: float = DEFAULT_TOL) -> bool:
        """Exactly one unit-modulus entry per row and column, zeros elsewhere."""
        mags = np.abs(self.mat)
        big = mags > tol
        if not (big.sum(axis=0) == 1).all() or not (big.sum(axis=1) == 1).all():
            return False
        return bool(np.max(np.abs(mags[big] - 1.0)) <= tol)

    def __repr__(self) -> str:
        return f"DenseOperator(dim={self.dim}, d={self.d}, n={self.n})"


def kron_all(mats) -> np.ndarray:
    return reduce(np.kron, mats)


def embed(system: QuditSystem, i: int, local: np.ndarray) -> DenseOperator:
    """Place a single-qudit matrix on qudit i (1-based), identity elsewhere."""
    if not 1 <= i <= system.n:
        raise IndexError(f"qudit index {i} out of range 1..{system.n}")
    left = np.eye(system.d ** (i - 1))
    right = np.eye(system.d ** (system.n - i))
    return DenseOperator(kron_all([left, local, right]), system.d, system.n)


def _x_matrix(d: int) -> np.ndarray:
    x = np.zeros((d, d), dtype=complex)
    for k in range(d):
        x[(k + 1) % d, k] = 1.0
    return x


def _z_matrix(d: int) -> np.ndarray:
    return np.diag(np.exp(2j * np.pi * np.arange(d) / d))


def pauli_x(system: QuditSystem, i: int) -> DenseOperator:
    """Cyclic shift X|k> = |k+1 mod d> on qudit i."""
    return embed(system, i, _x_matrix(system.d))


def pauli_z(system: QuditSystem, i: int) -> DenseOperator:
    """Phase operator Z|k> = omega**k |k> on qudit i."""
    return embed(system, i, _z_matrix(system.d))


def fourier_gate(d: int) -> DenseOperator:
    """Qudit Fourier gate F[k, m] = omega**(k*m) / sqrt(d).

    Satisfies F X Fdag = Z and F Z Fdag = Xdag; reduces to the Hadamard
    gate at d = 2.
    """
    if d < 2:
        raise ValueError(f"qudit dimension must be >= 2, got {d}")
    k = np.arange(d)
    mat = np.exp(2j * np.pi * np.outer(k, k % d) / d) / math.sqrt(d)
    return DenseOperator(mat, d, 1)


def controlled_shift(d: int) -> DenseOperator:
    """Two-qudit gate |i, j> -> |i, i+j mod d> (control on the first qudit)."""
    mat = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            mat[i * d + (i + j) % d, i * d + j] = 1.0
    return DenseOperator(mat, d, 2)


def controlled_phase(d: int) -> DenseOperator:
    """Two-qudit gate |i, j> -> omega**(i*j) |i, j>."""
    i = np.arange(d * d) // d
    j = np.arange(d * d) % d
    return DenseOperator(np.diag(np.exp(2j * np.pi * i * j / d)), d, 2)


def equal_up_to_phase(a: DenseOperator, b: DenseOperator, tol: float = DEFAULT_TOL) -> complex | None:
    """Unit complex lambda with max|A - lambda*B| <= tol, or None.

    The candidate phase is read off at the largest-modulus entry of B so
    that near-zero entries never enter a division.
    """
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    flat_b = b.mat.ravel()
    idx = int(np.argmax(np.abs(flat_b)))
    pivot = flat_b[idx]
    if abs(pivot) <= tol:
        # b is numerically zero; equal only if a is too.
        return 1.0 + 0.0j if float(np.max(np.abs(a.mat))) <= tol else None
    lam = a.mat.ravel()[idx] / pivot
    if abs(lam) == 0.0:
        return None
    lam /= abs(lam)
    if float(np.max(np.abs(a.mat - lam * b.mat))) <= tol:
        return complex(lam)
    return None
