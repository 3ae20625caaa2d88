"""Parafermion and parity operators from the Jordan-Wigner string construction.

2*n_pairs parafermion operators gamma_1 .. gamma_{2n} act on n_pairs qudits:

    gamma_{2i-1} = (prod_{j<i} X_j) Z_i
    gamma_{2i}   = omega**((d+1)/2) (prod_{j<=i} X_j) Z_i

They satisfy gamma_j**d = 1 and the ordered exchange relation
gamma_j gamma_k = omega**sgn(k-j) gamma_k gamma_j.  The parity of the pair
(gamma_i, gamma_{i+1}) is Lambda_i = omega**((d+1)/2) gamma_i gamma_{i+1}^dag,
a local monomial operator with spectrum {1, omega, .., omega**(d-1)}.

All invariants are validated eagerly at construction time; a convention bug
surfaces as a build failure rather than a wrong result downstream.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .phases import CyclotomicPhase
from .systems import DenseOperator, QuditSystem, fourier_gate, pauli_x, pauli_z

BUILD_TOL = 1e-12


@dataclass(frozen=True)
class ParafermionSystem:
    """2*n_pairs parafermion operators realized on n_pairs qudits."""

    d: int
    n_pairs: int
    system: QuditSystem
    gammas: tuple[DenseOperator, ...] = field(repr=False)

    @property
    def n_modes(self) -> int:
        return 2 * self.n_pairs

    def gamma(self, j: int) -> DenseOperator:
        """gamma_j, 1-based."""
        if not 1 <= j <= self.n_modes:
            raise IndexError(f"parafermion index {j} out of range 1..{self.n_modes}")
        return self.gammas[j - 1]

    def parity(self, i: int) -> DenseOperator:
        return parity(self, i)


def build_parafermions(d: int, n_pairs: int, validate: bool = True) -> ParafermionSystem:
    """Construct the Jordan-Wigner parafermions and check their algebra.

    Raises ValueError if any defining relation fails beyond 1e-12, which
    at desk scale only happens on an implementation bug.
    """
    if n_pairs < 1:
        raise ValueError(f"need at least one parafermion pair, got {n_pairs}")
    system = QuditSystem(d, n_pairs)
    xs = [pauli_x(system, i + 1) for i in range(n_pairs)]
    zs = [pauli_z(system, i + 1) for i in range(n_pairs)]
    half_omega = CyclotomicPhase.omega_half(d, d + 1).as_complex()

    gammas: list[DenseOperator] = []
    string = DenseOperator.identity(system)
    for i in range(n_pairs):
        gammas.append(string @ zs[i])
        string = string @ xs[i]
        gammas.append(half_omega * (string @ zs[i]))

    sys_ = ParafermionSystem(d, n_pairs, system, tuple(gammas))
    if validate:
        residual = check_defining_relations(sys_)
        if residual > BUILD_TOL:
            raise ValueError(f"parafermion algebra violated: residual {residual:.3e}")
    return sys_


def check_defining_relations(sys_: ParafermionSystem) -> float:
    """Max residual over unitarity, gamma**d = 1 and the exchange relations."""
    d = sys_.d
    omega = CyclotomicPhase.omega(d).as_complex()
    eye = np.eye(sys_.system.dim)
    worst = 0.0
    for g in sys_.gammas:
        worst = max(worst, g.unitarity_defect())
        worst = max(worst, float(np.max(np.abs(g.power(d).mat - eye))))
    for j in range(sys_.n_modes):
        for k in range(j + 1, sys_.n_modes):
            gj, gk = sys_.gammas[j], sys_.gammas[k]
            lhs = gj.mat @ gk.mat
            rhs = omega * (gk.mat @ gj.mat)
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def parity(sys_: ParafermionSystem, i: int) -> DenseOperator:
    """Pair parity Lambda_i = omega**((d+1)/2) gamma_i gamma_{i+1}^dag."""
    if not 1 <= i <= sys_.n_modes - 1:
        raise IndexError(f"parity index {i} out of range 1..{sys_.n_modes - 1}")
    pref = CyclotomicPhase.omega_half(sys_.d, sys_.d + 1).as_complex()
    return pref * (sys_.gamma(i) @ sys_.gamma(i + 1).dag())


def all_parities(sys_: ParafermionSystem) -> tuple[DenseOperator, ...]:
    return tuple(parity(sys_, i) for i in range(1, sys_.n_modes))


def overall_parity(sys_: ParafermionSystem) -> DenseOperator:
    """Product Lambda_1 Lambda_3 ... Lambda_{2n-1}, conserved by all braids."""
    out = DenseOperator.identity(sys_.system)
    for i in range(1, sys_.n_modes, 2):
        out = out @ parity(sys_, i)
    return out


@dataclass(frozen=True)
class ParityAlgebraReport:
    far_commuting: float
    adjacent_exchange: float
    power_identity: float

    @property
    def max_residual(self) -> float:
        return max(self.far_commuting, self.adjacent_exchange, self.power_identity)


def check_parity_algebra(sys_: ParafermionSystem) -> ParityAlgebraReport:
    """Residuals of the parity exchange algebra.

    Distant parities commute; adjacent ones satisfy
    Lambda_i Lambda_j = omega**sgn(j-i) Lambda_j Lambda_i.
    """
    d = sys_.d
    omega = CyclotomicPhase.omega(d).as_complex()
    parities = all_parities(sys_)
    eye = np.eye(sys_.system.dim)
    far = 0.0
    adjacent = 0.0
    power = 0.0
    for li in parities:
        power = max(power, float(np.max(np.abs(li.power(d).mat - eye))))
    for a in range(len(parities)):
        for b in range(a + 1, len(parities)):
            la, lb = parities[a].mat, parities[b].mat
            if b - a > 1:
                far = max(far, float(np.max(np.abs(la @ lb - lb @ la))))
            else:
                adjacent = max(adjacent, float(np.max(np.abs(la @ lb - omega * (lb @ la)))))
    return ParityAlgebraReport(far, adjacent, power)


@dataclass(frozen=True)
class ParityEigenbasis:
    """Eigenbasis of an odd-indexed parity Lambda_{2q-1} = X_q^dag.

    Column m of `vectors` is the single-qudit state
    |m> = (1/sqrt(d)) sum_k omega**(m*k) |k>, an eigenvector with
    eigenvalue omega**m.  The amplitude on k = 0 is real positive, which
    pins the phase convention used by the logical encoding.
    """

    d: int
    qudit: int
    vectors: np.ndarray

    def vector(self, m: int) -> np.ndarray:
        return self.vectors[:, m % self.d]


def parity_eigenbasis(sys_: ParafermionSystem, i: int) -> ParityEigenbasis:
    """Closed-form eigenbasis of Lambda_i for odd i."""
    if not 1 <= i <= sys_.n_modes - 1:
        raise IndexError(f"parity index {i} out of range 1..{sys_.n_modes - 1}")
    if i % 2 == 0:
        raise ValueError("eigenbasis is only provided for odd-indexed parities")
    d = sys_.d
    vectors = fourier_gate(d).mat.copy()
    # Local sanity check: X^dag on the qudit acts diagonally on these columns.
    xdag = np.zeros((d, d), dtype=complex)
    for k in range(d):
        xdag[k, (k + 1) % d] = 1.0
    eigs = np.exp(2j * np.pi * np.arange(d) / d)
    defect = float(np.max(np.abs(xdag @ vectors - vectors @ np.diag(eigs))))
    if defect > BUILD_TOL:
        raise AssertionError(f"eigenbasis construction defect {defect:.3e}")
    return ParityEigenbasis(d, qudit=(i + 1) // 2, vectors=vectors)
