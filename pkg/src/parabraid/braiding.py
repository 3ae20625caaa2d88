"""Braid operators built from coefficient vectors, and braid word composition.

The exchange of parafermions i and i+1 is represented by

    U_i = (1/sqrt(d)) sum_m c_m (Lambda_i)**m,

the most general unitary that commutes with every parafermion outside the
exchanged pair.  Words in the braid generators are kept in time order:
entry 0 of a BraidWord acts first, so the unitary of a word is the
right-to-left matrix product of its entries.  The compact text form used
by the CLI and fixtures is written in operator order instead (leftmost
factor applied last, the way products are usually typeset), and parsing
reverses it; both notations of the canonical entangling words are stored
below to keep the two conventions honest against each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constraints import CoefficientVector, FZCParams, fzc_coefficients, unitarity_residual
from .parafermions import ParafermionSystem, all_parities, build_parafermions, overall_parity, parity_eigenbasis
from .phases import CyclotomicPhase, phase_from_complex
from .systems import DenseOperator, equal_up_to_phase

COEFF_TOL = 1e-9
BUILD_TOL = 1e-12


@dataclass(frozen=True)
class BraidWord:
    """A sequence of signed generator letters, entry 0 acting first in time."""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        for idx, exp in self.entries:
            if idx < 1:
                raise ValueError(f"generator index must be >= 1, got {idx}")
            if exp not in (+1, -1):
                raise ValueError(f"exponent must be +1 or -1, got {exp}")

    @classmethod
    def identity(cls) -> "BraidWord":
        return cls(())

    @classmethod
    def from_text(cls, text: str) -> "BraidWord":
        """Parse the operator-order text form, e.g. "4 3 | 5 4 6 5 | -3 -4".

        Tokens are signed generator indices; "-i" is the inverse generator;
        pipes are cosmetic.  The leftmost token is the last factor applied,
        so the parsed entries are the reversed token list.
        """
        tokens = [t for t in text.replace("|", " ").split() if t]
        ops = []
        for tok in tokens:
            val = int(tok)
            if val == 0:
                raise ValueError("generator index 0 is not valid")
            ops.append((abs(val), 1 if val > 0 else -1))
        return cls(tuple(reversed(ops)))

    def to_text(self) -> str:
        """Operator-order text form (inverse of from_text)."""
        return " ".join(str(idx * exp) for idx, exp in reversed(self.entries))

    def inverse(self) -> "BraidWord":
        return BraidWord(tuple((idx, -exp) for idx, exp in reversed(self.entries)))

    def __mul__(self, later: "BraidWord") -> "BraidWord":
        """Concatenation in time: self acts first, then `later`."""
        return BraidWord(self.entries + later.entries)

    def power(self, k: int) -> "BraidWord":
        if k < 0:
            return self.inverse().power(-k)
        out = BraidWord.identity()
        for _ in range(k):
            out = out * self
        return out

    def max_index(self) -> int:
        return max((idx for idx, _ in self.entries), default=0)

    def __len__(self) -> int:
        return len(self.entries)


# Canonical entangling words, stored in both notations so an ordering bug in
# from_text shows up as a fixture mismatch rather than a wrong gate.
FOURIER_WORD_TEXT = "1 2 1"
ENTANGLING_S_TEXT = "4 3 | 5 4 6 5 | 5 4 6 5 | -3 -4"
ENTANGLING_S_DAGGER_TEXT = "4 3 | -5 -6 -4 -5 | -5 -6 -4 -5 | -3 -4"
CONTROLLED_PHASE_T_TEXT = "4 3 5 4 | 4 3 5 4"

CANONICAL_WORD_ENTRIES = {
    "F": ((1, 1), (2, 1), (1, 1)),
    "S": (
        (4, -1), (3, -1),
        (5, 1), (6, 1), (4, 1), (5, 1),
        (5, 1), (6, 1), (4, 1), (5, 1),
        (3, 1), (4, 1),
    ),
    "S_dagger": (
        (4, -1), (3, -1),
        (5, -1), (4, -1), (6, -1), (5, -1),
        (5, -1), (4, -1), (6, -1), (5, -1),
        (3, 1), (4, 1),
    ),
    "T": ((4, 1), (5, 1), (3, 1), (4, 1), (4, 1), (5, 1), (3, 1), (4, 1)),
}

CANONICAL_WORD_TEXTS = {
    "F": FOURIER_WORD_TEXT,
    "S": ENTANGLING_S_TEXT,
    "S_dagger": ENTANGLING_S_DAGGER_TEXT,
    "T": CONTROLLED_PHASE_T_TEXT,
}


def canonical_word(name: str) -> BraidWord:
    if name not in CANONICAL_WORD_TEXTS:
        raise KeyError(f"unknown canonical word {name!r}")
    word = BraidWord.from_text(CANONICAL_WORD_TEXTS[name])
    if word.entries != CANONICAL_WORD_ENTRIES[name]:
        raise AssertionError(f"canonical word fixtures disagree for {name!r}")
    return word


class BraidRepresentation:
    """Cached braid generators U_1 .. U_{2n-1} for one coefficient vector."""

    def __init__(self, system: ParafermionSystem, coefficients: CoefficientVector,
                 fzc: FZCParams | None = None):
        if coefficients.d != system.d:
            raise ValueError("coefficient vector dimension does not match the system")
        defect = unitarity_residual(coefficients)
        if defect > COEFF_TOL:
            raise ValueError(f"non-unitary coefficients: residual {defect:.3e}")
        self.system = system
        self.coefficients = coefficients
        self.fzc = fzc
        self.parities = all_parities(system)
        self.generators = tuple(
            self._build_generator(i) for i in range(1, system.n_modes)
        )
        self._validate()

    @classmethod
    def from_fzc(cls, d: int, n_pairs: int, r: int = 0, sign: int = +1) -> "BraidRepresentation":
        params = FZCParams(d, r, sign)
        return cls(build_parafermions(d, n_pairs), fzc_coefficients(params), fzc=params)

    def _build_generator(self, i: int) -> DenseOperator:
        d = self.system.d
        lam = self.parities[i - 1]
        acc = np.zeros((self.system.system.dim,) * 2, dtype=complex)
        power = np.eye(self.system.system.dim, dtype=complex)
        for m in range(d):
            acc += self.coefficients.c[m] * power
            power = power @ lam.mat
        return DenseOperator(acc / math.sqrt(d), d, self.system.n_pairs)

    def _validate(self) -> None:
        for i, u in enumerate(self.generators, start=1):
            defect = u.unitarity_defect()
            if defect > BUILD_TOL:
                raise ValueError(f"U_{i} not unitary: defect {defect:.3e}")
            for j in range(1, self.system.n_modes + 1):
                if j in (i, i + 1):
                    continue
                res = u.commutator_norm(self.system.gamma(j))
                if res > BUILD_TOL:
                    raise ValueError(
                        f"U_{i} fails to commute with gamma_{j}: residual {res:.3e}"
                    )

    def generator(self, i: int) -> DenseOperator:
        if not 1 <= i <= len(self.generators):
            raise IndexError(f"generator index {i} out of range 1..{len(self.generators)}")
        return self.generators[i - 1]


def build_braid_operator(rep: BraidRepresentation, i: int) -> DenseOperator:
    return rep.generator(i)


def compose_braid(rep: BraidRepresentation, word: BraidWord) -> DenseOperator:
    """Unitary of a braid word under the time-order convention."""
    if word.max_index() > len(rep.generators):
        raise IndexError(
            f"word uses generator {word.max_index()} but the system has {len(rep.generators)}"
        )
    out = DenseOperator.identity(rep.system.system)
    for idx, exp in word.entries:
        u = rep.generator(idx)
        if exp < 0:
            u = u.dag()
        out = u @ out
    return out


@dataclass(frozen=True)
class RepresentationReport:
    unitarity: float
    far_commutativity: float
    yang_baxter: float
    locality: float
    overall_parity: float

    @property
    def max_residual(self) -> float:
        return max(self.unitarity, self.far_commutativity, self.yang_baxter,
                   self.locality, self.overall_parity)


def check_representation(rep: BraidRepresentation) -> RepresentationReport:
    """Matrix-level residuals of the braid-group relations.

    Needs at least two parafermion pairs so adjacent generator pairs exist.
    """
    gens = rep.generators
    if len(gens) < 2:
        raise ValueError("need n_pairs >= 2 for the braid relation checks")
    unit = max(u.unitarity_defect() for u in gens)
    far = 0.0
    yb = 0.0
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            ua, ub = gens[a].mat, gens[b].mat
            if b - a > 1:
                far = max(far, float(np.max(np.abs(ua @ ub - ub @ ua))))
            else:
                yb = max(yb, float(np.max(np.abs(ua @ ub @ ua - ub @ ua @ ub))))
    locality = 0.0
    for i, u in enumerate(gens, start=1):
        for j in range(1, rep.system.n_modes + 1):
            if j in (i, i + 1):
                continue
            locality = max(locality, u.commutator_norm(rep.system.gamma(j)))
    total = overall_parity(rep.system)
    par = max(u.commutator_norm(total) for u in gens)
    return RepresentationReport(unit, far, yb, locality, par)


@dataclass(frozen=True)
class ConjugationResult:
    """Images of the exchanged pair under conjugation by U_i.

    For the + sign quadratic-phase family the closed-form law

        gamma_i     -> omega**(-r)   gamma_{i+1}
        gamma_{i+1} -> omega**(1-r)  gamma_i^dag (gamma_{i+1})**2

    is verified; `residual` is the worst matrix mismatch and the extracted
    phases are quantized into the exact ring.  For other coefficient
    vectors only the raw conjugated matrices are returned.
    """

    image_first: DenseOperator
    image_second: DenseOperator
    residual: float | None = None
    phase_first: CyclotomicPhase | None = None
    phase_second: CyclotomicPhase | None = None


def conjugation_action(rep: BraidRepresentation, i: int, tol: float = 1e-10) -> ConjugationResult:
    u = rep.generator(i)
    g1 = rep.system.gamma(i)
    g2 = rep.system.gamma(i + 1)
    img1 = u @ g1 @ u.dag()
    img2 = u @ g2 @ u.dag()
    if rep.fzc is None or rep.fzc.sign != +1:
        return ConjugationResult(img1, img2)
    d, r = rep.fzc.d, rep.fzc.r
    target1 = CyclotomicPhase.omega(d, -r).as_complex() * g2
    target2 = CyclotomicPhase.omega(d, 1 - r).as_complex() * (g1.dag() @ g2 @ g2)
    residual = max(img1.max_diff(target1), img2.max_diff(target2))
    lam1 = equal_up_to_phase(img1, g2, tol)
    lam2 = equal_up_to_phase(img2, g1.dag() @ g2 @ g2, tol)
    phase1 = phase_from_complex(lam1, d) if lam1 is not None else None
    phase2 = phase_from_complex(lam2, d) if lam2 is not None else None
    return ConjugationResult(img1, img2, residual, phase1, phase2)


@dataclass(frozen=True)
class DiagonalPhases:
    """Diagonal form of U_i on the eigenbasis of its own parity operator.

    phases[k] is the inverse DFT (1/sqrt(d)) sum_m c_m omega**(k*m); U_i
    multiplies the parity eigenvector |k> by phases[k].  For the + sign
    quadratic-phase family the prefactor identity
    phases[k] = conj(c_k) * phases[0] holds with the exact closed form for
    phases[0], and both residuals are reported.
    """

    phases: np.ndarray
    eigenbasis_residual: float
    prefactor: CyclotomicPhase | None = None
    relation_residual: float | None = None
    prefactor_residual: float | None = None


def diagonal_phases(rep: BraidRepresentation, i: int = 1) -> DiagonalPhases:
    if i % 2 == 0:
        raise ValueError("diagonal form uses the odd-index parity eigenbasis")
    d = rep.system.d
    c = rep.coefficients.c
    om = np.exp(2j * np.pi * np.arange(d) / d)
    phases = np.array([np.sum(c * om ** k) for k in range(d)]) / math.sqrt(d)

    basis = parity_eigenbasis(rep.system, i)
    u = rep.generator(i)
    worst = 0.0
    for k in range(d):
        local = basis.vector(k)
        full = _embed_vector(rep, basis.qudit, local)
        diff = u.mat @ full - phases[k] * full
        worst = max(worst, float(np.max(np.abs(diff))))

    if rep.fzc is None or rep.fzc.sign != +1:
        return DiagonalPhases(phases, worst)

    from .constraints import dft_prefactor

    pref = dft_prefactor(rep.fzc)
    pref_residual = abs(phases[0] - pref.as_complex())
    relation = float(np.max(np.abs(phases - np.conj(c) * phases[0])))
    return DiagonalPhases(phases, worst, pref, relation, pref_residual)


def _embed_vector(rep: BraidRepresentation, qudit: int, local: np.ndarray) -> np.ndarray:
    """Tensor a single-qudit vector with |0> on every other qudit."""
    d, n = rep.system.d, rep.system.n_pairs
    vec = np.array([1.0], dtype=complex)
    for q in range(1, n + 1):
        factor = local if q == qudit else np.eye(d, dtype=complex)[:, 0]
        vec = np.kron(vec, factor)
    return vec
