"""Generalized Pauli labels, Clifford tableaux and breadth-first group closure.

A Pauli monomial on n qudits is written canonically as

    exp(i*pi*phase/d) * prod_i X_i**x_i Z_i**z_i

with x, z in Z_d**n and the phase exponent mod 2*d (conjugation images of
Pauli words only ever need 2d-th roots of unity).  A Clifford element is
stored modulo global phase as its conjugation tableau: the images of the
2n generators X_1..X_n, Z_1..Z_n as PauliLabels.  Tableaux compose and
invert symbolically, so group closures never touch matrices; the closure
itself runs as a vectorized breadth-first sweep over packed integer keys.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .systems import DenseOperator, QuditSystem, fourier_gate, controlled_shift, pauli_x, pauli_z

MEMBERSHIP_TOL = 1e-9
DEFAULT_CLOSURE_LIMIT = 10_000_000


class ClosureLimitError(RuntimeError):
    def __init__(self, limit: int, reached: int):
        super().__init__(f"closure exceeded the element limit {limit} (reached {reached})")
        self.limit = limit
        self.reached = reached


@dataclass(frozen=True)
class PauliLabel:
    """Canonical form of a phased Pauli monomial."""

    d: int
    n: int
    phase: int
    x: tuple[int, ...]
    z: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.x) != self.n or len(self.z) != self.n:
            raise ValueError("exponent vectors must have length n")
        object.__setattr__(self, "phase", self.phase % (2 * self.d))
        object.__setattr__(self, "x", tuple(v % self.d for v in self.x))
        object.__setattr__(self, "z", tuple(v % self.d for v in self.z))

    @classmethod
    def identity(cls, d: int, n: int) -> "PauliLabel":
        return cls(d, n, 0, (0,) * n, (0,) * n)

    def __mul__(self, other: "PauliLabel") -> "PauliLabel":
        if (other.d, other.n) != (self.d, self.n):
            raise ValueError("label ring mismatch")
        # Z**z X**x = omega**(z*x) X**x Z**z, and omega is phase exponent 2.
        cross = sum(a * b for a, b in zip(self.z, other.x))
        return PauliLabel(
            self.d, self.n,
            self.phase + other.phase + 2 * cross,
            tuple(a + b for a, b in zip(self.x, other.x)),
            tuple(a + b for a, b in zip(self.z, other.z)),
        )

    def __pow__(self, k: int) -> "PauliLabel":
        if k < 0:
            return self.inverse() ** (-k)
        zx = sum(a * b for a, b in zip(self.z, self.x))
        return PauliLabel(
            self.d, self.n,
            k * self.phase + zx * k * (k - 1),
            tuple(k * v for v in self.x),
            tuple(k * v for v in self.z),
        )

    def inverse(self) -> "PauliLabel":
        zx = sum(a * b for a, b in zip(self.z, self.x))
        # (X^x Z^z)^-1 = Z^-z X^-x = omega^(z*x) X^-x Z^-z.
        return PauliLabel(
            self.d, self.n,
            -self.phase + 2 * zx,
            tuple(-v for v in self.x),
            tuple(-v for v in self.z),
        )

    def phase_value(self) -> complex:
        return complex(np.exp(1j * np.pi * self.phase / self.d))

    def vector(self) -> tuple[int, ...]:
        return self.x + self.z

    def to_matrix(self) -> np.ndarray:
        d = self.d
        shift = np.zeros((d, d), dtype=complex)
        for k in range(d):
            shift[(k + 1) % d, k] = 1.0
        clock = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
        out = np.array([[1.0 + 0j]])
        for a, b in zip(self.x, self.z):
            local = np.linalg.matrix_power(shift, a) @ np.linalg.matrix_power(clock, b)
            out = np.kron(out, local)
        return self.phase_value() * out


def symplectic_product(u: tuple[int, ...], v: tuple[int, ...], d: int, n: int) -> int:
    """P(u) P(v) = omega**sp(u, v) P(v) P(u) for exponent vectors (x|z)."""
    ux, uz = u[:n], u[n:]
    vx, vz = v[:n], v[n:]
    return (sum(a * b for a, b in zip(uz, vx)) - sum(a * b for a, b in zip(vz, ux))) % d


def extract_pauli_monomial(mat: np.ndarray, d: int, n: int,
                           tol: float = MEMBERSHIP_TOL) -> PauliLabel | None:
    """Decompose a matrix as a phased Pauli monomial, or return None.

    The x exponents are read from the image of |0..0>, the z exponents from
    entry ratios on the unit-vector columns, and the phase is quantized to
    a 2d-th root of unity; the reassembled monomial is then checked
    entrywise against the input.
    """
    dim = d**n
    if mat.shape != (dim, dim):
        raise ValueError(f"expected a {dim} x {dim} matrix, got {mat.shape}")
    col0 = mat[:, 0]
    row0 = int(np.argmax(np.abs(col0)))
    lam = col0[row0]
    if abs(abs(lam) - 1.0) > tol:
        return None
    system = QuditSystem(d, n)
    x = system.digits(row0)
    z = []
    for q in range(n):
        col = d ** (n - 1 - q)
        row = system.index(tuple((x[i] + (1 if i == q else 0)) % d for i in range(n)))
        ratio = mat[row, col] / lam
        b = round(np.angle(ratio) * d / (2 * np.pi)) % d
        if abs(ratio - np.exp(2j * np.pi * b / d)) > tol:
            return None
        z.append(b)
    k = round(np.angle(lam) * d / np.pi) % (2 * d)
    if abs(lam - np.exp(1j * np.pi * k / d)) > tol:
        return None
    label = PauliLabel(d, n, k, tuple(x), tuple(z))
    if float(np.max(np.abs(mat - label.to_matrix()))) > tol:
        return None
    return label


def _det_int(m: list[list[int]]) -> int:
    size = len(m)
    if size == 1:
        return m[0][0]
    total = 0
    for col in range(size):
        minor = [row[:col] + row[col + 1:] for row in m[1:]]
        total += (-1) ** col * m[0][col] * _det_int(minor)
    return total


def _matrix_inverse_mod(m: np.ndarray, d: int) -> np.ndarray:
    """Exact inverse of an integer matrix mod d via the adjugate."""
    size = m.shape[0]
    rows = [[int(v) for v in row] for row in m]
    det = _det_int(rows) % d
    det_inv = pow(det, -1, d)
    adj = np.zeros((size, size), dtype=np.int64)
    for i in range(size):
        for j in range(size):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(rows) if k != i]
            adj[j, i] = (-1) ** (i + j) * _det_int(minor)
    return (adj * det_inv) % d


@dataclass(frozen=True)
class CliffordTableau:
    """Conjugation action on the Pauli generators, modulo global phase.

    images holds the conjugation images of X_1..X_n, Z_1..Z_n in that
    order.  The symplectic condition (images commute exactly like their
    preimages) is validated at construction.
    """

    d: int
    n: int
    images: tuple[PauliLabel, ...]

    def __post_init__(self) -> None:
        if len(self.images) != 2 * self.n:
            raise ValueError(f"expected {2 * self.n} generator images")
        for img in self.images:
            if (img.d, img.n) != (self.d, self.n):
                raise ValueError("image label ring mismatch")
        basis = _generator_vectors(self.d, self.n)
        for i in range(2 * self.n):
            for j in range(i + 1, 2 * self.n):
                want = symplectic_product(basis[i], basis[j], self.d, self.n)
                got = symplectic_product(
                    self.images[i].vector(), self.images[j].vector(), self.d, self.n
                )
                if want != got:
                    raise ValueError("images violate the symplectic condition")

    @classmethod
    def identity(cls, d: int, n: int) -> "CliffordTableau":
        images = []
        for vec in _generator_vectors(d, n):
            images.append(PauliLabel(d, n, 0, vec[:n], vec[n:]))
        return cls(d, n, tuple(images))

    def apply(self, label: PauliLabel) -> PauliLabel:
        """Image of an arbitrary Pauli label under this conjugation."""
        acc = PauliLabel.identity(self.d, self.n)
        for q in range(self.n):
            if label.x[q]:
                acc = acc * (self.images[q] ** label.x[q])
            if label.z[q]:
                acc = acc * (self.images[self.n + q] ** label.z[q])
        return PauliLabel(self.d, self.n, acc.phase + label.phase, acc.x, acc.z)

    def compose(self, first: "CliffordTableau") -> "CliffordTableau":
        """Tableau of U_self @ U_first (self applied after first)."""
        if (first.d, first.n) != (self.d, self.n):
            raise ValueError("tableau ring mismatch")
        return CliffordTableau(self.d, self.n, tuple(self.apply(img) for img in first.images))

    def symplectic_matrix(self) -> np.ndarray:
        """2n x 2n matrix over Z_d whose columns are the image vectors."""
        return np.array([img.vector() for img in self.images], dtype=np.int64).T % self.d

    def phase_vector(self) -> tuple[int, ...]:
        return tuple(img.phase for img in self.images)

    def inverse(self) -> "CliffordTableau":
        m_inv = _matrix_inverse_mod(self.symplectic_matrix(), self.d)
        images = []
        for j in range(2 * self.n):
            vec = tuple(int(v) for v in m_inv[:, j])
            bare = PauliLabel(self.d, self.n, 0, vec[: self.n], vec[self.n:])
            round_trip = self.apply(bare)
            images.append(PauliLabel(self.d, self.n, -round_trip.phase,
                                     vec[: self.n], vec[self.n:]))
        return CliffordTableau(self.d, self.n, tuple(images))

    def key(self) -> tuple:
        return tuple((img.x, img.z, img.phase) for img in self.images)


def _generator_vectors(d: int, n: int) -> list[tuple[int, ...]]:
    out = []
    for i in range(2 * n):
        vec = [0] * (2 * n)
        vec[i] = 1
        out.append(tuple(vec))
    return out


def clifford_membership(op: DenseOperator, tol: float = MEMBERSHIP_TOL) -> CliffordTableau | None:
    """Tableau of a unitary if it is Clifford, else None.

    Conjugates each Pauli generator and requires every image to be a phased
    Pauli monomial within tol.
    """
    d, n = op.d, op.n
    system = QuditSystem(d, n)
    u = op.mat
    udag = u.conj().T
    images = []
    for maker in (pauli_x, pauli_z):
        for q in range(1, n + 1):
            image = u @ maker(system, q).mat @ udag
            label = extract_pauli_monomial(image, d, n, tol)
            if label is None:
                return None
            images.append(label)
    return CliffordTableau(d, n, tuple(images))


def reference_phase_gate(d: int) -> DenseOperator:
    """Canonical diagonal gate with conjugation action X -> X Zdag, Z -> Z.

    For odd d the action is realized with phase exactly 1,
    diag(omega**(-k(k-1)/2)).  For even d no unitary realizes the phase-free
    action (the image of the cyclic shift would have the wrong Hermiticity),
    so the minimal half-power realization diag(omega**(-k**2/2)) is used,
    whose X image carries the unavoidable phase omega**(-1/2).
    """
    k = np.arange(d)
    if d % 2 == 1:
        diag = np.exp(-1j * np.pi * k * (k - 1) / d)
    else:
        diag = np.exp(-1j * np.pi * k * k / d)
    return DenseOperator(np.diag(diag), d, 1)


def reference_generators(d: int, n: int) -> list[CliffordTableau]:
    """Tableaux of the textbook generating set, from explicit unitaries.

    n = 1: the phase gate (X -> X Zdag, Z -> Z) and the Fourier gate
    (X -> Z, Z -> Xdag).  n = 2: both gates on each qudit plus the
    controlled shift.  Building them from matrices keeps every tableau
    realizable by an actual unitary.
    """
    if n not in (1, 2):
        raise ValueError("reference generators are provided for n = 1 and n = 2")
    qp = reference_phase_gate(d)
    fg = fourier_gate(d)
    if n == 1:
        mats = [qp, fg]
    else:
        eye = np.eye(d)
        mats = [
            DenseOperator(np.kron(qp.mat, eye), d, 2),
            DenseOperator(np.kron(fg.mat, eye), d, 2),
            DenseOperator(np.kron(eye, qp.mat), d, 2),
            DenseOperator(np.kron(eye, fg.mat), d, 2),
            controlled_shift(d),
        ]
    out = []
    for mat in mats:
        tab = clifford_membership(mat)
        if tab is None:
            raise AssertionError("reference gate failed Clifford membership")
        out.append(tab)
    return out


# ----- vectorized closure over packed tableau keys -----

def _pack_params(d: int, n: int) -> tuple[int, int, int]:
    vec_space = d ** (2 * n)
    col_space = vec_space * 2 * d
    return vec_space, 2 * d, col_space


def _vector_index(vec: tuple[int, ...], d: int) -> int:
    idx = 0
    for v in reversed(vec):
        idx = idx * d + (v % d)
    return idx


def _index_vector(idx: int, d: int, n2: int) -> tuple[int, ...]:
    out = []
    for _ in range(n2):
        idx, rem = divmod(idx, d)
        out.append(rem)
    return tuple(out)


def tableau_key(tab: CliffordTableau) -> int:
    vec_space, phase_space, col_space = _pack_params(tab.d, tab.n)
    key = 0
    for img in reversed(tab.images):
        code = _vector_index(img.vector(), tab.d) * phase_space + img.phase
        key = key * col_space + code
    return key


def _gen_tables(tab: CliffordTableau) -> tuple[np.ndarray, np.ndarray]:
    """Lookup tables over all exponent vectors for composing with `tab`."""
    d, n = tab.d, tab.n
    vec_space, _, _ = _pack_params(d, n)
    vec_map = np.zeros(vec_space, dtype=np.int64)
    phase_add = np.zeros(vec_space, dtype=np.int64)
    for idx in range(vec_space):
        vec = _index_vector(idx, d, 2 * n)
        label = tab.apply(PauliLabel(d, n, 0, vec[:n], vec[n:]))
        vec_map[idx] = _vector_index(label.vector(), d)
        phase_add[idx] = label.phase
    return vec_map, phase_add


@dataclass
class ClosureResult:
    d: int
    n: int
    order: int
    keys: np.ndarray
    levels: int
    elapsed_ms: float
    limited: bool = False

    def contains(self, tab: CliffordTableau) -> bool:
        key = tableau_key(tab)
        pos = int(np.searchsorted(self.keys, key))
        return pos < self.keys.size and int(self.keys[pos]) == key

    def symplectic_order(self) -> int:
        """Number of distinct conjugation actions modulo Pauli phase factors.

        Strips the phase entries from every element key and counts distinct
        exponent-matrix parts, i.e. the image of the closure in the
        symplectic group.
        """
        vec_space, phase_space, col_space = _pack_params(self.d, self.n)
        out = np.zeros_like(self.keys)
        shift = np.ones_like(self.keys)
        rest = self.keys.copy()
        for _ in range(2 * self.n):
            rest, code = np.divmod(rest, col_space)
            idx, _ = np.divmod(code, phase_space)
            out += idx * shift
            shift *= vec_space
        return int(np.unique(out).size)


def closure(generators: list[CliffordTableau], limit: int = DEFAULT_CLOSURE_LIMIT) -> ClosureResult:
    """Breadth-first closure of a tableau set under composition.

    In a finite group the semigroup generated by a set equals the group, so
    one-sided products with the generators suffice; inverses of the
    generators are still included to shorten the frontier depth.  Elements
    are deduplicated on packed integer keys; the resulting sorted key array
    is deterministic and independent of generator order.
    """
    if not generators:
        raise ValueError("need at least one generator")
    d, n = generators[0].d, generators[0].n
    for g in generators:
        if (g.d, g.n) != (d, n):
            raise ValueError("generators act on different systems")

    work = list(generators) + [g.inverse() for g in generators]
    tables = [_gen_tables(g) for g in work]
    vec_space, phase_space, col_space = _pack_params(d, n)
    two_d = 2 * d
    n_cols = 2 * n

    def compose_keys(keys: np.ndarray, vec_map: np.ndarray, phase_add: np.ndarray) -> np.ndarray:
        out = np.zeros_like(keys)
        shift = np.ones_like(keys)
        rest = keys.copy()
        for _ in range(n_cols):
            rest, code = np.divmod(rest, col_space)
            idx, phase = np.divmod(code, phase_space)
            new_code = vec_map[idx] * phase_space + (phase + phase_add[idx]) % two_d
            out += new_code * shift
            shift *= col_space
        return out

    start = time.perf_counter()
    identity_key = tableau_key(CliffordTableau.identity(d, n))
    visited = np.array([identity_key], dtype=np.int64)
    frontier = visited.copy()
    levels = 0
    while frontier.size:
        levels += 1
        candidates = np.concatenate(
            [compose_keys(frontier, vm, pa) for vm, pa in tables]
        )
        candidates = np.unique(candidates)
        new = candidates[np.isin(candidates, visited, assume_unique=True, invert=True)]
        if new.size == 0:
            break
        visited = np.union1d(visited, new)
        if visited.size > limit:
            raise ClosureLimitError(limit, visited.size)
        frontier = new
    elapsed = (time.perf_counter() - start) * 1000.0
    return ClosureResult(d, n, int(visited.size), visited, levels, elapsed)
