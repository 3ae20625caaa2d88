"""Random-restart least-squares discovery of braid coefficient solutions.

The unknowns are the d complex ansatz coefficients, treated as 2d real
parameters.  The objective stacks the real and imaginary parts of every
unitarity component (d of them) and every Yang-Baxter component (d**2),
and each restart runs a Levenberg-Marquardt descent from a random start
drawn uniformly from the complex disk of radius sqrt(d) per coordinate
(solutions satisfy sum |c_m|**2 = d, so that scale brackets them).

Converged points are re-checked through the plain residual definitions in
`constraints` (a separate code path from the solver objective), gauge
fixed, and greedily clustered in max-norm.  The local dimension of the
solution manifold at a representative starts from the null space of the
real Jacobian beyond the one direction that is always null (the global
phase) and validates each candidate direction with a second-order probe;
see manifold_dimension.  Everything is deterministic for a fixed seed:
starts are drawn up front and processed in order, and cluster identity is
first-come.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import least_squares

from .constraints import (
    CoefficientVector,
    gauge_fix,
    trivial_vector,
    unitarity_residual,
    yang_baxter_residual,
)

DEFAULT_RESTARTS = 2000
DEFAULT_TOL = 1e-9
DEFAULT_CLUSTER_RADIUS = 1e-6
DEFAULT_SEED = 20240917
MAX_ITERATIONS = 500


@dataclass(frozen=True)
class SolverConfig:
    d: int
    restarts: int = DEFAULT_RESTARTS
    tol: float = DEFAULT_TOL
    cluster_radius: float = DEFAULT_CLUSTER_RADIUS
    seed: int = DEFAULT_SEED

    def __post_init__(self) -> None:
        if not 2 <= self.d <= 6:
            raise ValueError(f"solver supports d in 2..6, got {self.d}")
        if self.restarts < 1:
            raise ValueError("need at least one restart")
        if not self.tol < self.cluster_radius:
            raise ValueError("residual tolerance must be below the cluster radius")


def _split(c: np.ndarray) -> np.ndarray:
    return np.concatenate([c.real, c.imag])


def _join(u: np.ndarray) -> np.ndarray:
    d = u.size // 2
    return u[:d] + 1j * u[d:]


def residual_stack(u: np.ndarray, d: int) -> np.ndarray:
    """Real residual vector of both constraint families at real parameters u."""
    c = _join(u)
    om = np.exp(2j * np.pi * np.arange(d) / d)
    idx = np.arange(d)
    # unitarity components, r = 0..d-1
    unit = np.array([np.sum(c * np.conj(np.roll(c, -r))) for r in range(d)])
    unit[0] -= d
    # Yang-Baxter components via the shared kernel S[k, m] = sum_r c_r c_{k-r} w^{mr}
    conv = c[None, :] * c[(idx[:, None] - idx[None, :]) % d]  # [k, r] -> c_r c_{k-r}
    wmat = om[(idx[:, None] * idx[None, :]) % d]              # [m, r]
    s_km = conv @ wmat.T                                      # [k, m]
    yb = s_km * c[None, :] - s_km.T * c[:, None]
    flat = np.concatenate([unit, yb.ravel()])
    return np.concatenate([flat.real, flat.imag])


def residual_jacobian(u: np.ndarray, d: int) -> np.ndarray:
    """Analytic Jacobian of residual_stack with respect to (Re c, Im c)."""
    c = _join(u)
    om = np.exp(2j * np.pi * np.arange(d) / d)
    idx = np.arange(d)

    n_cplx = d + d * d
    dP = np.zeros((n_cplx, d), dtype=complex)  # d/d c_j holding conj(c) fixed
    dQ = np.zeros((n_cplx, d), dtype=complex)  # d/d conj(c_j)

    for r in range(d):
        for j in range(d):
            dP[r, j] = np.conj(c[(j + r) % d])
            dQ[r, j] = c[(j - r) % d]

    wmat = om[(idx[:, None] * idx[None, :]) % d]
    conv = c[None, :] * c[(idx[:, None] - idx[None, :]) % d]
    s_km = conv @ wmat.T

    row = d
    for k in range(d):
        for m in range(d):
            for j in range(d):
                val = c[(k - j) % d] * c[m] * (om[(m * j) % d] + om[(m * (k - j)) % d])
                if j == m:
                    val += s_km[k, m]
                val -= c[k] * c[(m - j) % d] * (om[(k * j) % d] + om[(k * (m - j)) % d])
                if j == k:
                    val -= s_km[m, k]
                dP[row, j] = val
            row += 1

    # real/imag block assembly: f = [Re F; Im F], u = [a; b], dF/da = P + Q,
    # dF/db = i (P - Q)
    da = dP + dQ
    db = 1j * (dP - dQ)
    top = np.hstack([da.real, db.real])
    bot = np.hstack([da.imag, db.imag])
    return np.vstack([top, bot])


def combined_residual(vec: CoefficientVector) -> float:
    """Max of both constraint residuals through the reference definitions."""
    return max(unitarity_residual(vec), yang_baxter_residual(vec))


PROBE_STEP = 1e-3
ANCHOR_WEIGHT = 1e-8


def _anchored_project(target: np.ndarray, d: int, tol: float) -> np.ndarray | None:
    """Nearest solution-set point to `target`, via a weakly anchored solve.

    Minimizing the constraints plus sqrt(ANCHOR_WEIGHT) * (y - target) has a
    unique nondegenerate minimum near the target even where the solution
    set is flat, so the iteration cannot slide along a solution valley the
    way an unanchored descent does.  Returns None when the minimum is not a
    constraint solution to tol.
    """
    root = math.sqrt(ANCHOR_WEIGHT)

    def fun(y: np.ndarray) -> np.ndarray:
        return np.concatenate([residual_stack(y, d), root * (y - target)])

    def jac(y: np.ndarray) -> np.ndarray:
        return np.vstack([residual_jacobian(y, d), root * np.eye(y.size)])

    fit = least_squares(fun, target, jac=jac, method="lm",
                        max_nfev=200, xtol=1e-15, ftol=1e-15, gtol=1e-15)
    vec = CoefficientVector(d, _join(fit.x))
    if combined_residual(vec) > tol:
        return None
    return fit.x


def manifold_dimension(vec: CoefficientVector, tol: float = DEFAULT_TOL) -> int:
    """Local solution-manifold dimension at a constraint solution.

    The candidate null space is read off the Jacobian (singular values
    below sqrt(tol)), and the global-phase direction, null at every
    solution, is excluded.  Each remaining candidate direction is then
    validated by a second-order probe: step PROBE_STEP along it, project
    back onto the solution set, and keep the displacement.  The dimension
    is the rank of the surviving displacements.  The probe distinguishes
    true flat directions from the spurious rank drops that occur at
    isolated degenerate points of the constraint variety (the d = 4 family
    has four such points), where the raw Jacobian count overestimates.

    Raises if the input does not satisfy the constraints to tol.
    """
    if combined_residual(vec) > tol:
        raise ValueError("manifold dimension is only defined at a solution")
    d = vec.d
    u = _split(vec.c)
    jac = residual_jacobian(u, d)
    _, singulars, v_rows = np.linalg.svd(jac)
    null_mask = singulars < math.sqrt(tol)
    n_null = int(np.sum(null_mask))
    if n_null <= 1:
        return 0

    # orthonormal null basis with the phase direction removed
    phase_dir = np.concatenate([-vec.c.imag, vec.c.real])
    norm = np.linalg.norm(phase_dir)
    if norm > 0:
        phase_dir /= norm
    basis = v_rows[null_mask]
    basis = basis - np.outer(basis @ phase_dir, phase_dir)
    q, r = np.linalg.qr(basis.T)
    keep = np.abs(np.diag(r)) > 1e-8
    directions = q[:, keep].T
    if directions.shape[0] == 0:
        return 0

    displacements = []
    for w in directions:
        for sign in (+1.0, -1.0):
            probe = _anchored_project(u + sign * PROBE_STEP * w, d, tol)
            if probe is None:
                continue
            delta = (probe - u) / PROBE_STEP
            delta = delta - (delta @ phase_dir) * phase_dir
            if np.linalg.norm(delta) >= 0.5:
                displacements.append(delta)
    if not displacements:
        return 0
    spectrum = np.linalg.svd(np.array(displacements), compute_uv=False)
    return int(np.sum(spectrum >= 0.5))


@dataclass
class SolutionCluster:
    representative: CoefficientVector
    count: int
    max_internal_distance: float
    manifold_dim: int = 0
    trivial: bool = False

    def to_json(self) -> dict:
        return {
            "c": self.representative.to_json(),
            "count": self.count,
            "manifold_dim": self.manifold_dim,
            "trivial": self.trivial,
        }


@dataclass
class SolverResult:
    d: int
    seed: int
    restarts: int
    clusters: list[SolutionCluster] = field(default_factory=list)
    converged: int = 0
    discarded: int = 0

    @property
    def nontrivial_clusters(self) -> list[SolutionCluster]:
        return [c for c in self.clusters if not c.trivial]

    @property
    def trivial_clusters(self) -> list[SolutionCluster]:
        return [c for c in self.clusters if c.trivial]

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "seed": self.seed,
            "restarts": self.restarts,
            "clusters": [c.to_json() for c in self.clusters],
        }


def _random_starts(config: SolverConfig) -> np.ndarray:
    rng = np.random.default_rng(config.seed)
    radius = np.sqrt(rng.uniform(0.0, 1.0, size=(config.restarts, config.d)))
    angle = rng.uniform(0.0, 2.0 * np.pi, size=(config.restarts, config.d))
    return math.sqrt(config.d) * radius * np.exp(1j * angle)


def solve_all(config: SolverConfig) -> SolverResult:
    """Find constraint solutions from random restarts and cluster them."""
    d = config.d
    result = SolverResult(d, config.seed, config.restarts)
    accepted: list[CoefficientVector] = []
    for start in _random_starts(config):
        fit = least_squares(
            residual_stack, _split(start), jac=residual_jacobian, args=(d,),
            method="lm", max_nfev=MAX_ITERATIONS, xtol=1e-15, ftol=1e-15, gtol=1e-15,
        )
        vec = CoefficientVector(d, _join(fit.x))
        if combined_residual(vec) <= config.tol:
            fixed, _ = gauge_fix(vec)
            accepted.append(fixed)
            result.converged += 1
        else:
            result.discarded += 1

    for vec in accepted:
        for cluster in result.clusters:
            dist = vec.distance(cluster.representative)
            if dist <= config.cluster_radius:
                cluster.count += 1
                cluster.max_internal_distance = max(cluster.max_internal_distance, dist)
                break
        else:
            result.clusters.append(SolutionCluster(vec, 1, 0.0))

    trivial = trivial_vector(d)
    for cluster in result.clusters:
        cluster.trivial = cluster.representative.distance(trivial) <= config.cluster_radius
        cluster.manifold_dim = manifold_dimension(cluster.representative, config.tol)
    return result
