"""Constructive separable decompositions.

Builds explicit convex decompositions ``rho = sum_i p_i rho_i^A x rho_i^B``
in Bloch form: the factor-pair scaffolding for a general correlation matrix,
the fixed-point construction that succeeds whenever the Ky Fan norm fits the
inscribed-ball budget, the pure-state simplex search, and the closed-form
Werner / isotropic decompositions.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg as sla
from scipy.optimize import minimize

from . import kernels
from .bloch import from_bloch, to_bloch, transpose_flip
from .errors import (
    BoundExceeded,
    DimensionMismatch,
    FactorConstraintViolated,
    FixedPointDiverged,
    OutOfPositivityRange,
    SearchFailed,
)
from .linalg import complete_orthonormal, svd
from .states import werner_coefficient
from .su import generator_basis


@dataclass(frozen=True)
class SeparableDecomposition:
    """Convex decomposition as arrays: probs (L,), r/s vectors row-wise."""

    probs: np.ndarray       # (L,)
    r_vectors: np.ndarray   # (L, dim_a^2 - 1)
    s_vectors: np.ndarray   # (L, dim_b^2 - 1)

    def __len__(self) -> int:
        return len(self.probs)

    def entries(self):
        """Iterate (p_i, r_i, s_i) components."""
        for i in range(len(self.probs)):
            yield self.probs[i], self.r_vectors[i], self.s_vectors[i]

    @property
    def marginal_a(self) -> np.ndarray:
        return self.probs @ self.r_vectors

    @property
    def marginal_b(self) -> np.ndarray:
        return self.probs @ self.s_vectors

    @property
    def correlation(self) -> np.ndarray:
        return (self.r_vectors * self.probs[:, None]).T @ self.s_vectors


class DecompositionOutcome(enum.Enum):
    """Non-constructive outcomes of the closed-form decomposition routines."""

    ENTANGLED = "entangled"
    NOT_DECOMPOSED_HERE = "not-decomposed-here"


ENTANGLED = DecompositionOutcome.ENTANGLED
NOT_DECOMPOSED_HERE = DecompositionOutcome.NOT_DECOMPOSED_HERE


# ---------------------------------------------------------------------------
# factorization frame
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FactorizationFrame:
    """Singular frame of a correlation matrix, padded to L columns.

    ``corr = left_basis @ diag(taus) @ right_basis.T``; columns beyond the
    available singular vectors are zero (their singular values vanish), which
    lets L exceed the ambient Bloch dimensions.
    """

    left_basis: np.ndarray    # (Ka, L)
    right_basis: np.ndarray   # (Kb, L)
    taus: np.ndarray          # (L,), descending, zero-padded

    @property
    def size(self) -> int:
        return len(self.taus)

    @property
    def rank(self) -> int:
        if len(self.taus) == 0 or self.taus[0] <= 0.0:
            return 0
        return int(np.sum(self.taus > 1e-12 * self.taus[0]))


def factorization_frame(corr: np.ndarray, size: int | None = None) -> FactorizationFrame:
    """SVD frame of ``corr`` with ``size`` columns (default rank + 1)."""
    corr = np.asarray(corr, dtype=float)
    ka, kb = corr.shape
    fac = svd(corr)
    rank = int(np.sum(fac.singulars > 1e-12 * fac.singulars[0])) if fac.singulars.size else 0
    length = rank + 1 if size is None else size
    if length < rank:
        raise DimensionMismatch(f"size {length} below rank {rank}")
    left = np.zeros((ka, length))
    right = np.zeros((kb, length))
    taus = np.zeros(length)
    avail_l = min(length, ka)
    avail_r = min(length, kb)
    left[:, :avail_l] = fac.left[:, :avail_l]
    right[:, :avail_r] = fac.right[:, :avail_r]
    taus[:min(length, len(fac.singulars))] = fac.singulars[:min(length, len(fac.singulars))]
    return FactorizationFrame(left_basis=left, right_basis=right, taus=taus)


def assemble_factor_pair(frame: FactorizationFrame, x, y, q1, q2, alpha, beta,
                         *, tol: float = 1e-8):
    """Assemble the two factor matrices from rotations and singular values.

    Requires the diagonal constraint
    ``x @ diag(alpha) @ q1 @ q2.T @ diag(beta) @ y.T == diag(taus)``;
    the returned pair ``(m_rp, m_sp)`` then reconstructs the correlation
    matrix as ``m_rp @ m_sp.T``.
    """
    x, y, q1, q2 = (np.asarray(m, dtype=float) for m in (x, y, q1, q2))
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    length = frame.size
    for name, m in (("x", x), ("y", y), ("q1", q1), ("q2", q2)):
        if m.shape != (length, length):
            raise DimensionMismatch(f"{name} must be {length} x {length}, got {m.shape}")
    middle = (x * alpha) @ q1 @ q2.T @ (np.diag(beta) @ y.T)
    target = np.diag(frame.taus)
    scale = max(1.0, float(np.abs(target).max()))
    residual = float(np.abs(middle - target).max())
    if residual > tol * scale:
        got = np.linalg.svd(middle, compute_uv=False)
        mismatch = float(np.abs(got - frame.taus).max())
        raise FactorConstraintViolated(
            f"constraint residual {residual:.3e} (singular-value mismatch {mismatch:.3e})"
        )
    m_rp = frame.left_basis @ (x * alpha) @ q1
    m_sp = frame.right_basis @ (y * beta) @ q2
    return m_rp, m_sp


# ---------------------------------------------------------------------------
# fixed-point construction within the Ky Fan budget
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SimplexFrame:
    """Rotation with prescribed last row sqrt(p) plus factor singular values.

    Intermediate of :func:`kyfan_bound_decomposition`: ``q`` is orthogonal
    with determinant +1 and last row ``sqrt(probs)``; ``alpha`` and ``beta``
    are the factor singular values attached to its leading rows.
    """

    q: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    probs: np.ndarray


def _probability_rotation(kappa: np.ndarray, *, tol: float = 1e-12,
                          rel_tol: float = 1e-10, max_iter: int = 10_000):
    """Self-consistent rotation: last row sqrt(p), p_j = sum_i kappa_i Q_ij^2 / K.

    Damped fixed-point iteration from the uniform distribution; the rotation
    is rebuilt from sqrt(p) each sweep, so the emitted probabilities are
    exactly the squared last row.
    """
    count = len(kappa) + 1
    total = float(kappa.sum())
    p = np.full(count, 1.0 / count)
    prev_delta = np.inf
    damping = False
    for _ in range(max_iter):
        q = complete_orthonormal([np.sqrt(p)], count)
        p_new = (kappa @ (q[:-1, :] ** 2)) / total
        delta = float(np.abs(p_new - p).max())
        rel = float((np.abs(p_new - p) / np.maximum(p, 1e-9)).max())
        if delta < tol and rel < rel_tol:
            return q, p
        if delta >= prev_delta:
            damping = True
        prev_delta = delta
        p = 0.5 * (p_new + p) if damping else p_new
    raise FixedPointDiverged(
        f"probability fixed point not within tolerance after {max_iter} sweeps"
    )


def simplex_frame(frame: FactorizationFrame, dim_a: int, dim_b: int,
                  *, slack: float = 1e-9) -> SimplexFrame:
    """Solve the rotation fixed point for the inscribed-ball construction.

    With kappa_i = tau_i * sqrt(N(N-1)M(M-1))/2 and K = sum kappa_i <= 1 the
    factor singular values are alpha_i = sqrt(2 kappa_i / (N(N-1))) and
    beta_i likewise with M; the rotation's last row is sqrt(p) with the
    self-consistent weights p_j = sum_i kappa_i Q_ij^2 / K.
    """
    rank = frame.rank
    if rank == 0:
        raise BoundExceeded("zero correlation needs no rotation frame")
    weight = np.sqrt(dim_a * (dim_a - 1.0) * dim_b * (dim_b - 1.0)) / 2.0
    kappa = frame.taus[:rank] * weight
    budget = float(kappa.sum())
    if budget > 1.0 + slack:
        raise BoundExceeded(
            f"scaled Ky Fan norm {budget:.12f} exceeds the constructive bound 1"
        )
    alpha = np.sqrt(2.0 * kappa / (dim_a * (dim_a - 1.0)))
    beta = np.sqrt(2.0 * kappa / (dim_b * (dim_b - 1.0)))
    q, probs = _probability_rotation(kappa)
    return SimplexFrame(q=q, alpha=alpha, beta=beta, probs=probs)


def kyfan_bound_decomposition(frame: FactorizationFrame, dim_a: int, dim_b: int,
                              *, slack: float = 1e-9) -> SeparableDecomposition:
    """Explicit decomposition when the correlation fits the inscribed ball.

    Reads the local Bloch vectors off the columns of the rotation built by
    :func:`simplex_frame`.  Every emitted vector has squared norm
    2K/(N(N-1)) (resp. M with K = sum kappa_i), inside the inscribed ball,
    hence automatically physical.
    """
    ka = frame.left_basis.shape[0]
    kb = frame.right_basis.shape[0]
    if frame.rank == 0:
        return SeparableDecomposition(probs=np.array([1.0]),
                                      r_vectors=np.zeros((1, ka)),
                                      s_vectors=np.zeros((1, kb)))
    sf = simplex_frame(frame, dim_a, dim_b, slack=slack)
    rank = frame.rank
    head = sf.q[:rank, :]
    keep = sf.probs > 1e-13
    probs_kept = sf.probs[keep] / sf.probs[keep].sum()
    r_cols = frame.left_basis[:, :rank] @ (sf.alpha[:, None] * head[:, keep])
    s_cols = frame.right_basis[:, :rank] @ (sf.beta[:, None] * head[:, keep])
    scale = 1.0 / np.sqrt(sf.probs[keep])
    return SeparableDecomposition(probs=probs_kept,
                                  r_vectors=(r_cols * scale).T,
                                  s_vectors=(s_cols * scale).T)


# ---------------------------------------------------------------------------
# pure-state simplex search
# ---------------------------------------------------------------------------

def _reference_simplex(dim: int) -> np.ndarray:
    """Regular simplex of N^2 pure-norm Bloch columns (positivity not implied)."""
    vertex_count = dim * dim
    q = complete_orthonormal([np.full(vertex_count, 1.0 / dim)], vertex_count)
    return np.sqrt(2.0 * dim / (dim + 1.0)) * q[:-1, :]


def _antisym_from_params(theta: np.ndarray, k: int) -> np.ndarray:
    a = np.zeros((k, k))
    iu = np.triu_indices(k, 1)
    a[iu] = theta
    return a - a.T


def _worst_negative_eig(vertices: np.ndarray, gens: np.ndarray, dim: int) -> float:
    rhos = (np.eye(dim)[None, :, :] / dim
            + 0.5 * np.einsum("mv,mij->vij", vertices, gens))
    return float(np.linalg.eigvalsh(rhos)[:, 0].min())


@lru_cache(maxsize=None)
def _pure_simplex_cached(dim: int, seed: int, restarts: int, max_iter: int,
                         target: float):
    k = dim * dim - 1
    gens = np.ascontiguousarray(generator_basis(dim).matrices)
    reference = _reference_simplex(dim)
    iu = np.triu_indices(k, 1)
    n_params = len(iu[0])
    rng = np.random.default_rng(seed)

    def objective(theta):
        a = _antisym_from_params(theta, k)
        rot = sla.expm(a)
        vertices = np.ascontiguousarray(rot @ reference)
        f, d_vertices = kernels.neg_eig_mass(vertices, gens)
        d_rot = d_vertices @ reference.T
        d_a = sla.expm_frechet(a.T, d_rot, compute_expm=False)
        return f, d_a[iu] - d_a.T[iu]

    best_val = np.inf
    best_vertices = reference
    for attempt in range(restarts):
        theta0 = np.zeros(n_params) if attempt == 0 else rng.normal(scale=0.7, size=n_params)
        res = minimize(objective, theta0, jac=True, method="L-BFGS-B",
                       options={"maxiter": max_iter, "ftol": 1e-18, "gtol": 1e-14})
        vertices = sla.expm(_antisym_from_params(res.x, k)) @ reference
        vertices = _polish(vertices, reference, gens, dim)
        worst = _worst_negative_eig(vertices, gens, dim)
        if -worst < best_val:
            best_val = -worst
            best_vertices = vertices
        if best_val <= target:
            break
    if best_val > target:
        raise SearchFailed(
            f"simplex search for dim {dim} stalled at residual {best_val:.3e}",
            residual=best_val,
        )
    out = np.ascontiguousarray(best_vertices.T)
    out.setflags(write=False)
    return out


def _polish(vertices, reference, gens, dim):
    """Snap near-pure columns to exact pure states, refit the rotation."""
    rhos = (np.eye(dim)[None, :, :] / dim
            + 0.5 * np.einsum("mv,mij->vij", vertices, gens))
    _, u = np.linalg.eigh(rhos)
    top = u[:, :, -1]
    projected = np.einsum("vi,vj,mji->mv", top, top.conj(), gens).real
    fit = projected @ reference.T
    uu, _, vvt = np.linalg.svd(fit)
    rot = uu @ vvt
    if np.linalg.det(rot) < 0:
        return vertices
    candidate = rot @ reference
    old = _worst_negative_eig(vertices, gens, dim)
    new = _worst_negative_eig(candidate, gens, dim)
    return candidate if new >= old else vertices


def pure_state_simplex(dim: int, seed: int = 0, *, restarts: int = 200,
                       max_iter: int = 2000, target: float = 1e-9) -> np.ndarray:
    """N^2 pure-state Bloch vectors forming a regular simplex.

    Rows of the returned (N^2, N^2-1) array have squared norm 2(N-1)/N and
    pairwise cosine -1/(N^2-1); every row reconstructs a PSD matrix within
    ``target``.  For N = 2 the reference tetrahedron is already physical;
    for N >= 3 a rotation of the reference simplex is found by minimizing
    the total squared negative-eigenvalue mass over the rotation group,
    multi-started from seeded random points.  Raises SearchFailed (with the
    reached residual) when the budget is exhausted.
    """
    return _pure_simplex_cached(dim, int(seed), int(restarts), int(max_iter),
                                float(target))


# ---------------------------------------------------------------------------
# Werner / isotropic families
# ---------------------------------------------------------------------------

def werner_decompose(dim: int, phi: float, seed: int = 0,
                     **search_options) -> SeparableDecomposition | DecompositionOutcome:
    """Closed-form decomposition of the Werner family.

    phi >= 1/N: uniform mixture of scaled pure-simplex product states
    r_i = s_i = t * v_i with t = sqrt(c N(N+1)/2) <= 1 (convex shrinkage
    toward the maximally mixed state, saturating at phi = 1).
    0 <= phi < 1/N: paired simplexes r_i = -N alpha q_i (inscribed ball),
    s_i = N beta q_i (pure), with alpha beta = |c| and beta held at the
    pure bound.  phi < 0 is entangled.  Search options are forwarded to
    :func:`pure_state_simplex`.
    """
    if not -1.0 - 1e-12 <= phi <= 1.0 + 1e-12:
        raise OutOfPositivityRange(f"Werner parameter phi={phi} outside [-1, 1]")
    if phi < 0.0:
        return ENTANGLED
    c = werner_coefficient(dim, phi)
    vertices = pure_state_simplex(dim, seed, **search_options)  # (N^2, K)
    count = dim * dim
    probs = np.full(count, 1.0 / count)
    if c >= 0.0:
        t = np.sqrt(c * dim * (dim + 1.0) / 2.0)
        scaled = t * vertices
        return SeparableDecomposition(probs=probs, r_vectors=scaled.copy(),
                                      s_vectors=scaled.copy())
    beta = np.sqrt(2.0 / (dim * (dim + 1.0)))
    alpha = abs(c) / beta
    inner_cap = 2.0 / (dim * (dim - 1.0) * (dim * dim - 1.0))
    if alpha * alpha > inner_cap * (1.0 + 1e-12):
        return NOT_DECOMPOSED_HERE
    unit = vertices / np.sqrt(2.0 * dim / (dim + 1.0))  # rotation columns q_i
    return SeparableDecomposition(probs=probs,
                                  r_vectors=-dim * alpha * unit,
                                  s_vectors=dim * beta * unit)


def isotropic_threshold(dim: int) -> float:
    """Entanglement threshold 1/(N+1) of the isotropic family."""
    return 1.0 / (dim + 1.0)


def isotropic_decompose(dim: int, p: float, seed: int = 0,
                        **search_options) -> SeparableDecomposition | DecompositionOutcome:
    """Decompose the isotropic family via its Werner partner.

    Maps p to the Werner parameter phi = (p (N^2-1) + 1)/N, decomposes the
    Werner state and transpose-flips every B-side vector.  p > 1/(N+1) is
    entangled; p outside the PSD range raises OutOfPositivityRange.
    """
    low = -1.0 / (dim * dim - 1.0)
    if not low - 1e-12 <= p <= 1.0 + 1e-12:
        raise OutOfPositivityRange(
            f"isotropic parameter p={p} outside [{low:.6f}, 1]"
        )
    if p > isotropic_threshold(dim):
        return ENTANGLED
    phi = (p * (dim * dim - 1.0) + 1.0) / dim
    partner = werner_decompose(dim, phi, seed, **search_options)
    if isinstance(partner, DecompositionOutcome):
        return partner
    flipped = np.array([transpose_flip(s) for s in partner.s_vectors])
    return SeparableDecomposition(probs=partner.probs,
                                  r_vectors=partner.r_vectors,
                                  s_vectors=flipped)


# ---------------------------------------------------------------------------
# transporting decompositions between equivalent states
# ---------------------------------------------------------------------------

def _transform_components(dec: SeparableDecomposition, map_a, map_b,
                          dim_a_in: int, dim_b_in: int):
    """Apply rho -> M rho M^dag (+ renormalize) to every component pair."""
    probs = []
    r_out = []
    s_out = []
    for p, r, s in dec.entries():
        rho_a = map_a @ from_bloch(r, dim_a_in) @ map_a.conj().T
        rho_b = map_b @ from_bloch(s, dim_b_in) @ map_b.conj().T
        ta = float(np.real(np.trace(rho_a)))
        tb = float(np.real(np.trace(rho_b)))
        probs.append(p * ta * tb)
        r_out.append(to_bloch(rho_a / ta, tol=np.inf))
        s_out.append(to_bloch(rho_b / tb, tol=np.inf))
    probs = np.asarray(probs)
    probs /= probs.sum()
    return SeparableDecomposition(probs=probs,
                                  r_vectors=np.asarray(r_out),
                                  s_vectors=np.asarray(s_out))


def pull_back_filters(dec: SeparableDecomposition, filter_a: np.ndarray,
                      filter_b: np.ndarray, dim_a: int, dim_b: int) -> SeparableDecomposition:
    """Transport a decomposition of the filtered state back to the original.

    Inverts the local filters: each component is conjugated by the filter
    inverses and the weights are re-normalized, which preserves positivity
    and reproduces the pre-filter state exactly.
    """
    inv_a = np.linalg.inv(filter_a)
    inv_b = np.linalg.inv(filter_b)
    return _transform_components(dec, inv_a, inv_b, dim_a, dim_b)


def embed_isometries(dec: SeparableDecomposition, iso_a: np.ndarray,
                     iso_b: np.ndarray) -> SeparableDecomposition:
    """Lift a decomposition through support isometries to the ambient dims."""
    dim_a_in = iso_a.shape[1]
    dim_b_in = iso_b.shape[1]
    return _transform_components(dec, iso_a, iso_b, dim_a_in, dim_b_in)
