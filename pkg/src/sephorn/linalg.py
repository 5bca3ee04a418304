"""Dense linear-algebra kernels shared by the whole package.

All spectral factorizations order values descending, orthogonal factors are
real, and the deterministic random samplers take either an integer seed or a
caller-owned :class:`numpy.random.Generator`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NotHermitian, NotOrthonormal


@dataclass(frozen=True)
class Svd:
    """Factorization ``m = left @ diag(singulars) @ right.T``.

    ``left`` and ``right`` have orthonormal columns and ``singulars`` is
    non-negative and descending.
    """

    left: np.ndarray
    singulars: np.ndarray
    right: np.ndarray

    def reconstruct(self) -> np.ndarray:
        k = len(self.singulars)
        return (self.left[:, :k] * self.singulars) @ self.right[:, :k].T


def eigh_descending(m: np.ndarray, herm_tol: float = 1e-10):
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvectors as columns
    matching the eigenvalue order.
    """
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    dev = np.abs(m - m.conj().T).max() if m.size else 0.0
    if dev > herm_tol:
        raise NotHermitian(f"Hermiticity deviation {dev:.3e} exceeds {herm_tol:.1e}")
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK rarely fails here
        raise NoConvergence(str(exc)) from exc
    return w[::-1].copy(), v[:, ::-1].copy()


def svd(m: np.ndarray) -> Svd:
    """Real SVD with descending singular values."""
    m = np.asarray(m, dtype=float)
    try:
        u, s, vh = np.linalg.svd(m)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    return Svd(left=u, singulars=s, right=vh.T)


def complete_orthonormal(
    prescribed,
    dim: int,
    *,
    orth_tol: float = 1e-10,
    dep_tol: float = 1e-8,
) -> np.ndarray:
    """Extend prescribed orthonormal rows to a full rotation matrix.

    The returned ``dim x dim`` matrix is orthogonal with determinant +1 and
    carries the prescribed rows, untouched, as its last rows.  The free rows
    are produced by deterministic Gram-Schmidt over the standard basis,
    skipping candidates whose residual norm falls below ``dep_tol``.
    """
    rows = [np.asarray(v, dtype=float) for v in prescribed]
    k = len(rows)
    if k > dim:
        raise DimensionMismatch(f"{k} prescribed rows exceed dimension {dim}")
    for v in rows:
        if v.shape != (dim,):
            raise DimensionMismatch(f"prescribed row has shape {v.shape}, want ({dim},)")
    for a in range(k):
        for b in range(a, k):
            got = rows[a] @ rows[b]
            want = 1.0 if a == b else 0.0
            if abs(got - want) > orth_tol:
                raise NotOrthonormal(
                    f"rows {a},{b}: inner product {got:.3e} deviates from {want}"
                )

    free: list[np.ndarray] = []
    need = dim - k
    for idx in range(dim):
        if len(free) == need:
            break
        v = np.zeros(dim)
        v[idx] = 1.0
        for u in rows:
            v -= (u @ v) * u
        for u in free:
            v -= (u @ v) * u
        norm = np.linalg.norm(v)
        if norm < dep_tol:
            continue
        v /= norm
        # second orthogonalization pass tightens loss of orthogonality
        for u in rows:
            v -= (u @ v) * u
        for u in free:
            v -= (u @ v) * u
        free.append(v / np.linalg.norm(v))
    if len(free) < need:  # pragma: no cover - cannot happen for orthonormal input
        raise NotOrthonormal("standard basis exhausted before completion")

    q = np.vstack(free + rows) if (free or rows) else np.zeros((0, 0))
    if need > 0 and np.linalg.det(q) < 0:
        q[0] = -q[0]
    return q


def _as_generator(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_orthogonal(dim: int, seed) -> np.ndarray:
    """Haar-distributed orthogonal matrix (QR with sign-fixed R diagonal)."""
    rng = _as_generator(seed)
    g = rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    d = np.sign(np.diag(r))
    d[d == 0] = 1.0
    return q * d


def random_unitary(dim: int, seed) -> np.ndarray:
    """Haar-distributed unitary matrix (complex Ginibre + QR)."""
    rng = _as_generator(seed)
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    d = np.diag(r)
    phase = d / np.abs(d)
    return q * phase
