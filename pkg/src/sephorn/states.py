"""Factories for the named state families plus seeded random states."""

from __future__ import annotations

import numpy as np

from .bipartite import BipartiteDecomposed, compose_state, decompose_state
from .errors import NotPSD, OutOfPositivityRange
from .su import generator_basis


def werner_coefficient(dim: int, phi: float) -> float:
    """Correlation coefficient 2(N phi - 1) / (N (N^2 - 1)) of the Werner family."""
    return 2.0 * (dim * phi - 1.0) / (dim * (dim * dim - 1.0))


def werner(dim: int, phi: float, psd_tol: float = 1e-9) -> BipartiteDecomposed:
    """Werner state on dim x dim: zero marginals, correlation c * identity.

    PSD over phi in [-1, 1]; out-of-range parameters raise NotPSD.
    """
    k = dim * dim - 1
    c = werner_coefficient(dim, phi)
    d = BipartiteDecomposed(dim_a=dim, dim_b=dim,
                            a=np.zeros(k), b=np.zeros(k),
                            corr=c * np.eye(k))
    _check_psd(d, psd_tol, f"Werner(dim={dim}, phi={phi})")
    return d


def isotropic(dim: int, p: float, psd_tol: float = 1e-9) -> BipartiteDecomposed:
    """Isotropic state on dim x dim: diagonal correlation +-2p/N.

    The correlation matrix carries +2p/N at the transpose-symmetric
    generator indices and -2p/N at the antisymmetric ones.  PSD over
    p in [-1/(N^2-1), 1].
    """
    k = dim * dim - 1
    basis = generator_basis(dim)
    diag = np.full(k, 2.0 * p / dim)
    anti = list(basis.antisymmetric_indices)
    diag[anti] = -diag[anti]
    d = BipartiteDecomposed(dim_a=dim, dim_b=dim,
                            a=np.zeros(k), b=np.zeros(k),
                            corr=np.diag(diag))
    _check_psd(d, psd_tol, f"isotropic(dim={dim}, p={p})")
    return d


def bell() -> BipartiteDecomposed:
    """The two-qubit maximally entangled state (|00> + |11>)/sqrt(2).

    In the canonical Pauli ordering the correlation matrix is
    diag(1, -1, 1).
    """
    return BipartiteDecomposed(dim_a=2, dim_b=2,
                               a=np.zeros(3), b=np.zeros(3),
                               corr=np.diag([1.0, -1.0, 1.0]))


def p_zero(p: float, sign: int = +1) -> BipartiteDecomposed:
    """Mixture p |psi_sign><psi_sign| + (1-p) |00><00| of two qubits.

    ``psi_+- = (|01> +- |10>)/sqrt(2)``.  Separable only at p = 0; its
    normal form is approached but never reached by filtering for p > 0.
    """
    if not 0.0 <= p <= 1.0:
        raise OutOfPositivityRange(f"p must lie in [0, 1], got {p}")
    if sign not in (+1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    psi = np.zeros(4)
    psi[1] = 1.0 / np.sqrt(2.0)
    psi[2] = sign / np.sqrt(2.0)
    rho = p * np.outer(psi, psi) + (1.0 - p) * np.diag([1.0, 0.0, 0.0, 0.0])
    return decompose_state(rho.astype(complex), 2, 2)


def random_density(dim: int, rank: int, seed) -> np.ndarray:
    """Random density matrix G G^dag / Tr[G G^dag] with G of width ``rank``."""
    if not 1 <= rank <= dim:
        raise OutOfPositivityRange(f"rank must lie in 1..{dim}, got {rank}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.real(np.trace(rho))


def _check_psd(d: BipartiteDecomposed, tol: float, label: str) -> None:
    low = float(np.linalg.eigvalsh(compose_state(d))[0])
    if low < -tol:
        raise NotPSD(f"{label} has minimum eigenvalue {low:.3e}")
