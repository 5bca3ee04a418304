"""Hot numeric kernels, compiled with numba when available.

Three inner loops dominate the package's runtime: evaluating the
inequality battery over large triple sets, scanning random-matrix samples
against those inequalities, and the negative-eigenvalue objective driven
inside the pure-state simplex search.  Each kernel exists in two forms:

* ``*_numpy``  -- vectorized pure-numpy implementation,
* ``*_numba``  -- ``@njit`` loop implementation (when numba imports).

The module-level names ``triple_sums``, ``batch_min_margin`` and
``neg_eig_mass`` point at the selected implementation.  Setting the
environment variable ``SEP_HORN_NO_NUMBA=1`` before import forces the
numpy path; the numpy path is also used automatically when numba is not
installed.  ``benchmarks/bench_kernels.py`` times both paths side by side.
"""

from __future__ import annotations

import os

import numpy as np

ENV_NO_NUMBA = "SEP_HORN_NO_NUMBA"


def _numba_disabled() -> bool:
    return os.environ.get(ENV_NO_NUMBA, "").strip().lower() in ("1", "true", "yes", "on")


try:
    from numba import njit, prange

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not _numba_disabled()


# ---------------------------------------------------------------------------
# triple_sums: per-triple index sums
#
# Triples are flattened CSR-style: ``ii``, ``jj``, ``kk`` hold 0-based index
# runs, segment t spanning offs[t]:offs[t+1].  Given value vectors a, b, c
# (log-singular-values or eigenvalues), returns per-triple
#     rhs[t] = sum a[ii] + sum b[jj]   and   lhs[t] = sum c[kk].
# -inf entries propagate through the sums (IEEE semantics), which is exactly
# the log-domain convention used for zero singular values.
# ---------------------------------------------------------------------------

def triple_sums_numpy(a, b, c, ii, jj, kk, offs):
    starts = offs[:-1]
    rhs = np.add.reduceat(a[ii], starts) + np.add.reduceat(b[jj], starts)
    lhs = np.add.reduceat(c[kk], starts)
    return rhs, lhs


if HAVE_NUMBA:

    @njit(cache=True)
    def triple_sums_numba(a, b, c, ii, jj, kk, offs):
        t_count = offs.shape[0] - 1
        rhs = np.empty(t_count)
        lhs = np.empty(t_count)
        for t in range(t_count):
            sr = 0.0
            sl = 0.0
            for q in range(offs[t], offs[t + 1]):
                sr += a[ii[q]] + b[jj[q]]
                sl += c[kk[q]]
            rhs[t] = sr
            lhs[t] = sl
        return rhs, lhs


# ---------------------------------------------------------------------------
# batch_min_margin: worst inequality margin per sample
#
# a, b, c: (S, n) descending value rows (finite).  Returns the (S,) array of
# min_t (rhs_t - lhs_t); a negative entry flags a violated inequality.
# ---------------------------------------------------------------------------

def batch_min_margin_numpy(a, b, c, ii, jj, kk, offs, chunk: int = 8192):
    starts = offs[:-1]
    out = np.empty(a.shape[0])
    for lo in range(0, a.shape[0], chunk):
        hi = min(lo + chunk, a.shape[0])
        rhs = (np.add.reduceat(a[lo:hi, ii], starts, axis=1)
               + np.add.reduceat(b[lo:hi, jj], starts, axis=1))
        lhs = np.add.reduceat(c[lo:hi, kk], starts, axis=1)
        out[lo:hi] = (rhs - lhs).min(axis=1)
    return out


if HAVE_NUMBA:

    @njit(cache=True, parallel=True)
    def batch_min_margin_numba(a, b, c, ii, jj, kk, offs):
        samples = a.shape[0]
        t_count = offs.shape[0] - 1
        out = np.empty(samples)
        for s in prange(samples):
            worst = np.inf
            for t in range(t_count):
                m = 0.0
                for q in range(offs[t], offs[t + 1]):
                    m += a[s, ii[q]] + b[s, jj[q]] - c[s, kk[q]]
                if m < worst:
                    worst = m
            out[s] = worst
        return out


# ---------------------------------------------------------------------------
# neg_eig_mass: simplex-search objective and gradient
#
# bloch: (K, V) matrix whose columns are Bloch vectors; gens: (K, n, n)
# complex generator stack.  For each column v the matrix
#     rho_v = eye(n)/n + 0.5 * sum_mu bloch[mu, v] * gens[mu]
# is formed and the objective accumulates sum_k min(0, eig_k(rho_v))^2.
# Returns (f, d f / d bloch).
# ---------------------------------------------------------------------------

def neg_eig_mass_numpy(bloch, gens):
    n = gens.shape[1]
    rhos = np.eye(n)[None, :, :] / n + 0.5 * np.einsum("mv,mij->vij", bloch, gens)
    w, u = np.linalg.eigh(rhos)
    neg = np.minimum(w, 0.0)
    f = float(np.sum(neg * neg))
    grad_coef = 2.0 * neg
    g = np.einsum("vik,vk,vjk->vij", u, grad_coef, u.conj())
    dbloch = 0.5 * np.real(np.einsum("vij,mji->mv", g, gens))
    return f, dbloch


if HAVE_NUMBA:

    @njit(cache=True)
    def neg_eig_mass_numba(bloch, gens):
        k_dim, v_count = bloch.shape
        n = gens.shape[1]
        dbloch = np.zeros((k_dim, v_count))
        f = 0.0
        for v in range(v_count):
            rho = np.zeros((n, n), dtype=np.complex128)
            for d in range(n):
                rho[d, d] = 1.0 / n
            for mu in range(k_dim):
                coeff = 0.5 * bloch[mu, v]
                for i in range(n):
                    for j in range(n):
                        rho[i, j] += coeff * gens[mu, i, j]
            w, u = np.linalg.eigh(rho)
            coef = np.zeros(n)
            for d in range(n):
                if w[d] < 0.0:
                    f += w[d] * w[d]
                    coef[d] = 2.0 * w[d]
            g = (u * coef) @ u.conj().T
            for mu in range(k_dim):
                acc = 0.0
                for i in range(n):
                    for j in range(n):
                        acc += (g[i, j] * gens[mu, j, i]).real
                dbloch[mu, v] = 0.5 * acc
        return f, dbloch


if USE_NUMBA:
    triple_sums = triple_sums_numba
    batch_min_margin = batch_min_margin_numba
    neg_eig_mass = neg_eig_mass_numba
else:
    triple_sums = triple_sums_numpy
    batch_min_margin = batch_min_margin_numpy
    neg_eig_mass = neg_eig_mass_numpy
