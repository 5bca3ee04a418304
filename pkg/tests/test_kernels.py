import os
import subprocess
import sys

import numpy as np
import pytest

from sephorn import kernels
from sephorn.horn import flat_index_arrays
from sephorn.su import generator_basis

needs_numba = pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba not installed")


def triple_inputs(n, rng):
    ii, jj, kk, offs, _ = flat_index_arrays(n)
    a = np.sort(rng.normal(size=n))[::-1].copy()
    b = np.sort(rng.normal(size=n))[::-1].copy()
    c = np.sort(rng.normal(size=n))[::-1].copy()
    return a, b, c, ii, jj, kk, offs


@needs_numba
class TestPathsAgree:
    def test_triple_sums(self):
        rng = np.random.default_rng(0)
        for n in (2, 3, 4, 5):
            a, b, c, ii, jj, kk, offs = triple_inputs(n, rng)
            rhs_np, lhs_np = kernels.triple_sums_numpy(a, b, c, ii, jj, kk, offs)
            rhs_nb, lhs_nb = kernels.triple_sums_numba(a, b, c, ii, jj, kk, offs)
            np.testing.assert_allclose(rhs_np, rhs_nb, atol=1e-13)
            np.testing.assert_allclose(lhs_np, lhs_nb, atol=1e-13)

    def test_triple_sums_with_neg_inf(self):
        rng = np.random.default_rng(1)
        a, b, c, ii, jj, kk, offs = triple_inputs(4, rng)
        a[-1] = -np.inf
        c[-2:] = -np.inf
        rhs_np, lhs_np = kernels.triple_sums_numpy(a, b, c, ii, jj, kk, offs)
        rhs_nb, lhs_nb = kernels.triple_sums_numba(a, b, c, ii, jj, kk, offs)
        np.testing.assert_array_equal(np.isneginf(rhs_np), np.isneginf(rhs_nb))
        np.testing.assert_array_equal(np.isneginf(lhs_np), np.isneginf(lhs_nb))
        finite = np.isfinite(rhs_np)
        np.testing.assert_allclose(rhs_np[finite], rhs_nb[finite], atol=1e-13)

    def test_batch_min_margin(self):
        rng = np.random.default_rng(2)
        ii, jj, kk, offs, _ = flat_index_arrays(4)
        a = np.sort(rng.normal(size=(200, 4)), axis=1)[:, ::-1].copy()
        b = np.sort(rng.normal(size=(200, 4)), axis=1)[:, ::-1].copy()
        c = np.sort(rng.normal(size=(200, 4)), axis=1)[:, ::-1].copy()
        out_np = kernels.batch_min_margin_numpy(a, b, c, ii, jj, kk, offs)
        out_nb = kernels.batch_min_margin_numba(a, b, c, ii, jj, kk, offs)
        np.testing.assert_allclose(out_np, out_nb, atol=1e-12)

    def test_neg_eig_mass(self):
        rng = np.random.default_rng(3)
        for dim in (2, 3):
            k = dim * dim - 1
            gens = np.ascontiguousarray(generator_basis(dim).matrices)
            bloch = np.ascontiguousarray(rng.normal(size=(k, dim * dim)))
            f_np, g_np = kernels.neg_eig_mass_numpy(bloch, gens)
            f_nb, g_nb = kernels.neg_eig_mass_numba(bloch, gens)
            assert abs(f_np - f_nb) < 1e-12 * max(1.0, f_np)
            np.testing.assert_allclose(g_np, g_nb, atol=1e-11)


def test_gradient_matches_finite_differences():
    rng = np.random.default_rng(4)
    dim = 3
    k = dim * dim - 1
    gens = np.ascontiguousarray(generator_basis(dim).matrices)
    bloch = np.ascontiguousarray(rng.normal(scale=0.8, size=(k, 4)))
    f0, grad = kernels.neg_eig_mass_numpy(bloch, gens)
    eps = 1e-6
    for _ in range(10):
        mu, v = rng.integers(0, k), rng.integers(0, 4)
        shifted = bloch.copy()
        shifted[mu, v] += eps
        f1, _ = kernels.neg_eig_mass_numpy(shifted, gens)
        assert abs((f1 - f0) / eps - grad[mu, v]) < 1e-4


def test_env_flag_selects_numpy_path():
    code = ("import sephorn.kernels as k; "
            "assert not k.USE_NUMBA; "
            "assert k.neg_eig_mass is k.neg_eig_mass_numpy; "
            "print('numpy path active')")
    env = dict(os.environ, SEP_HORN_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True)
    assert out.returncode == 0, out.stderr
    assert "numpy path active" in out.stdout
