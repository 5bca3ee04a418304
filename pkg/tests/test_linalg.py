import numpy as np
import pytest

from sephorn.errors import DimensionMismatch, NotHermitian, NotOrthonormal
from sephorn.linalg import (
    complete_orthonormal,
    eigh_descending,
    random_orthogonal,
    random_unitary,
    svd,
)


def random_hermitian(n, rng):
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (g + g.conj().T) / 2


class TestEigh:
    def test_identity(self):
        w, v = eigh_descending(np.eye(2))
        np.testing.assert_allclose(w, [1.0, 1.0])

    def test_pauli_z(self):
        w, v = eigh_descending(np.diag([1.0, -1.0]))
        np.testing.assert_allclose(w, [1.0, -1.0])
        np.testing.assert_allclose(np.abs(v), np.eye(2), atol=1e-14)

    def test_reconstruction_seed_42(self):
        rng = np.random.default_rng(42)
        m = random_hermitian(4, rng)
        w, v = eigh_descending(m)
        np.testing.assert_allclose((v * w) @ v.conj().T, m, atol=1e-12)
        assert (np.diff(w) <= 1e-14).all()

    def test_eigenvector_residuals(self):
        rng = np.random.default_rng(7)
        for n in (2, 3, 5):
            m = random_hermitian(n, rng)
            w, v = eigh_descending(m)
            for k in range(n):
                np.testing.assert_allclose(m @ v[:, k], w[k] * v[:, k], atol=1e-11)
            np.testing.assert_allclose(v.conj().T @ v, np.eye(n), atol=1e-12)

    def test_not_hermitian(self):
        with pytest.raises(NotHermitian):
            eigh_descending(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_not_square(self):
        with pytest.raises(DimensionMismatch):
            eigh_descending(np.zeros((2, 3)))

    def test_psd_input_stays_nonnegative(self):
        rng = np.random.default_rng(15)
        for _ in range(50):
            g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            w, _ = eigh_descending(g @ g.conj().T)
            assert w[-1] >= -1e-10


class TestSvd:
    def test_identity(self):
        fac = svd(np.eye(3))
        np.testing.assert_allclose(fac.singulars, [1.0, 1.0, 1.0])

    def test_signed_diagonal(self):
        # diag(1,-1,1) has all-unit singular values
        fac = svd(np.diag([1.0, -1.0, 1.0]))
        np.testing.assert_allclose(fac.singulars, [1.0, 1.0, 1.0], atol=1e-15)

    def test_rank_one(self):
        u = np.array([1.0, 0.0, 0.0])
        v = np.array([0.6, 0.8])
        fac = svd(np.outer(u, v))
        np.testing.assert_allclose(fac.singulars, [1.0, 0.0], atol=1e-14)

    def test_reconstruction_property(self):
        rng = np.random.default_rng(3)
        for _ in range(40):
            rows, cols = rng.integers(1, 7, size=2)
            m = rng.normal(size=(rows, cols))
            fac = svd(m)
            err = np.linalg.norm(fac.reconstruct() - m)
            assert err <= 1e-12 * (1.0 + np.linalg.norm(m))
            assert (np.diff(fac.singulars) <= 1e-14).all()
            assert (fac.singulars >= 0).all()


class TestCompleteOrthonormal:
    def test_single_row_dim2(self):
        q = complete_orthonormal([np.array([1.0, 0.0])], 2)
        np.testing.assert_allclose(q[-1], [1.0, 0.0])
        np.testing.assert_allclose(q @ q.T, np.eye(2), atol=1e-12)
        assert np.linalg.det(q) > 0

    def test_uniform_row_dim4(self):
        row = np.full(4, 0.5)
        q = complete_orthonormal([row], 4)
        assert (q[-1] == row).all()  # prescribed row preserved bit-for-bit
        np.testing.assert_allclose(q @ q.T, np.eye(4), atol=1e-10)
        np.testing.assert_allclose(np.linalg.det(q), 1.0, atol=1e-10)

    def test_empty_prescription(self):
        q = complete_orthonormal([], 3)
        np.testing.assert_allclose(q @ q.T, np.eye(3), atol=1e-12)
        np.testing.assert_allclose(np.linalg.det(q), 1.0, atol=1e-12)

    def test_random_prescriptions(self):
        rng = np.random.default_rng(5)
        for trial in range(30):
            dim = int(rng.integers(2, 9))
            k = int(rng.integers(1, dim + 1))
            rows = random_orthogonal(dim, rng)[:k]
            q = complete_orthonormal(list(rows), dim)
            np.testing.assert_allclose(q @ q.T, np.eye(dim), atol=1e-10)
            assert (q[-k:] == rows).all()
            if k < dim:
                np.testing.assert_allclose(np.linalg.det(q), 1.0, atol=1e-9)

    def test_rejects_non_orthonormal(self):
        with pytest.raises(NotOrthonormal):
            complete_orthonormal([np.array([1.0, 1.0])], 2)
        with pytest.raises(NotOrthonormal):
            complete_orthonormal([np.array([1.0, 0.0]), np.array([0.9, 0.1])], 2)

    def test_rejects_bad_shapes(self):
        with pytest.raises(DimensionMismatch):
            complete_orthonormal([np.array([1.0, 0.0, 0.0])], 2)
        with pytest.raises(DimensionMismatch):
            complete_orthonormal([np.eye(3)[i] for i in range(3)], 2)


class TestRandomFactors:
    def test_dim1_is_sign(self):
        q = random_orthogonal(1, 0)
        assert q.shape == (1, 1)
        assert abs(abs(q[0, 0]) - 1.0) < 1e-14

    def test_deterministic(self):
        a = random_orthogonal(3, 7)
        b = random_orthogonal(3, 7)
        assert (a == b).all()

    def test_orthogonality(self):
        q = random_orthogonal(5, 1)
        assert np.abs(q @ q.T - np.eye(5)).max() < 1e-12

    def test_unitary(self):
        u = random_unitary(4, 9)
        assert np.abs(u @ u.conj().T - np.eye(4)).max() < 1e-12
        assert (random_unitary(4, 9) == u).all()
