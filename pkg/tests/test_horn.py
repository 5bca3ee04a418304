import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sephorn.errors import BadCardinality, LengthMismatch, NotSorted, TripleCapExceeded
from sephorn.horn import (
    all_triples,
    check_product_inequalities,
    partition_of,
    product_singulars_feasible,
    triple_set,
)
from sephorn.linalg import random_orthogonal

# hand-enumerated from the base rule i + j = k + 1
T_1_2 = (((1,), (1,), (1,)), ((1,), (2,), (2,)), ((2,), (1,), (2,)))

# frozen output of the inductive procedure, cross-validated below by the
# random-Hermitian eigenvalue oracle
T_2_3 = (
    ((1, 2), (1, 2), (1, 2)),
    ((1, 2), (1, 3), (1, 3)),
    ((1, 2), (2, 3), (2, 3)),
    ((1, 3), (1, 2), (1, 3)),
    ((1, 3), (1, 3), (2, 3)),
    ((2, 3), (1, 2), (2, 3)),
)


class TestPartition:
    def test_initial_segment_is_zero(self):
        assert partition_of((1, 2, 3)) == (0, 0, 0)

    def test_two_four(self):
        assert partition_of((2, 4)) == (2, 1)

    def test_singleton(self):
        assert partition_of((3,)) == (2,)

    @given(st.lists(st.integers(1, 30), min_size=1, max_size=8, unique=True))
    def test_weakly_decreasing_nonnegative(self, values):
        part = partition_of(tuple(sorted(values)))
        assert all(part[i] >= part[i + 1] for i in range(len(part) - 1))
        assert all(x >= 0 for x in part)


class TestTripleSets:
    def test_base_case_n2(self):
        assert triple_set(2, 1).triples == T_1_2

    def test_base_case_n3(self):
        ts = triple_set(3, 1)
        assert len(ts) == 6
        assert ((2,), (2,), (3,)) in ts.triples

    def test_inductive_n3(self):
        assert triple_set(3, 2).triples == T_2_3

    def test_known_counts(self):
        # totals 12 / 41 / 142 for n = 3 / 4 / 5 match the classical tables
        assert [len(t) for t in all_triples(3)] == [6, 6]
        assert [len(t) for t in all_triples(4)] == [10, 21, 10]
        assert [len(t) for t in all_triples(5)] == [15, 56, 56, 15]

    def test_all_triples_n2(self):
        sets = all_triples(2)
        assert len(sets) == 1 and sets[0].triples == T_1_2

    def test_revalidation(self):
        # every emitted triple satisfies the defining constraints
        for r in (1, 2, 3):
            for I, J, K in triple_set(4, r):
                assert sum(I) + sum(J) == sum(K) + r * (r + 1) // 2
                for p in range(1, r):
                    for F, G, H in triple_set(r, p):
                        lhs = sum(I[f - 1] for f in F) + sum(J[g - 1] for g in G)
                        assert lhs <= sum(K[h - 1] for h in H) + p * (p + 1) // 2

    def test_bad_cardinality(self):
        with pytest.raises(BadCardinality):
            triple_set(3, 0)
        with pytest.raises(BadCardinality):
            triple_set(3, 3)

    def test_cap(self):
        with pytest.raises(TripleCapExceeded):
            triple_set(17, 1)

    def test_additive_oracle_sample(self):
        # eigenvalues of (A, B, A+B) never violate the emitted inequalities
        rng = np.random.default_rng(2024)
        for n in (3, 4):
            trips = [t for ts in all_triples(n) for t in ts]
            for _ in range(500):
                g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
                a = (g + g.conj().T) / 2
                g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
                b = (g + g.conj().T) / 2
                ea = np.sort(np.linalg.eigvalsh(a))[::-1]
                eb = np.sort(np.linalg.eigvalsh(b))[::-1]
                ec = np.sort(np.linalg.eigvalsh(a + b))[::-1]
                for I, J, K in trips:
                    lhs = sum(ec[k - 1] for k in K)
                    rhs = sum(ea[i - 1] for i in I) + sum(eb[j - 1] for j in J)
                    assert lhs <= rhs + 1e-9


def test_multiplicative_product_oracle():
    # singular values of real products C = AB never violate the battery
    rng = np.random.default_rng(314)
    for n in (2, 3, 4):
        a = rng.normal(size=(10_000, n, n))
        b = rng.normal(size=(10_000, n, n))
        sa = np.linalg.svd(a, compute_uv=False)
        sb = np.linalg.svd(b, compute_uv=False)
        sc = np.linalg.svd(a @ b, compute_uv=False)
        from sephorn.horn import flat_index_arrays
        from sephorn import kernels
        ii, jj, kk, offs, _ = flat_index_arrays(n)
        with np.errstate(divide="ignore"):
            margins = kernels.batch_min_margin(
                np.ascontiguousarray(np.log(sa)),
                np.ascontiguousarray(np.log(sb)),
                np.ascontiguousarray(np.log(sc)), ii, jj, kk, offs)
        assert float(margins.min()) >= -1e-9


def rejected_sum_candidates(n):
    """Sum-condition holders that fail the induction."""
    out = []
    for r in range(2, n):
        accepted = set(triple_set(n, r).triples)
        shift = r * (r + 1) // 2
        subsets = [tuple(c) for c in itertools.combinations(range(1, n + 1), r)]
        for I, J, K in itertools.product(subsets, repeat=3):
            if sum(I) + sum(J) == sum(K) + shift and (I, J, K) not in accepted:
                out.append((r, (I, J, K)))
    return out


def test_rejected_candidates_exist_for_n4():
    assert len(rejected_sum_candidates(4)) == 6


class TestProductInequalities:
    def test_all_ones_boundary(self):
        report = check_product_inequalities([1.0, 1.0], [1.0, 1.0], [1.0, 1.0])
        assert report.feasible
        assert abs(report.worst_margin) < 1e-12
        assert report.product_equality is True

    def test_bell_like_all_ones(self):
        report = check_product_inequalities([1.0] * 3, [1.0] * 3, [1.0] * 3)
        assert report.feasible and report.product_equality is True

    def test_top_singular_violation(self):
        report = check_product_inequalities([2.0, 0.5], [1.0, 1.0], [1.0, 1.0])
        assert not report.feasible
        assert ((1,), (1,), (1,)) in report.violated

    def test_zero_handling(self):
        report = check_product_inequalities([1.0, 0.0], [1.0, 1.0], [1.0, 0.0])
        assert report.feasible
        assert report.product_equality is None  # zeros present

    def test_zero_right_side_violation(self):
        report = check_product_inequalities([1.0, 1.0], [1.0, 1.0], [1.0, 0.0])
        assert not report.feasible
        assert report.worst_margin == -np.inf

    def test_feasible_iff_no_violations(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            vals = [np.sort(rng.uniform(0, 2, size=3))[::-1] for _ in range(3)]
            report = check_product_inequalities(*vals)
            assert report.feasible == (len(report.violated) == 0)

    def test_validation_errors(self):
        with pytest.raises(LengthMismatch):
            check_product_inequalities([1.0], [1.0, 0.5], [1.0, 0.5])
        with pytest.raises(NotSorted):
            check_product_inequalities([0.5, 1.0], [1.0, 0.5], [1.0, 0.5])
        with pytest.raises(NotSorted):
            check_product_inequalities([1.0, -0.5], [1.0, 0.5], [1.0, 0.5])


class TestFeasibility:
    def test_zero_padded_realizable(self):
        assert product_singulars_feasible([1.0, 0.0], [1.0, 1.0], [1.0, 0.0])

    def test_top_violation(self):
        assert not product_singulars_feasible([2.0, 1.0], [1.0, 1.0], [1.0, 1.0])

    def test_strictly_positive_needs_equality(self):
        # diag(1,1) Q diag(1,1) = Q always has singular values (1,1)
        assert not product_singulars_feasible([1.0, 0.0], [1.0, 1.0], [1.0, 1.0])
        assert not product_singulars_feasible([0.9, 0.9], [1.0, 1.0], [1.0, 1.0])
        assert product_singulars_feasible([1.0, 1.0], [1.0, 1.0], [1.0, 1.0])

    def test_uniform_third(self):
        t = 1.0 / 3.0
        s = 1.0 / np.sqrt(3.0)
        assert product_singulars_feasible([t] * 3, [s] * 3, [s] * 3)

    def test_forward_sampling(self):
        # singular values of D_alpha Q D_beta are always feasible
        rng = np.random.default_rng(77)
        for _ in range(100):
            size = int(rng.integers(2, 6))
            alpha = np.sort(rng.uniform(0.05, 2.0, size=size))[::-1]
            beta = np.sort(rng.uniform(0.05, 2.0, size=size))[::-1]
            q = random_orthogonal(size, rng)
            taus = np.linalg.svd((alpha[:, None] * q) * beta[None, :],
                                 compute_uv=False)
            assert product_singulars_feasible(taus, alpha, beta)

    def test_exponential_bridge(self):
        # additive feasibility of eigenvalue triples of (A, B, A+B) maps to
        # multiplicative feasibility of the exponentiated sequences
        rng = np.random.default_rng(99)
        for _ in range(50):
            n = int(rng.integers(2, 5))
            g = rng.normal(size=(n, n))
            a = (g + g.T) / 2
            g = rng.normal(size=(n, n))
            b = (g + g.T) / 2
            ea = np.sort(np.linalg.eigvalsh(a))[::-1]
            eb = np.sort(np.linalg.eigvalsh(b))[::-1]
            ec = np.sort(np.linalg.eigvalsh(a + b))[::-1]
            assert product_singulars_feasible(
                np.exp(ec - ec[0]),
                np.exp(ea - ec[0] / 2.0),
                np.exp(eb - ec[0] / 2.0))
