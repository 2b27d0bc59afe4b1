"""Tests for the general-form to standard-form reduction."""

import numpy as np
import pytest

from tests.conftest import unit_test, integration_test
from tests.test_fixtures import TestDataGenerator, rel, stacked_min_norm

MUS = (0.0, 1e-3, 1e-1, 1.0)


def _solve(A, L, b, mu, case=None):
    """Direct filter on the standard-form system, mapped back to x."""
    from src.linalg import svd
    from src.solvers import tikhonov_filtered
    from src.transform import back_map, to_standard_form

    system = to_standard_form(A, L, b, case=case)
    y = tikhonov_filtered(svd(system.K, "K"), system.rhs, mu)
    return back_map(system, y), system


def _random_instance(rng, kind):
    """(A, L, full_column_rank_A) for one regularizer family; dimensions stay within 12."""
    n = int(rng.integers(4, 11))
    m = int(rng.integers(n, 13))
    if rng.random() < 0.3:
        A = TestDataGenerator.rank_deficient(rng, m, n, int(rng.integers(1, n)))
        full_rank = False
    else:
        A = rng.standard_normal((m, n))
        full_rank = True

    if kind == "d1":
        L = TestDataGenerator.difference_matrix(n, 1)
    elif kind == "d2":
        L = TestDataGenerator.difference_matrix(n, 2)
    elif kind == "low_rank":
        p = int(rng.integers(2, 13))
        L = TestDataGenerator.rank_deficient(rng, p, n, int(rng.integers(1, min(p, n))))
    elif kind == "square":
        L = 3.0 * np.eye(n) + 0.5 * rng.standard_normal((n, n))
    elif kind == "tall":
        L = rng.standard_normal((int(rng.integers(n + 1, 13)), n))
    else:
        # constant vector annihilated by both A and L
        L = TestDataGenerator.difference_matrix(n, 1)
        A = A @ (np.eye(n) - np.full((n, n), 1.0 / n))
        full_rank = False
    return A, L, full_rank


@unit_test
class TestNullRangeBasesUnit:
    """Orthonormal bases of N(L) and R(L)."""

    def test_identity(self):
        from src.transform import null_range_bases

        W, Z = null_range_bases(np.eye(3))
        assert W.shape == (3, 0)
        np.testing.assert_allclose(np.abs(Z), np.eye(3), atol=1e-15)

    def test_first_difference_kernel(self):
        from src.problems import derivative_operator
        from src.transform import null_range_bases

        L = derivative_operator("d1", 4).matrix
        W, Z = null_range_bases(L)
        assert W.shape == (4, 1)
        np.testing.assert_allclose(W[:, 0], 0.5, atol=1e-14)
        np.testing.assert_allclose(Z.T @ Z, np.eye(3), atol=1e-14)

    def test_second_difference_kernel(self):
        from src.problems import derivative_operator
        from src.transform import null_range_bases

        L = derivative_operator("d2", 6).matrix
        W, Z = null_range_bases(L)
        assert W.shape == (6, 2)
        assert np.linalg.norm(L @ W) <= 1e-12
        np.testing.assert_allclose(W.T @ W, np.eye(2), atol=1e-14)
        # Z spans R(L): projecting L onto it changes nothing
        np.testing.assert_allclose(Z @ (Z.T @ L), L, atol=1e-13)


@unit_test
class TestToStandardFormUnit:
    """Reduction paths, examples and error handling."""

    def test_identity_regularizer(self, rng):
        from src.transform import TransformCase, to_standard_form

        A = rng.standard_normal((7, 5))
        b = rng.standard_normal(7)
        system = to_standard_form(A, np.eye(5), b)
        assert system.case_tag is TransformCase.SQUARE_NONSINGULAR
        np.testing.assert_allclose(system.K, A, atol=1e-15)
        np.testing.assert_allclose(system.back_basis, np.eye(5), atol=1e-15)
        np.testing.assert_array_equal(system.back_offset, 0.0)

    def test_square_nonsingular_example(self):
        from src.transform import back_map, to_standard_form

        system = to_standard_form(np.eye(2), np.diag([1.0, 2.0]), np.array([1.0, 1.0]))
        np.testing.assert_allclose(system.K, np.diag([1.0, 0.5]), atol=1e-15)
        np.testing.assert_allclose(system.back_basis, np.diag([1.0, 0.5]), atol=1e-15)

        x, _ = _solve(np.eye(2), np.diag([1.0, 2.0]), np.array([1.0, 1.0]), 0.0)
        np.testing.assert_allclose(x, [1.0, 1.0], atol=1e-14)
        np.testing.assert_array_equal(back_map(system, np.zeros(2)), system.back_offset)

    def test_first_difference_example(self, rng):
        from src.problems import derivative_operator

        A = rng.standard_normal((6, 5))
        b = rng.standard_normal(6)
        L = derivative_operator("d1", 5).matrix
        x, _ = _solve(A, L, b, 0.1)
        assert rel(x, stacked_min_norm(A, L, b, 0.1)) <= 1e-8

    def test_plan_tags(self, rng):
        from src.problems import derivative_operator
        from src.transform import TransformCase, plan_transform

        A = rng.standard_normal((10, 8))
        assert plan_transform(A, np.eye(8)).case_tag is TransformCase.SQUARE_NONSINGULAR
        assert plan_transform(A, rng.standard_normal((11, 8))).case_tag is TransformCase.FULL_COL_RANK

        plan = plan_transform(A, derivative_operator("d2", 8).matrix)
        assert plan.case_tag is TransformCase.FULL_ROW_RANK
        assert (plan.rank_l, plan.null_dim, plan.rank_aw) == (6, 2, 2)

        low = TestDataGenerator.rank_deficient(rng, 6, 8, 3)
        assert plan_transform(A, low).case_tag is TransformCase.GENERAL

    def test_operator_orthogonal_to_ill_conditioned_null_image(self, rng):
        import scipy.linalg

        from src.linalg import qr_pivoted
        from src.problems import derivative_operator
        from src.transform import TransformCase, to_standard_form

        n = 8
        L = derivative_operator("d2", n).matrix
        w1 = np.full(n, 1.0 / np.sqrt(n))
        t = np.arange(n) - (n - 1) / 2.0
        w2 = t / np.linalg.norm(t)
        # A w2 nearly parallel to A w1: cond(AW) around 1e9
        B = rng.standard_normal((12, n))
        A = B - np.outer(B @ w2, w2) + np.outer(B @ w1 + 1e-9 * rng.standard_normal(12), w2)
        b = rng.standard_normal(12)

        fast = to_standard_form(A, L, b)
        assert fast.case_tag is TransformCase.FULL_ROW_RANK
        U, _ = scipy.linalg.qr(A @ fast.null_basis, mode="economic")
        assert np.linalg.norm(U.T @ fast.K) <= 1e-12 * np.linalg.norm(fast.K)
        assert np.linalg.norm(U.T @ fast.projected_rhs) <= 1e-12 * np.linalg.norm(b)

        general = to_standard_form(A, L, b, case=TransformCase.GENERAL)
        assert general.rank_aw == 2
        Q1 = qr_pivoted(A @ general.null_basis, "AW").Q1
        assert np.linalg.norm(Q1.T @ general.K) <= 1e-12 * np.linalg.norm(general.K)

    def test_back_map_shape_mismatch(self, rng):
        from src.errors import ParameterError
        from src.transform import back_map, to_standard_form

        system = to_standard_form(rng.standard_normal((5, 4)), np.eye(4), rng.standard_normal(5))
        with pytest.raises(ParameterError):
            back_map(system, np.zeros(3))

    def test_inconsistent_shapes(self, rng):
        from src.errors import ParameterError
        from src.transform import to_standard_form

        with pytest.raises(ParameterError):
            to_standard_form(rng.standard_normal((5, 4)), np.eye(3), rng.standard_normal(5))
        with pytest.raises(ParameterError):
            to_standard_form(rng.standard_normal((5, 4)), np.eye(4), rng.standard_normal(4))

    def test_forced_path_must_match_structure(self, rng):
        from src.errors import ParameterError
        from src.problems import derivative_operator
        from src.transform import TransformCase, to_standard_form

        A = rng.standard_normal((8, 6))
        L = derivative_operator("d2", 6).matrix
        with pytest.raises(ParameterError):
            to_standard_form(A, L, rng.standard_normal(8), case=TransformCase.FULL_COL_RANK)

    def test_null_in_null_contract(self, rng):
        from src.problems import derivative_operator
        from src.transform import TransformCase, plan_transform, to_standard_form

        n = 7
        L = derivative_operator("d1", n).matrix
        A = rng.standard_normal((9, n)) @ (np.eye(n) - np.full((n, n), 1.0 / n))
        b = rng.standard_normal(9)

        plan = plan_transform(A, L)
        assert plan.case_tag is TransformCase.NULL_IN_NULL
        assert plan.aw_norm <= 1e-12 * np.linalg.norm(A)

        system = to_standard_form(A, L, b)
        np.testing.assert_array_equal(system.back_offset, 0.0)
        assert system.rank_aw == 0

        x, _ = _solve(A, L, b, 0.1)
        assert rel(x, stacked_min_norm(A, L, b, 0.1)) <= 1e-8
        # minimum-norm branch: no component along the shared null vector
        assert abs(x.sum()) <= 1e-10 * np.linalg.norm(x)

    @pytest.mark.parametrize("kind", ["d1", "d2", "low_rank", "square", "tall"])
    def test_oblique_pseudoinverse_identity(self, rng, kind):
        A, L, _ = _random_instance(rng, kind)
        _, system = _solve(A, L, rng.standard_normal(A.shape[0]), 0.1)
        L_sharp = system.oblique_pinv
        assert np.linalg.norm(L @ L_sharp @ L - L) <= 1e-10 * np.linalg.norm(L)


@integration_test
class TestEquivalenceIntegration:
    """Standard-form solve and back-map against the stacked min-norm oracle."""

    def test_seeded_instances(self):
        from src.transform import TransformCase

        rng = np.random.default_rng(7)
        kinds = ("d1", "d2", "low_rank", "square", "tall", "shared_null")
        seen = set()
        worst = 0.0
        for i in range(200):
            A, L, full_rank = _random_instance(rng, kinds[i % len(kinds)])
            b = rng.standard_normal(A.shape[0])
            for mu in MUS:
                if mu == 0.0 and not full_rank:
                    continue
                x, system = _solve(A, L, b, mu)
                seen.add(system.case_tag)
                worst = max(worst, rel(x, stacked_min_norm(A, L, b, mu)))
        assert worst <= 1e-8
        assert seen == set(TransformCase)

    @pytest.mark.parametrize("kind", ["d1", "d2", "tall", "square"])
    def test_general_path_agrees_with_fast_path(self, rng, kind):
        from src.transform import TransformCase

        for _ in range(10):
            _, L, _ = _random_instance(rng, kind)
            A = rng.standard_normal((L.shape[1] + 2, L.shape[1]))
            b = rng.standard_normal(A.shape[0])
            fast, system = _solve(A, L, b, 0.1)
            assert system.case_tag is not TransformCase.GENERAL
            general, forced = _solve(A, L, b, 0.1, case=TransformCase.GENERAL)
            assert forced.case_tag is TransformCase.GENERAL
            assert rel(general, fast) <= 1e-10
