"""Tests for the order conditions and table diagnostics."""

import math

import numpy as np
import pytest

from complex_splitting.core.exceptions import OrderConditionError
from complex_splitting.splitting import (
    c_recursion,
    clt2,
    compose_chain,
    has_positive_real_parts,
    lie_trotter,
    max_argument,
    min_real_part,
    order_residuals,
    solve_two_stage,
    strang,
    two_split_family,
    verify_design_order,
)
from complex_splitting.splitting.order import recursion_bound


class TestOrderResiduals:
    """Tests for the p = 1, 2 conditions."""

    @pytest.mark.parametrize("n", range(2, 9))
    def test_second_order_methods(self, n):
        """Test CLT2, CLT2* and Strang for N = 2..8."""
        for table in (clt2(n), clt2(n, conjugate=True), strang(n)):
            report = order_residuals(table)
            assert report.satisfied_through == 2
            assert report.max_residual() < 1e-12

    def test_lie_trotter_fails_second_order(self):
        """Test that Lie-Trotter misses every p = 2 condition by exactly 1/2."""
        report = order_residuals(lie_trotter(4))
        assert report.satisfied_through == 1
        assert report.residuals(2) == [0.5] * 6

    def test_condition_count(self):
        """Test that there are N first-order and N(N-1)/2 second-order conditions."""
        report = order_residuals(clt2(5))
        assert len(report.for_order(1)) == 5
        assert len(report.for_order(2)) == 10

    def test_recursion_matches_closed_form(self):
        """Test that the stage recursion reproduces the closed form."""
        assert order_residuals(two_split_family(0.3 - 1.2j)).recursion_gap < 1e-13

    @pytest.mark.parametrize("table", [strang(4), clt2(6)], ids=["strang4", "clt2-6"])
    def test_dyadic_tables_have_no_recursion_gap(self, table):
        """Test the 1e-15 agreement on tables with exactly representable entries."""
        assert order_residuals(table).recursion_gap <= 1e-15

    def test_recursion_bound_scales_with_table(self):
        """Test the round-off bound against a long composition chain."""
        assert recursion_bound(strang(4).array) == pytest.approx(4 * 2e-15)
        chain = compose_chain(strang(3), 6)
        report = order_residuals(chain)
        assert report.recursion_gap <= recursion_bound(chain.array)
        assert report.satisfied_through == 2


class TestCRecursion:
    """Tests for the stage-by-stage exponent coefficients."""

    def test_second_order_endpoint(self):
        """Test that a second-order table ends with c1 = 1 and c2 = 0."""
        c1, c2 = c_recursion(clt2(3))
        assert np.allclose(c1[-1], 1, atol=1e-15)
        assert np.allclose(c2[-1], 0, atol=1e-15)

    def test_lie_trotter_endpoint(self):
        """Test that Lie-Trotter keeps the commutator terms (c2 = 1/2 above the diagonal)."""
        _, c2 = c_recursion(lie_trotter(3))
        assert c2[-1][0, 1] == pytest.approx(0.5)
        assert c2[-1][1, 0] == 0

    def test_first_row_is_zero(self):
        """Test that nothing has been applied before stage 1."""
        c1, c2 = c_recursion(strang(3))
        assert not np.any(c1[0]) and not np.any(c2[0])


class TestVerifyDesignOrder:
    """Tests for design-order verification."""

    def test_passes_for_clt2(self):
        """Test that CLT2 verifies."""
        assert verify_design_order(clt2(5)).satisfied_through == 2

    def test_mislabelled_table(self):
        """Test that Lie-Trotter labelled order 2 fails."""
        table = lie_trotter(3).model_copy(update={"design_order": 2})
        with pytest.raises(OrderConditionError):
            verify_design_order(table)


class TestDiagnostics:
    """Tests for real-part and phase diagnostics."""

    def test_clt2_phase(self):
        """Test that CLT2 coefficients have phase pi/4."""
        assert max_argument(clt2(3)) == pytest.approx(math.pi / 4)
        assert min_real_part(clt2(3)) == pytest.approx(0.5)
        assert has_positive_real_parts(clt2(3))

    def test_negative_real_part_detected(self):
        """Test that a negative coefficient is flagged."""
        assert not has_positive_real_parts(two_split_family(2.0))


class TestSolveTwoStage:
    """Tests for the numerical root-solve over two-stage tables."""

    def test_three_operators_only_clt2_pair(self):
        """Test that for N = 3 every root is CLT2 or CLT2*."""
        roots = solve_two_stage(3, starts=64, seed=1)
        assert roots
        targets = [clt2(3).array, clt2(3, conjugate=True).array]
        for root in roots:
            assert min(np.abs(root.array - t).max() for t in targets) < 1e-8
        assert len(roots) <= 2

    def test_two_operators_belong_to_family(self):
        """Test that N = 2 roots are members of the one-parameter family."""
        roots = solve_two_stage(2, starts=16, seed=2)
        assert roots
        for root in roots:
            b = root.stages[1][1]
            assert np.abs(root.array - two_split_family(b).array).max() < 1e-8
