"""Tests for flow sequences, merging and stage packing."""

import pytest
from pydantic import ValidationError

from complex_splitting.core.exceptions import MethodDefinitionError
from complex_splitting.models.method import FlowSequence, MethodTable
from complex_splitting.splitting import (
    clt2,
    concatenate,
    from_sequence,
    lie_trotter,
    merge_flows,
    simplify,
    strang,
    to_sequence,
)


class TestToSequence:
    """Tests for flattening tables."""

    def test_strang_order_of_flows(self):
        """Test that Strang flattens to the symmetric flow list."""
        items = to_sequence(strang(3)).items
        assert items == ((1, 0.5), (2, 0.5), (3, 1), (2, 0.5), (1, 0.5))

    def test_zero_coefficients_skipped(self):
        """Test that zero entries produce no flows."""
        table = MethodTable(name="t", n_operators=3, stages=[[1, 0, 1], [0, 1, 0]], design_order=1)
        assert to_sequence(table).items == ((1, 1), (3, 1), (2, 1))

    def test_stage_boundary_merges_for_single_operator(self):
        """Test that N = 1 tables collapse to one flow."""
        table = MethodTable(name="t", n_operators=1, stages=[[0.25], [0.75]], design_order=1)
        assert to_sequence(table).items == ((1, 1),)


class TestMergeFlows:
    """Tests for the merge rules."""

    def test_cancellation_exposes_new_neighbours(self):
        """Test that a cancelled pair lets its neighbours merge."""
        merged = merge_flows(2, [(1, 1), (2, 1), (2, -1), (1, 2)])
        assert merged.items == ((1, 3),)

    def test_everything_cancels(self):
        """Test that a fully cancelling list is empty."""
        assert merge_flows(2, [(1, 0.5), (1, -0.5)]).items == ()


class TestFromSequence:
    """Tests for greedy stage packing."""

    def test_round_trip_of_strang(self):
        """Test that packing the Strang flows gives the Strang stages."""
        packed = from_sequence(to_sequence(strang(4)), name="strang", design_order=2)
        assert packed.stages == strang(4).stages

    def test_infers_order(self):
        """Test that the order is computed when not given."""
        assert from_sequence(to_sequence(clt2(3))).design_order == 2
        assert from_sequence(to_sequence(lie_trotter(3))).design_order == 1

    def test_empty_sequence(self):
        """Test that an empty sequence cannot be packed."""
        with pytest.raises(MethodDefinitionError):
            from_sequence(FlowSequence(n_operators=2, items=[]))

    def test_simplify_keeps_flows(self):
        """Test that simplification applies the same sub-flows."""
        table = MethodTable(
            name="t", n_operators=2, stages=[[0.5, 0], [0.5, 1]], design_order=1
        )
        simplified = simplify(table)
        assert simplified.stages == ((1, 1),)
        assert to_sequence(simplified) == to_sequence(table)


class TestFlowSequenceValidation:
    """Tests for the merged-form invariants."""

    def test_rejects_repeated_operator(self):
        """Test that consecutive repeats are rejected."""
        with pytest.raises(ValidationError):
            FlowSequence(n_operators=2, items=[(1, 1), (1, 1)])

    def test_rejects_zero_coefficient(self):
        """Test that zero coefficients are rejected."""
        with pytest.raises(ValidationError):
            FlowSequence(n_operators=2, items=[(1, 0)])

    def test_rejects_out_of_range_index(self):
        """Test that indices outside 1..N are rejected."""
        with pytest.raises(ValidationError):
            FlowSequence(n_operators=2, items=[(3, 1)])


class TestConcatenate:
    """Tests for stage concatenation."""

    def test_arity_mismatch(self):
        """Test that tables of different N cannot be concatenated."""
        with pytest.raises(MethodDefinitionError):
            concatenate(clt2(2), clt2(3), name="x", design_order=1)

    def test_stages_appended(self):
        """Test that stages are appended in order."""
        first, second = lie_trotter(2).scaled(0.5), strang(2).scaled(0.5)
        joined = concatenate(first, second, name="x", design_order=1)
        assert joined.stages == first.stages + second.stages


class TestMethodTableValidation:
    """Tests for the design-order claim checked at construction."""

    def test_inconsistent_columns_rejected(self):
        """Test that column sums other than 1 cannot carry any order."""
        with pytest.raises(ValidationError, match="column sums"):
            MethodTable(name="t", n_operators=2, stages=[[1, 0.5]], design_order=1)

    def test_overclaimed_second_order_rejected(self):
        """Test that Lie-Trotter cannot be labelled second order."""
        with pytest.raises(ValidationError, match="second-order"):
            MethodTable(name="t", n_operators=3, stages=lie_trotter(3).stages, design_order=2)

    def test_understated_order_accepted(self):
        """Test that a lower label than the conditions allow is kept."""
        table = MethodTable(name="t", n_operators=3, stages=strang(3).stages, design_order=1)
        assert table.design_order == 1

    def test_generators_pass(self):
        """Test that the generated tables satisfy their own claims."""
        for table in (clt2(4), strang(4), lie_trotter(4)):
            rebuilt = MethodTable(**table.model_dump())
            assert rebuilt == table
