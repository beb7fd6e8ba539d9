"""Tests for JSON traces and their replay."""

from __future__ import annotations

import json

import pytest

from lemniscate_ruler.const import (
    RECIPE_ADD_SUB,
    RECIPE_DOUBLE,
    RECIPE_HALVE,
    TRACE_VERSION,
)
from lemniscate_ruler.kernel import ReplayError
from lemniscate_ruler.numerics import ArcDomainError, PrecisionContext
from lemniscate_ruler.trace import TraceDocument, replay_trace, run_traceable, verify_replay


@pytest.fixture(scope="module")
def double_trace() -> TraceDocument:
    """Return the trace of the doubling demonstration."""
    return TraceDocument.from_result(run_traceable(RECIPE_DOUBLE, PrecisionContext(30)))


class TestTraceDocument:
    """Test building and loading traces."""

    def test_from_result(self, double_trace: TraceDocument) -> None:
        """Test the header and outputs."""
        assert double_trace.version == TRACE_VERSION
        assert double_trace.recipe == RECIPE_DOUBLE
        assert double_trace.precision == 30
        assert set(double_trace.outputs) == {"u"}
        assert double_trace.certificate

    def test_json_round_trip(self, double_trace: TraceDocument) -> None:
        """Test that a trace survives JSON."""
        data = json.loads(json.dumps(double_trace.to_dict()))
        loaded = TraceDocument.from_dict(data)
        assert loaded.to_dict() == double_trace.to_dict()

    def test_givens(self, double_trace: TraceDocument) -> None:
        """Test that the frame and the seed are the given points."""
        givens = double_trace.givens()
        assert float(givens["P0"][0]) == 0
        assert len(givens) == 3

    def test_wrong_version(self, double_trace: TraceDocument) -> None:
        """Test that other versions are refused."""
        data = double_trace.to_dict()
        data["version"] = "0"
        with pytest.raises(ReplayError):
            TraceDocument.from_dict(data)

    def test_unknown_step_kind(self, double_trace: TraceDocument) -> None:
        """Test that only primitive steps are accepted."""
        data = double_trace.to_dict()
        data["steps"][3]["op"] = "neusis"
        with pytest.raises(ReplayError):
            TraceDocument.from_dict(data)

    def test_not_a_mapping(self) -> None:
        """Test that a list is not a trace."""
        with pytest.raises(ReplayError):
            TraceDocument.from_dict([])

    def test_given_without_coordinates(self, double_trace: TraceDocument) -> None:
        """Test that given points must carry coordinates."""
        data = double_trace.to_dict()
        data["steps"][0]["coordinates"] = []
        with pytest.raises(ReplayError):
            TraceDocument.from_dict(data).givens()


class TestReplay:
    """Test replaying traces."""

    @pytest.mark.parametrize("recipe", [RECIPE_HALVE, RECIPE_DOUBLE, RECIPE_ADD_SUB])
    def test_exact(self, recipe: str, ctx30: PrecisionContext) -> None:
        """Test that replay reproduces every recorded coordinate."""
        document = TraceDocument.from_result(run_traceable(recipe, ctx30))
        scene, mismatches = verify_replay(document)
        assert mismatches == []
        assert len(scene.steps) == len(document.steps)

    def test_replay_freezes(self, double_trace: TraceDocument) -> None:
        """Test that a verified replay is read-only."""
        assert replay_trace(double_trace).frozen

    def test_tampered_coordinate(self, double_trace: TraceDocument) -> None:
        """Test that an edited coordinate is reported."""
        data = json.loads(json.dumps(double_trace.to_dict()))
        last = next(step for step in reversed(data["steps"]) if step["coordinates"])
        last["coordinates"][0][0] = "0.123"
        document = TraceDocument.from_dict(data)
        _, mismatches = verify_replay(document)
        assert len(mismatches) == 1
        with pytest.raises(ReplayError):
            replay_trace(document)

    def test_unknown_recipe(self, ctx30: PrecisionContext) -> None:
        """Test that only traceable recipes run."""
        with pytest.raises(ArcDomainError):
            run_traceable("trisect", ctx30)
