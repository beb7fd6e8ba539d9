"""Tests for the construction audit and diagnostics report."""

from __future__ import annotations

import json
from dataclasses import replace

from lemniscate_ruler.const import (
    ATTR_CERTIFICATE,
    ATTR_OUTPUTS,
    ATTR_PASSED,
    ATTR_PRECISION,
    GADGET_FRAME,
)
from lemniscate_ruler.diagnostics import audit, get_diagnostics
from lemniscate_ruler.kernel import Point, Scene, Step, intersect
from lemniscate_ruler.numerics import omega, point_at
from lemniscate_ruler.recipes import recipe_double


def _seed(scene: Scene, divisor: int) -> Point:
    ctx = scene.ctx
    x, y = point_at(omega(ctx) / divisor, ctx).cartesian(ctx)
    return scene.given(x, y)


class TestAudit:
    """Test the ruler-and-compass audit."""

    def test_frame_passes(self, scene: Scene) -> None:
        """Test that the frame alone is a legal construction."""
        report = audit(scene)
        assert report.passed
        assert report.step_count == len(scene.steps)
        assert report.steps_by_gadget == {GADGET_FRAME: len(scene.steps)}
        assert report.given_points == [scene.origin.id, scene.unit_point.id]

    def test_step_counts_add_up(self, scene: Scene) -> None:
        """Test that per-kind and per-gadget counts cover the whole log."""
        recipe_double(scene, _seed(scene, 5))
        report = audit(scene)
        assert report.passed
        assert sum(report.steps_by_op.values()) == report.step_count
        assert sum(report.steps_by_gadget.values()) == report.step_count

    def test_moved_point_is_flagged(self, scene: Scene) -> None:
        """Test that an intersection point off its curves is reported."""
        (_, right) = intersect(scene, scene.x_axis, scene.unit_circle)
        scene._points[right.id] = replace(right, y=right.y + 1)
        report = audit(scene)
        assert not report.passed
        assert any(right.id in violation for violation in report.violations)

    def test_unknown_step_kind(self, scene: Scene) -> None:
        """Test that a non-primitive step is reported."""
        scene._steps.append(Step(index=len(scene._steps), op="erase", inputs=(), outputs=()))
        report = audit(scene)
        assert any("unknown kind" in violation for violation in report.violations)

    def test_input_used_before_creation(self, scene: Scene) -> None:
        """Test that a step cannot use an object made later."""
        late = intersect(scene, scene.y_axis, scene.unit_circle)[0]
        scene._steps[0] = replace(scene._steps[0], inputs=(late.id,))
        report = audit(scene)
        assert any("not created before" in violation for violation in report.violations)

    def test_report_is_json(self, scene: Scene) -> None:
        """Test that the report serializes."""
        data = json.loads(json.dumps(audit(scene).to_dict()))
        assert data[ATTR_PASSED] is True
        assert data["violations"] == []


class TestGetDiagnostics:
    """Test the diagnostics report of a recipe run."""

    def test_report(self, scene: Scene) -> None:
        """Test the sections of the report."""
        result = recipe_double(scene, _seed(scene, 5))
        report = get_diagnostics(result)

        assert report["recipe"] == result.name
        assert report[ATTR_PRECISION]["digits"] == 30
        assert report["scene"]["steps"] == len(scene.steps)
        assert report["scene"]["frozen"] is False
        assert report["audit"][ATTR_PASSED] is True
        assert set(report[ATTR_OUTPUTS]) == {"u"}
        assert len(report[ATTR_CERTIFICATE]) == len(result.certificate)
        assert report[ATTR_PASSED] is True

    def test_report_is_json(self, scene: Scene) -> None:
        """Test that the report serializes."""
        result = recipe_double(scene, _seed(scene, 7))
        json.dumps(get_diagnostics(result))
