"""Ruler-and-compass audit and diagnostics reports for scenes."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

from .const import (
    ATTR_CERTIFICATE,
    ATTR_MAX_ERROR,
    ATTR_OUTPUTS,
    ATTR_PASSED,
    ATTR_PRECISION,
    ATTR_STEPS,
    GADGETS,
    PRIMITIVE_STEPS,
    STEP_CIRCLE,
    STEP_GIVEN,
    STEP_INTERSECT,
    STEP_LINE,
)
from .kernel import Circle, Line, Point, Scene, UnknownObjectError

if TYPE_CHECKING:
    from .recipes import RecipeResult

_PRIMITIVE_ONLY = "primitive"


@dataclass
class AuditReport:
    """Outcome of auditing a scene."""

    step_count: int = 0
    steps_by_op: dict[str, int] = field(default_factory=dict)
    steps_by_gadget: dict[str, int] = field(default_factory=dict)
    gadget_calls: dict[str, int] = field(default_factory=dict)
    given_points: list[str] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """Return True if no violation was found."""
        return not self.violations

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            ATTR_PASSED: self.passed,
            ATTR_STEPS: self.step_count,
            "steps_by_op": dict(self.steps_by_op),
            "steps_by_gadget": dict(self.steps_by_gadget),
            "gadget_calls": dict(self.gadget_calls),
            "given_points": list(self.given_points),
            "violations": list(self.violations),
        }


def audit(scene: Scene) -> AuditReport:
    """Check that a scene is a legal ruler-and-compass construction.

    The log may only hold the four primitive step kinds, every input must be
    created before it is used, every object must be the output of the step it
    claims as provenance, and lines, circles and intersection points must
    satisfy their defining relations within eps at the scene's precision.
    Violations are collected, never raised.
    """
    report = AuditReport(gadget_calls=scene.gadget_calls)
    steps = scene.steps
    report.step_count = len(steps)
    eps = scene.ctx.eps
    by_op: Counter[str] = Counter()
    by_gadget: Counter[str] = Counter()

    for step in steps:
        by_op[step.op] += 1
        by_gadget[step.gadget or _PRIMITIVE_ONLY] += 1
        if step.op not in PRIMITIVE_STEPS:
            report.violations.append(f"step {step.index}: unknown kind {step.op!r}")
        if step.gadget is not None and step.gadget not in GADGETS:
            report.violations.append(f"step {step.index}: unknown gadget {step.gadget!r}")
        for ref in step.inputs:
            try:
                obj = scene.get(ref)
            except UnknownObjectError:
                report.violations.append(f"step {step.index}: missing input {ref}")
                continue
            if obj.step is None or obj.step >= step.index:
                report.violations.append(
                    f"step {step.index}: input {ref} is not created before it is used"
                )
        if step.op == STEP_GIVEN:
            report.given_points.extend(step.outputs)

    for obj in (*scene.points.values(), *scene.lines.values(), *scene.circles.values()):
        _check_provenance(scene, obj, report)

    for line in scene.lines.values():
        _check_line(scene, line, eps, report)
    for circle in scene.circles.values():
        _check_circle(scene, circle, eps, report)
    for step in steps:
        if step.op == STEP_INTERSECT and len(step.inputs) == 2:
            _check_intersection(scene, step.inputs, step.outputs, eps, report)

    report.steps_by_op = dict(by_op)
    report.steps_by_gadget = dict(by_gadget)
    return report


def _check_provenance(scene: Scene, obj: Point | Line | Circle, report: AuditReport) -> None:
    steps = scene.steps
    if obj.step is None or not 0 <= obj.step < len(steps):
        report.violations.append(f"{obj.id}: no provenance")
        return
    step = steps[obj.step]
    if obj.id not in step.outputs:
        report.violations.append(f"{obj.id}: step {obj.step} does not produce it")
        return
    expected = {
        Point: (STEP_GIVEN, STEP_INTERSECT),
        Line: (STEP_LINE,),
        Circle: (STEP_CIRCLE,),
    }[type(obj)]
    if step.op not in expected:
        report.violations.append(f"{obj.id}: produced by a {step.op} step")


def _check_line(scene: Scene, line: Line, eps: Any, report: AuditReport) -> None:
    norm = scene.ctx.mp.hypot(line.nx, line.ny)
    if abs(norm - 1) > eps:
        report.violations.append(f"{line.id}: normal is not a unit vector")
    try:
        p = scene.point(line.p)
        q = scene.point(line.q)
    except UnknownObjectError:
        report.violations.append(f"{line.id}: defining point missing")
        return
    if scene.distance(p, q) <= eps:
        report.violations.append(f"{line.id}: defining points coincide")
    if abs(line.offset(p)) > eps or abs(line.offset(q)) > eps:
        report.violations.append(f"{line.id}: defining points off the line")


def _check_circle(scene: Scene, circle: Circle, eps: Any, report: AuditReport) -> None:
    if circle.radius <= eps:
        report.violations.append(f"{circle.id}: radius not above eps")
    try:
        center = scene.point(circle.center)
    except UnknownObjectError:
        report.violations.append(f"{circle.id}: center missing")
        return
    if abs(center.x - circle.cx) > eps or abs(center.y - circle.cy) > eps:
        report.violations.append(f"{circle.id}: center moved")
    if abs(scene.distance(center, circle.through) - circle.radius) > eps:
        report.violations.append(f"{circle.id}: witness not on the circle")


def _check_intersection(
    scene: Scene,
    inputs: tuple[str, ...],
    outputs: tuple[str, ...],
    eps: Any,
    report: AuditReport,
) -> None:
    try:
        objects = [scene.get(ref) for ref in inputs]
        points = [scene.point(ref) for ref in outputs]
    except UnknownObjectError:
        return
    mp = scene.ctx.mp
    for ref, point in zip(outputs, points, strict=True):
        for obj in objects:
            if isinstance(obj, Line):
                off = abs(obj.offset(point))
            elif isinstance(obj, Circle):
                off = abs(mp.hypot(point.x - obj.cx, point.y - obj.cy) - obj.radius)
            else:
                continue
            # tangency points sit within eps*R of the circle
            tol = 2 * eps * max(1, getattr(obj, "radius", 1))
            if off > tol:
                report.violations.append(f"{ref}: not on {obj.id}")


def get_diagnostics(result: RecipeResult) -> dict[str, Any]:
    """Return a diagnostics report for a recipe run.

    Args:
        result: The recipe result.

    Returns:
        Dictionary with precision, scene summary, audit and certificate table.
    """
    scene = result.scene
    ctx = scene.ctx
    report = audit(scene)

    precision_info: dict[str, Any] = {
        "digits": ctx.digits,
        "eps": _format_real(ctx.eps, ctx),
    }

    scene_info: dict[str, Any] = {
        "points": len(scene.points),
        "lines": len(scene.lines),
        "circles": len(scene.circles),
        ATTR_STEPS: len(scene.steps),
        "frozen": scene.frozen,
    }

    certificate = [entry.to_dict(ctx) for entry in result.certificate]
    errors = [entry.error for entry in result.certificate]

    return {
        "recipe": result.name,
        ATTR_PRECISION: precision_info,
        "scene": scene_info,
        "audit": report.to_dict(),
        ATTR_OUTPUTS: dict(result.outputs),
        ATTR_CERTIFICATE: certificate,
        ATTR_MAX_ERROR: _format_real(max(errors), ctx) if errors else None,
        ATTR_PASSED: report.passed and result.passed,
    }


def _format_real(value: Any, ctx: Any) -> str:
    """Format a real for JSON serialization.

    Args:
        value: Real value.
        ctx: Precision context.

    Returns:
        Short decimal string.
    """
    return ctx.mp.nstr(value, 6)
