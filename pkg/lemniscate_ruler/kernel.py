"""Numeric straightedge-and-compass kernel.

A Scene is an append-only log of points, lines and circles built from four
step kinds only: given points, the line through two points, the circle about
a point through another, and intersections. Every gadget below is spelled
out in those steps and tags the steps it emits with its name, so the audit
can check that a finished construction used nothing else.

Lengths live on the x-axis: the signed length x is the point (x, 0).
"""

from __future__ import annotations

import logging
from collections import Counter
from collections.abc import Iterator, Mapping, Sequence
from contextlib import contextmanager
from dataclasses import dataclass
from functools import cmp_to_key
from types import MappingProxyType
from typing import Any, TypeAlias

from .const import (
    ATTR_GADGET,
    ATTR_INPUTS,
    ATTR_OP,
    ATTR_OUTPUTS,
    GADGET_BISECT_ANGLE,
    GADGET_DOUBLE_LENGTH,
    GADGET_FOLD,
    GADGET_FRAME,
    GADGET_GEOMETRIC_MEAN,
    GADGET_MIDPOINT,
    GADGET_MODULUS,
    GADGET_NEGATE,
    GADGET_PARALLEL,
    GADGET_PERP_BISECTOR,
    GADGET_PERPENDICULAR,
    GADGET_POINT_REFLECT,
    GADGET_PROJECT,
    GADGET_RAT_ROOTS,
    GADGET_REFLECT,
    GADGET_ROTATE_TO_AXIS,
    GADGET_SQRT,
    GADGET_THALES_PRODUCT,
    GADGET_THALES_SCALE,
    GADGET_TRANSLATE,
    GADGETS,
    LABEL_DOWN,
    LABEL_ORIGIN,
    LABEL_UNIT,
    LABEL_UNIT_CIRCLE,
    LABEL_UNIT_OPPOSITE,
    LABEL_UP,
    LABEL_X_AXIS,
    LABEL_Y_AXIS,
    STEP_CIRCLE,
    STEP_GIVEN,
    STEP_INTERSECT,
    STEP_LINE,
)
from .numerics import LemniscateError, PrecisionContext, Real

_LOGGER = logging.getLogger(__name__)

_POINT_PREFIX = "P"
_LINE_PREFIX = "L"
_CIRCLE_PREFIX = "C"


class ConstructionError(LemniscateError):
    """Base exception for construction kernel errors."""


class CoincidenceError(ConstructionError):
    """Exception raised when two defining points coincide within eps."""


class NoRealRootsError(ConstructionError):
    """Exception raised when the trapezium circle misses its base line."""


class DegenerateGadgetError(ConstructionError):
    """Exception raised when a gadget meets a degenerate configuration."""


class UnknownObjectError(ConstructionError):
    """Exception raised when an id does not name an object of the scene."""


class ReplayError(ConstructionError):
    """Exception raised when re-executing a step log diverges from the record."""


@dataclass(frozen=True)
class Point:
    """Constructed point and the index of the step that produced it."""

    id: str
    x: Real
    y: Real
    step: int | None = None


@dataclass(frozen=True)
class Line:
    """Line through two points, n_x*x + n_y*y = c with a unit normal."""

    id: str
    p: str
    q: str
    nx: Real
    ny: Real
    c: Real
    step: int | None = None

    def offset(self, point: Point) -> Real:
        """Return the signed distance of a point from the line."""
        return self.nx * point.x + self.ny * point.y - self.c

    def along(self, point: Point) -> Real:
        """Return the coordinate of a point along the line direction."""
        return -self.ny * point.x + self.nx * point.y


@dataclass(frozen=True)
class Circle:
    """Circle about a center point through a witness point."""

    id: str
    center: str
    through: str
    cx: Real
    cy: Real
    radius: Real
    step: int | None = None


@dataclass(frozen=True)
class Step:
    """One primitive step of the log."""

    index: int
    op: str
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    gadget: str | None = None

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            ATTR_OP: self.op,
            ATTR_GADGET: self.gadget,
            ATTR_INPUTS: list(self.inputs),
            ATTR_OUTPUTS: list(self.outputs),
        }


SceneObject: TypeAlias = Point | Line | Circle
ObjectRef: TypeAlias = Point | Line | Circle | str


def _ref_id(ref: ObjectRef) -> str:
    return ref if isinstance(ref, str) else ref.id


class Scene:
    """Append-only straightedge-and-compass construction.

    A scene is owned by one recipe while it is being built; ``freeze`` makes
    it read-only so it can be shared.
    """

    def __init__(self, ctx: PrecisionContext, frame: bool = True) -> None:
        """Initialize the scene.

        Args:
            ctx: Working precision.
            frame: Build O, I, I*, J, J*, both axes and the unit circle.
        """
        self._ctx = ctx
        self._points: dict[str, Point] = {}
        self._lines: dict[str, Line] = {}
        self._circles: dict[str, Circle] = {}
        self._steps: list[Step] = []
        self._labels: dict[str, str] = {}
        self._gadget_stack: list[str] = []
        self._gadget_calls: Counter[str] = Counter()
        self._frozen = False

        if frame:
            build_frame(self)

    @property
    def ctx(self) -> PrecisionContext:
        """Return the working precision."""
        return self._ctx

    @property
    def points(self) -> Mapping[str, Point]:
        """Return the points by id."""
        return MappingProxyType(self._points)

    @property
    def lines(self) -> Mapping[str, Line]:
        """Return the lines by id."""
        return MappingProxyType(self._lines)

    @property
    def circles(self) -> Mapping[str, Circle]:
        """Return the circles by id."""
        return MappingProxyType(self._circles)

    @property
    def steps(self) -> tuple[Step, ...]:
        """Return the step log."""
        return tuple(self._steps)

    @property
    def labels(self) -> Mapping[str, str]:
        """Return the label to id map."""
        return MappingProxyType(self._labels)

    @property
    def gadget_calls(self) -> dict[str, int]:
        """Return how many times each gadget was entered, nested calls included."""
        return dict(self._gadget_calls)

    @property
    def frozen(self) -> bool:
        """Return True once the scene is read-only."""
        return self._frozen

    @property
    def origin(self) -> Point:
        """Return O."""
        return self.labelled_point(LABEL_ORIGIN)

    @property
    def unit_point(self) -> Point:
        """Return I = (1, 0)."""
        return self.labelled_point(LABEL_UNIT)

    @property
    def up_point(self) -> Point:
        """Return J = (0, 1)."""
        return self.labelled_point(LABEL_UP)

    @property
    def x_axis(self) -> Line:
        """Return the x-axis."""
        return self.line(self.labelled(LABEL_X_AXIS))

    @property
    def y_axis(self) -> Line:
        """Return the y-axis."""
        return self.line(self.labelled(LABEL_Y_AXIS))

    @property
    def unit_circle(self) -> Circle:
        """Return the unit circle."""
        return self.circle(self.labelled(LABEL_UNIT_CIRCLE))

    def get(self, ref: ObjectRef) -> SceneObject:
        """Return the object with the given id."""
        key = _ref_id(ref)
        for store in (self._points, self._lines, self._circles):
            if key in store:
                return store[key]
        raise UnknownObjectError(f"No object with id {key!r} in the scene")

    def point(self, ref: ObjectRef) -> Point:
        """Return the point with the given id."""
        obj = self.get(ref)
        if not isinstance(obj, Point):
            raise UnknownObjectError(f"{obj.id} is not a point")
        return obj

    def line(self, ref: ObjectRef) -> Line:
        """Return the line with the given id."""
        obj = self.get(ref)
        if not isinstance(obj, Line):
            raise UnknownObjectError(f"{obj.id} is not a line")
        return obj

    def circle(self, ref: ObjectRef) -> Circle:
        """Return the circle with the given id."""
        obj = self.get(ref)
        if not isinstance(obj, Circle):
            raise UnknownObjectError(f"{obj.id} is not a circle")
        return obj

    def label(self, ref: ObjectRef, name: str) -> None:
        """Attach a name to an object, replacing any earlier use of the name."""
        self._check_open()
        self._labels[name] = self.get(ref).id

    def labelled(self, name: str) -> SceneObject:
        """Return the object carrying a label."""
        if name not in self._labels:
            raise UnknownObjectError(f"No object labelled {name!r}")
        return self.get(self._labels[name])

    def labelled_point(self, name: str) -> Point:
        """Return the point carrying a label."""
        return self.point(self.labelled(name))

    def length(self, ref: ObjectRef) -> Real:
        """Return the signed length carried by a point of the x-axis."""
        point = self.point(ref)
        if abs(point.y) > self._ctx.eps:
            raise DegenerateGadgetError(f"{point.id} is not on the x-axis, not a length")
        return point.x

    def distance(self, first: ObjectRef, second: ObjectRef) -> Real:
        """Return the distance between two points."""
        a = self.point(first)
        b = self.point(second)
        return self._ctx.mp.hypot(b.x - a.x, b.y - a.y)

    def freeze(self) -> None:
        """Make the scene read-only."""
        self._frozen = True

    @contextmanager
    def gadget(self, name: str) -> Iterator[None]:
        """Attribute the steps emitted inside the block to a gadget.

        Steps are attributed to the outermost gadget, so per-gadget step
        counts add up to the length of the log.
        """
        if name not in GADGETS:
            raise ConstructionError(f"Unknown gadget {name!r}")
        self._gadget_calls[name] += 1
        self._gadget_stack.append(name)
        try:
            yield
        finally:
            self._gadget_stack.pop()

    @contextmanager
    def attributed(self, gadget: str | None) -> Iterator[None]:
        """Force the gadget recorded on the steps of the block (used by replay)."""
        saved = self._gadget_stack
        self._gadget_stack = [gadget] if gadget else []
        try:
            yield
        finally:
            self._gadget_stack = saved

    def given(self, x: Any, y: Any, label: str | None = None) -> Point:
        """Add a given point."""
        self._check_open()
        ctx = self._ctx
        x = ctx.mpf(x)
        y = ctx.mpf(y)
        if not (ctx.mp.isfinite(x) and ctx.mp.isfinite(y)):
            raise ConstructionError(f"Given point ({x}, {y}) is not finite")
        point = Point(id=self._new_id(_POINT_PREFIX), x=x, y=y, step=len(self._steps))
        self._record(STEP_GIVEN, (), (point,))
        if label is not None:
            self.label(point, label)
        return point

    def _check_open(self) -> None:
        if self._frozen:
            raise ConstructionError("Scene is frozen, no more steps can be added")

    def _new_id(self, prefix: str) -> str:
        store = {
            _POINT_PREFIX: self._points,
            _LINE_PREFIX: self._lines,
            _CIRCLE_PREFIX: self._circles,
        }[prefix]
        return f"{prefix}{len(store)}"

    def _record(
        self, op: str, inputs: tuple[str, ...], objects: Sequence[SceneObject]
    ) -> Step:
        for obj in objects:
            if isinstance(obj, Point):
                self._points[obj.id] = obj
            elif isinstance(obj, Line):
                self._lines[obj.id] = obj
            else:
                self._circles[obj.id] = obj
        step = Step(
            index=len(self._steps),
            op=op,
            inputs=inputs,
            outputs=tuple(obj.id for obj in objects),
            gadget=self._gadget_stack[0] if self._gadget_stack else None,
        )
        self._steps.append(step)
        return step


# Primitives


def line_through(scene: Scene, p: ObjectRef, q: ObjectRef) -> Line:
    """Draw the line through two points.

    Raises:
        CoincidenceError: If the points are within eps of each other.
    """
    scene._check_open()
    a = scene.point(p)
    b = scene.point(q)
    dx = b.x - a.x
    dy = b.y - a.y
    norm = scene.ctx.mp.hypot(dx, dy)
    if norm <= scene.ctx.eps:
        raise CoincidenceError(f"Points {a.id} and {b.id} coincide, no line through them")
    nx = -dy / norm
    ny = dx / norm
    line = Line(
        id=scene._new_id(_LINE_PREFIX),
        p=a.id,
        q=b.id,
        nx=nx,
        ny=ny,
        c=nx * a.x + ny * a.y,
        step=len(scene._steps),
    )
    scene._record(STEP_LINE, (a.id, b.id), (line,))
    return line


def circle_about(scene: Scene, center: ObjectRef, through: ObjectRef) -> Circle:
    """Draw the circle about a point through another.

    Raises:
        CoincidenceError: If the radius would be eps or less.
    """
    scene._check_open()
    c = scene.point(center)
    t = scene.point(through)
    radius = scene.ctx.mp.hypot(t.x - c.x, t.y - c.y)
    if radius <= scene.ctx.eps:
        raise CoincidenceError(f"Circle about {c.id} through {t.id} has no radius")
    circle = Circle(
        id=scene._new_id(_CIRCLE_PREFIX),
        center=c.id,
        through=t.id,
        cx=c.x,
        cy=c.y,
        radius=radius,
        step=len(scene._steps),
    )
    scene._record(STEP_CIRCLE, (c.id, t.id), (circle,))
    return circle


def _operand_key(obj: SceneObject) -> tuple[int, int]:
    return (0 if isinstance(obj, Line) else 1, int(obj.id[1:]))


def _line_line(a: Line, b: Line, ctx: PrecisionContext) -> list[tuple[Real, Real]]:
    det = a.nx * b.ny - a.ny * b.nx
    if abs(det) <= ctx.eps:
        return []
    return [((a.c * b.ny - b.c * a.ny) / det, (a.nx * b.c - b.nx * a.c) / det)]


def _line_circle(line: Line, circle: Circle, ctx: PrecisionContext) -> list[tuple[Real, Real]]:
    d = line.nx * circle.cx + line.ny * circle.cy - line.c
    fx = circle.cx - d * line.nx
    fy = circle.cy - d * line.ny
    disc = circle.radius**2 - d * d
    tol = ctx.eps * circle.radius**2
    if disc < -tol:
        return []
    if disc <= tol:
        return [(fx, fy)]
    h = ctx.mp.sqrt(disc)
    return [(fx - h * line.ny, fy + h * line.nx), (fx + h * line.ny, fy - h * line.nx)]


def _circle_circle(a: Circle, b: Circle, ctx: PrecisionContext) -> list[tuple[Real, Real]]:
    dx = b.cx - a.cx
    dy = b.cy - a.cy
    dist = ctx.mp.hypot(dx, dy)
    if dist <= ctx.eps:
        return []
    along = (a.radius**2 - b.radius**2 + dist**2) / (2 * dist)
    disc = a.radius**2 - along**2
    tol = ctx.eps * max(a.radius, b.radius) ** 2
    bx = a.cx + along * dx / dist
    by = a.cy + along * dy / dist
    if disc < -tol:
        return []
    if disc <= tol:
        return [(bx, by)]
    h = ctx.mp.sqrt(disc)
    ux = dx / dist
    uy = dy / dist
    return [(bx - h * uy, by + h * ux), (bx + h * uy, by - h * ux)]


def intersect(scene: Scene, first: ObjectRef, second: ObjectRef) -> list[Point]:
    """Intersect two lines/circles.

    Operands are put in a canonical order before computing, and the result
    is sorted by x then y (x values within eps count as equal), so swapping
    the operands never changes the points or their order. Tangency yields a
    single point; no intersection is an empty list.
    """
    scene._check_open()
    ctx = scene.ctx
    objects = (scene.get(first), scene.get(second))
    if any(isinstance(obj, Point) for obj in objects):
        raise ConstructionError("Only lines and circles can be intersected")
    a, b = sorted(objects, key=_operand_key)
    if isinstance(a, Line) and isinstance(b, Line):
        coords = _line_line(a, b, ctx)
    elif isinstance(a, Line):
        coords = _line_circle(a, b, ctx)
    else:
        coords = _circle_circle(a, b, ctx)

    def compare(u: tuple[Real, Real], v: tuple[Real, Real]) -> int:
        if abs(u[0] - v[0]) > ctx.eps:
            return -1 if u[0] < v[0] else 1
        return (u[1] > v[1]) - (u[1] < v[1])

    index = len(scene._steps)
    points = []
    for x, y in sorted(coords, key=cmp_to_key(compare)):
        point = Point(id=scene._new_id(_POINT_PREFIX), x=x, y=y, step=index)
        # ids are allocated from the store size, so register before the next one
        scene._points[point.id] = point
        points.append(point)
    scene._record(STEP_INTERSECT, (a.id, b.id), points)
    return points


# Choosing among intersection points


def upper(points: Sequence[Point]) -> Point:
    """Return the point with the largest y."""
    _require_any(points, "upper point")
    return max(points, key=lambda p: p.y)


def lower(points: Sequence[Point]) -> Point:
    """Return the point with the smallest y."""
    _require_any(points, "lower point")
    return min(points, key=lambda p: p.y)


def toward(points: Sequence[Point], origin: Point, dx: Any, dy: Any) -> Point:
    """Return the point furthest along the direction (dx, dy) seen from origin."""
    _require_any(points, "directed point")
    return max(points, key=lambda p: (p.x - origin.x) * dx + (p.y - origin.y) * dy)


def farthest(points: Sequence[Point], ref: Point) -> Point:
    """Return the point furthest from ref."""
    _require_any(points, "far point")
    return max(points, key=lambda p: (p.x - ref.x) ** 2 + (p.y - ref.y) ** 2)


def only(points: Sequence[Point], what: str) -> Point:
    """Return the single point of an intersection."""
    if len(points) != 1:
        raise DegenerateGadgetError(f"Expected one {what}, got {len(points)}")
    return points[0]


def _require_any(points: Sequence[Point], what: str) -> None:
    if not points:
        raise DegenerateGadgetError(f"No intersection to pick the {what} from")


def _require_pair(points: Sequence[Point], what: str) -> tuple[Point, Point]:
    if len(points) != 2:
        raise DegenerateGadgetError(f"Expected two points for the {what}, got {len(points)}")
    return points[0], points[1]


# Frame


def build_frame(scene: Scene) -> None:
    """Lay down O, I, the axes, the unit circle, I*, J and J*."""
    with scene.gadget(GADGET_FRAME):
        origin = scene.given(0, 0, label=LABEL_ORIGIN)
        unit = scene.given(1, 0, label=LABEL_UNIT)
        x_axis = line_through(scene, origin, unit)
        scene.label(x_axis, LABEL_X_AXIS)
        circle = circle_about(scene, origin, unit)
        scene.label(circle, LABEL_UNIT_CIRCLE)
        opposite = toward(intersect(scene, x_axis, circle), origin, -1, 0)
        scene.label(opposite, LABEL_UNIT_OPPOSITE)
        y_axis = gadget_perp_bisector(scene, opposite, unit)
        scene.label(y_axis, LABEL_Y_AXIS)
        crossings = intersect(scene, y_axis, circle)
        scene.label(upper(crossings), LABEL_UP)
        scene.label(lower(crossings), LABEL_DOWN)


# Euclid's gadgets


def gadget_perp_bisector(scene: Scene, p: ObjectRef, q: ObjectRef) -> Line:
    """Return the perpendicular bisector of two points."""
    with scene.gadget(GADGET_PERP_BISECTOR):
        first = circle_about(scene, p, q)
        second = circle_about(scene, q, p)
        a, b = _require_pair(intersect(scene, first, second), "perpendicular bisector")
        return line_through(scene, a, b)


def gadget_perpendicular(scene: Scene, line: ObjectRef, through: ObjectRef) -> Line:
    """Return the perpendicular to a line through a point, on or off the line."""
    with scene.gadget(GADGET_PERPENDICULAR):
        ln = scene.line(line)
        p = scene.point(through)
        # the defining point furthest from the foot keeps the chord long
        anchor = max(
            (scene.point(ln.p), scene.point(ln.q)),
            key=lambda a: abs(ln.along(a) - ln.along(p)),
        )
        circle = circle_about(scene, p, anchor)
        a, b = _require_pair(intersect(scene, ln, circle), "perpendicular")
        return gadget_perp_bisector(scene, a, b)


def gadget_project(scene: Scene, point: ObjectRef, line: ObjectRef) -> Point:
    """Return the foot of the perpendicular from a point to a line."""
    with scene.gadget(GADGET_PROJECT):
        p = scene.point(point)
        ln = scene.line(line)
        if abs(ln.offset(p)) <= scene.ctx.eps:
            return p
        normal = gadget_perpendicular(scene, ln, p)
        return only(intersect(scene, normal, ln), "foot")


def gadget_midpoint(scene: Scene, p: ObjectRef, q: ObjectRef) -> Point:
    """Return the midpoint of two points."""
    with scene.gadget(GADGET_MIDPOINT):
        bisector = gadget_perp_bisector(scene, p, q)
        segment = line_through(scene, p, q)
        return only(intersect(scene, bisector, segment), "midpoint")


def gadget_parallel(scene: Scene, line: ObjectRef, through: ObjectRef) -> Line:
    """Return the parallel to a line through a point."""
    with scene.gadget(GADGET_PARALLEL):
        normal = gadget_perpendicular(scene, line, through)
        return gadget_perpendicular(scene, normal, through)


def gadget_bisect_angle(
    scene: Scene, vertex: ObjectRef, first: ObjectRef, second: ObjectRef
) -> Line:
    """Return the bisector of the angle first-vertex-second.

    For a straight angle this is the perpendicular at the vertex; the caller
    picks the side it wants when intersecting the returned line.
    """
    with scene.gadget(GADGET_BISECT_ANGLE):
        v = scene.point(vertex)
        a = scene.point(first)
        b = scene.point(second)
        circle = circle_about(scene, v, a)
        ray = line_through(scene, v, b)
        b_on = toward(intersect(scene, ray, circle), v, b.x - v.x, b.y - v.y)
        eps = scene.ctx.eps
        if scene.distance(a, b_on) <= eps:
            return ray
        sx = a.x + b_on.x - 2 * v.x
        sy = a.y + b_on.y - 2 * v.y
        if scene.ctx.mp.hypot(sx, sy) <= eps:
            return gadget_perpendicular(scene, ray, v)
        return gadget_perp_bisector(scene, a, b_on)


def gadget_reflect(scene: Scene, point: ObjectRef, line: ObjectRef) -> Point:
    """Return the mirror image of a point across a line."""
    with scene.gadget(GADGET_REFLECT):
        p = scene.point(point)
        ln = scene.line(line)
        if abs(ln.offset(p)) <= scene.ctx.eps:
            return p
        normal = gadget_perpendicular(scene, ln, p)
        foot = only(intersect(scene, normal, ln), "foot")
        circle = circle_about(scene, foot, p)
        return farthest(intersect(scene, normal, circle), p)


def gadget_point_reflect(scene: Scene, point: ObjectRef, center: ObjectRef) -> Point:
    """Return the reflection of a point through a center."""
    with scene.gadget(GADGET_POINT_REFLECT):
        p = scene.point(point)
        c = scene.point(center)
        if scene.distance(p, c) <= scene.ctx.eps:
            return p
        line = line_through(scene, c, p)
        circle = circle_about(scene, c, p)
        return farthest(intersect(scene, line, circle), p)


def _parallelogram(
    scene: Scene, start: Point, end: Point, base: Point, carrier: Line
) -> Point:
    if scene.distance(start, base) <= scene.ctx.eps:
        return end
    along = gadget_parallel(scene, carrier, base)
    across = gadget_parallel(scene, line_through(scene, start, base), end)
    return only(intersect(scene, along, across), "parallelogram corner")


def gadget_translate(
    scene: Scene, start: ObjectRef, end: ObjectRef, base: ObjectRef
) -> Point:
    """Return base + (end - start) by the parallelogram law."""
    with scene.gadget(GADGET_TRANSLATE):
        s = scene.point(start)
        e = scene.point(end)
        b = scene.point(base)
        eps = scene.ctx.eps
        if scene.distance(s, e) <= eps:
            return b
        carrier = line_through(scene, s, e)
        if abs(carrier.offset(b)) > eps:
            return _parallelogram(scene, s, e, b, carrier)
        # base on the carrier: shift a frame point off the line first
        aux = next(
            pt
            for pt in (scene.up_point, scene.unit_point, scene.origin)
            if abs(carrier.offset(pt)) > eps
        )
        shifted = _parallelogram(scene, s, e, aux, carrier)
        return _parallelogram(scene, aux, shifted, b, line_through(scene, aux, shifted))


def gadget_rotate_to_axis(scene: Scene, point: ObjectRef) -> Point:
    """Swing a point of one axis onto the other, keeping the sign: (a,0) <-> (0,a)."""
    with scene.gadget(GADGET_ROTATE_TO_AXIS):
        p = scene.point(point)
        origin = scene.origin
        eps = scene.ctx.eps
        if scene.ctx.mp.hypot(p.x, p.y) <= eps:
            return origin
        on_x = abs(p.y) <= eps
        if not on_x and abs(p.x) > eps:
            raise DegenerateGadgetError(f"{p.id} is on neither axis")
        circle = circle_about(scene, origin, p)
        if on_x:
            return toward(intersect(scene, scene.y_axis, circle), origin, 0, p.x)
        return toward(intersect(scene, scene.x_axis, circle), origin, p.y, 0)


def gadget_modulus(scene: Scene, point: ObjectRef) -> Point:
    """Return the length |OP| as a point of the positive x-axis."""
    with scene.gadget(GADGET_MODULUS):
        p = scene.point(point)
        origin = scene.origin
        eps = scene.ctx.eps
        if scene.ctx.mp.hypot(p.x, p.y) <= eps:
            return origin
        if abs(p.y) <= eps and p.x > 0:
            return p
        circle = circle_about(scene, origin, p)
        return toward(intersect(scene, scene.x_axis, circle), origin, 1, 0)


def gadget_negate(scene: Scene, point: ObjectRef) -> Point:
    """Return -P, the reflection through O."""
    with scene.gadget(GADGET_NEGATE):
        return gadget_point_reflect(scene, point, scene.origin)


def gadget_double_length(scene: Scene, point: ObjectRef) -> Point:
    """Return 2P, the reflection of O through P."""
    with scene.gadget(GADGET_DOUBLE_LENGTH):
        return gadget_point_reflect(scene, scene.origin, point)


# Arithmetic on lengths


def gadget_geometric_mean(scene: Scene, p: ObjectRef, q: ObjectRef) -> Point:
    """Return sqrt(p*q) by the altitude theorem.

    The circle on the diameter from (-p, 0) to (q, 0) cuts the y-axis at
    height sqrt(p*q); the height is swung back onto the x-axis.
    """
    with scene.gadget(GADGET_GEOMETRIC_MEAN):
        eps = scene.ctx.eps
        if scene.length(p) <= eps or scene.length(q) <= eps:
            raise DegenerateGadgetError("Geometric mean needs two positive lengths")
        left = gadget_negate(scene, p)
        centre = gadget_midpoint(scene, left, q)
        circle = circle_about(scene, centre, q)
        top = upper(intersect(scene, scene.y_axis, circle))
        return gadget_rotate_to_axis(scene, top)


def gadget_sqrt(scene: Scene, x: ObjectRef) -> Point:
    """Return the length sqrt(x)."""
    with scene.gadget(GADGET_SQRT):
        if scene.length(x) <= scene.ctx.eps:
            raise DegenerateGadgetError("Square root needs a positive length")
        return gadget_geometric_mean(scene, x, scene.unit_point)


def gadget_thales_product(scene: Scene, p: ObjectRef, q: ObjectRef) -> Point:
    """Return the length p*q.

    The line from J = (0, 1) to (p, 0), moved parallel through (0, q), meets
    the x-axis at (p*q, 0). Signed lengths are allowed.
    """
    with scene.gadget(GADGET_THALES_PRODUCT):
        eps = scene.ctx.eps
        if abs(scene.length(p)) <= eps or abs(scene.length(q)) <= eps:
            return scene.origin
        lifted = gadget_rotate_to_axis(scene, q)
        slant = line_through(scene, scene.up_point, p)
        copy = gadget_parallel(scene, slant, lifted)
        return only(intersect(scene, copy, scene.x_axis), "Thales product")


def gadget_thales_scale(scene: Scene, p: ObjectRef, q: ObjectRef) -> Point:
    """Return the length p/q.

    The line from (0, q) to (p, 0), moved parallel through J, meets the
    x-axis at (p/q, 0).
    """
    with scene.gadget(GADGET_THALES_SCALE):
        eps = scene.ctx.eps
        if abs(scene.length(q)) <= eps:
            raise DegenerateGadgetError("Thales scaling by a zero length")
        if abs(scene.length(p)) <= eps:
            return scene.origin
        lifted = gadget_rotate_to_axis(scene, q)
        slant = line_through(scene, lifted, p)
        copy = gadget_parallel(scene, slant, scene.up_point)
        return only(intersect(scene, copy, scene.x_axis), "Thales ratio")


def gadget_rat_roots(
    scene: Scene, a: ObjectRef, b: ObjectRef, c: ObjectRef
) -> tuple[Point, Point]:
    """Solve a*x^2 + b*x + c = 0 with a right-angled trapezium.

    The trapezium stands on the x-axis with the vertical side of length 1 at
    O (after scaling by a) and the vertical side c over the point b. The
    circle on its slanted side as diameter crosses the base at the roots of
    x^2 - b*x + c, i.e. at the negatives of the roots of x^2 + b*x + c.

    Returns:
        The two crossing points in ascending x; a double root gives the same
        point twice.

    Raises:
        NoRealRootsError: If the circle misses the base line.
    """
    with scene.gadget(GADGET_RAT_ROOTS):
        eps = scene.ctx.eps
        lead = scene.length(a)
        if lead <= eps:
            raise DegenerateGadgetError("Leading coefficient must be positive")
        if abs(lead - 1) > eps:
            b = gadget_thales_scale(scene, b, a)
            c = gadget_thales_scale(scene, c, a)
        base = scene.point(b)
        scene.length(c)
        riser = gadget_perpendicular(scene, scene.x_axis, base)
        level = gadget_parallel(scene, scene.x_axis, gadget_rotate_to_axis(scene, c))
        corner = only(intersect(scene, riser, level), "trapezium corner")
        top = scene.up_point
        if scene.distance(corner, top) <= eps:
            raise NoRealRootsError("x^2 + 1 has no real roots")
        centre = gadget_midpoint(scene, top, corner)
        circle = circle_about(scene, centre, top)
        crossings = intersect(scene, scene.x_axis, circle)
        if not crossings:
            raise NoRealRootsError(
                f"Quadratic with b={scene.ctx.mp.nstr(base.x, 10)} has no real roots"
            )
        if len(crossings) == 1:
            return crossings[0], crossings[0]
        return crossings[0], crossings[1]


def gadget_fold_to_curve(scene: Scene, length: ObjectRef) -> Point:
    """Carry the length rho onto the first-quadrant branch of the right petal.

    cos(2 theta) = rho^2 is built by Thales, lifted perpendicularly onto the
    unit circle to get the direction 2 theta, bisected, and the circle of
    radius rho about O cuts the bisector at the curve point.
    """
    with scene.gadget(GADGET_FOLD):
        rho = scene.length(length)
        eps = scene.ctx.eps
        if rho < -eps or rho > 1 + eps:
            raise DegenerateGadgetError(
                f"Only radii in [0, 1] fold onto the curve, got {scene.ctx.mp.nstr(rho, 10)}"
            )
        if rho <= eps:
            return scene.origin
        if abs(rho - 1) <= eps:
            return scene.point(length)
        origin = scene.origin
        square = gadget_thales_product(scene, length, length)
        riser = gadget_perpendicular(scene, scene.x_axis, square)
        lift = upper(intersect(scene, riser, scene.unit_circle))
        bisector = gadget_bisect_angle(scene, origin, scene.unit_point, lift)
        circle = circle_about(scene, origin, length)
        return toward(intersect(scene, bisector, circle), origin, 1 + lift.x, lift.y)


# Replay


def replay(
    steps: Sequence[Step],
    givens: Mapping[str, tuple[Any, Any]],
    ctx: PrecisionContext,
    labels: Mapping[str, str] | None = None,
) -> Scene:
    """Re-execute a step log on a fresh scene.

    Given points take their coordinates from ``givens``; everything else is
    recomputed, so at the same precision the coordinates come out identical.

    Raises:
        ReplayError: If a step fails or produces ids other than the recorded.
    """
    scene = Scene(ctx, frame=False)
    for record in steps:
        try:
            with scene.attributed(record.gadget):
                if record.op == STEP_GIVEN:
                    (point_id,) = record.outputs
                    x, y = givens[point_id]
                    scene.given(x, y)
                elif record.op == STEP_LINE:
                    line_through(scene, *record.inputs)
                elif record.op == STEP_CIRCLE:
                    circle_about(scene, *record.inputs)
                elif record.op == STEP_INTERSECT:
                    intersect(scene, *record.inputs)
                else:
                    raise ReplayError(f"Unknown step kind {record.op!r}")
        except (ConstructionError, KeyError, ValueError) as ex:
            if isinstance(ex, ReplayError):
                raise
            raise ReplayError(f"Step {record.index} ({record.op}) failed: {ex}") from ex
        produced = scene.steps[-1]
        if produced.outputs != tuple(record.outputs):
            raise ReplayError(
                f"Step {record.index} produced {list(produced.outputs)}, "
                f"recorded {list(record.outputs)}"
            )
    for name, ref in (labels or {}).items():
        scene.label(ref, name)
    _LOGGER.debug("Replayed %d steps", len(steps))
    return scene
