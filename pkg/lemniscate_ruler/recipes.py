"""Ruler-and-compass recipes for arc arithmetic and lemniscate polygons.

Every recipe draws on a Scene through the kernel gadgets only and then
certifies its outputs against the closed forms of arc_algebra and the
quadrature of numerics. Arcs are measured in units of omega modulo 2 when
polygons are assembled, so the position of every vertex is known exactly
and only radii are constructed.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .arc_algebra import (
    add_arcs,
    arc_overflows,
    bezout_plan,
    double_arc,
    fermat_factorization,
    sub_arcs,
)
from .const import (
    ATTR_CERTIFICATE,
    ATTR_COORDINATES,
    ATTR_ERROR,
    ATTR_NAME,
    ATTR_OUTPUTS,
    ATTR_PASSED,
    ATTR_PRECISION,
    ATTR_STEPS,
    ATTR_TARGET,
    ATTR_TOLERANCE,
    CONSTRUCTED_FACTORS,
    LABEL_EIGHTH_RAY,
    LABEL_UNIT_VERTICAL,
    MODE_CONSTRUCTED,
    MODE_NUMERIC,
    RECIPE_ADD_SUB,
    RECIPE_BISECT_BETWEEN,
    RECIPE_DOUBLE,
    RECIPE_HALVE,
    RECIPE_TRANSFER,
)
from .kernel import (
    DegenerateGadgetError,
    Line,
    ObjectRef,
    Point,
    Scene,
    circle_about,
    gadget_bisect_angle,
    gadget_double_length,
    gadget_fold_to_curve,
    gadget_geometric_mean,
    gadget_modulus,
    gadget_negate,
    gadget_parallel,
    gadget_perp_bisector,
    gadget_perpendicular,
    gadget_point_reflect,
    gadget_project,
    gadget_rat_roots,
    gadget_reflect,
    gadget_rotate_to_axis,
    gadget_sqrt,
    gadget_thales_product,
    intersect,
    line_through,
    only,
    toward,
)
from .numerics import (
    ArcDomainError,
    LemniscateError,
    LemniscatePoint,
    Petal,
    PrecisionContext,
    Real,
    arc_of_point,
    omega,
    point_at,
)

_LOGGER = logging.getLogger(__name__)

_HALF = Fraction(1, 2)


class NotConstructibleError(LemniscateError):
    """Exception raised when no ruler-and-compass plan exists for a polygon."""


@dataclass(frozen=True)
class CertificateEntry:
    """One check of a construction against its oracle."""

    name: str
    target: Real
    achieved: Real
    error: Real
    tolerance: Real

    @property
    def passed(self) -> bool:
        """Return True if the error is within tolerance."""
        return bool(self.error <= self.tolerance)

    def to_dict(self, ctx: PrecisionContext) -> dict[str, Any]:
        """Convert to dictionary with decimal strings."""
        return {
            ATTR_NAME: self.name,
            ATTR_TARGET: ctx.to_str(self.target),
            "achieved": ctx.to_str(self.achieved),
            ATTR_ERROR: ctx.mp.nstr(self.error, 5),
            ATTR_TOLERANCE: ctx.mp.nstr(self.tolerance, 5),
            ATTR_PASSED: self.passed,
        }


def certify(
    name: str,
    target: Any,
    achieved: Any,
    ctx: PrecisionContext,
    tolerance: Any | None = None,
) -> CertificateEntry:
    """Compare an achieved value with its target."""
    target = ctx.mpf(target)
    achieved = ctx.mpf(achieved)
    return CertificateEntry(
        name=name,
        target=target,
        achieved=achieved,
        error=abs(target - achieved),
        tolerance=ctx.eps if tolerance is None else ctx.mpf(tolerance),
    )


def certify_arc(name: str, target: Any, point: Point, ctx: PrecisionContext) -> CertificateEntry:
    """Compare the arc parameter of a constructed point with a target, modulo 2 omega."""
    period = 2 * omega(ctx)
    target = ctx.mpf(target) % period
    polar = LemniscatePoint.from_cartesian(point.x, point.y, ctx)
    achieved = arc_of_point(polar, ctx, expected=target)
    gap = abs(achieved - target) % period
    return CertificateEntry(
        name=name,
        target=target,
        achieved=achieved,
        error=min(gap, period - gap),
        tolerance=ctx.eps,
    )


@dataclass
class RecipeResult:
    """Scene, named outputs and certificate of a recipe run."""

    name: str
    scene: Scene
    outputs: dict[str, str] = field(default_factory=dict)
    certificate: list[CertificateEntry] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """Return True if the certificate is nonempty and every entry passed."""
        return bool(self.certificate) and all(entry.passed for entry in self.certificate)

    @property
    def max_error(self) -> Real | None:
        """Return the largest certificate error."""
        if not self.certificate:
            return None
        return max(entry.error for entry in self.certificate)

    def failures(self) -> list[CertificateEntry]:
        """Return the certificate entries out of tolerance."""
        return [entry for entry in self.certificate if not entry.passed]

    def point(self, name: str) -> Point:
        """Return a named output point."""
        return self.scene.point(self.outputs[name])

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        ctx = self.scene.ctx
        return {
            ATTR_NAME: self.name,
            ATTR_PRECISION: ctx.digits,
            ATTR_STEPS: len(self.scene.steps),
            ATTR_OUTPUTS: {
                label: {
                    "id": point_id,
                    ATTR_COORDINATES: _coordinates(self.scene.point(point_id), ctx),
                }
                for label, point_id in self.outputs.items()
            },
            ATTR_CERTIFICATE: [entry.to_dict(ctx) for entry in self.certificate],
            ATTR_PASSED: self.passed,
        }


@dataclass
class NGon:
    """Vertices of a lemniscate polygon, vertex k at arc 2 omega k / n."""

    n: int
    vertices: list[LemniscatePoint]
    mode: str
    point_ids: list[str] = field(default_factory=list)
    scene: Scene | None = field(default=None, repr=False)
    certificate: list[CertificateEntry] = field(default_factory=list)
    seeded: list[int] = field(default_factory=list)

    def __post_init__(self) -> None:
        """Check the vertex count."""
        if self.n < 1:
            raise ArcDomainError(f"Polygon size must be positive, got {self.n}")
        if len(self.vertices) != self.n:
            raise ArcDomainError(f"A {self.n}-gon needs {self.n} vertices, got {len(self.vertices)}")
        if self.point_ids and len(self.point_ids) != self.n:
            raise ArcDomainError(f"A {self.n}-gon needs {self.n} point ids")

    @property
    def passed(self) -> bool:
        """Return True if the equal-arc certificate passed."""
        return bool(self.certificate) and all(entry.passed for entry in self.certificate)

    def arc(self, k: int) -> Fraction:
        """Return the arc of vertex k in units of omega, modulo 2."""
        return Fraction(2 * k, self.n) % 2

    def result(self, name: str) -> RecipeResult:
        """Wrap a constructed polygon as a recipe result with V0..V(n-1) outputs."""
        if self.scene is None:
            raise ArcDomainError("Only constructed polygons carry a scene")
        return RecipeResult(
            name=name,
            scene=self.scene,
            outputs={f"V{k}": point_id for k, point_id in enumerate(self.point_ids)},
            certificate=list(self.certificate),
        )

    def to_dict(self, ctx: PrecisionContext) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "n": self.n,
            "mode": self.mode,
            "seeded": list(self.seeded),
            "vertices": [_coordinates(v.cartesian(ctx), ctx) for v in self.vertices],
            ATTR_CERTIFICATE: [entry.to_dict(ctx) for entry in self.certificate],
            ATTR_PASSED: self.passed,
        }


def _coordinates(point: Point | tuple[Real, Real], ctx: PrecisionContext) -> list[str]:
    x, y = (point.x, point.y) if isinstance(point, Point) else point
    return [ctx.to_str(x), ctx.to_str(y)]


# Helpers


def _curve_point(scene: Scene, ref: ObjectRef) -> tuple[Point, LemniscatePoint]:
    ctx = scene.ctx
    point = scene.point(ref)
    polar = LemniscatePoint.from_cartesian(point.x, point.y, ctx)
    if polar.r > ctx.eps and not polar.on_curve(ctx):
        raise ArcDomainError(f"{point.id} is not on the lemniscate")
    return point, polar


def _is_origin(polar: LemniscatePoint, ctx: PrecisionContext) -> bool:
    return bool(polar.r <= ctx.eps)


def _require_first_quadrant(point: Point, polar: LemniscatePoint, ctx: PrecisionContext) -> None:
    if _is_origin(polar, ctx):
        return
    if polar.petal is not Petal.RIGHT or point.y < -ctx.eps:
        raise ArcDomainError(f"{point.id} is not in the first quadrant of the right petal")


def _unit_vertical(scene: Scene) -> Line:
    """Return the tangent x = 1 at the petal tip, drawing it once per scene."""
    if LABEL_UNIT_VERTICAL in scene.labels:
        return scene.line(scene.labelled(LABEL_UNIT_VERTICAL))
    line = gadget_perpendicular(scene, scene.x_axis, scene.unit_point)
    scene.label(line, LABEL_UNIT_VERTICAL)
    return line


def _eighth_ray(scene: Scene) -> Line:
    """Return the line through O at angle pi/8, drawing it once per scene."""
    if LABEL_EIGHTH_RAY in scene.labels:
        return scene.line(scene.labelled(LABEL_EIGHTH_RAY))
    origin = scene.origin
    diagonal = gadget_bisect_angle(scene, origin, scene.unit_point, scene.up_point)
    corner = toward(intersect(scene, diagonal, scene.unit_circle), origin, 1, 1)
    line = gadget_bisect_angle(scene, origin, scene.unit_point, corner)
    scene.label(line, LABEL_EIGHTH_RAY)
    return line


def _lift(scene: Scene, length: ObjectRef) -> Point:
    """Return (1, l) for the length l."""
    level = gadget_parallel(scene, scene.x_axis, gadget_rotate_to_axis(scene, length))
    return only(intersect(scene, level, _unit_vertical(scene)), "lifted length")


def _square_length(scene: Scene, point: Point) -> Point:
    """Return (r^2, 0) = (cos 2theta, 0) for a curve point off the origin."""
    ray = line_through(scene, scene.origin, point)
    twice = gadget_reflect(scene, scene.unit_point, ray)
    return gadget_project(scene, twice, scene.x_axis)


def _fold_signed(scene: Scene, length: Point) -> Point:
    """Fold a signed radius onto the curve; negative radii land in the third quadrant."""
    value = scene.length(length)
    eps = scene.ctx.eps
    if abs(value) <= eps:
        return scene.origin
    if value > 0:
        return gadget_fold_to_curve(scene, length)
    folded = gadget_fold_to_curve(scene, gadget_negate(scene, length))
    return gadget_point_reflect(scene, folded, scene.origin)


def _first_quadrant_rep(scene: Scene, point: Point, polar: LemniscatePoint) -> tuple[Point, bool]:
    """Reflect a curve point into the first quadrant.

    Returns:
        The representative and whether the arc changed sign on the way, in
        which case doubled arcs come back through a point reflection.
    """
    eps = scene.ctx.eps
    below = point.y < -eps
    if polar.petal is Petal.RIGHT:
        if below:
            return gadget_reflect(scene, point, scene.x_axis), True
        return point, False
    if below:
        return gadget_point_reflect(scene, point, scene.origin), True
    return gadget_reflect(scene, point, scene.y_axis), False


def _finish(name: str, scene: Scene, outputs: dict[str, Point], certificate: list[CertificateEntry]) -> RecipeResult:
    result = RecipeResult(
        name=name,
        scene=scene,
        outputs={label: point.id for label, point in outputs.items()},
        certificate=certificate,
    )
    for entry in result.failures():
        _LOGGER.warning(
            "%s certificate %r off by %s", name, entry.name, scene.ctx.mp.nstr(entry.error, 5)
        )
    _LOGGER.debug("%s done, scene has %d steps", name, len(scene.steps))
    return result


# Arc recipes


def _halve_factor(scene: Scene, factor: Point) -> Point:
    """Turn k on the x-axis into the curve point of radius sqrt(sqrt(k^2 + 1) - k)."""
    negated = gadget_negate(scene, factor)
    circle = circle_about(scene, negated, scene.up_point)
    root = toward(intersect(scene, scene.x_axis, circle), scene.origin, 1, 0)
    return gadget_fold_to_curve(scene, gadget_sqrt(scene, root))


def recipe_halve(scene: Scene, u_point: ObjectRef) -> RecipeResult:
    """Halve the arc of a right-petal point.

    The angle is doubled by reflecting I across the ray, the tangent to the
    unit circle there meets the x-axis at sec 2phi, and the circle about that
    point through the tangency cuts the axis at sec 2phi +- tan 2phi. Each of
    these k gives T = sqrt(k^2 + 1) - k from the circle about -k through J,
    and sqrt(T) folded onto the curve is a half arc.

    Outputs:
        r: halves the arc of u_point.
        r_complement: halves the rest of the petal.

    Raises:
        ArcDomainError: For the origin or a left-petal point.
    """
    ctx = scene.ctx
    eps = ctx.eps
    point, polar = _curve_point(scene, u_point)
    if _is_origin(polar, ctx):
        raise ArcDomainError("Cannot halve the arc of the origin")
    if polar.petal is not Petal.RIGHT:
        raise ArcDomainError(f"{point.id} is on the left petal, halving takes right-petal points")

    origin = scene.origin
    if abs(point.y) <= eps:
        first = second = _halve_factor(scene, scene.unit_point)
    else:
        ray = line_through(scene, origin, point)
        twice = gadget_reflect(scene, scene.unit_point, ray)
        tangent = gadget_perpendicular(scene, line_through(scene, origin, twice), twice)
        secant = only(intersect(scene, tangent, scene.x_axis), "secant point")
        crossings = intersect(scene, scene.x_axis, circle_about(scene, secant, twice))
        if len(crossings) != 2:
            raise DegenerateGadgetError("The tangent circle must cut the x-axis twice")
        low, high = crossings
        k_first, k_second = (high, low) if point.y > 0 else (low, high)
        first = _halve_factor(scene, k_first)
        second = _halve_factor(scene, k_second)

    s = arc_of_point(polar, ctx)
    w = omega(ctx)
    certificate = [
        certify("double_arc(r) = u", polar.r, double_arc(ctx.mp.hypot(first.x, first.y), ctx), ctx),
        certify_arc("arc(r) = s(u)/2", s / 2, first, ctx),
        certify_arc("arc(r_complement) = (omega - s(u))/2", (w - s) / 2, second, ctx),
    ]
    return _finish(RECIPE_HALVE, scene, {"r": first, "r_complement": second}, certificate)


def _double_first_quadrant(scene: Scene, rep: Point) -> Point:
    """Double the arc of a first-quadrant point strictly between O and the tip.

    With C = (r^2, 0) the perpendicular bisector of CJ meets the x-axis at
    -(1 - r^4)/(2 r^2) = -tan(phi + pi/4). Standing that length on x = 1
    gives the direction phi + pi/4; two reflections (across the pi/8 ray and
    the x-axis) take off the pi/4, and the radius comes from cos 2phi = u^2.
    """
    eps = scene.ctx.eps
    origin = scene.origin
    square = _square_length(scene, rep)
    bisector = gadget_perp_bisector(scene, square, scene.up_point)
    foot = only(intersect(scene, bisector, scene.x_axis), "tangent foot")
    height = gadget_rotate_to_axis(scene, gadget_negate(scene, foot))
    level = gadget_parallel(scene, scene.x_axis, height)
    corner = only(intersect(scene, level, _unit_vertical(scene)), "angle corner")
    mirrored = gadget_reflect(scene, corner, _eighth_ray(scene))
    heading = gadget_reflect(scene, mirrored, scene.x_axis)
    direction = line_through(scene, origin, heading)
    twice = gadget_reflect(scene, scene.unit_point, direction)
    doubled_square = gadget_project(scene, twice, scene.x_axis)
    if scene.length(doubled_square) <= eps:
        return origin
    radius = gadget_sqrt(scene, doubled_square)
    circle = circle_about(scene, origin, radius)
    return toward(intersect(scene, direction, circle), origin, heading.x, heading.y)


def recipe_double(scene: Scene, r_point: ObjectRef) -> RecipeResult:
    """Double the arc of a curve point.

    Points outside the first quadrant are reflected in, doubled, and come
    back through O when their arc changed sign. The origin and the petal
    tips double to the origin.
    """
    ctx = scene.ctx
    eps = ctx.eps
    point, polar = _curve_point(scene, r_point)
    origin = scene.origin
    if _is_origin(polar, ctx) or abs(polar.r - 1) <= eps:
        doubled = origin
    else:
        rep, flip = _first_quadrant_rep(scene, point, polar)
        doubled = _double_first_quadrant(scene, rep)
        if flip:
            doubled = gadget_point_reflect(scene, doubled, origin)

    s = arc_of_point(polar, ctx)
    radius = min(polar.r, ctx.mpf(1))
    certificate = [
        certify("radius = double_arc(r)", double_arc(radius, ctx), ctx.mp.hypot(doubled.x, doubled.y), ctx),
        certify_arc("arc = 2 s(r)", 2 * s, doubled, ctx),
    ]
    return _finish(RECIPE_DOUBLE, scene, {"u": doubled}, certificate)


def _add_sub_general(scene: Scene, first: Point, second: Point, overflow: bool) -> tuple[Point, Point]:
    """Build t and v as the roots of X^2 + BX + C for two first-quadrant points.

    With tan(alpha) = r^2 and tan(beta) = u^2: C = tan(alpha - beta) and
    -B = sqrt(2 sin 2alpha cos 2beta) sec(alpha - beta).
    """
    eps = scene.ctx.eps
    origin = scene.origin
    unit = scene.unit_point
    vertical = _unit_vertical(scene)

    alpha_corner = _lift(scene, _square_length(scene, first))
    beta_corner = _lift(scene, _square_length(scene, second))
    half_alpha = gadget_bisect_angle(scene, origin, unit, alpha_corner)
    difference = gadget_reflect(scene, beta_corner, half_alpha)
    c_corner = only(
        intersect(scene, line_through(scene, origin, difference), vertical), "tangent of alpha - beta"
    )
    c_length = gadget_rotate_to_axis(scene, gadget_project(scene, c_corner, scene.y_axis))
    secant = gadget_modulus(scene, c_corner)

    alpha_twice = gadget_reflect(scene, unit, line_through(scene, origin, alpha_corner))
    sin_alpha = gadget_rotate_to_axis(scene, gadget_project(scene, alpha_twice, scene.y_axis))
    beta_twice = gadget_reflect(scene, unit, line_through(scene, origin, beta_corner))
    cos_beta = gadget_project(scene, beta_twice, scene.x_axis)
    if scene.length(cos_beta) <= eps:
        b_length = origin
    else:
        mean = gadget_geometric_mean(scene, gadget_double_length(scene, sin_alpha), cos_beta)
        b_length = gadget_thales_product(scene, mean, secant)

    low, high = gadget_rat_roots(scene, unit, b_length, c_length)
    total = _fold_signed(scene, high)
    if overflow:
        total = gadget_reflect(scene, total, scene.x_axis)
    return total, _fold_signed(scene, low)


def recipe_add_sub(scene: Scene, r_point: ObjectRef, u_point: ObjectRef) -> RecipeResult:
    """Add and subtract the arcs of two first-quadrant points.

    Outputs:
        t: the point at arc s(r) + s(u), reflected across the x-axis once the
            sum passes the petal tip.
        v: the point at arc s(r) - s(u), reflected through O when negative.
    """
    ctx = scene.ctx
    first, polar_r = _curve_point(scene, r_point)
    second, polar_u = _curve_point(scene, u_point)
    _require_first_quadrant(first, polar_r, ctx)
    _require_first_quadrant(second, polar_u, ctx)
    origin = scene.origin
    r = min(polar_r.r, ctx.mpf(1))
    u = min(polar_u.r, ctx.mpf(1))

    if _is_origin(polar_u, ctx):
        total = difference = origin if _is_origin(polar_r, ctx) else first
    elif _is_origin(polar_r, ctx):
        total = second
        difference = gadget_point_reflect(scene, second, origin)
    else:
        total, difference = _add_sub_general(scene, first, second, arc_overflows(r, u, ctx))

    s_r = arc_of_point(polar_r, ctx)
    s_u = arc_of_point(polar_u, ctx)
    gap = sub_arcs(r, u, ctx) if r >= u else sub_arcs(u, r, ctx)
    certificate = [
        certify("radius(t) = add_arcs(r, u)", add_arcs(r, u, ctx), ctx.mp.hypot(total.x, total.y), ctx),
        certify("radius(v) = sub_arcs(r, u)", gap, ctx.mp.hypot(difference.x, difference.y), ctx),
        certify_arc("arc(t) = s(r) + s(u)", s_r + s_u, total, ctx),
        certify_arc("arc(v) = s(r) - s(u)", s_r - s_u, difference, ctx),
    ]
    return _finish(RECIPE_ADD_SUB, scene, {"t": total, "v": difference}, certificate)


def recipe_transfer(
    scene: Scene, r_point: ObjectRef, u_point: ObjectRef, t_point: ObjectRef
) -> RecipeResult:
    """Carry the step from r to u onto t: s(w) = s(u) - s(r) + s(t)."""
    ctx = scene.ctx
    first, polar_r = _curve_point(scene, r_point)
    second, polar_u = _curve_point(scene, u_point)
    third, polar_t = _curve_point(scene, t_point)

    step = recipe_add_sub(scene, second, first)
    certificate = list(step.certificate)
    delta = step.point("v")
    if delta.y >= -ctx.eps:
        moved = recipe_add_sub(scene, delta, third)
        target = moved.point("t")
    else:
        magnitude = gadget_point_reflect(scene, delta, scene.origin)
        moved = recipe_add_sub(scene, third, magnitude)
        target = moved.point("v")
    certificate.extend(moved.certificate)

    arc = arc_of_point(polar_u, ctx) - arc_of_point(polar_r, ctx) + arc_of_point(polar_t, ctx)
    certificate.append(certify_arc("arc(w) = s(u) - s(r) + s(t)", arc, target, ctx))
    return _finish(RECIPE_TRANSFER, scene, {"w": target}, certificate)


def recipe_bisect_between(scene: Scene, r_point: ObjectRef, t_point: ObjectRef) -> RecipeResult:
    """Return the point halfway along the curve between two right-petal points."""
    ctx = scene.ctx
    certificate: list[CertificateEntry] = []
    halves: list[Point] = []
    arcs: list[Real] = []
    for ref in (r_point, t_point):
        point, polar = _curve_point(scene, ref)
        arcs.append(arc_of_point(polar, ctx))
        if _is_origin(polar, ctx):
            halves.append(scene.origin)
            continue
        half = recipe_halve(scene, point)
        certificate.extend(half.certificate)
        halves.append(half.point("r"))

    total = recipe_add_sub(scene, halves[0], halves[1])
    certificate.extend(total.certificate)
    middle = total.point("t")
    certificate.append(certify_arc("arc(m) = (s(r) + s(t))/2", sum(arcs) / 2, middle, ctx))
    return _finish(RECIPE_BISECT_BETWEEN, scene, {"m": middle}, certificate)


# Polygons


def fold_fraction(arc: Fraction) -> Fraction:
    """Return the first-quadrant representative of an arc in units of omega."""
    rest = arc % 1
    return min(rest, 1 - rest)


def _quadrant_map(scene: Scene, point: Point, arc: Fraction) -> Point:
    """Apply the symmetry that takes the representative of ``arc`` to arc, or back.

    Each map is an involution, so the same call folds a point at ``arc`` to
    its first-quadrant representative.
    """
    arc %= 2
    if arc in (0, 1):
        return scene.origin
    if arc <= _HALF:
        return point
    if arc < 1:
        return gadget_reflect(scene, point, scene.x_axis)
    if arc <= Fraction(3, 2):
        return gadget_reflect(scene, point, scene.y_axis)
    return gadget_point_reflect(scene, point, scene.origin)


class _ArcBook:
    """First-quadrant points of a scene indexed by their exact arc."""

    def __init__(self, scene: Scene) -> None:
        self._scene = scene
        self._reps: dict[Fraction, str] = {
            Fraction(0): scene.origin.id,
            _HALF: scene.unit_point.id,
        }
        self._placed: dict[Fraction, str] = {}
        self.certificate: list[CertificateEntry] = []

    def __contains__(self, arc: Fraction) -> bool:
        return fold_fraction(arc) in self._reps

    def rep(self, arc: Fraction) -> Point:
        """Return the first-quadrant point with arc fold_fraction(arc)."""
        return self._scene.point(self._reps[fold_fraction(arc)])

    def record(self, arc: Fraction, point: Point) -> None:
        """File a point known to sit at ``arc``."""
        key = fold_fraction(arc)
        if key not in self._reps:
            self._reps[key] = _quadrant_map(self._scene, point, arc).id

    def seed(self, arc: Fraction, ctx: PrecisionContext) -> None:
        """Add the representative of an arc as a given point."""
        key = fold_fraction(arc)
        if key in self._reps:
            return
        x, y = point_at(omega(ctx) * key.numerator / key.denominator, ctx).cartesian(ctx)
        self._reps[key] = self._scene.given(x, y).id

    def place(self, arc: Fraction) -> Point:
        """Return the point at ``arc``, reflecting its representative once."""
        arc %= 2
        if arc not in self._placed:
            self._placed[arc] = _quadrant_map(self._scene, self.rep(arc), arc).id
        return self._scene.point(self._placed[arc])

    def combine(self, first: Fraction, second: Fraction) -> Fraction:
        """Construct the representative of first + second from theirs."""
        target = (first + second) % 2
        if target in self:
            return target
        sign_first, rep_first = _signed_fold(first)
        sign_second, rep_second = _signed_fold(second)
        result = recipe_add_sub(self._scene, self.rep(first), self.rep(second))
        self.certificate.extend(result.certificate)
        if sign_first == sign_second:
            self.record(rep_first + rep_second, result.point("t"))
        else:
            self.record(rep_first - rep_second, result.point("v"))
        return target

    def halve(self, arc: Fraction) -> None:
        """Halve the right-petal point at ``arc``, filing both halves."""
        result = recipe_halve(self._scene, self.place(arc))
        self.certificate.extend(result.certificate)
        self.record(arc / 2, result.point("r"))
        self.record((1 - arc) / 2, result.point("r_complement"))

    def transfer(self, before: Fraction, last: Fraction) -> Fraction:
        """Extend the progression before, last by one step."""
        target = 2 * last - before
        if target not in self:
            result = recipe_transfer(self._scene, self.rep(before), self.rep(last), self.rep(last))
            self.certificate.extend(result.certificate)
            self.record(target, result.point("w"))
        return target


def _signed_fold(arc: Fraction) -> tuple[int, Fraction]:
    rest = arc % 1
    return (1, rest) if rest <= _HALF else (-1, 1 - rest)


def _fill_book(book: _ArcBook, scene: Scene, ngon: NGon) -> None:
    ctx = scene.ctx
    if not ngon.point_ids:
        _LOGGER.warning(
            "No ruler-and-compass recipe for the %d-gon, seeding its vertices numerically",
            ngon.n,
        )
        for k in range(ngon.n):
            book.seed(ngon.arc(k), ctx)
        return
    if ngon.scene is not scene:
        raise ArcDomainError(f"The {ngon.n}-gon was constructed on another scene")
    order = sorted(range(ngon.n), key=lambda k: ngon.arc(k) > _HALF)
    for k in order:
        book.record(ngon.arc(k), scene.point(ngon.point_ids[k]))


def _assemble(scene: Scene, book: _ArcBook, n: int, seeded: list[int]) -> NGon:
    ctx = scene.ctx
    points = [book.place(Fraction(2 * k, n)) for k in range(n)]
    ngon = NGon(
        n=n,
        vertices=[LemniscatePoint.from_cartesian(p.x, p.y, ctx) for p in points],
        mode=MODE_CONSTRUCTED,
        point_ids=[p.id for p in points],
        scene=scene,
        seeded=seeded,
    )
    ngon.certificate = book.certificate + equal_arc_certificate(ngon, ctx)
    _LOGGER.info("Constructed the %d-gon, scene has %d steps", n, len(scene.steps))
    return ngon


def equal_arc_certificate(ngon: NGon, ctx: PrecisionContext) -> list[CertificateEntry]:
    """Check every arc gap of a polygon against 2 omega / n."""
    period = 2 * omega(ctx)
    step = period / ngon.n
    if ngon.n == 1:
        return [certify("vertex 0 at the origin", 0, ngon.vertices[0].r, ctx)]
    arcs = [
        arc_of_point(vertex, ctx, expected=step * k) for k, vertex in enumerate(ngon.vertices)
    ]
    entries = []
    for k in range(ngon.n):
        following = (k + 1) % ngon.n
        gap = (arcs[following] - arcs[k]) % period
        entries.append(certify(f"gap V{k} -> V{following}", step, gap, ctx))
    return entries


def numeric_ngon(n: int, ctx: PrecisionContext) -> NGon:
    """Return the n-gon with vertices at point_at(2 omega k / n)."""
    if n < 1:
        raise ArcDomainError(f"Polygon size must be positive, got {n}")
    step = 2 * omega(ctx) / n
    ngon = NGon(n=n, vertices=[point_at(step * k, ctx) for k in range(n)], mode=MODE_NUMERIC)
    ngon.certificate = equal_arc_certificate(ngon, ctx)
    return ngon


def recipe_2n_gon(scene: Scene, ngon: NGon) -> NGon:
    """Double the number of vertices of a polygon.

    For odd n every new vertex is a reflection of an old one; for even n the
    new first-quadrant vertices come from halving right-petal vertices.
    """
    book = _ArcBook(scene)
    _fill_book(book, scene, ngon)
    n = ngon.n
    if n % 2 == 0:
        for k in range(1, n // 2 + 1, 2):
            if Fraction(k, n) not in book:
                book.halve(Fraction(2 * k, n))
    return _assemble(scene, book, 2 * n, _seeded_sizes(ngon))


def recipe_nm_gon(scene: Scene, ngon_n: NGon, ngon_m: NGon) -> NGon:
    """Merge an N-gon and an M-gon with coprime sizes into the NM-gon.

    a M + b N = 1 puts the first vertex at a arcs of the N-gon plus b arcs
    of the M-gon; the rest of the first quadrant follows by transfer.

    Raises:
        BezoutError: If gcd(N, M) != 1.
    """
    plan = bezout_plan(ngon_n.n, ngon_m.n)
    size = ngon_n.n * ngon_m.n
    book = _ArcBook(scene)
    _fill_book(book, scene, ngon_n)
    _fill_book(book, scene, ngon_m)

    first = book.combine(Fraction(2 * plan.a, plan.N), Fraction(2 * plan.b, plan.M))
    if size % 2:
        # for odd NM the representatives run over all j/NM
        step = Fraction(1, size)
        book.halve(first)
    else:
        step = first
    before, last = Fraction(0), step
    while last + step <= _HALF:
        before, last = last, book.transfer(before, last)
    _LOGGER.debug("Bezout plan %s for the %d-gon", plan.to_dict(), size)
    return _assemble(scene, book, size, _seeded_sizes(ngon_n) + _seeded_sizes(ngon_m))


def _seeded_sizes(ngon: NGon) -> list[int]:
    if ngon.mode == MODE_NUMERIC:
        return [ngon.n]
    return list(ngon.seeded)


def construct_ngon(n: int, ctx: PrecisionContext, scene: Scene | None = None) -> NGon:
    """Plan and run the construction of the n-gon.

    The 17-gon is drawn from scratch; the other Fermat factors are seeded
    numerically with a warning. Odd factors are merged with recipe_nm_gon,
    then the polygon is doubled once per factor 2.

    Raises:
        NotConstructibleError: If n is not 2^a times distinct Fermat primes.
    """
    from .seventeen import recipe_seventeen_all

    factors = fermat_factorization(n)
    if factors is None:
        raise NotConstructibleError(f"The {n}-gon is not constructible with ruler and compass")
    power, primes = factors
    scene = scene if scene is not None else Scene(ctx)

    polygon: NGon | None = None
    for prime in primes:
        if prime in CONSTRUCTED_FACTORS:
            part = recipe_seventeen_all(scene)
        else:
            part = numeric_ngon(prime, ctx)
        polygon = part if polygon is None else recipe_nm_gon(scene, polygon, part)

    if polygon is None:
        origin = scene.origin
        polygon = NGon(
            n=1,
            vertices=[LemniscatePoint.from_cartesian(origin.x, origin.y, ctx)],
            mode=MODE_CONSTRUCTED,
            point_ids=[origin.id],
            scene=scene,
        )
        polygon.certificate = equal_arc_certificate(polygon, ctx)
    elif polygon.mode == MODE_NUMERIC:
        # a lone seeded factor still goes through the scene
        book = _ArcBook(scene)
        _fill_book(book, scene, polygon)
        polygon = _assemble(scene, book, polygon.n, [polygon.n])

    for _ in range(power):
        polygon = recipe_2n_gon(scene, polygon)
    return polygon
