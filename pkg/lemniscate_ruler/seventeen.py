"""Ruler-and-compass construction of the lemniscate 17-gon.

U = phi^4(omega/(1+4i)) is built from P = -1/2 + i/4 and Q = 1/4 + i with
the parallelogram law, Thales products and angle bisections. W = -sqrt(U)
and the modulus m of U then give r1 = phi(2 omega/17), which is folded onto
the curve as the first vertex; the other vertices follow from the arc
recipes.
"""

from __future__ import annotations

import logging

from .const import (
    MODE_CONSTRUCTED,
    RECIPE_SEVENTEEN_ALL,
    RECIPE_SEVENTEEN_U,
    RECIPE_SEVENTEEN_V1,
)
from .division_radicals import abel_radical_root, phi_two_omega_17
from .kernel import (
    Line,
    Point,
    Scene,
    circle_about,
    farthest,
    gadget_bisect_angle,
    gadget_double_length,
    gadget_fold_to_curve,
    gadget_midpoint,
    gadget_modulus,
    gadget_negate,
    gadget_parallel,
    gadget_point_reflect,
    gadget_reflect,
    gadget_rotate_to_axis,
    gadget_sqrt,
    gadget_translate,
    intersect,
    line_through,
    only,
    toward,
)
from .numerics import ArcDomainError, LemniscatePoint, lemniscate_sine, omega
from .recipes import (
    CertificateEntry,
    NGon,
    RecipeResult,
    certify,
    certify_arc,
    equal_arc_certificate,
    recipe_add_sub,
    recipe_double,
    recipe_halve,
)

_LOGGER = logging.getLogger(__name__)

SEVENTEEN = 17


def _on_ray(scene: Scene, ray: Line, circle_through: Point, direction: Point) -> Point:
    """Return the point of a line through O at distance |O circle_through|, on the side of direction."""
    origin = scene.origin
    circle = circle_about(scene, origin, circle_through)
    return toward(intersect(scene, ray, circle), origin, direction.x, direction.y)


def _thales_on_ray(scene: Scene, unit_end: Point, scale_from: Point, scale_to: Point, ray: Line) -> Point:
    """Scale along a ray through O: the parallel to unit_end-scale_from through scale_to.

    If scale_from sits at distance 1 on its own axis, the result is the
    point of the ray scaled by |O scale_to|.
    """
    slant = line_through(scene, scale_from, unit_end)
    copy = gadget_parallel(scene, slant, scale_to)
    return only(intersect(scene, copy, ray), "scaled point")


def _add(scene: Scene, first: Point, second: Point) -> Point:
    """Return first + second as vectors from O."""
    return gadget_translate(scene, scene.origin, second, first)


def recipe_seventeen_U(scene: Scene) -> RecipeResult:
    """Construct U = phi^4(omega/(1+4i)).

    Every intermediate point (P, Q, Q*, S, R, T, A, B, C, D, E, Er, Er3, U)
    is labelled in the scene. The final sum is taken as a subtraction,
    (Er^3 + C) + (P + C) - (-(Q* + C)), which keeps the parallelogram wide.
    """
    ctx = scene.ctx
    origin = scene.origin
    unit = scene.unit_point
    labelled: dict[str, Point] = {}

    def mark(name: str, point: Point) -> Point:
        scene.label(point, name)
        labelled[name] = point
        return point

    for name, frame_point in (("O", origin), ("I", unit), ("J", scene.up_point)):
        mark(name, frame_point)
    quarter = ctx.mpf(1) / 4
    p = mark("P", scene.given(-2 * quarter, quarter))
    q = mark("Q", scene.given(quarter, 1))
    q_star = mark("Q*", scene.given(-quarter, 1))

    # s = sqrt|Q| / 2 and r = sqrt(s), stood on the y-axis
    root_q = gadget_sqrt(scene, gadget_modulus(scene, q))
    s_length = gadget_midpoint(scene, origin, root_q)
    r_length = gadget_sqrt(scene, s_length)
    s_point = mark("S", gadget_rotate_to_axis(scene, s_length))
    r_point = mark("R", gadget_rotate_to_axis(scene, r_length))

    # rays at phi/2, 3phi/4, phi/4 and 3phi/8
    half_ray = gadget_bisect_angle(scene, origin, unit, q)
    t_point = mark("T", _on_ray(scene, half_ray, p, q))
    three_quarter_ray = gadget_bisect_angle(scene, origin, t_point, q)
    three_quarter = _on_ray(scene, three_quarter_ray, unit, q)
    quarter_ray = gadget_bisect_angle(scene, origin, unit, t_point)
    three_eighth_ray = gadget_bisect_angle(scene, origin, unit, three_quarter)

    # A = |P| at theta + 3phi/4, B = |S| at 3pi/2 - 3phi/4, C = |S| at phi/2 - pi/2
    a_point = mark("A", gadget_reflect(scene, gadget_reflect(scene, p, scene.x_axis), three_eighth_ray))
    b_point = mark("B", gadget_reflect(scene, gadget_reflect(scene, s_point, three_eighth_ray), scene.y_axis))
    c_point = mark("C", gadget_reflect(scene, s_point, quarter_ray))

    d_point = mark("D", gadget_translate(scene, b_point, a_point, origin))
    e_point = d_point
    for _ in range(3):
        e_point = gadget_double_length(scene, e_point)
    mark("E", e_point)

    ray = line_through(scene, origin, e_point)
    er = mark("Er", _thales_on_ray(scene, e_point, scene.up_point, r_point, ray))
    er3 = mark("Er3", _thales_on_ray(scene, er, scene.up_point, s_point, ray))

    head = _add(scene, _add(scene, er3, c_point), _add(scene, p, c_point))
    opposite = gadget_negate(scene, _add(scene, q_star, c_point))
    quarter_u = gadget_translate(scene, opposite, origin, head)
    u_point = mark("U", gadget_double_length(scene, gadget_double_length(scene, quarter_u)))

    expected = abel_radical_root(ctx).value
    certificate = [
        certify("Re U = radical root", expected.real, u_point.x, ctx),
        certify("Im U = radical root", expected.imag, u_point.y, ctx),
        certify("|S| = sqrt|Q| / 2", ctx.mp.sqrt(ctx.mp.hypot(q.x, q.y)) / 2, s_point.y, ctx),
    ]
    _LOGGER.info("Constructed U in %d steps", len(scene.steps))
    return RecipeResult(
        name=RECIPE_SEVENTEEN_U,
        scene=scene,
        outputs={name: point.id for name, point in labelled.items()},
        certificate=certificate,
    )


def recipe_seventeen_V1(scene: Scene) -> RecipeResult:
    """Construct the first vertex V1 from the point U of the scene.

    W = -sqrt(m) at delta/2, X = W - m conj(W), Y = sqrt(X), Z = (2 Re Y, 0)
    and r1 = Z / (1 + m) by Thales; r1 is then folded onto the curve.

    Raises:
        ArcDomainError: If the scene has no point labelled U.
    """
    ctx = scene.ctx
    origin = scene.origin
    unit = scene.unit_point
    if "U" not in scene.labels:
        raise ArcDomainError("The scene has no point U, run recipe_seventeen_U first")
    u_point = scene.labelled_point("U")
    data = phi_two_omega_17(ctx)
    labelled: dict[str, Point] = {}

    def mark(name: str, point: Point) -> Point:
        scene.label(point, name)
        labelled[name] = point
        return point

    m_length = mark("m", gadget_modulus(scene, u_point))
    m = m_length.x
    half_delta = gadget_bisect_angle(scene, origin, unit, u_point)
    heading = (1 + u_point.x / m, u_point.y / m)
    if data.w_sign < 0:
        heading = (-heading[0], -heading[1])
        _LOGGER.debug("Taking W on the side opposite to delta/2")
    else:
        _LOGGER.warning("Taking W = +sqrt(m) at delta/2")
    circle = circle_about(scene, origin, gadget_sqrt(scene, m_length))
    w_point = mark("W", toward(intersect(scene, half_delta, circle), origin, *heading))

    w_bar = mark("W_bar", gadget_reflect(scene, w_point, scene.x_axis))
    conj_ray = line_through(scene, origin, w_bar)
    m_w_bar = mark("mW_bar", _thales_on_ray(scene, w_bar, unit, m_length, conj_ray))
    x_point = mark("X", gadget_translate(scene, m_w_bar, w_point, origin))

    root_x = gadget_sqrt(scene, gadget_modulus(scene, x_point))
    half_x = gadget_bisect_angle(scene, origin, x_point, unit)
    y_point = mark("Y", toward(intersect(scene, half_x, circle_about(scene, origin, root_x)), origin, 1, 0))
    z_point = mark("Z", farthest(intersect(scene, scene.x_axis, circle_about(scene, y_point, origin)), origin))

    one_plus_m = gadget_translate(scene, origin, unit, m_length)
    slant = line_through(scene, scene.up_point, one_plus_m)
    lifted = only(intersect(scene, gadget_parallel(scene, slant, z_point), scene.y_axis), "(0, r1)")
    mark("r1", lifted)
    v1 = mark("V1", gadget_fold_to_curve(scene, gadget_rotate_to_axis(scene, lifted)))

    r1 = lemniscate_sine(2 * omega(ctx) / SEVENTEEN, ctx)
    certificate = [
        certify("W = -sqrt(m) at delta/2", 0, abs(ctx.mpc(w_point.x, w_point.y) - data.W), ctx),
        certify("Z = 2 Re sqrt(W - m conj W)", data.r1 * (1 + data.m), z_point.x, ctx),
        certify("r(V1) = phi(2 omega/17)", r1, ctx.mp.hypot(v1.x, v1.y), ctx),
        certify_arc("arc(V1) = 2 omega/17", 2 * omega(ctx) / SEVENTEEN, v1, ctx),
    ]
    _LOGGER.info("Constructed V1 in %d steps", len(scene.steps))
    return RecipeResult(
        name=RECIPE_SEVENTEEN_V1,
        scene=scene,
        outputs={name: point.id for name, point in labelled.items()},
        certificate=certificate,
    )


def recipe_seventeen_all(scene: Scene) -> NGon:
    """Construct all seventeen vertices.

    V2, V4 and V6 double V1, V2 and V3; V3 adds V1 and V2; V8 and V7 are the
    halves of V1 and V3 reflected across the x-axis; V5 doubles the mirror
    image of V6. V9 to V16 are the reflections of V8 to V1 through O.
    """
    ctx = scene.ctx
    origin = scene.origin
    certificate: list[CertificateEntry] = []

    def run(result: RecipeResult, output: str) -> Point:
        certificate.extend(result.certificate)
        return result.point(output)

    run(recipe_seventeen_U(scene), "U")
    vertices: dict[int, Point] = {0: origin}
    vertices[1] = run(recipe_seventeen_V1(scene), "V1")
    vertices[2] = run(recipe_double(scene, vertices[1]), "u")
    vertices[3] = run(recipe_add_sub(scene, vertices[1], vertices[2]), "t")
    vertices[4] = run(recipe_double(scene, vertices[2]), "u")
    vertices[6] = run(recipe_double(scene, vertices[3]), "u")
    vertices[8] = gadget_reflect(scene, run(recipe_halve(scene, vertices[1]), "r"), scene.x_axis)
    vertices[7] = gadget_reflect(scene, run(recipe_halve(scene, vertices[3]), "r"), scene.x_axis)
    mirrored = gadget_reflect(scene, vertices[6], scene.x_axis)
    vertices[5] = run(recipe_double(scene, mirrored), "u")
    for k in range(1, 9):
        vertices[SEVENTEEN - k] = gadget_point_reflect(scene, vertices[k], origin)

    points = [vertices[k] for k in range(SEVENTEEN)]
    for k, point in enumerate(points):
        scene.label(point, f"V{k}")
    ngon = NGon(
        n=SEVENTEEN,
        vertices=[LemniscatePoint.from_cartesian(p.x, p.y, ctx) for p in points],
        mode=MODE_CONSTRUCTED,
        point_ids=[p.id for p in points],
        scene=scene,
    )
    ngon.certificate = certificate + equal_arc_certificate(ngon, ctx)
    _LOGGER.info(
        "Constructed the 17-gon in %d steps, certificate %s",
        len(scene.steps),
        "passed" if ngon.passed else "FAILED",
    )
    return ngon


def seventeen_result(scene: Scene) -> RecipeResult:
    """Run recipe_seventeen_all and wrap it as a traceable result."""
    return recipe_seventeen_all(scene).result(RECIPE_SEVENTEEN_ALL)
