"""SVG figures of the lemniscate, constructions and polygons."""

from __future__ import annotations

import logging
import xml.etree.ElementTree as ET
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any

from .const import (
    CONF_CURVE_SAMPLES,
    CONF_SHOW_CONSTRUCTION,
    CONF_SVG_SIZE,
    CURVE_PRECISION,
    DEFAULT_CURVE_SAMPLES,
    DEFAULT_SVG_SIZE,
    MIN_CURVE_SAMPLES,
    SVG_COORD_DECIMALS,
    SVG_VIEWPORT,
)
from .kernel import Circle, Line, Scene
from .numerics import PrecisionContext, omega
from .recipes import NGon

_LOGGER = logging.getLogger(__name__)

SVG_NAMESPACE = "http://www.w3.org/2000/svg"

STYLE_CURVE = {"fill": "none", "stroke": "#000000", "stroke-width": "1.5"}
STYLE_CONSTRUCTION = {"fill": "none", "stroke": "#999999", "stroke-width": "0.5"}
STYLE_LABELLED = {"fill": "#555555", "stroke": "none"}
STYLE_VERTEX = {"fill": "#000000", "stroke": "none"}

_POINT_RADIUS = 2.0
_VERTEX_RADIUS = 3.5
_LABEL_FONT_SIZE = "11"


@dataclass(frozen=True)
class SvgOptions:
    """Rendering options for a figure."""

    size: int = DEFAULT_SVG_SIZE
    curve_samples: int = DEFAULT_CURVE_SAMPLES
    show_construction: bool = True

    @classmethod
    def from_config(cls, options: Mapping[str, Any]) -> SvgOptions:
        """Build options from the validated svg section of the config."""
        return cls(
            size=options.get(CONF_SVG_SIZE, DEFAULT_SVG_SIZE),
            curve_samples=options.get(CONF_CURVE_SAMPLES, DEFAULT_CURVE_SAMPLES),
            show_construction=options.get(CONF_SHOW_CONSTRUCTION, True),
        )


class _Canvas:
    """Maps curve coordinates into the pixel square [0, size]^2."""

    def __init__(self, size: int) -> None:
        self.size = size
        self.scale = size / (2 * SVG_VIEWPORT)

    def fmt(self, value: float) -> str:
        # round first so that -0.0004 and 0.0004 print alike
        return f"{round(value, SVG_COORD_DECIMALS) + 0.0:.{SVG_COORD_DECIMALS}f}"

    def x(self, value: Any) -> str:
        return self.fmt((float(value) + SVG_VIEWPORT) * self.scale)

    def y(self, value: Any) -> str:
        return self.fmt((SVG_VIEWPORT - float(value)) * self.scale)

    def length(self, value: Any) -> str:
        return self.fmt(float(value) * self.scale)


def curve_radius(s: Any, ctx: PrecisionContext) -> Any:
    """Return the lemniscatic sine through the Jacobi function sd.

    phi(s) = sd(sqrt(2) s | 1/2) / sqrt(2). This is only used to draw the
    curve; the oracle stays lemniscate_sine.
    """
    mp = ctx.mp
    root2 = mp.sqrt(2)
    return mp.ellipfun("sd", root2 * s, m=ctx.mpf("0.5")) / root2


def curve_points(samples: int) -> list[tuple[float, float]]:
    """Sample the closed curve at equal arc steps.

    One quarter is evaluated and mirrored: the right petal runs through the
    first and fourth quadrants, the left petal through the second and third.
    """
    ctx = PrecisionContext(CURVE_PRECISION)
    mp = ctx.mp
    quarter = max(samples, MIN_CURVE_SAMPLES) // 4
    half_petal = omega(ctx) / 2
    first: list[tuple[float, float]] = []
    for index in range(quarter + 1):
        r = curve_radius(half_petal * index / quarter, ctx)
        r = min(max(r, ctx.mpf(0)), ctx.mpf(1))
        theta = mp.acos(r * r) / 2
        first.append((float(r * mp.cos(theta)), float(r * mp.sin(theta))))
    # the tip is exactly (1, 0)
    first[-1] = (1.0, 0.0)
    fourth = [(x, -y) for x, y in reversed(first[:-1])]
    second = [(-x, y) for x, y in first[1:]]
    third = [(-x, -y) for x, y in reversed(first[:-1])]
    return first + fourth + second + third


def _svg_root(canvas: _Canvas) -> ET.Element:
    size = str(canvas.size)
    return ET.Element(
        "svg",
        xmlns=SVG_NAMESPACE,
        version="1.1",
        width=size,
        height=size,
        viewBox=f"0 0 {size} {size}",
    )


def _draw_curve(parent: ET.Element, canvas: _Canvas, samples: int) -> None:
    points = curve_points(samples)
    head, *rest = points
    path = [f"M {canvas.x(head[0])} {canvas.y(head[1])}"]
    path.extend(f"L {canvas.x(x)} {canvas.y(y)}" for x, y in rest)
    path.append("Z")
    ET.SubElement(parent, "path", d=" ".join(path), **STYLE_CURVE)


def _draw_line(parent: ET.Element, canvas: _Canvas, line: Line) -> None:
    # foot of the normal from O plus a run long enough to leave the viewport
    nx, ny, c = float(line.nx), float(line.ny), float(line.c)
    fx, fy = c * nx, c * ny
    run = 2 * SVG_VIEWPORT + abs(c)
    ET.SubElement(
        parent,
        "line",
        x1=canvas.x(fx + run * ny),
        y1=canvas.y(fy - run * nx),
        x2=canvas.x(fx - run * ny),
        y2=canvas.y(fy + run * nx),
        **STYLE_CONSTRUCTION,
    )


def _draw_circle(parent: ET.Element, canvas: _Canvas, circle: Circle) -> None:
    ET.SubElement(
        parent,
        "circle",
        cx=canvas.x(circle.cx),
        cy=canvas.y(circle.cy),
        r=canvas.length(circle.radius),
        **STYLE_CONSTRUCTION,
    )


def _draw_point(
    parent: ET.Element,
    canvas: _Canvas,
    x: Any,
    y: Any,
    label: str | None,
    style: Mapping[str, str],
    radius: float,
) -> None:
    ET.SubElement(parent, "circle", cx=canvas.x(x), cy=canvas.y(y), r=canvas.fmt(radius), **style)
    if label:
        text = ET.SubElement(
            parent,
            "text",
            x=canvas.fmt(float(canvas.x(x)) + radius + 2),
            y=canvas.fmt(float(canvas.y(y)) - radius - 2),
            **{"font-size": _LABEL_FONT_SIZE, "font-family": "serif"},
        )
        text.text = label


def _to_string(svg: ET.Element) -> str:
    ET.indent(svg)
    return ET.tostring(svg, encoding="unicode") + "\n"


def render_scene(
    scene: Scene,
    options: SvgOptions | None = None,
    highlight: Mapping[str, str] | None = None,
) -> str:
    """Render a scene: its lines and circles, the curve and its labelled points.

    highlight maps point ids to labels drawn as polygon vertices.
    """
    options = options or SvgOptions()
    canvas = _Canvas(options.size)
    svg = _svg_root(canvas)

    if options.show_construction:
        construction = ET.SubElement(svg, "g", id="construction")
        for line in scene.lines.values():
            _draw_line(construction, canvas, line)
        for circle in scene.circles.values():
            _draw_circle(construction, canvas, circle)

    _draw_curve(ET.SubElement(svg, "g", id="lemniscate"), canvas, options.curve_samples)

    highlight = dict(highlight or {})
    points_group = ET.SubElement(svg, "g", id="points")
    for name, ref in sorted(scene.labels.items()):
        point = scene.points.get(ref)
        if point is None or ref in highlight:
            continue
        _draw_point(points_group, canvas, point.x, point.y, name, STYLE_LABELLED, _POINT_RADIUS)

    vertices = ET.SubElement(svg, "g", id="vertices")
    for ref, name in highlight.items():
        vertex = scene.point(ref)
        _draw_point(vertices, canvas, vertex.x, vertex.y, name, STYLE_VERTEX, _VERTEX_RADIUS)

    _LOGGER.debug(
        "Rendered %d lines, %d circles and %d labels",
        len(scene.lines),
        len(scene.circles),
        len(scene.labels),
    )
    return _to_string(svg)


def render_ngon(ngon: NGon, ctx: PrecisionContext, options: SvgOptions | None = None) -> str:
    """Render a polygon on the lemniscate.

    A constructed polygon brings its scene along; a numeric one is drawn as
    its vertices on the curve.
    """
    options = options or SvgOptions()
    if ngon.scene is not None and ngon.point_ids:
        highlight = {point_id: f"V{k}" for k, point_id in enumerate(ngon.point_ids)}
        return render_scene(ngon.scene, options, highlight)

    canvas = _Canvas(options.size)
    svg = _svg_root(canvas)
    _draw_curve(ET.SubElement(svg, "g", id="lemniscate"), canvas, options.curve_samples)
    vertices = ET.SubElement(svg, "g", id="vertices")
    for k, vertex in enumerate(ngon.vertices):
        x, y = vertex.cartesian(ctx)
        _draw_point(vertices, canvas, x, y, f"V{k}", STYLE_VERTEX, _VERTEX_RADIUS)
    return _to_string(svg)
