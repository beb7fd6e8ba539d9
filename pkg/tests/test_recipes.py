"""Tests for the arc recipes and polygon constructions."""

from __future__ import annotations

from fractions import Fraction

import pytest

from lemniscate_ruler.arc_algebra import BezoutError, add_arcs
from lemniscate_ruler.const import MODE_CONSTRUCTED, MODE_NUMERIC
from lemniscate_ruler.diagnostics import audit
from lemniscate_ruler.kernel import Point, Scene
from lemniscate_ruler.numerics import (
    ArcDomainError,
    LemniscatePoint,
    PrecisionContext,
    lemniscate_sine,
    omega,
    point_at,
)
from lemniscate_ruler.recipes import (
    NGon,
    NotConstructibleError,
    certify,
    construct_ngon,
    fold_fraction,
    numeric_ngon,
    recipe_2n_gon,
    recipe_add_sub,
    recipe_bisect_between,
    recipe_double,
    recipe_halve,
    recipe_nm_gon,
    recipe_transfer,
)


def _at(scene: Scene, arc: Fraction) -> Point:
    """Add the curve point at arc * omega as a given point."""
    ctx = scene.ctx
    x, y = point_at(omega(ctx) * arc.numerator / arc.denominator, ctx).cartesian(ctx)
    return scene.given(x, y)


def _radius(point: Point, ctx: PrecisionContext) -> object:
    return ctx.mp.hypot(point.x, point.y)


def _sine(arc: Fraction, ctx: PrecisionContext) -> object:
    return lemniscate_sine(omega(ctx) * arc.numerator / arc.denominator, ctx)


def _close(ngon: NGon, reference: NGon, ctx: PrecisionContext, tolerance: str) -> bool:
    for built, expected in zip(ngon.vertices, reference.vertices, strict=True):
        bx, by = built.cartesian(ctx)
        ex, ey = expected.cartesian(ctx)
        if ctx.mp.hypot(bx - ex, by - ey) > ctx.mpf(tolerance):
            return False
    return True


class TestCertify:
    """Test certificate entries."""

    def test_default_tolerance(self, ctx30: PrecisionContext) -> None:
        """Test that the default tolerance is eps."""
        entry = certify("exact", 1, 1, ctx30)
        assert entry.passed
        assert entry.tolerance == ctx30.eps

    def test_failure(self, ctx30: PrecisionContext) -> None:
        """Test an entry out of tolerance."""
        entry = certify("off", 1, "1.001", ctx30, "1e-6")
        assert not entry.passed
        assert entry.to_dict(ctx30)["passed"] is False


class TestHalve:
    """Test arc halving."""

    def test_tip(self, scene: Scene) -> None:
        """Test that halving the tip gives the point at omega/4."""
        result = recipe_halve(scene, scene.unit_point)
        ctx = scene.ctx
        assert result.passed
        assert abs(_radius(result.point("r"), ctx) - _sine(Fraction(1, 4), ctx)) < ctx.eps

    def test_fifth(self, scene: Scene) -> None:
        """Test omega/5 halved to omega/10, with complement 2 omega/5."""
        result = recipe_halve(scene, _at(scene, Fraction(1, 5)))
        ctx = scene.ctx
        assert result.passed
        assert abs(_radius(result.point("r"), ctx) - _sine(Fraction(1, 10), ctx)) < ctx.eps
        assert abs(_radius(result.point("r_complement"), ctx) - _sine(Fraction(2, 5), ctx)) < ctx.eps

    def test_fourth_quadrant(self, scene: Scene) -> None:
        """Test that a point below the axis halves into the first quadrant."""
        result = recipe_halve(scene, _at(scene, Fraction(3, 5)))
        assert result.passed
        assert result.point("r").y > 0

    def test_origin(self, scene: Scene) -> None:
        """Test that the origin cannot be halved."""
        with pytest.raises(ArcDomainError):
            recipe_halve(scene, scene.origin)

    def test_left_petal(self, scene: Scene) -> None:
        """Test that left-petal points are refused."""
        with pytest.raises(ArcDomainError):
            recipe_halve(scene, _at(scene, Fraction(6, 5)))

    def test_off_curve(self, scene: Scene) -> None:
        """Test that points off the lemniscate are refused."""
        with pytest.raises(ArcDomainError):
            recipe_halve(scene, scene.given("0.5", "0.5"))


class TestDouble:
    """Test arc doubling."""

    def test_fifth(self, scene: Scene) -> None:
        """Test omega/5 doubled to 2 omega/5."""
        result = recipe_double(scene, _at(scene, Fraction(1, 5)))
        ctx = scene.ctx
        assert result.passed
        assert abs(_radius(result.point("u"), ctx) - _sine(Fraction(2, 5), ctx)) < ctx.eps

    def test_past_the_tip(self, scene: Scene) -> None:
        """Test that 2 omega/7 doubles past the tip into the fourth quadrant."""
        result = recipe_double(scene, _at(scene, Fraction(2, 7)))
        assert result.passed
        assert result.point("u").y < 0

    @pytest.mark.parametrize("arc", [Fraction(7, 10), Fraction(4, 3), Fraction(9, 5)])
    def test_other_quadrants(self, scene: Scene, arc: Fraction) -> None:
        """Test doubling from the fourth, second and third quadrants."""
        assert recipe_double(scene, _at(scene, arc)).passed

    def test_fixed_points(self, scene: Scene) -> None:
        """Test that the origin and the tip double to the origin."""
        assert recipe_double(scene, scene.origin).point("u") == scene.origin
        assert recipe_double(scene, scene.unit_point).point("u") == scene.origin


class TestAddSub:
    """Test arc addition and subtraction."""

    def test_fifth_and_seventh(self, scene: Scene) -> None:
        """Test omega/5 +- omega/7."""
        ctx = scene.ctx
        result = recipe_add_sub(scene, _at(scene, Fraction(1, 5)), _at(scene, Fraction(1, 7)))
        assert result.passed
        assert abs(_radius(result.point("t"), ctx) - _sine(Fraction(12, 35), ctx)) < ctx.eps
        assert abs(_radius(result.point("v"), ctx) - _sine(Fraction(2, 35), ctx)) < ctx.eps

    def test_overflow(self, scene: Scene) -> None:
        """Test that a sum past the tip lands below the axis."""
        result = recipe_add_sub(scene, _at(scene, Fraction(1, 3)), _at(scene, Fraction(1, 4)))
        ctx = scene.ctx
        total = result.point("t")
        assert result.passed
        assert total.y < 0
        assert abs(_radius(total, ctx) - add_arcs(_sine(Fraction(1, 3), ctx), _sine(Fraction(1, 4), ctx), ctx)) < ctx.eps

    def test_negative_difference(self, scene: Scene) -> None:
        """Test that a negative difference lands in the third quadrant."""
        result = recipe_add_sub(scene, _at(scene, Fraction(1, 7)), _at(scene, Fraction(1, 5)))
        difference = result.point("v")
        assert result.passed
        assert difference.x < 0
        assert difference.y < 0

    def test_with_origin(self, scene: Scene) -> None:
        """Test that adding the origin changes nothing."""
        p = _at(scene, Fraction(1, 5))
        result = recipe_add_sub(scene, p, scene.origin)
        assert result.point("t") == p
        assert result.point("v") == p

    def test_first_quadrant_only(self, scene: Scene) -> None:
        """Test that inputs below the axis are refused."""
        with pytest.raises(ArcDomainError):
            recipe_add_sub(scene, _at(scene, Fraction(3, 5)), _at(scene, Fraction(1, 5)))

    def test_audit(self, scene: Scene) -> None:
        """Test that the construction passes the audit."""
        recipe_add_sub(scene, _at(scene, Fraction(1, 5)), _at(scene, Fraction(1, 7)))
        assert audit(scene).passed


class TestTransferAndBisect:
    """Test transfer and bisection between points."""

    def test_transfer(self, scene: Scene) -> None:
        """Test carrying the step from omega/7 to omega/5 onto omega/6."""
        result = recipe_transfer(
            scene, _at(scene, Fraction(1, 7)), _at(scene, Fraction(1, 5)), _at(scene, Fraction(1, 6))
        )
        ctx = scene.ctx
        target = Fraction(1, 5) - Fraction(1, 7) + Fraction(1, 6)
        assert result.passed
        assert abs(_radius(result.point("w"), ctx) - _sine(target, ctx)) < ctx.eps

    def test_transfer_backwards(self, scene: Scene) -> None:
        """Test a negative step."""
        result = recipe_transfer(
            scene, _at(scene, Fraction(1, 5)), _at(scene, Fraction(1, 7)), _at(scene, Fraction(1, 3))
        )
        assert result.passed

    def test_bisect_between(self, scene: Scene) -> None:
        """Test the midpoint of omega/5 and omega/3 at 4 omega/15."""
        result = recipe_bisect_between(scene, _at(scene, Fraction(1, 5)), _at(scene, Fraction(1, 3)))
        ctx = scene.ctx
        assert result.passed
        assert abs(_radius(result.point("m"), ctx) - _sine(Fraction(4, 15), ctx)) < ctx.eps


class TestPolygons:
    """Test numeric and constructed polygons."""

    @pytest.mark.parametrize(
        ("arc", "expected"),
        [
            (Fraction(1, 3), Fraction(1, 3)),
            (Fraction(3, 4), Fraction(1, 4)),
            (Fraction(5, 4), Fraction(1, 4)),
            (Fraction(2), Fraction(0)),
        ],
    )
    def test_fold_fraction(self, arc: Fraction, expected: Fraction) -> None:
        """Test the first-quadrant representative."""
        assert fold_fraction(arc) == expected

    def test_numeric(self, ctx30: PrecisionContext) -> None:
        """Test the numeric pentagon."""
        ngon = numeric_ngon(5, ctx30)
        assert ngon.mode == MODE_NUMERIC
        assert ngon.passed
        assert ngon.vertices[0].r < ctx30.eps
        assert ngon.scene is None

    def test_numeric_size(self, ctx30: PrecisionContext) -> None:
        """Test that a polygon needs at least one vertex."""
        with pytest.raises(ArcDomainError):
            numeric_ngon(0, ctx30)

    def test_vertex_count(self) -> None:
        """Test that the vertex list must match n."""
        with pytest.raises(ArcDomainError):
            NGon(n=3, vertices=[], mode=MODE_NUMERIC)

    def test_numeric_has_no_result(self, ctx30: PrecisionContext) -> None:
        """Test that only constructed polygons become recipe results."""
        with pytest.raises(ArcDomainError):
            numeric_ngon(3, ctx30).result("triangle")

    def test_not_constructible(self, ctx30: PrecisionContext) -> None:
        """Test that 9 = 3^2 has no construction."""
        with pytest.raises(NotConstructibleError):
            construct_ngon(9, ctx30)

    def test_seeded_pentagon(self, ctx30: PrecisionContext) -> None:
        """Test a pentagon placed through the scene from seeds."""
        ngon = construct_ngon(5, ctx30)
        assert ngon.mode == MODE_CONSTRUCTED
        assert ngon.seeded == [5]
        assert ngon.passed
        assert len(ngon.point_ids) == 5

    def test_decagon(self, scene: Scene) -> None:
        """Test the decagon doubled from a pentagon."""
        ctx = scene.ctx
        pentagon = construct_ngon(5, ctx, scene)
        decagon = recipe_2n_gon(scene, pentagon)
        assert decagon.n == 10
        assert decagon.passed
        assert _close(decagon, numeric_ngon(10, ctx), ctx, "1e-12")
        assert audit(scene).passed

    def test_hexagon(self, ctx30: PrecisionContext) -> None:
        """Test 6 = 2 * 3."""
        ngon = construct_ngon(6, ctx30)
        assert ngon.n == 6
        assert ngon.passed
        assert _close(ngon, numeric_ngon(6, ctx30), ctx30, "1e-12")

    def test_fifteen(self, ctx30: PrecisionContext) -> None:
        """Test the 15-gon merged from a triangle and a pentagon."""
        ngon = construct_ngon(15, ctx30)
        assert ngon.seeded == [3, 5]
        assert ngon.passed
        assert _close(ngon, numeric_ngon(15, ctx30), ctx30, "1e-12")

    def test_merge_needs_coprime_sizes(self, scene: Scene) -> None:
        """Test that gcd(N, M) = 1 is required."""
        ctx = scene.ctx
        with pytest.raises(BezoutError):
            recipe_nm_gon(scene, numeric_ngon(3, ctx), numeric_ngon(6, ctx))

    def test_to_dict(self, ctx30: PrecisionContext) -> None:
        """Test the polygon summary."""
        data = numeric_ngon(3, ctx30).to_dict(ctx30)
        assert data["n"] == 3
        assert data["mode"] == MODE_NUMERIC
        assert len(data["vertices"]) == 3
        assert data["passed"] is True

    def test_vertices_on_curve(self, ctx30: PrecisionContext) -> None:
        """Test that constructed vertices lie on the lemniscate."""
        ngon = construct_ngon(5, ctx30)
        assert all(isinstance(v, LemniscatePoint) and v.on_curve(ctx30) for v in ngon.vertices)
