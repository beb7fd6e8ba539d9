"""Arbitrary-precision lemniscate arc length, omega and the lemniscatic sine.

Every other module is certified against the functions in here, so nothing
in this module depends on the construction kernel or on the closed forms.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any, TypeAlias

from mpmath.ctx_mp import MPContext

from .const import (
    DEFAULT_PRECISION,
    GUARD_DIGITS,
    MAX_PRECISION,
    MIN_PRECISION,
    NEWTON_MAX_ITERATIONS,
    QUAD_MAX_REFINEMENTS,
    QUAD_SPLIT,
    SERIAL_GUARD_DIGITS,
    SERIES_SEED_LIMIT,
)

_LOGGER = logging.getLogger(__name__)

# An mpf (or mpc) owned by the MPContext of a PrecisionContext.
Real: TypeAlias = Any
Complex: TypeAlias = Any
Radius: TypeAlias = Real
ArcParam: TypeAlias = Real


class LemniscateError(Exception):
    """Base exception for lemniscate toolkit errors."""


class ArcDomainError(LemniscateError, ValueError):
    """Exception raised when an input lies outside the domain of an operation."""


class ArcRangeError(LemniscateError):
    """Exception raised when a closed form leaves its admissible range."""


class SingularityError(LemniscateError):
    """Exception raised when a formula hits a pole (sec/tan blow-up)."""


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision shared by every numeric operation.

    Each context owns a private mpmath context, so values created through it
    keep their precision in plain arithmetic and contexts of different
    precision never interfere.
    """

    digits: int = DEFAULT_PRECISION
    mp: MPContext = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        """Validate the digit count and build the mpmath context."""
        if not isinstance(self.digits, int) or isinstance(self.digits, bool):
            raise ArcDomainError(f"Precision must be an integer, got {self.digits!r}")
        if not MIN_PRECISION <= self.digits <= MAX_PRECISION:
            raise ArcDomainError(
                f"Precision {self.digits} outside [{MIN_PRECISION}, {MAX_PRECISION}]"
            )
        mp = MPContext()
        mp.dps = self.digits
        object.__setattr__(self, "mp", mp)

    @property
    def eps(self) -> Real:
        """Return the coincidence tolerance 10^(-floor(digits/2))."""
        return self.mp.mpf(10) ** (-(self.digits // 2))

    @property
    def quad_tol(self) -> Real:
        """Return the tolerance used to stop quadrature and Newton refinement."""
        return self.mp.mpf(10) ** (-(self.digits - GUARD_DIGITS))

    @property
    def serial_digits(self) -> int:
        """Return the number of digits written when serializing values."""
        return self.digits + SERIAL_GUARD_DIGITS

    def mpf(self, value: Any) -> Real:
        """Convert a value (int, str, float, mpf) to a real of this context."""
        return self.mp.mpf(value)

    def mpc(self, real: Any, imag: Any = 0) -> Complex:
        """Build a complex value of this context."""
        return self.mp.mpc(real, imag)

    def to_str(self, value: Any) -> str:
        """Format a real as a decimal string at full working precision."""
        return self.mp.nstr(self.mp.mpf(value), self.serial_digits)


class Petal(StrEnum):
    """The two petals of the lemniscate."""

    RIGHT = "right"
    LEFT = "left"


@dataclass(frozen=True)
class LemniscatePoint:
    """Polar point (r, theta) on r^2 = cos(2 theta) with its petal tag."""

    r: Radius
    theta: Real
    petal: Petal

    @classmethod
    def from_cartesian(cls, x: Real, y: Real, ctx: PrecisionContext) -> LemniscatePoint:
        """Build a point from cartesian coordinates.

        Points within eps of the origin map to the origin with theta = pi/4,
        the same convention as point_at(0).
        """
        x = ctx.mpf(x)
        y = ctx.mpf(y)
        r = ctx.mp.hypot(x, y)
        if r <= ctx.eps:
            # the origin sits on the curve only along the tangents theta = +-pi/4
            return cls(r=ctx.mpf(0), theta=ctx.mp.pi / 4, petal=Petal.RIGHT)
        theta = ctx.mp.atan2(y, x)
        return cls(r=r, theta=theta, petal=Petal.RIGHT if x >= 0 else Petal.LEFT)

    def cartesian(self, ctx: PrecisionContext) -> tuple[Real, Real]:
        """Return the (x, y) coordinates."""
        return self.r * ctx.mp.cos(self.theta), self.r * ctx.mp.sin(self.theta)

    def residual(self, ctx: PrecisionContext) -> Real:
        """Return |r^2 - cos(2 theta)|, zero for points on the curve."""
        return abs(self.r**2 - ctx.mp.cos(2 * self.theta))

    def on_curve(self, ctx: PrecisionContext) -> bool:
        """Return True if the point satisfies the curve equation within eps."""
        return self.residual(ctx) <= ctx.eps and ctx.mp.cos(2 * self.theta) >= -ctx.eps


def omega(ctx: PrecisionContext) -> Real:
    """Return the petal length omega = pi / agm(1, sqrt(2))."""
    mp = ctx.mp
    return mp.pi / mp.agm(1, mp.sqrt(2))


def omega_by_quadrature(ctx: PrecisionContext) -> Real:
    """Return omega as twice the arc length up to the petal tip."""
    return 2 * arc_length(1, ctx)


def _integrate(ctx: PrecisionContext, func: Any, a: Real, b: Real) -> Real:
    """Integrate with Gauss-Legendre panels, doubling them until stable."""
    mp = ctx.mp
    panels = 1
    previous = None
    value = ctx.mpf(0)
    for _ in range(QUAD_MAX_REFINEMENTS):
        nodes = mp.linspace(a, b, panels + 1)
        value = mp.quad(func, nodes, method="gauss-legendre")
        if previous is not None and abs(value - previous) <= ctx.quad_tol * max(
            1, abs(value)
        ):
            return value
        previous = value
        panels *= 2
    _LOGGER.warning(
        "Quadrature on [%s, %s] did not settle after %d refinements",
        mp.nstr(a, 8),
        mp.nstr(b, 8),
        QUAD_MAX_REFINEMENTS,
    )
    return value


def check_radius(r: Any, ctx: PrecisionContext) -> Radius:
    """Convert and validate a radius, clamping eps-small excursions."""
    r = ctx.mpf(r)
    if r < -ctx.eps or r > 1 + ctx.eps:
        raise ArcDomainError(f"Radius {ctx.mp.nstr(r, 10)} outside [0, 1]")
    return min(max(r, ctx.mpf(0)), ctx.mpf(1))


def arc_length(r: Any, ctx: PrecisionContext) -> ArcParam:
    """Return s(r), the arc length from the origin to radius r.

    The integrand 1/sqrt(1 - x^4) is integrated directly up to the split
    point; beyond it the substitution x = 1 - t^2 removes the endpoint
    singularity.

    Args:
        r: Radius in [0, 1].
        ctx: Working precision.

    Returns:
        The arc length in [0, omega/2].

    Raises:
        ArcDomainError: If r is outside [0, 1].
    """
    r = check_radius(r, ctx)
    if r == 0:
        return ctx.mpf(0)
    mp = ctx.mp
    split = ctx.mpf(QUAD_SPLIT)

    def integrand(x: Real) -> Real:
        return 1 / mp.sqrt(1 - x**4)

    if r <= split:
        return _integrate(ctx, integrand, ctx.mpf(0), r)

    def tail(t: Real) -> Real:
        t2 = t * t
        return 2 / mp.sqrt((2 - t2) * (1 + (1 - t2) ** 2))

    head = _integrate(ctx, integrand, ctx.mpf(0), split)
    return head + _integrate(ctx, tail, mp.sqrt(1 - r), mp.sqrt(1 - split))


def canonical_arc(s: Any, ctx: PrecisionContext) -> ArcParam:
    """Reduce an arc parameter into [0, 2 omega)."""
    full = 2 * omega(ctx)
    s = ctx.mp.fmod(ctx.mpf(s), full)
    if s < 0:
        s += full
    if s >= full:
        s -= full
    return s


def fold_arc(s: Any, ctx: PrecisionContext) -> ArcParam:
    """Return the half-petal representative of s in [0, omega/2]."""
    w = omega(ctx)
    s = ctx.mp.fmod(canonical_arc(s, ctx), w)
    return w - s if s > w / 2 else s


def _series_sine(s: Real) -> Real:
    return s - s**5 / 10


def _invert_half_petal(s: Real, ctx: PrecisionContext) -> Radius:
    """Solve arc_length(r) = s for s in [0, omega/2]."""
    mp = ctx.mp
    half = omega(ctx) / 2
    if s <= 0:
        return ctx.mpf(0)
    if half - s <= 16 * mp.eps * half:
        return ctx.mpf(1)

    if s < ctx.mpf(SERIES_SEED_LIMIT):
        r = _series_sine(s)
    else:
        # complement identity: phi(omega/2 - h) = sqrt((1 - phi(h)^2)/(1 + phi(h)^2))
        p = _series_sine(half - s)
        r = mp.sqrt((1 - p * p) / (1 + p * p))

    lo, hi = ctx.mpf(0), ctx.mpf(1)
    r = min(max(r, lo), hi)
    for iteration in range(NEWTON_MAX_ITERATIONS):
        residual = arc_length(r, ctx) - s
        if residual > 0:
            hi = r
        else:
            lo = r
        candidate = r - residual * mp.sqrt(1 - r**4)
        if not lo < candidate < hi:
            candidate = (lo + hi) / 2
        if abs(candidate - r) <= ctx.quad_tol:
            _LOGGER.debug("Lemniscatic sine converged after %d steps", iteration + 1)
            return candidate
        r = candidate
    _LOGGER.warning("Lemniscatic sine hit the iteration cap at s=%s", mp.nstr(s, 10))
    return r


def lemniscate_sine(s: Any, ctx: PrecisionContext) -> Real:
    """Return phi(s), the inverse of the arc-length function.

    On [0, omega] the value is the radius of the right-petal point at arc s;
    on [omega, 2 omega) it is minus the radius of the left-petal point, so
    phi(s + omega) = -phi(s).
    """
    w = omega(ctx)
    s = canonical_arc(s, ctx)
    sign = 1
    if s >= w:
        s -= w
        sign = -1
    if s > w / 2:
        s = w - s
    return sign * _invert_half_petal(s, ctx)


def point_at(s: Any, ctx: PrecisionContext) -> LemniscatePoint:
    """Return the point at curvilinear distance s from the origin.

    The right petal is traversed first, through the first quadrant and back
    through the fourth; the left petal follows through the second and third.

    The origin is returned with r = 0 on a tangent direction, theta = pi/4 at
    s = 0 and theta = 3 pi/4 at s = omega, so r^2 = cos(2 theta) holds there.
    """
    mp = ctx.mp
    w = omega(ctx)
    s = canonical_arc(s, ctx)
    r = abs(lemniscate_sine(s, ctx))
    half_angle = mp.acos(min(r * r, ctx.mpf(1))) / 2
    if s < w / 2:
        return LemniscatePoint(r=r, theta=half_angle, petal=Petal.RIGHT)
    if s < w:
        return LemniscatePoint(r=r, theta=-half_angle, petal=Petal.RIGHT)
    if s < 3 * w / 2:
        return LemniscatePoint(r=r, theta=mp.pi - half_angle, petal=Petal.LEFT)
    theta = mp.pi + half_angle
    if theta > mp.pi:
        theta -= 2 * mp.pi
    return LemniscatePoint(r=r, theta=theta, petal=Petal.LEFT)


def arc_of_point(
    point: LemniscatePoint,
    ctx: PrecisionContext,
    expected: Any | None = None,
) -> ArcParam:
    """Return the arc parameter of a point on the curve.

    The origin is a double point (s = 0 and s = omega); it resolves to the
    candidate closest to ``expected`` when one is given.
    """
    mp = ctx.mp
    w = omega(ctx)
    if point.r <= ctx.eps:
        if expected is None:
            return ctx.mpf(0)
        target = canonical_arc(expected, ctx)
        return min(
            (ctx.mpf(0), w, 2 * w),
            key=lambda c: abs(c - target),
        ) % (2 * w)
    if point.r * point.r > ctx.mpf(1) / 2:
        # near the tip phi(omega/2 - a) = |tan theta| is better conditioned than r
        a = w / 2 - arc_length(min(abs(mp.tan(point.theta)), ctx.mpf(1)), ctx)
    else:
        a = arc_length(point.r, ctx)
    theta = mp.atan2(mp.sin(point.theta), mp.cos(point.theta))
    if point.petal is Petal.RIGHT:
        return a if theta >= 0 else w - a
    if theta >= 0:
        return w + a
    return 2 * w - a
