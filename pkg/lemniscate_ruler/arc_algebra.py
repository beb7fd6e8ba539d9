"""Closed-form arc arithmetic on lemniscate radii.

Fagnano's addition law, its difference, doubling, halving through the
degree-8 factorization, the B/C quadratic whose roots are the sum and the
difference, Abel's constructibility criterion and Bezout plans for
composite polygons.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import gcd
from typing import Any

from .const import FERMAT_PRIMES
from .numerics import (
    ArcDomainError,
    ArcRangeError,
    PrecisionContext,
    Radius,
    Real,
    SingularityError,
    check_radius,
)

_LOGGER = logging.getLogger(__name__)


class BezoutError(ArcDomainError):
    """Exception raised when a Bezout plan is requested for non-coprime sizes."""


@dataclass(frozen=True)
class QuadraticCoeffs:
    """Monic quadratic X^2 + B X + C."""

    B: Real
    C: Real

    def discriminant(self) -> Real:
        """Return B^2 - 4C."""
        return self.B**2 - 4 * self.C

    def roots(self, ctx: PrecisionContext) -> tuple[Real, Real]:
        """Return both real roots in ascending order.

        Raises:
            ArcRangeError: If the discriminant is below -eps.
        """
        disc = self.discriminant()
        if disc < -ctx.eps:
            raise ArcRangeError(f"Quadratic has no real roots (discriminant {disc})")
        root = ctx.mp.sqrt(max(disc, ctx.mpf(0)))
        return (-self.B - root) / 2, (-self.B + root) / 2


@dataclass(frozen=True)
class ArcSum:
    """Radius of an arc sum plus whether the sum passed the petal tip."""

    radius: Radius
    overflow: bool


@dataclass(frozen=True)
class HalvingFactors:
    """The two quadratic factors T^2 + 2kT - 1 of the halving equation."""

    k_first: Real
    k_second: Real
    quartic: tuple[Real, Real, Real, Real, Real]

    def expanded(self) -> tuple[Real, Real, Real, Real, Real]:
        """Multiply the two factors out, highest degree first."""
        k1, k2 = self.k_first, self.k_second
        return (1, 2 * (k1 + k2), 4 * k1 * k2 - 2, -2 * (k1 + k2), 1)


@dataclass(frozen=True)
class BezoutPlan:
    """Coefficients with a*M + b*N = 1 for assembling an NM-gon."""

    N: int
    M: int
    a: int
    b: int

    def to_dict(self) -> dict[str, int]:
        """Convert to dictionary."""
        return {"N": self.N, "M": self.M, "a": self.a, "b": self.b}


def _fagnano(r: Radius, u: Radius, sign: int, ctx: PrecisionContext) -> Real:
    mp = ctx.mp
    return (r * mp.sqrt(1 - u**4) + sign * u * mp.sqrt(1 - r**4)) / (1 + r * r * u * u)


def arc_overflows(r: Any, u: Any, ctx: PrecisionContext) -> bool:
    """Return True if s(r) + s(u) exceeds omega/2.

    s(u) > omega/2 - s(r) exactly when u > sqrt((1 - r^2)/(1 + r^2)), which
    rearranges to r^2 + u^2 + r^2 u^2 > 1.
    """
    r = ctx.mpf(r)
    u = ctx.mpf(u)
    return r * r + u * u + r * r * u * u > 1 + ctx.eps


def arc_sum(r: Any, u: Any, ctx: PrecisionContext) -> ArcSum:
    """Add two arcs, reporting whether the sum folded past the petal tip.

    Raises:
        ArcDomainError: If a radius is outside [0, 1].
        ArcRangeError: If the formula leaves [0, 1] by more than eps.
    """
    r = check_radius(r, ctx)
    u = check_radius(u, ctx)
    t = _fagnano(r, u, 1, ctx)
    if t < -ctx.eps or t > 1 + ctx.eps:
        raise ArcRangeError(f"Arc sum radius {ctx.mp.nstr(t, 10)} left [0, 1]")
    overflow = arc_overflows(r, u, ctx)
    if overflow:
        _LOGGER.debug("Arc sum passed the petal tip, radius is the folded arc")
    return ArcSum(radius=min(max(t, ctx.mpf(0)), ctx.mpf(1)), overflow=overflow)


def add_arcs(r: Any, u: Any, ctx: PrecisionContext) -> Radius:
    """Return t with s(t) = s(r) + s(u), folded into the half petal."""
    return arc_sum(r, u, ctx).radius


def sub_arcs(r: Any, u: Any, ctx: PrecisionContext) -> Radius:
    """Return v with s(v) = s(r) - s(u).

    Raises:
        ArcDomainError: If s(u) > s(r), i.e. the difference is negative.
    """
    r = check_radius(r, ctx)
    u = check_radius(u, ctx)
    if u > r + ctx.eps:
        raise ArcDomainError(
            f"Cannot subtract a longer arc (u={ctx.mp.nstr(u, 10)} > r={ctx.mp.nstr(r, 10)})"
        )
    v = _fagnano(r, u, -1, ctx)
    return min(max(v, ctx.mpf(0)), ctx.mpf(1))


def double_arc(r: Any, ctx: PrecisionContext) -> Radius:
    """Return u = 2r sqrt(1 - r^4) / (1 + r^4), the radius of the doubled arc."""
    r = check_radius(r, ctx)
    return 2 * r * ctx.mp.sqrt(1 - r**4) / (1 + r**4)


def doubled_angle(r: Any, ctx: PrecisionContext) -> Real:
    """Return the signed polar angle of the point doubling a first-quadrant arc.

    From tan(phi + pi/4) = (1 - r^4) / (2 r^2); the result lies in
    [-pi/4, pi/4], negative once the doubled arc passes the petal tip.
    """
    r = check_radius(r, ctx)
    mp = ctx.mp
    if r == 0:
        return mp.pi / 4
    return mp.atan2(1 - r**4, 2 * r * r) - mp.pi / 4


def halving_factors(u: Any, theta_u: Any, ctx: PrecisionContext) -> HalvingFactors:
    """Return both quadratic factors of the halving equation at (u, theta_u).

    Raises:
        SingularityError: If cos(2 theta_u) <= eps.
        ArcDomainError: If the point is not on the curve.
    """
    mp = ctx.mp
    u = check_radius(u, ctx)
    theta = ctx.mpf(theta_u)
    cos2 = mp.cos(2 * theta)
    if cos2 <= ctx.eps:
        raise SingularityError(
            f"Halving is singular at theta={mp.nstr(theta, 10)} (cos 2theta <= eps)"
        )
    if abs(u * u - cos2) > ctx.eps:
        raise ArcDomainError(
            f"Point (u={mp.nstr(u, 10)}, theta={mp.nstr(theta, 10)}) is not on the curve"
        )
    sec2 = 1 / cos2
    tan2 = mp.tan(2 * theta)
    inv = 4 / (u * u)
    return HalvingFactors(
        k_first=sec2 + tan2,
        k_second=sec2 - tan2,
        quartic=(ctx.mpf(1), inv, ctx.mpf(2), -inv, ctx.mpf(1)),
    )


def _positive_root(k: Real, ctx: PrecisionContext) -> Real:
    """Positive root of T^2 + 2kT - 1 (the product of the roots is -1)."""
    return ctx.mp.sqrt(k * k + 1) - k


def halve_arc(u: Any, theta_u: Any, ctx: PrecisionContext) -> tuple[Radius, Radius]:
    """Halve the arc of the point (u, theta_u) on the right petal.

    Args:
        u: Radius of the point.
        theta_u: Signed polar angle, |theta_u| < pi/4.
        ctx: Working precision.

    Returns:
        The radius halving the arc of the point and the radius halving the
        complementary arc of the petal.

    Raises:
        SingularityError: If the point sits at the origin.
        ArcDomainError: If the point is not on the curve.
    """
    factors = halving_factors(u, theta_u, ctx)
    mp = ctx.mp
    first = mp.sqrt(_positive_root(factors.k_first, ctx))
    second = mp.sqrt(_positive_root(factors.k_second, ctx))
    return first, second


def sum_quadratic(r: Any, u: Any, ctx: PrecisionContext) -> QuadraticCoeffs:
    """Return X^2 + BX + C whose roots are add_arcs(r, u) and sub_arcs(r, u).

    Raises:
        ArcDomainError: If a radius is outside (0, 1).
    """
    mp = ctx.mp
    r = check_radius(r, ctx)
    u = check_radius(u, ctx)
    denom = 1 + r * r * u * u
    return QuadraticCoeffs(
        B=-2 * r * mp.sqrt(1 - u**4) / denom,
        C=(r * r - u * u) / denom,
    )


def sum_quadratic_by_angles(r: Any, u: Any, ctx: PrecisionContext) -> QuadraticCoeffs:
    """Evaluate B and C from the angles with cos 2theta = tan(alpha), cos 2phi = tan(beta).

    C = tan(alpha - beta) and B^2 = 2 sin(2 alpha) cos(2 beta) sec^2(alpha - beta),
    B taking the non-positive sign.

    Raises:
        SingularityError: If alpha - beta is within eps of +-pi/2.
    """
    mp = ctx.mp
    r = check_radius(r, ctx)
    u = check_radius(u, ctx)
    alpha = mp.atan(r * r)
    beta = mp.atan(u * u)
    cos_diff = mp.cos(alpha - beta)
    if abs(cos_diff) <= ctx.eps:
        raise SingularityError("alpha - beta is at +-pi/2, sec(alpha - beta) blows up")
    product = 2 * mp.sin(2 * alpha) * mp.cos(2 * beta)
    return QuadraticCoeffs(
        B=-mp.sqrt(max(product, ctx.mpf(0))) / abs(cos_diff),
        C=mp.tan(alpha - beta),
    )


def fermat_factorization(n: int) -> tuple[int, list[int]] | None:
    """Split n into 2^a times distinct Fermat primes.

    Returns:
        (a, primes) or None when n has any other odd factor.
    """
    if n < 1:
        raise ArcDomainError(f"Polygon size must be positive, got {n}")
    power = 0
    while n % 2 == 0:
        n //= 2
        power += 1
    primes = []
    for p in FERMAT_PRIMES:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return None
            primes.append(p)
    return (power, primes) if n == 1 else None


def constructible(n: int) -> bool:
    """Return True if the lemniscate n-gon is constructible by ruler and compass."""
    return fermat_factorization(n) is not None


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) = a*x + b*y."""
    if b == 0:
        return (a, 1, 0)
    g, x, y = ext_gcd(b, a % b)
    return (g, y, x - (a // b) * y)


def bezout_plan(N: int, M: int) -> BezoutPlan:
    """Return a, b with a*M + b*N = 1, a taken in [1, N).

    Then a arcs of 2 omega/N plus b arcs of 2 omega/M make 2 omega/(NM).

    Raises:
        BezoutError: If gcd(N, M) != 1 or a size is below 2.
    """
    if N < 2 or M < 2:
        raise BezoutError(f"Polygon sizes must be at least 2, got ({N}, {M})")
    if gcd(N, M) != 1:
        raise BezoutError(f"gcd({N}, {M}) = {gcd(N, M)}, sizes must be coprime")
    _, x, _ = ext_gcd(M, N)
    a = x % N
    b = (1 - a * M) // N
    return BezoutPlan(N=N, M=M, a=a, b=b)
