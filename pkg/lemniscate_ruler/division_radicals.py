"""Radical expressions for the division of the lemniscate into 17 parts.

phi^4(omega/(1+4i)) is a root of Abel's quartic P(z) over the Gaussian
integers. Its radical form is a polynomial in a single fourth root rho of
1+4i; the four choices rho*i^k give the four roots of P. The branch is
fixed by requiring the downstream vertex radius phi(2 omega/17) to come out
right.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

from .numerics import (
    Complex,
    LemniscateError,
    PrecisionContext,
    Real,
    lemniscate_sine,
    omega,
)

_LOGGER = logging.getLogger(__name__)


class BranchSelectionError(LemniscateError):
    """Exception raised when no single fourth-root branch passes the filters."""


class ConsistencyError(LemniscateError):
    """Exception raised when two closed forms for the same value disagree."""


@dataclass(frozen=True)
class GaussianPolynomial:
    """Polynomial with Gaussian-integer coefficients, highest degree first."""

    coefficients: tuple[complex, ...]

    @property
    def degree(self) -> int:
        """Return the degree."""
        return len(self.coefficients) - 1

    def coefficient(self, power: int) -> complex:
        """Return the coefficient of z**power."""
        return self.coefficients[self.degree - power]

    def reversed(self) -> GaussianPolynomial:
        """Return z^n P(1/z)."""
        return GaussianPolynomial(tuple(reversed(self.coefficients)))

    def _mp_coefficients(self, ctx: PrecisionContext) -> list[Complex]:
        return [ctx.mpc(c.real, c.imag) for c in self.coefficients]

    def evaluate(self, z: Any, ctx: PrecisionContext) -> Complex:
        """Evaluate the polynomial at z."""
        return ctx.mp.polyval(self._mp_coefficients(ctx), ctx.mp.mpmathify(z))

    def roots(self, ctx: PrecisionContext) -> list[Complex]:
        """Return all complex roots."""
        return list(
            ctx.mp.polyroots(self._mp_coefficients(ctx), maxsteps=200, extraprec=20)
        )


ABEL_QUARTIC = GaussianPolynomial((1, 12 - 20j, -(10 - 28j), -(20 + 12j), 1 + 4j))


@dataclass(frozen=True)
class RadicalValue:
    """A radical value with the fourth-root branch rho*i^k used to produce it."""

    value: Complex
    branch_k: int
    rho: Complex


@dataclass(frozen=True)
class BranchCandidate:
    """Outcome of the branch filter for one fourth root."""

    branch_k: int
    value: Complex
    residual: Real
    r1: Real
    passed: bool


@dataclass(frozen=True)
class SeventeenData:
    """U, its polar data, its square root W and the first vertex radius r1."""

    U: Complex
    m: Real
    delta: Real
    W: Complex
    r1: Real
    branch_k: int = 0
    w_sign: int = -1
    r1_eq1: Real | None = None
    oracle_error: Real | None = field(default=None, compare=False)

    def to_dict(self, ctx: PrecisionContext) -> dict[str, Any]:
        """Convert to dictionary of decimal strings."""
        return {
            "U": [ctx.to_str(self.U.real), ctx.to_str(self.U.imag)],
            "m": ctx.to_str(self.m),
            "delta": ctx.to_str(self.delta),
            "W": [ctx.to_str(self.W.real), ctx.to_str(self.W.imag)],
            "r1": ctx.to_str(self.r1),
            "branch_k": self.branch_k,
            "w_sign": self.w_sign,
        }


def abel_quartic(reverse: bool = False) -> GaussianPolynomial:
    """Return P(z), or Q(z) = z^4 P(1/z) when ``reverse`` is set."""
    return ABEL_QUARTIC.reversed() if reverse else ABEL_QUARTIC


def fourth_root(ctx: PrecisionContext, k: int = 0) -> Complex:
    """Return the fourth root rho*i^k of 1+4i, rho the principal one."""
    mp = ctx.mp
    rho = mp.root(ctx.mpc(1, 4), 4)
    return rho * ctx.mpc(0, 1) ** k


def radical_expression(rho: Complex, ctx: PrecisionContext) -> Complex:
    """Evaluate (-3+5i) - 3i rho^2 + (4+i) rho + (-2+i) rho^3."""
    return (
        ctx.mpc(-3, 5)
        - ctx.mpc(0, 3) * rho**2
        + ctx.mpc(4, 1) * rho
        + ctx.mpc(-2, 1) * rho**3
    )


def square_root_W(U: Complex, ctx: PrecisionContext, sign: int = -1) -> Complex:
    """Return sign * sqrt(|U|) at angle arg(U)/2, arg taken in (-pi, pi]."""
    mp = ctx.mp
    m = abs(U)
    half = mp.arg(U) / 2
    return sign * mp.sqrt(m) * ctx.mpc(mp.cos(half), mp.sin(half))


def r1_from_W(W: Complex, m: Real, ctx: PrecisionContext) -> Real:
    """Return 2 Re(sqrt(W - m conj(W))) / (1 + m)."""
    mp = ctx.mp
    return 2 * mp.re(mp.sqrt(W - m * mp.conj(W))) / (1 + m)


def eq1_r1(W: Complex, ctx: PrecisionContext) -> Real:
    """Evaluate the addition law at phi(omega/(1+4i)) and its conjugate.

    a = sqrt(W) and b = conj(a); the sign of the square root only flips the
    sign of the result, which is taken positive.

    Raises:
        ConsistencyError: If the value has an imaginary part above eps.
    """
    mp = ctx.mp
    a = mp.sqrt(W)
    b = mp.conj(a)
    value = (a * mp.sqrt(1 - b**4) + b * mp.sqrt(1 - a**4)) / (1 + a * a * b * b)
    if abs(mp.im(value)) > ctx.eps * max(1, abs(value)):
        raise ConsistencyError(
            f"Addition law at W gave a non-real value {mp.nstr(value, 10)}"
        )
    return abs(mp.re(value))


def _r1_oracle(ctx: PrecisionContext) -> Real:
    return lemniscate_sine(2 * omega(ctx) / 17, ctx)


def radical_branches(
    ctx: PrecisionContext, oracle: Real | None = None
) -> list[BranchCandidate]:
    """Evaluate the radical expression on all four fourth roots and filter them.

    A branch passes when its value is a root of P within eps and the vertex
    radius it produces is real, inside (0, 1) and equal to phi(2 omega/17).
    """
    if oracle is None:
        oracle = _r1_oracle(ctx)
    candidates = []
    for k in range(4):
        value = radical_expression(fourth_root(ctx, k), ctx)
        residual = abs(ABEL_QUARTIC.evaluate(value, ctx))
        m = abs(value)
        r1 = r1_from_W(square_root_W(value, ctx), m, ctx)
        passed = (
            residual <= ctx.eps
            and 0 < r1 < 1
            and abs(r1 - oracle) <= ctx.eps
        )
        _LOGGER.debug(
            "Branch k=%d: |P|=%s r1=%s passed=%s",
            k,
            ctx.mp.nstr(residual, 5),
            ctx.mp.nstr(r1, 12),
            passed,
        )
        candidates.append(
            BranchCandidate(branch_k=k, value=value, residual=residual, r1=r1, passed=passed)
        )
    return candidates


def abel_radical_root(ctx: PrecisionContext, oracle: Real | None = None) -> RadicalValue:
    """Return phi^4(omega/(1+4i)) with its fourth-root branch.

    Raises:
        BranchSelectionError: If not exactly one branch passes the filters.
    """
    candidates = radical_branches(ctx, oracle)
    passing = [c for c in candidates if c.passed]
    if len(passing) != 1:
        raise BranchSelectionError(
            f"Expected exactly one valid fourth-root branch, found {len(passing)}"
        )
    chosen = passing[0]
    return RadicalValue(
        value=chosen.value, branch_k=chosen.branch_k, rho=fourth_root(ctx, chosen.branch_k)
    )


def polar(modulus: Any, angle: Any, ctx: PrecisionContext) -> Complex:
    """Return the complex number of the given modulus and argument."""
    mp = ctx.mp
    return modulus * ctx.mpc(mp.cos(angle), mp.sin(angle))


def rewritten_U(ctx: PrecisionContext) -> Complex:
    """Return one quarter of phi^4(omega/(1+4i)) from the polar rewrite.

    P + Q* + (3/2) sqrt|Q| at (phi/2 - pi/2)
      + 8 (|P| at (theta + 3phi/4) - (1/2) sqrt|Q| at (3pi/2 - 3phi/4)) r^3
    with P = -1/2 + i/4, Q = 1/4 + i, Q* = -1/4 + i, theta = arg P,
    phi = arg Q and r = sqrt(sqrt|Q| / 2).
    """
    mp = ctx.mp
    p = ctx.mpc(ctx.mpf(-1) / 2, ctx.mpf(1) / 4)
    q = ctx.mpc(ctx.mpf(1) / 4, 1)
    q_star = ctx.mpc(ctx.mpf(-1) / 4, 1)
    theta = mp.arg(p)
    phi = mp.arg(q)
    root_q = mp.sqrt(abs(q))
    r = mp.sqrt(root_q / 2)
    return (
        p
        + q_star
        + polar(3 * root_q / 2, phi / 2 - mp.pi / 2, ctx)
        + 8
        * (
            polar(abs(p), theta + 3 * phi / 4, ctx)
            - polar(root_q / 2, 3 * mp.pi / 2 - 3 * phi / 4, ctx)
        )
        * r**3
    )


def phi_two_omega_17(ctx: PrecisionContext) -> SeventeenData:
    """Return U, m, delta, W and r1 = phi(2 omega/17).

    Raises:
        ConsistencyError: If the W/m formula, the addition-law form and the
            oracle do not agree within eps.
    """
    mp = ctx.mp
    oracle = _r1_oracle(ctx)
    radical = abel_radical_root(ctx, oracle)
    U = radical.value
    m = abs(U)
    delta = mp.arg(U)

    sign = -1
    W = square_root_W(U, ctx, sign)
    r1 = r1_from_W(W, m, ctx)
    if abs(r1 - oracle) > ctx.eps:
        _LOGGER.warning(
            "W = -sqrt(m) at delta/2 missed the oracle by %s, trying +sqrt(m)",
            mp.nstr(abs(r1 - oracle), 5),
        )
        sign = 1
        W = square_root_W(U, ctx, sign)
        r1 = r1_from_W(W, m, ctx)

    r1_eq1 = eq1_r1(W, ctx)
    if abs(r1 - r1_eq1) > ctx.eps or abs(r1 - oracle) > ctx.eps:
        raise ConsistencyError(
            f"phi(2omega/17) forms disagree: W/m={mp.nstr(r1, 15)}, "
            f"addition law={mp.nstr(r1_eq1, 15)}, oracle={mp.nstr(oracle, 15)}"
        )
    return SeventeenData(
        U=U,
        m=m,
        delta=delta,
        W=W,
        r1=r1,
        branch_k=radical.branch_k,
        w_sign=sign,
        r1_eq1=r1_eq1,
        oracle_error=abs(r1 - oracle),
    )
