"""Oracle suites cross-checking the arithmetic, radicals and constructions."""

from __future__ import annotations

import logging
import random
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

from .arc_algebra import (
    add_arcs,
    arc_overflows,
    double_arc,
    halve_arc,
    sub_arcs,
    sum_quadratic,
    sum_quadratic_by_angles,
)
from .const import (
    ATTR_CHECKS,
    ATTR_MAX_ERROR,
    ATTR_PASSED,
    ATTR_PRECISION,
    ATTR_SUITE,
    OMEGA_PRINTED,
    OMEGA_PRINTED_TOLERANCE,
    POLYGON_TOLERANCE,
    SUITE_ARCS,
    SUITE_NUMERICS,
    SUITE_RADICALS,
    SUITE_SEVENTEEN,
    SUITES,
    VERIFY_ARC_PAIRS,
    VERIFY_SEED,
)
from .diagnostics import audit
from .division_radicals import (
    ABEL_QUARTIC,
    abel_radical_root,
    phi_two_omega_17,
    radical_branches,
    rewritten_U,
)
from .kernel import Scene
from .numerics import (
    ArcDomainError,
    PrecisionContext,
    Real,
    arc_length,
    lemniscate_sine,
    omega,
    omega_by_quadrature,
    point_at,
)
from .recipes import CertificateEntry, certify, numeric_ngon

_LOGGER = logging.getLogger(__name__)


@dataclass
class SuiteResult:
    """Checks run by one verification suite."""

    suite: str
    precision: int
    checks: list[CertificateEntry] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """Return True if every check passed."""
        return bool(self.checks) and all(check.passed for check in self.checks)

    @property
    def max_error(self) -> Real | None:
        """Return the largest error over the checks."""
        if not self.checks:
            return None
        return max(check.error for check in self.checks)

    def failures(self) -> list[CertificateEntry]:
        """Return the checks that failed."""
        return [check for check in self.checks if not check.passed]

    def to_dict(self, ctx: PrecisionContext) -> dict[str, Any]:
        """Convert to dictionary."""
        max_error = self.max_error
        return {
            ATTR_SUITE: self.suite,
            ATTR_PRECISION: self.precision,
            ATTR_PASSED: self.passed,
            ATTR_MAX_ERROR: None if max_error is None else ctx.mp.nstr(max_error, 5),
            ATTR_CHECKS: [check.to_dict(ctx) for check in self.checks],
        }


def suite_numerics(ctx: PrecisionContext) -> list[CertificateEntry]:
    """omega against its tabulated value and its quadrature, phi at landmarks."""
    w = omega(ctx)
    checks = [
        certify("omega vs 2.622057", OMEGA_PRINTED, w, ctx, OMEGA_PRINTED_TOLERANCE),
        certify("omega: agm vs quadrature", omega_by_quadrature(ctx), w, ctx),
        certify("phi(0)", 0, lemniscate_sine(0, ctx), ctx),
        certify("phi(omega/2)", 1, lemniscate_sine(w / 2, ctx), ctx),
        certify("phi(omega)", 0, lemniscate_sine(w, ctx), ctx),
        certify("phi(3 omega/2)", -1, lemniscate_sine(3 * w / 2, ctx), ctx),
    ]
    for divisor in (3, 5, 7, 17):
        s = w / divisor
        r = lemniscate_sine(s, ctx)
        checks.append(certify(f"s(phi(omega/{divisor}))", s, arc_length(r, ctx), ctx))
        point = point_at(s * 3, ctx)
        checks.append(certify(f"point at 3 omega/{divisor} on the curve", 0, point.residual(ctx), ctx))
    return checks


def _random_arcs(rng: random.Random, ctx: PrecisionContext) -> tuple[Real, Real]:
    half = omega(ctx) / 2
    # keep away from 0, where halving is singular
    a = half * ctx.mpf(rng.uniform(0.02, 0.98))
    b = half * ctx.mpf(rng.uniform(0.02, 0.98))
    return (a, b) if a >= b else (b, a)


def _halving_angle(doubled: Real, arc: Real, ctx: PrecisionContext) -> Real:
    theta = ctx.mp.acos(min(doubled * doubled, ctx.mpf(1))) / 2
    return theta if arc <= omega(ctx) / 2 else -theta


def suite_arcs(
    ctx: PrecisionContext,
    pairs: int = VERIFY_ARC_PAIRS,
    seed: int = VERIFY_SEED,
) -> list[CertificateEntry]:
    """Addition law, inverse pairs, halving/doubling and the sum quadratic on random arcs.

    Arcs a >= b are drawn in (0, omega/2); radii come from the oracle.
    """
    rng = random.Random(seed)
    checks = []
    for index in range(pairs):
        a, b = _random_arcs(rng, ctx)
        r = lemniscate_sine(a, ctx)
        u = lemniscate_sine(b, ctx)
        t = add_arcs(r, u, ctx)
        v = sub_arcs(r, u, ctx)
        checks.append(certify(f"pair {index}: add", lemniscate_sine(a + b, ctx), t, ctx))
        checks.append(certify(f"pair {index}: sub", lemniscate_sine(a - b, ctx), v, ctx))
        if not arc_overflows(r, u, ctx):
            checks.append(certify(f"pair {index}: (r + u) - u", r, sub_arcs(t, u, ctx), ctx))

        doubled = double_arc(r, ctx)
        checks.append(certify(f"pair {index}: double", lemniscate_sine(2 * a, ctx), doubled, ctx))
        half, _ = halve_arc(doubled, _halving_angle(doubled, 2 * a, ctx), ctx)
        checks.append(certify(f"pair {index}: halve(double)", r, half, ctx))

        low, high = sum_quadratic(r, u, ctx).roots(ctx)
        checks.append(certify(f"pair {index}: quadratic high root", t, high, ctx))
        checks.append(certify(f"pair {index}: quadratic low root", v, low, ctx))
        direct = sum_quadratic(r, u, ctx)
        by_angles = sum_quadratic_by_angles(r, u, ctx)
        checks.append(certify(f"pair {index}: B by angles", direct.B, by_angles.B, ctx))
        checks.append(certify(f"pair {index}: C by angles", direct.C, by_angles.C, ctx))
    return checks


def suite_radicals(ctx: PrecisionContext) -> list[CertificateEntry]:
    """The radical root of the quartic, its branch, its rewrite and the vertex radius."""
    mp = ctx.mp
    root = abel_radical_root(ctx).value
    checks = [certify("|P(radical root)|", 0, abs(ABEL_QUARTIC.evaluate(root, ctx)), ctx)]

    branches = radical_branches(ctx)
    passing = sum(1 for branch in branches if branch.passed)
    checks.append(certify("branches passing the filter", 1, passing, ctx, 0))

    # each branch value is a root of P and together they exhaust the roots
    remaining = ABEL_QUARTIC.roots(ctx)
    for branch in branches:
        nearest = min(remaining, key=lambda z, value=branch.value: abs(z - value))
        remaining.remove(nearest)
        checks.append(certify(f"branch {branch.branch_k} vs roots of P", 0, abs(nearest - branch.value), ctx))

    quarter = rewritten_U(ctx)
    checks.append(certify("4 U rewritten vs radical root", 0, abs(4 * quarter - root), ctx))

    data = phi_two_omega_17(ctx)
    oracle = lemniscate_sine(2 * omega(ctx) / 17, ctx)
    checks.append(certify("r1 from W and m", oracle, data.r1, ctx))
    checks.append(certify("r1 by the addition law", oracle, data.r1_eq1, ctx))
    _LOGGER.debug("Radical root %s, W sign %d", mp.nstr(root, 15), data.w_sign)
    return checks


def suite_seventeen(ctx: PrecisionContext) -> list[CertificateEntry]:
    """The constructed 17-gon: its certificate, its audit and the numeric polygon."""
    from .seventeen import recipe_seventeen_all

    scene = Scene(ctx)
    ngon = recipe_seventeen_all(scene)
    checks = list(ngon.certificate)
    report = audit(scene)
    checks.append(certify("audit violations", 0, len(report.violations), ctx, 0))

    reference = numeric_ngon(17, ctx)
    for k, (built, expected) in enumerate(zip(ngon.vertices, reference.vertices, strict=True)):
        bx, by = built.cartesian(ctx)
        ex, ey = expected.cartesian(ctx)
        distance = ctx.mp.hypot(bx - ex, by - ey)
        checks.append(certify(f"V{k} vs numeric polygon", 0, distance, ctx, POLYGON_TOLERANCE))
    return checks


SUITE_RUNNERS: dict[str, Callable[[PrecisionContext], list[CertificateEntry]]] = {
    SUITE_NUMERICS: suite_numerics,
    SUITE_ARCS: suite_arcs,
    SUITE_RADICALS: suite_radicals,
    SUITE_SEVENTEEN: suite_seventeen,
}


def run_suite(name: str, ctx: PrecisionContext) -> SuiteResult:
    """Run one verification suite.

    Raises:
        ArcDomainError: For an unknown suite name.
    """
    runner = SUITE_RUNNERS.get(name)
    if runner is None:
        raise ArcDomainError(f"Unknown suite {name!r}, expected one of {', '.join(SUITES)}")
    result = SuiteResult(suite=name, precision=ctx.digits, checks=runner(ctx))
    if result.passed:
        _LOGGER.info("Suite %s passed %d checks", name, len(result.checks))
    else:
        _LOGGER.warning("Suite %s failed %d of %d checks", name, len(result.failures()), len(result.checks))
    return result
