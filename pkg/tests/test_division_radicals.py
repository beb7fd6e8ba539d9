"""Tests for division_radicals module."""

from __future__ import annotations

import pytest

from lemniscate_ruler.division_radicals import (
    ABEL_QUARTIC,
    BranchSelectionError,
    ConsistencyError,
    abel_quartic,
    abel_radical_root,
    eq1_r1,
    fourth_root,
    phi_two_omega_17,
    radical_branches,
    rewritten_U,
)
from lemniscate_ruler.numerics import PrecisionContext, lemniscate_sine, omega

TOLERANCE = "1e-20"


class TestGaussianPolynomial:
    """Test the quartic and its reverse."""

    def test_degree_and_coefficients(self) -> None:
        """Test the coefficients of P."""
        assert ABEL_QUARTIC.degree == 4
        assert ABEL_QUARTIC.coefficient(4) == 1
        assert ABEL_QUARTIC.coefficient(0) == 1 + 4j

    def test_reverse(self, ctx40: PrecisionContext) -> None:
        """Test that Q(z) = z^4 P(1/z)."""
        z = ctx40.mpc("0.3", "-0.7")
        reverse = abel_quartic(reverse=True)
        assert abs(reverse.evaluate(z, ctx40) - z**4 * ABEL_QUARTIC.evaluate(1 / z, ctx40)) < ctx40.mpf(TOLERANCE)

    def test_four_roots(self, ctx40: PrecisionContext) -> None:
        """Test that polyroots returns four roots of P."""
        roots = ABEL_QUARTIC.roots(ctx40)
        assert len(roots) == 4
        for root in roots:
            assert abs(ABEL_QUARTIC.evaluate(root, ctx40)) < ctx40.mpf(TOLERANCE)


class TestRadicalRoot:
    """Test the radical solution of the quartic."""

    def test_fourth_roots(self, ctx40: PrecisionContext) -> None:
        """Test that every branch is a fourth root of 1+4i."""
        for k in range(4):
            assert abs(fourth_root(ctx40, k) ** 4 - ctx40.mpc(1, 4)) < ctx40.mpf(TOLERANCE)

    def test_root_of_quartic(self, ctx40: PrecisionContext) -> None:
        """Test |P(root)| below 1e-20 at 40 digits."""
        root = abel_radical_root(ctx40)
        assert abs(ABEL_QUARTIC.evaluate(root.value, ctx40)) < ctx40.mpf(TOLERANCE)

    def test_exactly_one_branch(self, ctx40: PrecisionContext) -> None:
        """Test that exactly one branch passes the vertex filter."""
        branches = radical_branches(ctx40)
        assert len(branches) == 4
        assert sum(branch.passed for branch in branches) == 1

    def test_branches_are_the_roots(self, ctx40: PrecisionContext) -> None:
        """Test that the four branch values are the four roots of P."""
        remaining = ABEL_QUARTIC.roots(ctx40)
        for branch in radical_branches(ctx40):
            nearest = min(remaining, key=lambda z, value=branch.value: abs(z - value))
            assert abs(nearest - branch.value) < ctx40.mpf(TOLERANCE)
            remaining.remove(nearest)
        assert remaining == []

    def test_chosen_branch_matches_filter(self, ctx40: PrecisionContext) -> None:
        """Test that the returned branch is the one that passed."""
        root = abel_radical_root(ctx40)
        passing = [branch for branch in radical_branches(ctx40) if branch.passed]
        assert passing[0].branch_k == root.branch_k

    def test_wrong_oracle_rejects_every_branch(self, ctx40: PrecisionContext) -> None:
        """Test that no branch survives a wrong vertex radius."""
        with pytest.raises(BranchSelectionError):
            abel_radical_root(ctx40, oracle=ctx40.mpf("0.5"))

    def test_rewrite_is_a_quarter(self, ctx40: PrecisionContext) -> None:
        """Test 4 U from the polar rewrite against the radical root."""
        root = abel_radical_root(ctx40).value
        assert abs(4 * rewritten_U(ctx40) - root) < ctx40.mpf(TOLERANCE)


class TestFirstVertex:
    """Test phi(2 omega/17) in closed form."""

    def test_r1_matches_oracle(self, ctx40: PrecisionContext) -> None:
        """Test r1 from W and m against the lemniscatic sine."""
        data = phi_two_omega_17(ctx40)
        oracle = lemniscate_sine(2 * omega(ctx40) / 17, ctx40)
        assert abs(data.r1 - oracle) < ctx40.mpf(TOLERANCE)

    def test_closed_forms_agree(self, ctx40: PrecisionContext) -> None:
        """Test the W/m form against the addition-law form."""
        data = phi_two_omega_17(ctx40)
        assert abs(data.r1 - data.r1_eq1) < ctx40.mpf(TOLERANCE)

    def test_addition_law_is_real(self, ctx40: PrecisionContext) -> None:
        """Test that the addition law at W returns r1 directly."""
        data = phi_two_omega_17(ctx40)
        assert abs(eq1_r1(data.W, ctx40) - data.r1) < ctx40.mpf(TOLERANCE)

    def test_addition_law_off_branch(self, ctx40: PrecisionContext) -> None:
        """Test that a W putting 1 - a^4 on the branch cut is refused."""
        with pytest.raises(ConsistencyError):
            eq1_r1(ctx40.mpc(4, 0), ctx40)

    def test_polar_data(self, ctx40: PrecisionContext) -> None:
        """Test that m and delta describe U and W squares to U."""
        mp = ctx40.mp
        data = phi_two_omega_17(ctx40)
        assert abs(data.m - abs(data.U)) < ctx40.mpf(TOLERANCE)
        assert abs(data.delta - mp.arg(data.U)) < ctx40.mpf(TOLERANCE)
        assert abs(data.W**2 - data.U) < ctx40.mpf(TOLERANCE)

    def test_to_dict(self, ctx40: PrecisionContext) -> None:
        """Test the serialized form."""
        data = phi_two_omega_17(ctx40).to_dict(ctx40)
        assert set(data) == {"U", "m", "delta", "W", "r1", "branch_k", "w_sign"}
        assert isinstance(data["r1"], str)
