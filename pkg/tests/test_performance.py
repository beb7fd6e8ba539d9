"""Tests for performance requirements."""

from __future__ import annotations

import time

import pytest

from lemniscate_ruler.kernel import Scene
from lemniscate_ruler.numerics import PrecisionContext, omega
from lemniscate_ruler.seventeen import recipe_seventeen_all


class TestTiming:
    """Test timing requirements."""

    def test_omega_under_1s(self) -> None:
        """Test that omega at 40 digits takes under a second."""
        start_time = time.monotonic()
        omega(PrecisionContext(40))
        assert time.monotonic() - start_time < 1.0

    @pytest.mark.slow
    def test_seventeen_gon_under_30s(self) -> None:
        """Test that the 17-gon is constructed in under 30 seconds."""
        start_time = time.monotonic()
        ngon = recipe_seventeen_all(Scene(PrecisionContext(30)))
        elapsed = time.monotonic() - start_time

        assert ngon.passed
        assert elapsed < 30.0
