"""Tests for constants module."""

from __future__ import annotations

from lemniscate_ruler.const import (
    ARC_OPERATIONS,
    CONSTRUCTED_FACTORS,
    DEFAULT_OUTPUT_FORMAT,
    DEFAULT_PRECISION,
    DEFAULT_SVG_SIZE,
    FERMAT_PRIMES,
    GADGET_FRAME,
    GADGETS,
    MAX_PRECISION,
    MAX_SVG_SIZE,
    MIN_PRECISION,
    MIN_SVG_SIZE,
    OUTPUT_FORMATS,
    PRIMITIVE_STEPS,
    SUITES,
    TRACEABLE_RECIPES,
    TRACE_VERSION,
)


class TestPrecisionLimits:
    """Test precision constants."""

    def test_default_in_range(self) -> None:
        """Test that the default precision is allowed."""
        assert MIN_PRECISION <= DEFAULT_PRECISION <= MAX_PRECISION

    def test_default_gives_small_eps(self) -> None:
        """Test that the default leaves room for a 1e-9 polygon check."""
        assert DEFAULT_PRECISION // 2 > 9


class TestNames:
    """Test name tables."""

    def test_primitive_steps(self) -> None:
        """Test that exactly four step kinds exist."""
        assert len(PRIMITIVE_STEPS) == 4
        assert len(set(PRIMITIVE_STEPS)) == 4

    def test_gadgets_unique(self) -> None:
        """Test that gadget names are unique and include the frame."""
        assert len(set(GADGETS)) == len(GADGETS)
        assert GADGET_FRAME in GADGETS

    def test_fermat_primes(self) -> None:
        """Test that every constructed factor is a Fermat prime."""
        assert FERMAT_PRIMES == (3, 5, 17, 257, 65537)
        assert set(CONSTRUCTED_FACTORS) <= set(FERMAT_PRIMES)

    def test_commands(self) -> None:
        """Test the command line choices."""
        assert ARC_OPERATIONS == ["add", "sub", "double", "halve"]
        assert SUITES == ["numerics", "arcs", "radicals", "seventeen"]
        assert "seventeen_all" in TRACEABLE_RECIPES
        assert DEFAULT_OUTPUT_FORMAT in OUTPUT_FORMATS

    def test_trace_version(self) -> None:
        """Test that traces are versioned."""
        assert TRACE_VERSION.endswith("/1")


class TestSvgLimits:
    """Test figure size constants."""

    def test_default_in_range(self) -> None:
        """Test that the default size is allowed."""
        assert MIN_SVG_SIZE <= DEFAULT_SVG_SIZE <= MAX_SVG_SIZE
