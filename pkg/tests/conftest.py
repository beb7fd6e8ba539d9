"""Shared fixtures for lemniscate_ruler tests."""

from __future__ import annotations

import random

import pytest

from lemniscate_ruler.const import VERIFY_SEED
from lemniscate_ruler.kernel import Scene
from lemniscate_ruler.numerics import PrecisionContext
from lemniscate_ruler.recipes import NGon


@pytest.fixture(scope="session")
def ctx30() -> PrecisionContext:
    """Return a 30-digit precision context."""
    return PrecisionContext(30)


@pytest.fixture(scope="session")
def ctx40() -> PrecisionContext:
    """Return a 40-digit precision context."""
    return PrecisionContext(40)


@pytest.fixture
def scene(ctx30: PrecisionContext) -> Scene:
    """Return a fresh scene with the frame drawn."""
    return Scene(ctx30)


@pytest.fixture
def seeded_radii() -> list[float]:
    """Return reproducible radii inside (0, 1)."""
    rng = random.Random(VERIFY_SEED)
    return [rng.uniform(0.05, 0.95) for _ in range(10)]


@pytest.fixture(scope="session")
def seventeen_gon(ctx30: PrecisionContext) -> NGon:
    """Return the constructed 17-gon, built once per session."""
    from lemniscate_ruler.seventeen import recipe_seventeen_all

    return recipe_seventeen_all(Scene(ctx30))
