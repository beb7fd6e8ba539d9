"""Ruler-and-compass arithmetic on the lemniscate of Bernoulli."""

from __future__ import annotations

from .arc_algebra import add_arcs, constructible, double_arc, halve_arc, sub_arcs
from .kernel import Scene
from .numerics import (
    LemniscateError,
    PrecisionContext,
    arc_length,
    lemniscate_sine,
    omega,
    point_at,
)
from .recipes import NGon, construct_ngon, numeric_ngon

__version__ = "0.1.0"

__all__ = [
    "LemniscateError",
    "NGon",
    "PrecisionContext",
    "Scene",
    "add_arcs",
    "arc_length",
    "construct_ngon",
    "constructible",
    "double_arc",
    "halve_arc",
    "lemniscate_sine",
    "numeric_ngon",
    "omega",
    "point_at",
    "sub_arcs",
]
