"""Versioned JSON traces of constructions and their replay."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

import voluptuous as vol

from .const import (
    ATTR_CERTIFICATE,
    ATTR_COORDINATES,
    ATTR_GADGET,
    ATTR_INPUTS,
    ATTR_OP,
    ATTR_OUTPUTS,
    ATTR_PRECISION,
    ATTR_STEPS,
    ATTR_VERSION,
    MAX_PRECISION,
    MIN_PRECISION,
    PRIMITIVE_STEPS,
    RECIPE_ADD_SUB,
    RECIPE_DOUBLE,
    RECIPE_HALVE,
    RECIPE_SEVENTEEN_ALL,
    RECIPE_SEVENTEEN_U,
    RECIPE_SEVENTEEN_V1,
    STEP_GIVEN,
    TRACE_VERSION,
    TRACEABLE_RECIPES,
)
from .kernel import ReplayError, Scene, Step, replay
from .numerics import ArcDomainError, PrecisionContext, omega, point_at
from .recipes import RecipeResult, recipe_add_sub, recipe_double, recipe_halve

_LOGGER = logging.getLogger(__name__)

ATTR_LABELS = "labels"
ATTR_RECIPE = "recipe"

__all__ = [
    "ReplayError",
    "TraceDocument",
    "replay_trace",
    "run_traceable",
    "verify_replay",
]

_COORDINATE = vol.All([str], vol.Length(min=2, max=2))

STEP_SCHEMA = vol.Schema(
    {
        vol.Required(ATTR_OP): vol.In(PRIMITIVE_STEPS),
        vol.Optional(ATTR_GADGET, default=None): vol.Any(None, str),
        vol.Required(ATTR_INPUTS): [str],
        vol.Required(ATTR_OUTPUTS): [str],
        vol.Optional(ATTR_COORDINATES, default=list): [_COORDINATE],
    }
)

TRACE_SCHEMA = vol.Schema(
    {
        vol.Required(ATTR_VERSION): TRACE_VERSION,
        vol.Required(ATTR_RECIPE): str,
        vol.Required(ATTR_PRECISION): vol.All(
            int, vol.Range(min=MIN_PRECISION, max=MAX_PRECISION)
        ),
        vol.Required(ATTR_STEPS): [STEP_SCHEMA],
        vol.Optional(ATTR_LABELS, default=dict): {str: str},
        vol.Optional(ATTR_OUTPUTS, default=dict): {str: str},
        vol.Optional(ATTR_CERTIFICATE, default=list): [dict],
    }
)


@dataclass
class TraceDocument:
    """Serializable record of a construction."""

    recipe: str
    precision: int
    steps: list[dict[str, Any]]
    labels: dict[str, str] = field(default_factory=dict)
    outputs: dict[str, str] = field(default_factory=dict)
    certificate: list[dict[str, Any]] = field(default_factory=list)
    version: str = TRACE_VERSION

    @classmethod
    def from_result(cls, result: RecipeResult) -> TraceDocument:
        """Build a trace from a recipe run."""
        scene = result.scene
        ctx = scene.ctx
        steps = []
        for step in scene.steps:
            entry = step.to_dict()
            entry[ATTR_COORDINATES] = [
                [ctx.to_str(point.x), ctx.to_str(point.y)]
                for point in (scene.points.get(ref) for ref in step.outputs)
                if point is not None
            ]
            steps.append(entry)
        return cls(
            recipe=result.name,
            precision=ctx.digits,
            steps=steps,
            labels=dict(scene.labels),
            outputs=dict(result.outputs),
            certificate=[entry.to_dict(ctx) for entry in result.certificate],
        )

    @classmethod
    def from_dict(cls, data: Any) -> TraceDocument:
        """Validate and load a trace.

        Raises:
            ReplayError: If the document does not match the trace schema.
        """
        try:
            valid = TRACE_SCHEMA(data)
        except vol.Invalid as ex:
            raise ReplayError(f"Invalid trace document: {ex}") from ex
        return cls(
            recipe=valid[ATTR_RECIPE],
            precision=valid[ATTR_PRECISION],
            steps=valid[ATTR_STEPS],
            labels=valid[ATTR_LABELS],
            outputs=valid[ATTR_OUTPUTS],
            certificate=valid[ATTR_CERTIFICATE],
            version=valid[ATTR_VERSION],
        )

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            ATTR_VERSION: self.version,
            ATTR_RECIPE: self.recipe,
            ATTR_PRECISION: self.precision,
            ATTR_STEPS: [dict(step) for step in self.steps],
            ATTR_LABELS: dict(self.labels),
            ATTR_OUTPUTS: dict(self.outputs),
            ATTR_CERTIFICATE: list(self.certificate),
        }

    def kernel_steps(self) -> list[Step]:
        """Return the log as kernel steps."""
        return [
            Step(
                index=index,
                op=step[ATTR_OP],
                inputs=tuple(step[ATTR_INPUTS]),
                outputs=tuple(step[ATTR_OUTPUTS]),
                gadget=step.get(ATTR_GADGET),
            )
            for index, step in enumerate(self.steps)
        ]

    def givens(self) -> dict[str, tuple[str, str]]:
        """Return the coordinates of the given points."""
        givens = {}
        for index, step in enumerate(self.steps):
            if step[ATTR_OP] != STEP_GIVEN:
                continue
            coordinates = step.get(ATTR_COORDINATES) or []
            if len(coordinates) != 1 or len(step[ATTR_OUTPUTS]) != 1:
                raise ReplayError(f"Given step {index} must carry one point with coordinates")
            x, y = coordinates[0]
            givens[step[ATTR_OUTPUTS][0]] = (x, y)
        return givens


def verify_replay(document: TraceDocument) -> tuple[Scene, list[str]]:
    """Replay a trace and list the points whose coordinates differ from the record."""
    ctx = PrecisionContext(document.precision)
    scene = replay(document.kernel_steps(), document.givens(), ctx, document.labels)
    mismatches = []
    for index, step in enumerate(document.steps):
        recorded = step.get(ATTR_COORDINATES) or []
        for ref, (x, y) in zip(step[ATTR_OUTPUTS], recorded, strict=False):
            point = scene.point(ref)
            if ctx.to_str(point.x) != x or ctx.to_str(point.y) != y:
                mismatches.append(f"step {index}: {ref} replayed at ({ctx.to_str(point.x)}, {ctx.to_str(point.y)})")
    if mismatches:
        _LOGGER.warning("Replay of %s diverged at %d points", document.recipe, len(mismatches))
    return scene, mismatches


def replay_trace(document: TraceDocument) -> Scene:
    """Replay a trace, insisting on identical coordinates.

    Raises:
        ReplayError: If a step fails or any coordinate differs.
    """
    scene, mismatches = verify_replay(document)
    if mismatches:
        raise ReplayError(f"Replay diverged: {mismatches[0]}")
    scene.freeze()
    return scene


def _seed(scene: Scene, fraction: int, ctx: PrecisionContext) -> Any:
    x, y = point_at(omega(ctx) / fraction, ctx).cartesian(ctx)
    return scene.given(x, y)


def run_traceable(recipe: str, ctx: PrecisionContext) -> RecipeResult:
    """Run a traceable recipe on a fresh scene with its demonstration inputs.

    Arc recipes start from points seeded at arcs omega/5 and omega/7; halving
    starts from the petal tip.

    Raises:
        ArcDomainError: For an unknown recipe name.
    """
    from .seventeen import recipe_seventeen_U, recipe_seventeen_V1, seventeen_result

    if recipe not in TRACEABLE_RECIPES:
        raise ArcDomainError(
            f"Unknown recipe {recipe!r}, expected one of {', '.join(TRACEABLE_RECIPES)}"
        )
    scene = Scene(ctx)
    if recipe == RECIPE_HALVE:
        result = recipe_halve(scene, scene.unit_point)
    elif recipe == RECIPE_DOUBLE:
        result = recipe_double(scene, _seed(scene, 5, ctx))
    elif recipe == RECIPE_ADD_SUB:
        result = recipe_add_sub(scene, _seed(scene, 5, ctx), _seed(scene, 7, ctx))
    elif recipe == RECIPE_SEVENTEEN_U:
        result = recipe_seventeen_U(scene)
    elif recipe == RECIPE_SEVENTEEN_V1:
        recipe_seventeen_U(scene)
        result = recipe_seventeen_V1(scene)
    elif recipe == RECIPE_SEVENTEEN_ALL:
        result = seventeen_result(scene)
    else:
        raise ArcDomainError(f"Recipe {recipe!r} has no demonstration inputs")
    scene.freeze()
    return result
