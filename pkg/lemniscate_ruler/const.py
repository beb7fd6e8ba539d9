"""Constants for the lemniscate ruler-and-compass toolkit."""

from typing import Final

# Config keys
CONF_PRECISION: Final = "precision"
CONF_OUTPUT_FORMAT: Final = "output_format"
CONF_SVG: Final = "svg"
CONF_SVG_SIZE: Final = "size"
CONF_CURVE_SAMPLES: Final = "curve_samples"
CONF_SHOW_CONSTRUCTION: Final = "show_construction"

# Environment
ENV_PRECISION: Final = "LEMNISCATE_PRECISION"
DEFAULT_CONFIG_PATH: Final = "config/lemniscate.yaml"

# Precision (decimal digits)
DEFAULT_PRECISION: Final = 30
MIN_PRECISION: Final = 15
MAX_PRECISION: Final = 1000
GUARD_DIGITS: Final = 5  # kept back from the working digits for quadrature/Newton
SERIAL_GUARD_DIGITS: Final = 5  # extra digits written to traces

# Quadrature
QUAD_SPLIT: Final = "0.9"  # split point before the 1/sqrt(1-x) singularity
QUAD_MAX_REFINEMENTS: Final = 8

# Newton iteration for the lemniscatic sine
NEWTON_MAX_ITERATIONS: Final = 80
SERIES_SEED_LIMIT: Final = "0.5"

# Fermat primes known to be prime
FERMAT_PRIMES: Final = (3, 5, 17, 257, 65537)

# Polygons with a ruler-and-compass recipe in this package
CONSTRUCTED_FACTORS: Final = (17,)

# Output formats
FORMAT_SVG: Final = "svg"
FORMAT_JSON: Final = "json"
OUTPUT_FORMATS: Final = [FORMAT_SVG, FORMAT_JSON]
DEFAULT_OUTPUT_FORMAT: Final = FORMAT_SVG

# Polygon modes
MODE_CONSTRUCTED: Final = "constructed"
MODE_NUMERIC: Final = "numeric"

# SVG figures
SVG_VIEWPORT: Final = 2.2  # half-width of the square viewport in curve units
DEFAULT_SVG_SIZE: Final = 800  # pixels
MIN_SVG_SIZE: Final = 100
MAX_SVG_SIZE: Final = 8000
DEFAULT_CURVE_SAMPLES: Final = 2048
MIN_CURVE_SAMPLES: Final = 16
SVG_COORD_DECIMALS: Final = 3
CURVE_PRECISION: Final = 15  # digits used for sampling the drawn curve

# Trace documents
TRACE_VERSION: Final = "lemniscate-trace/1"

# Verification suites
SUITE_NUMERICS: Final = "numerics"
SUITE_ARCS: Final = "arcs"
SUITE_RADICALS: Final = "radicals"
SUITE_SEVENTEEN: Final = "seventeen"
SUITES: Final = [SUITE_NUMERICS, SUITE_ARCS, SUITE_RADICALS, SUITE_SEVENTEEN]
VERIFY_ARC_PAIRS: Final = 100
VERIFY_SEED: Final = 17
OMEGA_PRINTED: Final = "2.622057"  # six decimals, as usually tabulated
OMEGA_PRINTED_TOLERANCE: Final = "1e-6"
POLYGON_TOLERANCE: Final = "1e-9"

# Arc operations exposed by the CLI
ARC_ADD: Final = "add"
ARC_SUB: Final = "sub"
ARC_DOUBLE: Final = "double"
ARC_HALVE: Final = "halve"
ARC_OPERATIONS: Final = [ARC_ADD, ARC_SUB, ARC_DOUBLE, ARC_HALVE]

# Recipes that can be traced
RECIPE_HALVE: Final = "halve"
RECIPE_DOUBLE: Final = "double"
RECIPE_ADD_SUB: Final = "add_sub"
RECIPE_TRANSFER: Final = "transfer"
RECIPE_BISECT_BETWEEN: Final = "bisect_between"
RECIPE_SEVENTEEN_U: Final = "seventeen_U"
RECIPE_SEVENTEEN_V1: Final = "seventeen_V1"
RECIPE_SEVENTEEN_ALL: Final = "seventeen_all"
TRACEABLE_RECIPES: Final = [
    RECIPE_HALVE,
    RECIPE_DOUBLE,
    RECIPE_ADD_SUB,
    RECIPE_SEVENTEEN_U,
    RECIPE_SEVENTEEN_V1,
    RECIPE_SEVENTEEN_ALL,
]

# Scene step kinds
STEP_GIVEN: Final = "given"
STEP_LINE: Final = "line"
STEP_CIRCLE: Final = "circle"
STEP_INTERSECT: Final = "intersect"
PRIMITIVE_STEPS: Final = (STEP_GIVEN, STEP_LINE, STEP_CIRCLE, STEP_INTERSECT)

# Gadget names recorded on primitive steps
GADGET_PERPENDICULAR: Final = "perpendicular"
GADGET_PERP_BISECTOR: Final = "perp_bisector"
GADGET_MIDPOINT: Final = "midpoint"
GADGET_PARALLEL: Final = "parallel"
GADGET_BISECT_ANGLE: Final = "bisect_angle"
GADGET_REFLECT: Final = "reflect"
GADGET_POINT_REFLECT: Final = "point_reflect"
GADGET_TRANSLATE: Final = "translate"
GADGET_ROTATE_TO_AXIS: Final = "rotate_to_axis"
GADGET_NEGATE: Final = "negate"
GADGET_DOUBLE_LENGTH: Final = "double_length"
GADGET_SQRT: Final = "sqrt"
GADGET_GEOMETRIC_MEAN: Final = "geometric_mean"
GADGET_THALES_PRODUCT: Final = "thales_product"
GADGET_THALES_SCALE: Final = "thales_scale"
GADGET_RAT_ROOTS: Final = "rat_roots"
GADGET_FOLD: Final = "fold"
GADGET_MODULUS: Final = "modulus"
GADGET_PROJECT: Final = "project"
GADGET_FRAME: Final = "frame"
GADGETS: Final = (
    GADGET_PERPENDICULAR,
    GADGET_PERP_BISECTOR,
    GADGET_MIDPOINT,
    GADGET_PARALLEL,
    GADGET_BISECT_ANGLE,
    GADGET_REFLECT,
    GADGET_POINT_REFLECT,
    GADGET_TRANSLATE,
    GADGET_ROTATE_TO_AXIS,
    GADGET_NEGATE,
    GADGET_DOUBLE_LENGTH,
    GADGET_SQRT,
    GADGET_GEOMETRIC_MEAN,
    GADGET_THALES_PRODUCT,
    GADGET_THALES_SCALE,
    GADGET_RAT_ROOTS,
    GADGET_FOLD,
    GADGET_MODULUS,
    GADGET_PROJECT,
    GADGET_FRAME,
)

# Frame labels
LABEL_ORIGIN: Final = "O"
LABEL_UNIT: Final = "I"
LABEL_UNIT_OPPOSITE: Final = "I*"
LABEL_UP: Final = "J"
LABEL_DOWN: Final = "J*"
LABEL_X_AXIS: Final = "x_axis"
LABEL_Y_AXIS: Final = "y_axis"
LABEL_UNIT_CIRCLE: Final = "unit_circle"
LABEL_UNIT_VERTICAL: Final = "x_eq_1"
LABEL_EIGHTH_RAY: Final = "ray_pi_8"

# Exit codes
EXIT_OK: Final = 0
EXIT_CERTIFICATE_FAILED: Final = 1
EXIT_USAGE: Final = 2

# Attributes
ATTR_NAME: Final = "name"
ATTR_TARGET: Final = "target"
ATTR_ERROR: Final = "error"
ATTR_TOLERANCE: Final = "tolerance"
ATTR_PASSED: Final = "passed"
ATTR_PRECISION: Final = "precision"
ATTR_STEPS: Final = "steps"
ATTR_OUTPUTS: Final = "outputs"
ATTR_CERTIFICATE: Final = "certificate"
ATTR_VERSION: Final = "version"
ATTR_OP: Final = "op"
ATTR_GADGET: Final = "gadget"
ATTR_INPUTS: Final = "inputs"
ATTR_COORDINATES: Final = "coordinates"
ATTR_MAX_ERROR: Final = "max_error"
ATTR_CHECKS: Final = "checks"
ATTR_SUITE: Final = "suite"
