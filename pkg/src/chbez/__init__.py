"""Control point descriptions of trigonometric and hyperbolic geometry.

Curves, tensor product patches and volumes whose coordinates are finite
sums of cos/sin (or cosh/sinh) terms admit an exact representation as
convex combinations of control points with the normalized B-basis of the
matching function space.  This package computes those control points (also
for rational geometry and arbitrary derivatives), evaluates, subdivides and
order elevates the results, and ships deterministic SVG/OBJ/CSV exporters
plus a small CLI around the bundled example figures.
"""

from .bbasis import (
    MAX_DEGREE,
    BasisKind,
    BasisSpace,
    basis_matrix,
    basis_value,
    basis_vector,
    bernstein_value,
    normalizing_coefficients,
)
from .curve import (
    BezierPiece,
    ControlCurve,
    SubdivisionResult,
    bezier_weights,
    elevate,
    evaluate,
    piece_matches_subspace_weights,
    reparametrize,
    subdivide,
)
from .errors import NumericalError, RangeError, SpecError
from .exact import (
    DEFAULT_MAX_ELEVATIONS,
    CoordinateFunction,
    CurveSpec,
    PreImageResult,
    Term,
    TermFamily,
    exact_curve,
    exact_rational_curve,
    min_order,
)
from .gallery import (
    figure_names,
    load_figure,
    load_figure_text,
    reconstruction_error,
    render_figure,
    run_gallery,
)
from .io import (
    SpecDocument,
    SvgPath,
    export_obj,
    export_svg,
    export_table,
    format_float,
    parse_angle,
    parse_document,
    parse_spec,
    parse_table,
)
from .surface import (
    MAX_DIRECTIONS,
    ControlGrid,
    Direction,
    ProductTerm,
    SurfaceCoordinateFunction,
    SurfaceSpec,
    evaluate_surface,
    exact_rational_surface,
    exact_surface,
    min_orders,
    sample_lattice,
)
from .xform import (
    TransformMatrix,
    elevate_coefficient_vector,
    elevation_weights,
    transform_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_DEGREE",
    "MAX_DIRECTIONS",
    "DEFAULT_MAX_ELEVATIONS",
    "BasisKind",
    "BasisSpace",
    "basis_matrix",
    "basis_value",
    "basis_vector",
    "bernstein_value",
    "normalizing_coefficients",
    "BezierPiece",
    "ControlCurve",
    "SubdivisionResult",
    "bezier_weights",
    "elevate",
    "evaluate",
    "piece_matches_subspace_weights",
    "reparametrize",
    "subdivide",
    "NumericalError",
    "RangeError",
    "SpecError",
    "CoordinateFunction",
    "CurveSpec",
    "PreImageResult",
    "Term",
    "TermFamily",
    "exact_curve",
    "exact_rational_curve",
    "min_order",
    "figure_names",
    "load_figure",
    "load_figure_text",
    "reconstruction_error",
    "render_figure",
    "run_gallery",
    "SpecDocument",
    "SvgPath",
    "export_obj",
    "export_svg",
    "export_table",
    "format_float",
    "parse_angle",
    "parse_document",
    "parse_spec",
    "parse_table",
    "ControlGrid",
    "Direction",
    "ProductTerm",
    "SurfaceCoordinateFunction",
    "SurfaceSpec",
    "evaluate_surface",
    "exact_rational_surface",
    "exact_surface",
    "min_orders",
    "sample_lattice",
    "TransformMatrix",
    "elevate_coefficient_vector",
    "elevation_weights",
    "transform_matrix",
]
