"""Bundled figure specs and their deterministic regeneration.

The package ships a set of JSON spec documents under ``figures/``; each one
is a curve, patch or volume whose control point description is known to be
exact.  :func:`run_gallery` re-describes every figure, writes an SVG or OBJ
artifact plus a copy of the spec, measures the reconstruction error against
direct evaluation of the traditional form and records everything in a
manifest.  All outputs are byte-deterministic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .curve import evaluate
from .errors import RangeError
from .exact import CurveSpec, exact_curve, exact_rational_curve
from .io import SpecDocument, SvgPath, export_obj, export_svg, parse_document
from .surface import (
    SurfaceSpec,
    _lattice_values,
    exact_rational_surface,
    exact_surface,
    sample_lattice,
)

__all__ = [
    "figure_names",
    "load_figure_text",
    "load_figure",
    "reconstruction_error",
    "RenderedFigure",
    "render_figure",
    "run_gallery",
]

_CURVE_SAMPLES = 400
_PATCH_SAMPLES = 33
_VOLUME_SAMPLES = 17

# Figures whose artifact overlays the control polygons of several orders,
# lowest to highest; all remaining figures use the minimum order.
_OVERLAY_ORDERS = {
    "equilateral_hyperbola": (1, 2, 3),
    "lemniscate": (2, 3, 4),
}

_FIGURES = (
    "hypocycloid",
    "quadrifolium",
    "torus_knot",
    "lemniscate",
    "equilateral_hyperbola",
    "rational_hyperbolic_arc_a",
    "rational_hyperbolic_arc_b",
    "torus_patch",
    "star_surface",
    "trigonometric_volume_1",
    "trigonometric_volume_2",
    "rational_trigonometric_patch",
    "hyperboloidal_patch",
    "rational_hyperbolic_butterfly",
    "hybrid_rational_volume",
)


def figure_names() -> tuple[str, ...]:
    """Names of all bundled figures, in gallery order."""
    return _FIGURES


def load_figure_text(name: str) -> str:
    """Raw JSON text of a bundled figure spec."""
    if name not in _FIGURES:
        raise RangeError(f"unknown figure {name!r}")
    return resources.files("chbez").joinpath("figures", f"{name}.json").read_text()


def load_figure(name: str) -> SpecDocument:
    """Parsed document of a bundled figure spec."""
    return parse_document(load_figure_text(name))


def reconstruction_error(recon, direct) -> float:
    """Max over samples of the scaled deviation between two point sets.

    Per sample the deviation is ``|recon - direct|_inf / (1 + |direct|_inf)``,
    so the number reads as an absolute error for small geometry and a
    relative one for large.
    """
    recon = np.asarray(recon, dtype=float)
    direct = np.asarray(direct, dtype=float)
    if recon.shape != direct.shape:
        raise RangeError(f"shape mismatch: {recon.shape} vs {direct.shape}")
    diff = np.abs(recon - direct).max(axis=-1)
    scale = 1.0 + np.abs(direct).max(axis=-1)
    return float((diff / scale).max())


@dataclass(frozen=True)
class RenderedFigure:
    """One regenerated figure: artifact text plus its error report."""

    name: str
    suffix: str
    artifact: str
    error: float


def _project(values: np.ndarray, rational: bool) -> np.ndarray:
    if rational:
        return values[..., :-1] / values[..., -1:]
    return values


def _render_curve(name: str, doc: SpecDocument) -> RenderedFigure:
    spec = doc.spec
    us = np.linspace(0.0, spec.alpha, _CURVE_SAMPLES)
    direct = _project(spec.evaluate(us), doc.rational)
    orders = _OVERLAY_ORDERS.get(name, (None,))
    polygons = []
    error = 0.0
    for n in orders:
        if doc.rational:
            curve = exact_rational_curve(spec, n).curve
        else:
            curve = exact_curve(spec, n)
        error = max(error, reconstruction_error(evaluate(curve, us), direct))
        polygons.append(curve.points)
    if direct.shape[1] == 2:
        paths = [SvgPath(direct, "curve")]
        labels = "abcdefgh"
        for idx, pts in enumerate(polygons):
            label = labels[idx] if len(polygons) > 1 else "d"
            paths.append(SvgPath(pts, "polygon", label))
        return RenderedFigure(name, "svg", export_svg(paths), error)
    return RenderedFigure(name, "obj", export_obj(direct, polygons[-1]), error)


def _render_surface(name: str, doc: SpecDocument) -> RenderedFigure:
    spec = doc.spec
    samples = _PATCH_SAMPLES if spec.delta == 2 else _VOLUME_SAMPLES
    counts = (samples,) * spec.delta
    if doc.rational:
        grid = exact_rational_surface(spec)
    else:
        grid = exact_surface(spec)
    recon = sample_lattice(grid, spec.directions, counts)
    axes = [np.linspace(0.0, d.alpha, samples) for d in spec.directions]
    channels = [_lattice_values(c, spec.directions, axes) for c in spec.coords]
    direct = _project(np.stack(channels, axis=-1), doc.rational)
    error = reconstruction_error(recon, direct)
    return RenderedFigure(name, "obj", export_obj(recon, grid.points), error)


def render_figure(name: str) -> RenderedFigure:
    """Regenerate one bundled figure and measure its reconstruction error."""
    doc = load_figure(name)
    if isinstance(doc.spec, CurveSpec):
        return _render_curve(name, doc)
    return _render_surface(name, doc)


def run_gallery(out_dir) -> list[dict]:
    """Regenerate every bundled figure into ``out_dir``.

    Writes one artifact per figure, a copy of each spec under ``specs/``
    and a ``manifest.json`` listing figure name, spec path, output path and
    reconstruction error.  Returns the manifest entries.
    """
    out = Path(out_dir)
    specs = out / "specs"
    specs.mkdir(parents=True, exist_ok=True)
    entries = []
    for name in _FIGURES:
        spec_text = load_figure_text(name)
        (specs / f"{name}.json").write_text(spec_text)
        rendered = render_figure(name)
        output = f"{name}.{rendered.suffix}"
        (out / output).write_text(rendered.artifact)
        entries.append(
            {
                "figure": name,
                "spec": f"specs/{name}.json",
                "output": output,
                "error": rendered.error,
            }
        )
    manifest = json.dumps({"figures": entries}, indent=2) + "\n"
    (out / "manifest.json").write_text(manifest)
    return entries
