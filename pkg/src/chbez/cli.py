"""Command line front end.

Every subcommand validates its flags before computing anything and exits
with 0 on success, 2 on a validation error (bad flag, malformed spec) and 3
on a numerical failure (non-positive denominator, exhausted elevation
budget).  Output goes to stdout unless ``--out`` names a file; ``gallery``
treats ``--out`` as a directory and prints its error report to stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .bbasis import BasisKind, BasisSpace, basis_matrix
from .curve import elevate, evaluate, subdivide
from .errors import NumericalError, RangeError, SpecError
from .exact import CurveSpec, exact_curve, exact_rational_curve, min_order
from .gallery import run_gallery
from .io import (
    SpecDocument,
    SvgPath,
    export_obj,
    export_svg,
    export_table,
    parse_angle,
    parse_document,
)
from .surface import (
    exact_rational_surface,
    exact_surface,
    min_orders,
    sample_lattice,
)
from .xform import transform_matrix

__all__ = ["main"]

_KIND_NAMES = {
    "trig": BasisKind.TRIGONOMETRIC,
    "trigonometric": BasisKind.TRIGONOMETRIC,
    "hyp": BasisKind.HYPERBOLIC,
    "hyperbolic": BasisKind.HYPERBOLIC,
}


def _kind_flag(text: str) -> BasisKind:
    if text not in _KIND_NAMES:
        raise RangeError(f"--kind: expected trig or hyperbolic, got {text!r}")
    return _KIND_NAMES[text]


def _angle_flag(text: str, flag: str) -> float:
    try:
        return parse_angle(text)
    except RangeError as exc:
        raise RangeError(f"{flag}: {exc}") from None


def _int_list_flag(text: str, flag: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise RangeError(f"{flag}: expected an integer or comma list, got {text!r}") from None
    return values


def _load_document(args) -> SpecDocument:
    path = Path(args.spec)
    try:
        text = path.read_text()
    except OSError as exc:
        raise RangeError(f"--spec: cannot read {path} ({exc.strerror or exc})") from None
    try:
        return parse_document(text)
    except SpecError as exc:
        raise SpecError(f"{path}:{exc.path}" if exc.path else str(path), exc.message) from None


def _coord_names(count: int) -> list[str]:
    if count <= 3:
        return ["x", "y", "z"][:count]
    return [f"c{i + 1}" for i in range(count)]


def _single_order(doc: SpecDocument, args) -> int | None:
    if args.order is None:
        return None
    orders = _int_list_flag(args.order, "--order")
    if len(orders) != 1:
        raise RangeError(f"--order: a curve takes one order, got {len(orders)}")
    return orders[0]


def _surface_orders(doc: SpecDocument, args) -> tuple[int, ...] | None:
    if args.order is None:
        return None
    orders = _int_list_flag(args.order, "--order")
    delta = doc.spec.delta
    if len(orders) == 1:
        return orders * delta
    if len(orders) != delta:
        raise RangeError(f"--order: expected {delta} orders, got {len(orders)}")
    return orders


def _require_curve(doc: SpecDocument, command: str) -> CurveSpec:
    if not isinstance(doc.spec, CurveSpec):
        raise RangeError(f"{command} works on curve specs only")
    return doc.spec


def _described_curve(doc: SpecDocument, args):
    """Control curve for a curve document, honoring the rational flag."""
    spec = doc.spec
    n = _single_order(doc, args)
    if doc.rational:
        return exact_rational_curve(spec, n, args.max_elevations).curve
    return exact_curve(spec, n)


def _table(data, columns, fmt: str) -> str:
    if fmt not in ("csv", "json"):
        raise RangeError(f"--format: table output supports csv or json, got {fmt!r}")
    return export_table(data, fmt, columns)


def _cmd_basis(args):
    space = BasisSpace(_kind_flag(args.kind), args.order, _angle_flag(args.alpha, "--alpha"))
    us = np.linspace(0.0, space.alpha, args.samples)
    mat = basis_matrix(space, us)
    columns = ["u"] + [f"b{i}" for i in range(space.dimension)]
    return _table(np.hstack([us[:, None], mat]), columns, args.format), args.out


def _cmd_xform(args):
    space = BasisSpace(_kind_flag(args.kind), args.order, _angle_flag(args.alpha, "--alpha"))
    return _table(transform_matrix(space).rows, None, args.format), args.out


def _derivative_orders(args, delta: int):
    if args.derivative is None:
        return None
    orders = _int_list_flag(args.derivative, "--derivative")
    if len(orders) == 1 and delta > 1:
        orders = orders * delta
    if len(orders) != delta:
        raise RangeError(f"--derivative: expected {delta} orders, got {len(orders)}")
    if any(r < 0 for r in orders):
        raise RangeError(f"--derivative: orders must be nonnegative, got {args.derivative!r}")
    return orders


def _describe_curve(doc: SpecDocument, args):
    spec = doc.spec
    r = _derivative_orders(args, 1)
    if doc.rational:
        if r is not None and any(r):
            raise RangeError("--derivative: not supported for rational specs")
        curve = exact_rational_curve(spec, _single_order(doc, args), args.max_elevations).curve
        data = np.hstack([curve.points, curve.weights[:, None]])
        columns = _coord_names(curve.dimension) + ["weight"]
    else:
        curve = exact_curve(spec, _single_order(doc, args), r[0] if r else 0)
        data = curve.points
        columns = _coord_names(curve.dimension)
    if args.format == "svg":
        if curve.dimension != 2:
            raise RangeError("--format: svg needs 2-d points")
        return export_svg([SvgPath(curve.points, "polygon")])
    if args.format == "obj":
        if curve.dimension != 3:
            raise RangeError("--format: obj needs 3-d points")
        return export_obj(curve.points)
    return _table(data, columns, args.format)


def _describe_surface(doc: SpecDocument, args):
    spec = doc.spec
    r = _derivative_orders(args, spec.delta)
    orders = _surface_orders(doc, args)
    if doc.rational:
        if r is not None and any(r):
            raise RangeError("--derivative: not supported for rational specs")
        grid = exact_rational_surface(spec, orders, args.max_elevations)
    else:
        grid = exact_surface(spec, orders, r)
    channels = grid.points.shape[-1]
    if args.format == "obj":
        if channels != 3:
            raise RangeError("--format: obj needs 3-d points")
        return export_obj(grid.points)
    dims = grid.points.shape[:-1]
    rows = []
    for idx in np.ndindex(dims):
        row = list(idx) + list(grid.points[idx])
        if grid.weights is not None:
            row.append(grid.weights[idx])
        rows.append(row)
    columns = [f"i{j + 1}" for j in range(len(dims))] + _coord_names(channels)
    if grid.weights is not None:
        columns.append("weight")
    return _table(np.array(rows), columns, args.format)


def _cmd_describe(args, require_rational=False):
    doc = _load_document(args)
    if require_rational and not doc.rational:
        raise SpecError("rational", "describe-rational needs a spec with rational = true")
    if isinstance(doc.spec, CurveSpec):
        return _describe_curve(doc, args), args.out
    return _describe_surface(doc, args), args.out


def _cmd_sample(args):
    doc = _load_document(args)
    spec = doc.spec
    if isinstance(spec, CurveSpec):
        r = _derivative_orders(args, 1)
        if doc.rational:
            if r is not None and any(r):
                raise RangeError("--derivative: not supported for rational specs")
            curve = exact_rational_curve(spec, _single_order(doc, args), args.max_elevations).curve
        else:
            curve = exact_curve(spec, _single_order(doc, args), r[0] if r else 0)
        us = np.linspace(0.0, spec.alpha, args.samples)
        values = evaluate(curve, us)
        if args.format == "svg":
            if values.shape[1] != 2:
                raise RangeError("--format: svg needs 2-d samples")
            return export_svg([SvgPath(values, "curve")]), args.out
        if args.format == "obj":
            if values.shape[1] != 3:
                raise RangeError("--format: obj needs 3-d samples")
            return export_obj(values), args.out
        data = np.hstack([us[:, None], values])
        columns = ["u"] + _coord_names(values.shape[1])
        return _table(data, columns, args.format), args.out

    r = _derivative_orders(args, spec.delta)
    orders = _surface_orders(doc, args)
    if doc.rational:
        if r is not None and any(r):
            raise RangeError("--derivative: not supported for rational specs")
        grid = exact_rational_surface(spec, orders, args.max_elevations)
    else:
        grid = exact_surface(spec, orders, r)
    counts = (args.samples,) * spec.delta
    lattice = sample_lattice(grid, spec.directions, counts)
    if args.format == "obj":
        if lattice.shape[-1] != 3:
            raise RangeError("--format: obj needs 3-d samples")
        return export_obj(lattice), args.out
    if args.format == "svg":
        raise RangeError("--format: svg is for planar curves only")
    axes = [np.linspace(0.0, d.alpha, c) for d, c in zip(spec.directions, counts)]
    mesh = np.meshgrid(*axes, indexing="ij")
    params = np.stack([m.reshape(-1) for m in mesh], axis=1)
    data = np.hstack([params, lattice.reshape(len(params), -1)])
    columns = [f"u{j + 1}" for j in range(spec.delta)] + _coord_names(lattice.shape[-1])
    return _table(data, columns, args.format), args.out


def _cmd_subdivide(args):
    doc = _load_document(args)
    _require_curve(doc, "subdivide")
    if args.format != "json":
        raise RangeError("--format: subdivide emits json only")
    curve = _described_curve(doc, args)
    u0 = _angle_flag(args.split_at, "--split-at")
    result = subdivide(curve, u0)

    def piece(p):
        return {
            "interval": [p.u_interval[0], p.u_interval[1]],
            "points": p.points.tolist(),
            "weights": p.weights.tolist(),
        }

    payload = {
        "split_ratio": result.split_ratio,
        "left": piece(result.left),
        "right": piece(result.right),
    }
    return json.dumps(payload, indent=2) + "\n", args.out


def _cmd_elevate(args):
    doc = _load_document(args)
    spec = _require_curve(doc, "elevate")
    base = min_order(spec)
    target = _single_order(doc, args)
    if target is None:
        target = base + 1
    if target < base:
        raise RangeError(f"--order: target {target} below the minimum order {base}")
    if doc.rational:
        curve = exact_rational_curve(spec, base, args.max_elevations).curve
    else:
        curve = exact_curve(spec, base)
    curve = elevate(curve, target - curve.space.n)
    if curve.is_rational:
        data = np.hstack([curve.points, curve.weights[:, None]])
        columns = _coord_names(curve.dimension) + ["weight"]
    else:
        data = curve.points
        columns = _coord_names(curve.dimension)
    if args.format == "svg":
        if curve.dimension != 2:
            raise RangeError("--format: svg needs 2-d points")
        return export_svg([SvgPath(curve.points, "polygon")]), args.out
    return _table(data, columns, args.format), args.out


def _cmd_gallery(args):
    entries = run_gallery(args.out)
    lines = [
        f"{e['figure']}: wrote {e['output']}, max reconstruction error {e['error']:.3e}"
        for e in entries
    ]
    lines.append(f"{len(entries)} artifacts in {args.out}")
    return "\n".join(lines) + "\n", None


def _add_spec_flags(sub, max_elevations=True):
    sub.add_argument("--spec", required=True, help="path of the JSON spec document")
    sub.add_argument("--order", help="order n, or comma list for surfaces (default: minimum)")
    if max_elevations:
        sub.add_argument(
            "--max-elevations",
            type=int,
            default=32,
            help="elevation budget for rational descriptions (default 32)",
        )


def _add_output_flags(sub, default_format="csv", formats=("csv", "json", "svg", "obj")):
    sub.add_argument("--out", help="output file (default: stdout)")
    sub.add_argument(
        "--format",
        default=default_format,
        choices=formats,
        help=f"output format (default {default_format})",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chbez",
        description="Control point descriptions of trigonometric and hyperbolic geometry.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", help="tabulate the basis functions of one space")
    p.add_argument("--kind", required=True, help="trig or hyperbolic")
    p.add_argument("--alpha", required=True, help="shape parameter (number or pi literal)")
    p.add_argument("--order", type=int, required=True, help="order n")
    p.add_argument("--samples", type=int, default=200, help="sample count (default 200)")
    _add_output_flags(p, formats=("csv", "json"))
    p.set_defaults(handler=_cmd_basis)

    p = sub.add_parser("xform", help="basis-to-canonical transformation matrix")
    p.add_argument("--kind", required=True, help="trig or hyperbolic")
    p.add_argument("--alpha", required=True, help="shape parameter (number or pi literal)")
    p.add_argument("--order", type=int, required=True, help="order n")
    _add_output_flags(p, formats=("csv", "json"))
    p.set_defaults(handler=_cmd_xform)

    p = sub.add_parser("describe", help="control points of a spec document")
    _add_spec_flags(p)
    p.add_argument("--derivative", help="derivative order r, or comma list for surfaces")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_describe)

    p = sub.add_parser(
        "describe-rational", help="like describe, but requires a rational spec"
    )
    _add_spec_flags(p)
    p.add_argument("--derivative", help=argparse.SUPPRESS)
    _add_output_flags(p)
    p.set_defaults(handler=lambda args: _cmd_describe(args, require_rational=True))

    p = sub.add_parser("subdivide", help="split a curve at an interior parameter")
    _add_spec_flags(p)
    p.add_argument(
        "--split-at", required=True, help="split parameter u0 (number or pi literal)"
    )
    _add_output_flags(p, default_format="json", formats=("json",))
    p.set_defaults(handler=_cmd_subdivide)

    p = sub.add_parser("elevate", help="order elevate a curve step by step")
    _add_spec_flags(p)
    _add_output_flags(p, formats=("csv", "json", "svg"))
    p.set_defaults(handler=_cmd_elevate)

    p = sub.add_parser("sample", help="evaluate a spec document on a uniform grid")
    _add_spec_flags(p)
    p.add_argument("--derivative", help="derivative order r, or comma list for surfaces")
    p.add_argument(
        "--samples", type=int, default=200, help="samples per direction (default 200)"
    )
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_sample)

    p = sub.add_parser("gallery", help="regenerate all bundled figures")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(handler=_cmd_gallery)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        text, out = args.handler(args)
    except (RangeError, SpecError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
