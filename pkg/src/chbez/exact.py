"""Exact control point description of curves given in traditional form.

A traditional curve lists, per coordinate, a finite combination of
``a * cos(k u + phase)`` / ``a * sin(k u + phase)`` terms (``cosh`` and
``sinh`` for the hyperbolic kind).  Any such curve of maximum frequency
``nu`` lies in every space of order ``n >= nu``, and its control points
with respect to the normalized B-basis follow in closed form from the rows
of the basis transformation matrix.  Derivatives of any order are obtained
from the same rows: differentiation multiplies a frequency-``k`` term by
``k`` and shifts its phase by ``pi/2`` (trigonometric) or swaps the
sine-like and cosine-like rows (hyperbolic).

Rational curves carry their denominator as one extra coordinate.  The
pre-image polygon in one higher dimension is computed first; if some of the
resulting weights fail to be positive, order elevation is applied until
they are (for curves this terminates after finitely many steps whenever the
denominator is positive on the whole interval).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .bbasis import MAX_DEGREE, BasisKind, BasisSpace
from .curve import ControlCurve, elevate
from .errors import NumericalError, RangeError
from .xform import transform_matrix

__all__ = [
    "TermFamily",
    "Term",
    "CoordinateFunction",
    "CurveSpec",
    "PreImageResult",
    "min_order",
    "coordinate_ordinates",
    "exact_curve",
    "exact_rational_curve",
]

# Weights at or below this level do not count as positive.
WEIGHT_POSITIVITY = 1e-12

# Denominator sign is checked on this many uniform samples of [0, alpha].
_DENOMINATOR_SAMPLES = 1001

DEFAULT_MAX_ELEVATIONS = 32


class TermFamily(Enum):
    """Cosine-like or sine-like; the space kind picks cos/cosh and sin/sinh."""

    COSINE = "cos"
    SINE = "sin"


@dataclass(frozen=True)
class Term:
    """One summand ``amplitude * f(frequency * u + phase)``."""

    family: TermFamily
    frequency: int
    amplitude: float
    phase: float = 0.0

    def __post_init__(self):
        if not isinstance(self.family, TermFamily):
            raise RangeError(f"family must be a TermFamily, got {self.family!r}")
        if (
            not isinstance(self.frequency, (int, np.integer))
            or isinstance(self.frequency, bool)
            or self.frequency < 0
        ):
            raise RangeError(
                f"frequency must be a nonnegative integer, got {self.frequency!r}"
            )
        object.__setattr__(self, "frequency", int(self.frequency))
        for name in ("amplitude", "phase"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise RangeError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class CoordinateFunction:
    """A finite sum of terms describing one coordinate."""

    terms: tuple[Term, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    def max_frequency(self) -> int:
        return max((t.frequency for t in self.terms), default=0)

    def values(self, kind: BasisKind, us) -> np.ndarray:
        """Direct evaluation of the traditional form (used as the reference)."""
        us = np.asarray(us, dtype=float)
        out = np.zeros_like(us)
        trig = kind is BasisKind.TRIGONOMETRIC
        for t in self.terms:
            arg = t.frequency * us + t.phase
            if t.family is TermFamily.COSINE:
                out += t.amplitude * (np.cos(arg) if trig else np.cosh(arg))
            else:
                out += t.amplitude * (np.sin(arg) if trig else np.sinh(arg))
        return out

    def differentiated(self, kind: BasisKind) -> CoordinateFunction:
        terms = []
        for t in self.terms:
            if kind is BasisKind.TRIGONOMETRIC:
                terms.append(
                    Term(t.family, t.frequency, t.amplitude * t.frequency, t.phase + 0.5 * math.pi)
                )
            else:
                flipped = TermFamily.SINE if t.family is TermFamily.COSINE else TermFamily.COSINE
                terms.append(Term(flipped, t.frequency, t.amplitude * t.frequency, t.phase))
        return CoordinateFunction(tuple(terms))


@dataclass(frozen=True)
class CurveSpec:
    """A traditional-form curve: kind, shape parameter, coordinate functions."""

    kind: BasisKind
    alpha: float
    coords: tuple[CoordinateFunction, ...]

    def __post_init__(self):
        if not isinstance(self.kind, BasisKind):
            raise RangeError(f"kind must be a BasisKind, got {self.kind!r}")
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "coords", tuple(self.coords))
        if len(self.coords) == 0:
            raise RangeError("curve spec needs at least one coordinate")
        # Constructing a space validates the alpha range for the kind.
        BasisSpace(self.kind, 1, self.alpha)

    @property
    def dimension(self) -> int:
        return len(self.coords)

    def space(self, n: int) -> BasisSpace:
        return BasisSpace(self.kind, n, self.alpha)

    def evaluate(self, us) -> np.ndarray:
        """Pointwise evaluation of the traditional form, one row per sample."""
        us = np.atleast_1d(np.asarray(us, dtype=float))
        return np.column_stack([fn.values(self.kind, us) for fn in self.coords])

    def differentiated(self) -> CurveSpec:
        return CurveSpec(
            self.kind, self.alpha, tuple(fn.differentiated(self.kind) for fn in self.coords)
        )


def min_order(spec: CurveSpec) -> int:
    """Smallest order whose space contains the curve (at least 1)."""
    return max(1, max(fn.max_frequency() for fn in spec.coords))


def coordinate_ordinates(fn: CoordinateFunction, space: BasisSpace, r: int = 0) -> np.ndarray:
    """B-basis ordinates of the r-th derivative of one coordinate function.

    This is the workhorse shared by curves and tensor product surfaces: each
    term contributes a combination of the sine-like and cosine-like rows of
    the space's transformation matrix, scaled by ``frequency**r`` (with
    ``0**0 = 1`` so constants survive the underived case).
    """
    if not isinstance(r, (int, np.integer)) or isinstance(r, bool) or r < 0:
        raise RangeError(f"derivative order must be a nonnegative integer, got {r!r}")
    r = int(r)
    if fn.max_frequency() > space.n:
        raise RangeError(
            f"coordinate of frequency {fn.max_frequency()} does not fit order {space.n}"
        )
    matrix = transform_matrix(space)
    out = np.zeros(space.dimension)
    trig = space.kind is BasisKind.TRIGONOMETRIC
    for t in fn.terms:
        k = t.frequency
        scale = t.amplitude * float(k**r)
        if scale == 0.0:
            continue
        sine = matrix.sine_row(k)
        cosine = matrix.cosine_row(k)
        if trig:
            shifted = t.phase + 0.5 * math.pi * r
            c, s = math.cos(shifted), math.sin(shifted)
            if t.family is TermFamily.COSINE:
                out += scale * (c * cosine - s * sine)
            else:
                out += scale * (c * sine + s * cosine)
        else:
            ch, sh = math.cosh(t.phase), math.sinh(t.phase)
            swap = r % 2 == 1
            cosine_like = t.family is TermFamily.COSINE
            if swap:
                cosine_like = not cosine_like
            if cosine_like:
                out += scale * (ch * cosine + sh * sine)
            else:
                out += scale * (ch * sine + sh * cosine)
    return out


def exact_curve(spec: CurveSpec, n: int | None = None, r: int = 0) -> ControlCurve:
    """Control points of the curve (or its r-th derivative) at order ``n``.

    ``n`` defaults to :func:`min_order`.  The returned polygon reproduces the
    traditional form exactly up to rounding; no approximation is involved.
    """
    if n is None:
        n = min_order(spec)
    nu = min_order(spec)
    if n < nu:
        raise RangeError(f"order {n} below the curve's minimum order {nu}")
    space = spec.space(n)
    cols = [coordinate_ordinates(fn, space, r) for fn in spec.coords]
    return ControlCurve(space, np.column_stack(cols))


@dataclass(frozen=True)
class PreImageResult:
    """Outcome of the rational description.

    ``preimage`` is the polygon in one higher dimension whose last
    coordinate carries the denominator, ``curve`` the projected rational
    control curve, and ``elevations`` counts the order elevation steps that
    were needed to reach positive weights.
    """

    preimage: ControlCurve
    curve: ControlCurve
    elevations: int

    @property
    def order(self) -> int:
        return self.curve.space.n

    @property
    def weights(self) -> np.ndarray:
        return self.curve.weights


def exact_rational_curve(
    spec: CurveSpec,
    n: int | None = None,
    max_elevations: int = DEFAULT_MAX_ELEVATIONS,
) -> PreImageResult:
    """Rational description: last coordinate of ``spec`` is the denominator.

    The denominator must be positive on all of ``[0, alpha]`` (checked by
    dense sampling, endpoints included).  Whenever the pre-image polygon
    yields weights that are not strictly positive, the polygon is order
    elevated; positivity is reached after finitely many steps and the loop
    raises once ``max_elevations`` is exhausted.
    """
    if spec.dimension < 2:
        raise RangeError("rational description needs numerator and denominator coordinates")
    if not isinstance(max_elevations, (int, np.integer)) or max_elevations < 0:
        raise RangeError(f"max_elevations must be a nonnegative integer, got {max_elevations!r}")
    us = np.linspace(0.0, spec.alpha, _DENOMINATOR_SAMPLES)
    den = spec.coords[-1].values(spec.kind, us)
    if np.any(den <= 0.0):
        at = us[int(np.argmin(den))]
        raise NumericalError(
            f"denominator is not positive on [0, {spec.alpha:g}] (fails near u = {at:g})"
        )
    pre = exact_curve(spec, n, 0)
    steps = 0
    while np.any(pre.points[:, -1] <= WEIGHT_POSITIVITY) and steps < max_elevations:
        if 2 * (pre.space.n + 1) > MAX_DEGREE:
            break
        pre = elevate(pre, 1)
        steps += 1
    weights = pre.points[:, -1]
    if np.any(weights <= WEIGHT_POSITIVITY):
        bad = np.flatnonzero(weights <= WEIGHT_POSITIVITY)
        raise NumericalError(
            f"weights not positive after {steps} elevation(s)",
            indices=[int(i) for i in bad],
        )
    projected = ControlCurve(pre.space, pre.points[:, :-1] / weights[:, None], weights)
    return PreImageResult(pre, projected, steps)
