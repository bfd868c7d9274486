"""Tensor product surfaces and volumes with exact control grids.

Coordinates of a multivariate patch are sums of separable products: each
summand multiplies one univariate traditional-form factor per parametric
direction.  Directions are independent; each carries its own kind
(trigonometric or hyperbolic) and shape parameter, so hybrid patches mix
both function families.  The control grid of such a patch is assembled from
outer products of the univariate ordinate vectors of the factors, one
tensor per summand.

``delta`` denotes the number of parametric directions (2 for surfaces, 3
for volumes; up to 4 is supported) and ``kappa`` how many coordinates the
ambient space has beyond ``delta``.  Rational patches carry one more
coordinate, the denominator.  Unlike the curve case, elevating the
pre-image grid is not guaranteed to reach positive weights, so the repair
loop runs under an explicit budget and reports the offending grid indices
when it gives up.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .bbasis import MAX_DEGREE, BasisKind, BasisSpace, basis_matrix, basis_vector
from .curve import _WEIGHT_FLOOR
from .errors import NumericalError, RangeError
from .exact import (
    DEFAULT_MAX_ELEVATIONS,
    WEIGHT_POSITIVITY,
    CoordinateFunction,
    coordinate_ordinates,
)
from .xform import elevate_coefficient_vector

__all__ = [
    "MAX_DIRECTIONS",
    "Direction",
    "ProductTerm",
    "SurfaceCoordinateFunction",
    "SurfaceSpec",
    "ControlGrid",
    "min_orders",
    "exact_surface",
    "exact_rational_surface",
    "evaluate_surface",
    "sample_lattice",
]

MAX_DIRECTIONS = 4

# Denominator positivity is checked on a lattice of this density per direction.
_POSITIVITY_DENSITY = 33


@dataclass(frozen=True)
class Direction:
    """Kind and shape parameter of one parametric direction."""

    kind: BasisKind
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", float(self.alpha))
        BasisSpace(self.kind, 1, self.alpha)

    def space(self, n: int) -> BasisSpace:
        return BasisSpace(self.kind, n, self.alpha)


@dataclass(frozen=True)
class ProductTerm:
    """One separable summand: the product of one factor per direction."""

    factors: tuple[CoordinateFunction, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))


@dataclass(frozen=True)
class SurfaceCoordinateFunction:
    """A coordinate of the patch: a sum of separable products."""

    summands: tuple[ProductTerm, ...]

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(self.summands))
        if len(self.summands) == 0:
            raise RangeError("surface coordinate needs at least one summand")


@dataclass(frozen=True)
class SurfaceSpec:
    """Directions plus coordinate functions of a patch in traditional form.

    ``coords`` has ``delta + kappa`` entries, or one more when the patch is
    rational (the trailing denominator).
    """

    directions: tuple[Direction, ...]
    kappa: int
    coords: tuple[SurfaceCoordinateFunction, ...]

    def __post_init__(self):
        object.__setattr__(self, "directions", tuple(self.directions))
        object.__setattr__(self, "coords", tuple(self.coords))
        delta = len(self.directions)
        if not 2 <= delta <= MAX_DIRECTIONS:
            raise RangeError(f"number of directions must be 2..{MAX_DIRECTIONS}, got {delta}")
        if not isinstance(self.kappa, (int, np.integer)) or self.kappa < 0:
            raise RangeError(f"kappa must be a nonnegative integer, got {self.kappa!r}")
        object.__setattr__(self, "kappa", int(self.kappa))
        expected = delta + self.kappa
        if len(self.coords) not in (expected, expected + 1):
            raise RangeError(
                f"expected {expected} coordinates ({expected + 1} if rational), "
                f"got {len(self.coords)}"
            )
        for ell, coord in enumerate(self.coords):
            for zeta, summand in enumerate(coord.summands):
                if len(summand.factors) != delta:
                    raise RangeError(
                        f"coords[{ell}].summands[{zeta}] has {len(summand.factors)} "
                        f"factors, expected {delta}"
                    )

    @property
    def delta(self) -> int:
        return len(self.directions)

    @property
    def is_rational(self) -> bool:
        return len(self.coords) == self.delta + self.kappa + 1

    @property
    def channels(self) -> int:
        return len(self.coords)

    def evaluate(self, u) -> np.ndarray:
        """Direct evaluation of the traditional form at one parameter vector."""
        u = np.asarray(u, dtype=float)
        if u.shape != (self.delta,):
            raise RangeError(f"expected {self.delta} parameters, got shape {u.shape}")
        out = np.zeros(self.channels)
        for ell, coord in enumerate(self.coords):
            for summand in coord.summands:
                prod = 1.0
                for j, factor in enumerate(summand.factors):
                    prod *= factor.values(self.directions[j].kind, np.array([u[j]]))[0]
                out[ell] += prod
        return out


@dataclass(frozen=True)
class ControlGrid:
    """Control net of a patch: per-direction orders, points, optional weights.

    ``points`` has shape ``(2 n_1 + 1, ..., 2 n_delta + 1, channels)``;
    ``weights`` (rational case) drops the channel axis.
    """

    orders: tuple[int, ...]
    points: np.ndarray
    weights: np.ndarray | None = None

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(int(n) for n in self.orders))
        pts = np.asarray(self.points, dtype=float)
        dims = tuple(2 * n + 1 for n in self.orders)
        if pts.shape[:-1] != dims:
            raise RangeError(f"points shape {pts.shape} does not match orders {self.orders}")
        pts = pts.copy()
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)
        if self.weights is not None:
            w = np.asarray(self.weights, dtype=float)
            if w.shape != dims:
                raise RangeError(f"weights shape {w.shape} does not match orders {self.orders}")
            w = w.copy()
            w.flags.writeable = False
            object.__setattr__(self, "weights", w)

    @property
    def channels(self) -> int:
        return self.points.shape[-1]


def min_orders(spec: SurfaceSpec) -> tuple[int, ...]:
    """Per-direction minimum orders (the largest factor frequency, at least 1)."""
    orders = []
    for j in range(spec.delta):
        nu = 0
        for coord in spec.coords:
            for summand in coord.summands:
                nu = max(nu, summand.factors[j].max_frequency())
        orders.append(max(1, nu))
    return tuple(orders)


def _check_orders(spec: SurfaceSpec, orders) -> tuple[int, ...]:
    if orders is None:
        return min_orders(spec)
    orders = tuple(int(n) for n in orders)
    if len(orders) != spec.delta:
        raise RangeError(f"expected {spec.delta} orders, got {len(orders)}")
    minimum = min_orders(spec)
    for j, (n, nu) in enumerate(zip(orders, minimum)):
        if n < nu:
            raise RangeError(f"order {n} in direction {j} below the minimum {nu}")
    return orders


def exact_surface(spec: SurfaceSpec, orders=None, r=None) -> ControlGrid:
    """Exact control grid of the patch (or of a mixed partial derivative).

    ``r`` lists one derivative order per direction and defaults to all
    zeros.  Every coordinate channel of ``spec`` is described, so the same
    routine serves rational pre-images.
    """
    orders = _check_orders(spec, orders)
    if r is None:
        r = (0,) * spec.delta
    r = tuple(int(x) for x in r)
    if len(r) != spec.delta or any(x < 0 for x in r):
        raise RangeError(f"derivative orders must be {spec.delta} nonnegative integers, got {r!r}")
    spaces = [d.space(n) for d, n in zip(spec.directions, orders)]
    dims = tuple(s.dimension for s in spaces)
    grid = np.zeros(dims + (spec.channels,))
    for ell, coord in enumerate(spec.coords):
        acc = np.zeros(dims)
        for summand in coord.summands:
            vecs = [
                coordinate_ordinates(factor, spaces[j], r[j])
                for j, factor in enumerate(summand.factors)
            ]
            acc += reduce(np.multiply.outer, vecs)
        grid[..., ell] = acc
    return ControlGrid(tuple(orders), grid)


def _elevate_along(points: np.ndarray, space: BasisSpace, axis: int) -> np.ndarray:
    moved = np.moveaxis(points, axis, 0)
    flat = moved.reshape(moved.shape[0], -1)
    lifted = elevate_coefficient_vector(space, flat)
    lifted = lifted.reshape((lifted.shape[0],) + moved.shape[1:])
    return np.moveaxis(lifted, 0, axis)


def exact_rational_surface(
    spec: SurfaceSpec,
    orders=None,
    max_elevations: int = DEFAULT_MAX_ELEVATIONS,
) -> ControlGrid:
    """Rational description of a patch whose last coordinate is the denominator.

    The denominator must be positive on the whole parameter box (checked on
    a dense lattice, endpoints included).  Directions are elevated round
    robin while some weight fails to be positive; there is no termination
    guarantee in the tensor product case, so the loop stops after
    ``max_elevations`` single-direction steps and reports the offending
    multi-indices.
    """
    if not spec.is_rational:
        raise RangeError(
            "rational description expects delta + kappa + 1 coordinates "
            "(the trailing denominator)"
        )
    if not isinstance(max_elevations, (int, np.integer)) or max_elevations < 0:
        raise RangeError(f"max_elevations must be a nonnegative integer, got {max_elevations!r}")
    axes = [np.linspace(0.0, d.alpha, _POSITIVITY_DENSITY) for d in spec.directions]
    den = _lattice_values(spec.coords[-1], spec.directions, axes)
    if np.any(den <= 0.0):
        flat = int(np.argmin(den))
        where = np.unravel_index(flat, den.shape)
        at = tuple(float(axes[j][w]) for j, w in enumerate(where))
        raise NumericalError(f"denominator is not positive on the box (fails near u = {at})")

    orders = list(_check_orders(spec, orders))
    grid = exact_surface(spec, orders)
    points = grid.points
    steps = 0
    while np.any(points[..., -1] <= WEIGHT_POSITIVITY) and steps < max_elevations:
        j = steps % spec.delta
        if 2 * (orders[j] + 1) > MAX_DEGREE:
            j = min(range(spec.delta), key=lambda d: orders[d])
            if 2 * (orders[j] + 1) > MAX_DEGREE:
                break
        space = spec.directions[j].space(orders[j])
        points = _elevate_along(points, space, j)
        orders[j] += 1
        steps += 1
    weights = points[..., -1]
    if np.any(weights <= WEIGHT_POSITIVITY):
        bad = np.argwhere(weights <= WEIGHT_POSITIVITY)
        raise NumericalError(
            f"weights not positive after {steps} elevation(s)",
            indices=[tuple(int(x) for x in idx) for idx in bad],
        )
    projected = points[..., :-1] / weights[..., None]
    return ControlGrid(tuple(orders), projected, weights)


def _lattice_values(
    coord: SurfaceCoordinateFunction, directions: tuple[Direction, ...], axes
) -> np.ndarray:
    """Direct evaluation of one coordinate on a cartesian lattice."""
    dims = tuple(len(a) for a in axes)
    out = np.zeros(dims)
    for summand in coord.summands:
        vecs = [
            factor.values(directions[j].kind, axes[j])
            for j, factor in enumerate(summand.factors)
        ]
        out += reduce(np.multiply.outer, vecs)
    return out


def _spaces_for(grid: ControlGrid, directions) -> list[BasisSpace]:
    directions = tuple(directions)
    if len(directions) != len(grid.orders):
        raise RangeError(
            f"expected {len(grid.orders)} directions, got {len(directions)}"
        )
    return [d.space(n) for d, n in zip(directions, grid.orders)]


def evaluate_surface(grid: ControlGrid, directions, u) -> np.ndarray:
    """Patch point at one parameter vector ``u``."""
    spaces = _spaces_for(grid, directions)
    u = np.asarray(u, dtype=float)
    if u.shape != (len(spaces),):
        raise RangeError(f"expected {len(spaces)} parameters, got shape {u.shape}")
    vectors = [basis_vector(s, ui) for s, ui in zip(spaces, u)]
    num = grid.points if grid.weights is None else grid.weights[..., None] * grid.points
    for vec in vectors:
        num = np.tensordot(vec, num, axes=(0, 0))
    if grid.weights is None:
        return num
    den = grid.weights
    for vec in vectors:
        den = np.tensordot(vec, den, axes=(0, 0))
    if abs(den) <= _WEIGHT_FLOOR:
        raise NumericalError(f"rational denominator vanishes at u = {tuple(u)}")
    return num / den


def sample_lattice(grid: ControlGrid, directions, counts) -> np.ndarray:
    """Evaluate the patch on a uniform lattice, ``counts`` samples per direction.

    Returns an array of shape ``counts + (channels,)``; much faster than
    looping :func:`evaluate_surface` because each direction is contracted
    with a whole basis matrix at once.
    """
    spaces = _spaces_for(grid, directions)
    counts = tuple(int(c) for c in counts)
    if len(counts) != len(spaces) or any(c < 2 for c in counts):
        raise RangeError(f"need at least 2 samples per direction, got {counts!r}")
    mats = [
        basis_matrix(s, np.linspace(0.0, s.alpha, c)) for s, c in zip(spaces, counts)
    ]

    def contract(tensor):
        for j, mat in enumerate(mats):
            tensor = np.moveaxis(np.tensordot(mat, tensor, axes=(1, j)), 0, j)
        return tensor

    num = grid.points if grid.weights is None else grid.weights[..., None] * grid.points
    num = contract(num)
    if grid.weights is None:
        return num
    den = contract(grid.weights)
    if np.any(np.abs(den) <= _WEIGHT_FLOOR):
        raise NumericalError("rational denominator vanishes on the sample lattice")
    return num / den[..., None]
