"""Change of basis between canonical basis functions and the B-basis.

Two closely related tools live here:

* :func:`elevate_coefficient_vector` rewrites a function given by B-basis
  coefficients of order ``n`` in the basis of order ``n + 1``.  Each new
  coefficient is a convex combination of at most three old ones; the
  combination weights are ratios of normalizing coefficients.

* :func:`transform_matrix` expresses every canonical basis function
  (``1, sin(k u), cos(k u)`` resp. ``1, sinh(k u), cosh(k u)`` for
  ``k = 1..n``) in the B-basis.  The matrix is built by induction on the
  order: known rows are order elevated, and the two new frequency rows
  follow from the angle addition identities
  ``sin((m+1)u) = sin(mu) cos(u) + cos(mu) sin(u)`` and
  ``cos((m+1)u) = cos(mu) cos(u) - sin(mu) sin(u)``
  (for the hyperbolic kind the second identity carries ``+`` instead of
  ``-``; that sign is the only difference between the two kinds).

Matrices are memoized per space; the returned arrays are read-only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cache

import numpy as np

from .bbasis import BasisKind, BasisSpace, _coefficient_sums
from .errors import RangeError

__all__ = [
    "TransformMatrix",
    "elevation_weights",
    "elevate_coefficient_vector",
    "transform_matrix",
]


@dataclass(frozen=True)
class TransformMatrix:
    """B-basis coefficients of the canonical functions of a space.

    ``rows`` has shape ``(2n + 1, 2n + 1)``.  Row 0 holds the constant
    function (exactly all ones); row ``2k - 1`` the sine-like and row ``2k``
    the cosine-like function of frequency ``k``.  Summing
    ``rows[r][i] * basis_value(space, i, u)`` over ``i`` reproduces the
    canonical function at ``u``.
    """

    space: BasisSpace
    rows: np.ndarray

    def sine_row(self, k: int) -> np.ndarray:
        """Coefficients of sin(k u) (or sinh).  ``k = 0`` gives zeros."""
        self._check_frequency(k)
        if k == 0:
            return np.zeros(self.space.dimension)
        return self.rows[2 * k - 1]

    def cosine_row(self, k: int) -> np.ndarray:
        """Coefficients of cos(k u) (or cosh).  ``k = 0`` gives the ones row."""
        self._check_frequency(k)
        return self.rows[2 * k]

    def _check_frequency(self, k: int):
        if not isinstance(k, (int, np.integer)) or isinstance(k, bool):
            raise RangeError(f"frequency must be an integer, got {k!r}")
        if not 0 <= int(k) <= self.space.n:
            raise RangeError(f"frequency {k} outside 0..{self.space.n}")


@cache
def elevation_weights(space: BasisSpace) -> np.ndarray:
    """Convex weights of one order elevation step, shape ``(2n + 3, 3)``.

    ``W[r, j]`` multiplies old coefficient ``r - j``; entries with
    ``r - j`` outside ``0..2n`` are zero.  Every row sums to one, and rows
    0 and ``2n + 2`` reduce to a single weight of exactly 1, so elevation
    preserves the endpoint coefficients bit for bit.
    """
    n = space.n
    low = _coefficient_sums(space)
    one = _coefficient_sums(BasisSpace(space.kind, 1, space.alpha))
    high = _coefficient_sums(BasisSpace(space.kind, n + 1, space.alpha))
    weights = np.zeros((2 * n + 3, 3))
    for r in range(2 * n + 3):
        for j in range(3):
            if 0 <= r - j <= 2 * n:
                weights[r, j] = low[r - j] * one[j] / high[r]
    weights.flags.writeable = False
    return weights


def _raise_order(coeffs: np.ndarray, factor: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Shifted three-term combination shared by elevation and the recursion.

    With ``factor = (1, 1, 1)`` this is plain order elevation; with the
    order-one row of a canonical function it realizes multiplication by that
    function, because the product of two B-basis functions is again a scaled
    B-basis function of the combined order.
    """
    m = coeffs.shape[0]
    out = np.zeros((m + 2,) + coeffs.shape[1:])
    for j in range(3):
        w = weights[j : j + m, j] * factor[j]
        out[j : j + m] += w.reshape((m,) + (1,) * (coeffs.ndim - 1)) * coeffs
    return out


def elevate_coefficient_vector(space: BasisSpace, coeffs) -> np.ndarray:
    """Coefficients of the same function one order higher.

    ``coeffs`` may be a vector of length ``2n + 1`` or a stack of columns of
    that length (control points elevate columnwise).
    """
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.shape[0] != space.dimension:
        raise RangeError(
            f"expected {space.dimension} coefficients, got {coeffs.shape[0]}"
        )
    return _raise_order(coeffs, np.ones(3), elevation_weights(space))


def _order_one_rows(kind: BasisKind, alpha: float) -> np.ndarray:
    if kind is BasisKind.TRIGONOMETRIC:
        sine = [0.0, math.tan(0.5 * alpha), math.sin(alpha)]
        cosine = [1.0, 1.0, math.cos(alpha)]
    else:
        sine = [0.0, math.tanh(0.5 * alpha), math.sinh(alpha)]
        cosine = [1.0, 1.0, math.cosh(alpha)]
    return np.array([[1.0, 1.0, 1.0], sine, cosine])


@cache
def _transform_rows(space: BasisSpace) -> np.ndarray:
    sign = -1.0 if space.kind is BasisKind.TRIGONOMETRIC else 1.0
    base = _order_one_rows(space.kind, space.alpha)
    rows = base
    sine_one = base[1]
    cosine_one = base[2]
    for m in range(1, space.n):
        weights = elevation_weights(BasisSpace(space.kind, m, space.alpha))
        grown = np.zeros((2 * m + 3, 2 * m + 3))
        grown[0] = 1.0
        ones = np.ones(3)
        for r in range(1, 2 * m + 1):
            grown[r] = _raise_order(rows[r], ones, weights)
        sine_m = rows[2 * m - 1]
        cosine_m = rows[2 * m]
        grown[2 * m + 1] = _raise_order(sine_m, cosine_one, weights) + _raise_order(
            cosine_m, sine_one, weights
        )
        grown[2 * m + 2] = _raise_order(cosine_m, cosine_one, weights) + sign * _raise_order(
            sine_m, sine_one, weights
        )
        rows = grown
    rows = np.array(rows)
    rows.flags.writeable = False
    return rows


def transform_matrix(space: BasisSpace) -> TransformMatrix:
    """The memoized canonical-to-B-basis matrix of the space."""
    return TransformMatrix(space, _transform_rows(space))
