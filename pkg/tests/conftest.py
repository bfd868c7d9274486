"""Shared numeric helpers for the test suite.

Everything here is deliberately independent of the package internals so the
tests keep their value as oracles: the error metric, finite differences and
the Bezier bisection below are implemented from scratch.
"""

import numpy as np


def rel_error(recon, direct):
    """Largest per-sample sup-norm deviation, scaled by 1 + |direct|."""
    recon = np.asarray(recon, dtype=float)
    direct = np.asarray(direct, dtype=float)
    diff = np.abs(recon - direct).max(axis=-1)
    scale = 1.0 + np.abs(direct).max(axis=-1)
    return float((diff / scale).max())


def central_difference(f, us, h, r=1):
    """Second order central difference of a vector valued callable."""
    us = np.asarray(us, dtype=float)
    if r == 1:
        return (f(us + h) - f(us - h)) / (2.0 * h)
    if r == 2:
        return (f(us + h) - 2.0 * f(us) + f(us - h)) / (h * h)
    raise ValueError(f"unsupported difference order {r}")


def de_casteljau_split(points, weights):
    """Split a rational Bezier arc at the parameter midpoint.

    Works on homogeneous coordinates so rational weights come along for
    free.  Returns ``(left, right)`` where each half is a pair of
    (points, weights) in its own [0, 1] parameter.
    """
    points = np.asarray(points, dtype=float)
    weights = np.asarray(weights, dtype=float)
    level = np.concatenate([points * weights[:, None], weights[:, None]], axis=1)
    left = [level[0]]
    right = [level[-1]]
    while len(level) > 1:
        level = 0.5 * (level[:-1] + level[1:])
        left.append(level[0])
        right.append(level[-1])
    left = np.array(left)
    right = np.array(right)[::-1]

    def unpack(hom):
        w = hom[:, -1]
        return hom[:, :-1] / w[:, None], w

    return unpack(left), unpack(right)


def bisection_polyline(points, weights, depth):
    """Control points of the 2**depth pieces after recursive bisection."""
    pieces = [(np.asarray(points, dtype=float), np.asarray(weights, dtype=float))]
    for _ in range(depth):
        nxt = []
        for pts, wts in pieces:
            nxt.extend(de_casteljau_split(pts, wts))
        pieces = nxt
    return np.concatenate([pts for pts, _ in pieces], axis=0)


def densify_polyline(points, per_segment=20):
    """Sample every segment of a polyline so it can act as a point set."""
    points = np.asarray(points, dtype=float)
    t = np.linspace(0.0, 1.0, per_segment, endpoint=False)[:, None]
    seg = points[:-1, None, :] * (1.0 - t) + points[1:, None, :] * t
    return np.vstack([seg.reshape(-1, points.shape[1]), points[-1:]])


def lattice_direct(spec, counts):
    """Traditional-form surface evaluation on a uniform lattice.

    Builds the reference tensor straight from the factor functions, without
    going through any control point machinery.
    """
    axes = [np.linspace(0.0, d.alpha, c) for d, c in zip(spec.directions, counts)]
    out = np.zeros(tuple(counts) + (spec.channels,))
    for ell, cf in enumerate(spec.coords):
        for summand in cf.summands:
            vecs = [
                f.values(d.kind, ax)
                for f, d, ax in zip(summand.factors, spec.directions, axes)
            ]
            prod = vecs[0]
            for v in vecs[1:]:
                prod = np.multiply.outer(prod, v)
            out[..., ell] += prod
    return out


def hausdorff_distance(a, b):
    """Symmetric Hausdorff distance between two point sets."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    d2 = ((a[:, None, :] - b[None, :, :]) ** 2).sum(axis=2)
    forward = np.sqrt(d2.min(axis=1)).max()
    backward = np.sqrt(d2.min(axis=0)).max()
    return float(max(forward, backward))
