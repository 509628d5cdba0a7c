"""Finite stand-ins for compact sets: Hausdorff distance, closed tubular
neighbourhoods, polygonal curve length and the hyperspace geodesic
``t -> U_t(A) & U_{r-t}(B)`` between two finite sets.

A "space" here is anything with ``dist``, ``as_array``, ``pairwise`` and
``nearest``: every backend qualifies, and so does the taxicab model over
events (``minkowski_taxi.MinkowskiTaxicab``), which makes all of this work for
event sets under d_T as well.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DegenerateError, DomainError, StructuralError


@dataclass(frozen=True)
class SampledCurve:
    """A curve known through its samples: strictly increasing params, one point each."""

    params: tuple
    points: tuple

    def __post_init__(self):
        params = tuple(float(p) for p in self.params)
        points = tuple(self.points)
        if len(params) != len(points):
            raise DomainError("params and points must have the same length")
        if len(params) < 2:
            raise DomainError("a sampled curve needs at least 2 samples")
        if any(b <= a for a, b in zip(params, params[1:])):
            raise DomainError("curve params must be strictly increasing")
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "points", points)

    def __len__(self):
        return len(self.points)

    def segments(self):
        return zip(self.points, self.points[1:])


@dataclass(frozen=True, eq=False)
class FiniteSet:
    """Nonempty finite point set; exact duplicates are dropped, order kept."""

    space: object
    points: tuple = field(default=())

    def __post_init__(self):
        seen = dict.fromkeys(tuple(p) if isinstance(p, (list, np.ndarray)) else p for p in self.points)
        if not seen:
            raise DomainError("finite sets must be nonempty")
        object.__setattr__(self, "points", tuple(seen))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __eq__(self, other):
        if not isinstance(other, FiniteSet):
            return NotImplemented
        return self.space == other.space and set(self.points) == set(other.points)

    def __hash__(self):
        return hash(frozenset(self.points))

    def array(self) -> np.ndarray:
        return self.space.as_array(self.points)

    def to_dict(self):
        from .core import plain

        return {"points": [plain(p) for p in self.points]}


def _same_space(A: FiniteSet, B: FiniteSet):
    if A.space != B.space:
        raise StructuralError("sets live in different spaces")


def curve_length_d(space, c: SampledCurve) -> float:
    """Length of the polygon through the curve's samples (a lower bound of L_d)."""
    if len(c) < 2:
        raise DomainError("a sampled curve needs at least 2 samples")
    return sum(space.dist(p, q) for p, q in c.segments())


def _nearest(space, P: tuple, Q: tuple) -> np.ndarray:
    if hasattr(space, "nearest"):
        return space.nearest(space.as_array(P), space.as_array(Q))
    return np.array([min(space.dist(p, q) for q in Q) for p in P])


def dist_point_set(p, A: FiniteSet) -> float:
    return min(A.space.dist(p, a) for a in A.points)


def directed_hausdorff(A: FiniteSet, B: FiniteSet) -> float:
    """sup over a in A of dist(a, B)."""
    _same_space(A, B)
    return float(_nearest(A.space, A.points, B.points).max())


def hausdorff(A: FiniteSet, B: FiniteSet) -> float:
    return max(directed_hausdorff(A, B), directed_hausdorff(B, A))


def tubular_membership(A: FiniteSet, r: float, p) -> bool:
    """Membership of p in the closed tubular neighbourhood of radius r."""
    if r < 0:
        raise DomainError("tubular radius must be nonnegative")
    return dist_point_set(p, A) <= r


class Region:
    """A (possibly infinite) subset of a space given by a vectorised predicate.

    ``contains`` maps an (n, dim) array to a boolean mask. ``lo``/``hi`` bound
    every member coordinatewise.
    """

    def __init__(self, space, contains: Callable[[np.ndarray], np.ndarray], lo, hi):
        self.space = space
        self._contains = contains
        self.lo = np.asarray(lo, dtype=float)
        self.hi = np.asarray(hi, dtype=float)

    def contains(self, arr) -> np.ndarray:
        return self._contains(np.atleast_2d(np.asarray(arr, dtype=float)))

    def __contains__(self, p) -> bool:
        return bool(self.contains([p])[0])

    @classmethod
    def ball(cls, space, center, r: float) -> "Region":
        return cls.tubular(FiniteSet(space, [center]), r)

    @classmethod
    def tubular(cls, A: FiniteSet, r: float) -> "Region":
        if r < 0:
            raise DomainError("tubular radius must be nonnegative")
        Aarr = A.array()
        lo, hi = A.space.bounding_box(A.points)
        return cls(A.space, lambda X: A.space.nearest(X, Aarr) <= r, lo - r, hi + r)

    @classmethod
    def intersection(cls, *regions: "Region") -> "Region":
        space = regions[0].space
        if any(R.space != space for R in regions):
            raise StructuralError("regions live in different spaces")

        def contains(X):
            mask = np.ones(len(X), dtype=bool)
            for R in regions:
                if not mask.any():
                    break
                mask[mask] = R.contains(X[mask])
            return mask

        lo = np.max([R.lo for R in regions], axis=0)
        hi = np.min([R.hi for R in regions], axis=0)
        return cls(space, contains, lo, hi)

    def grid_points(self, h: float) -> np.ndarray:
        """Lattice points k*h of the bounding box that belong to the region."""
        if not h > 0:
            raise DomainError("grid spacing must be positive")
        if np.any(self.hi < self.lo):
            return np.empty((0, len(self.lo)))
        G = self.space.lattice(self.lo, self.hi, h)
        if len(G) == 0:
            return G
        return G[self.contains(G)]


def hyperspace_geodesic(A: FiniteSet, B: FiniteSet, t: float, h: float) -> FiniteSet:
    """Grid sample of U_t(A) & U_{r-t}(B), r = hausdorff(A, B).

    Besides the lattice points passing both memberships, the sample carries,
    for every point of A and of B, the point of the segment towards its
    nearest partner in the other set at fraction t/r. Those witnesses lie in
    the exact region, so the sample is nonempty and keeps its thin parts
    (tangency points) regardless of h. The endpoints t=0 and t=r return A and
    B themselves.
    """
    _same_space(A, B)
    r = hausdorff(A, B)
    if r == 0:
        raise DegenerateError("sets coincide; the geodesic is constant")
    if not 0 <= t <= r:
        raise DomainError(f"t={t!r} outside [0, {r!r}]")
    if t == 0:
        return A
    if t == r:
        return B
    space = A.space
    witnesses = []
    for src, dst, forward in ((A, B, True), (B, A, False)):
        D = space.pairwise(src.array(), dst.array())
        for i, j in enumerate(D.argmin(axis=1)):
            p, q = src.points[i], dst.points[j]
            a, b = (p, q) if forward else (q, p)
            witnesses.append(space.geodesic_point(a, b, D[i, j] * t / r))
    region = Region.intersection(Region.tubular(A, t), Region.tubular(B, r - t))
    grid = [tuple(row) for row in region.grid_points(h).tolist()]
    return FiniteSet(space, witnesses + grid)


def refine_dyadic(
    func: Callable[[float], object],
    a: float,
    b: float,
    length: Callable[[SampledCurve], float],
    tol: float = 1e-7,
    start: int = 2,
    max_doublings: int = 24,
) -> tuple[float, SampledCurve]:
    """Sample ``func`` on [a, b], doubling the sample count until the length
    changes by less than ``tol``. Returns the last length and its curve."""
    n = max(2, start)
    params = np.linspace(a, b, n)
    curve = SampledCurve(params, [func(u) for u in params])
    prev = length(curve)
    for _ in range(max_doublings):
        n = 2 * n - 1
        params = np.linspace(a, b, n)
        curve = SampledCurve(params, [func(u) for u in params])
        cur = length(curve)
        if abs(cur - prev) < tol:
            return cur, curve
        prev = cur
    return prev, curve


def finite_set(space, points: Sequence) -> FiniteSet:
    return FiniteSet(space, [space.point(p) for p in points])
