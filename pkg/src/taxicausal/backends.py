"""Complete geodesic metric spaces used as the spatial factor.

Three backends are provided: ``Euclidean(n)``, ``Taxicab(n)`` (the L1 metric
on R^n) and ``Circle(C)`` (arc-length metric on a circle of circumference C).
Points are plain tuples of floats; circle points are 1-tuples holding the arc
position in ``[0, C)``.

Every backend exposes a scalar API (``dist``, ``geodesic_point``,
``midpoint``) and a vectorised one (``pairwise``, ``nearest``) used by the
grid-based hyperspace code. Both paths accumulate coordinates in the same
order so that scalar and vectorised distances agree bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, StructuralError

Point = tuple

# slack allowed on the arclength argument of geodesic_point before it is
# rejected; values inside the slack are clamped onto [0, d]
ARCLENGTH_SLACK = 1e-9

# above this many point pairs, nearest-neighbour queries go through a KD-tree
_KDTREE_THRESHOLD = 250_000


def nearest_bruteforce(pairwise, P, Q) -> np.ndarray:
    """Row-wise minimum of ``pairwise(P, Q)``, evaluated in memory-bounded chunks."""
    P = np.asarray(P, dtype=float)
    Q = np.asarray(Q, dtype=float)
    out = np.empty(len(P))
    chunk = max(1, _KDTREE_THRESHOLD // max(1, len(Q)))
    for i in range(0, len(P), chunk):
        out[i:i + chunk] = pairwise(P[i:i + chunk], Q).min(axis=1)
    return out


def _check_arclength(s: float, d: float) -> float:
    slack = ARCLENGTH_SLACK * max(1.0, d)
    if s < -slack or s > d + slack:
        raise DomainError(f"arclength {s!r} outside [0, {d!r}]")
    return min(max(s, 0.0), d)


class Backend:
    """Base class: a geodesic metric space with a canonical geodesic per pair."""

    dim: int

    def point(self, coords) -> Point:
        raise NotImplementedError

    def dist(self, a: Point, b: Point) -> float:
        raise NotImplementedError

    def geodesic_point(self, a: Point, b: Point, s: float) -> Point:
        raise NotImplementedError

    def midpoint(self, a: Point, b: Point) -> Point:
        return self.geodesic_point(a, b, self.dist(a, b) / 2.0)

    def as_array(self, points: Sequence[Point]) -> np.ndarray:
        arr = np.asarray(points, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != self.dim:
            raise StructuralError(f"expected points of dimension {self.dim}")
        return arr

    def pairwise(self, P, Q) -> np.ndarray:
        """Distance matrix between two point arrays, shape (len(P), len(Q))."""
        raise NotImplementedError

    def nearest(self, P, Q) -> np.ndarray:
        """For every row of P, the distance to the closest row of Q."""
        return nearest_bruteforce(self.pairwise, P, Q)

    def random_points(self, rng: np.random.Generator, n: int, low=0.0, high=1.0):
        raise NotImplementedError

    def lattice(self, lo, hi, h: float) -> np.ndarray:
        """All points k*h (k integer, per coordinate) inside the box [lo, hi]."""
        axes = []
        for l, u in zip(np.atleast_1d(lo), np.atleast_1d(hi)):
            k0, k1 = math.ceil(l / h), math.floor(u / h)
            axes.append(np.arange(k0, k1 + 1) * h)
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=1)

    def bounding_box(self, points) -> tuple[np.ndarray, np.ndarray]:
        arr = self.as_array(points)
        return arr.min(axis=0), arr.max(axis=0)

    def to_dict(self) -> dict:
        raise NotImplementedError


def _vector_point(dim: int, coords) -> Point:
    p = tuple(float(c) for c in np.atleast_1d(coords))
    if len(p) != dim:
        raise StructuralError(f"point {p!r} does not have dimension {dim}")
    return p


@dataclass(frozen=True)
class Euclidean(Backend):
    dim: int = 2

    def point(self, coords) -> Point:
        return _vector_point(self.dim, coords)

    def dist(self, a, b) -> float:
        if len(a) != self.dim or len(b) != self.dim:
            raise StructuralError("point dimension does not match backend")
        acc = 0.0
        for x, y in zip(a, b):
            acc += (x - y) * (x - y)
        return math.sqrt(acc)

    def geodesic_point(self, a, b, s):
        d = self.dist(a, b)
        s = _check_arclength(s, d)
        if s == 0.0:
            return tuple(a)
        if s == d:
            return tuple(b)
        lam = s / d
        return tuple(x + (y - x) * lam for x, y in zip(a, b))

    def pairwise(self, P, Q):
        P = np.asarray(P, dtype=float)
        Q = np.asarray(Q, dtype=float)
        acc = np.zeros((len(P), len(Q)))
        for k in range(self.dim):
            diff = P[:, None, k] - Q[None, :, k]
            acc += diff * diff
        return np.sqrt(acc)

    def nearest(self, P, Q):
        if len(P) * len(Q) <= _KDTREE_THRESHOLD:
            return super().nearest(P, Q)
        from scipy.spatial import cKDTree

        return cKDTree(np.asarray(Q, dtype=float)).query(np.asarray(P, dtype=float), p=2)[0]

    def random_points(self, rng, n, low=0.0, high=1.0):
        return [tuple(row) for row in rng.uniform(low, high, size=(n, self.dim)).tolist()]

    def to_dict(self):
        return {"kind": "euclidean", "dim": self.dim}


@dataclass(frozen=True)
class Taxicab(Backend):
    """R^n with the L1 metric.

    Geodesics are not unique; the canonical one moves along coordinate 0
    first, then coordinate 1, and so on.
    """

    dim: int = 2

    def point(self, coords) -> Point:
        return _vector_point(self.dim, coords)

    def dist(self, a, b) -> float:
        if len(a) != self.dim or len(b) != self.dim:
            raise StructuralError("point dimension does not match backend")
        acc = 0.0
        for x, y in zip(a, b):
            acc += abs(x - y)
        return acc

    def geodesic_point(self, a, b, s):
        d = self.dist(a, b)
        remaining = _check_arclength(s, d)
        out = []
        for x, y in zip(a, b):
            span = abs(y - x)
            if remaining >= span:
                out.append(y)
                remaining -= span
            else:
                out.append(x + math.copysign(remaining, y - x))
                remaining = 0.0
        return tuple(out)

    def pairwise(self, P, Q):
        P = np.asarray(P, dtype=float)
        Q = np.asarray(Q, dtype=float)
        acc = np.zeros((len(P), len(Q)))
        for k in range(self.dim):
            acc += np.abs(P[:, None, k] - Q[None, :, k])
        return acc

    def nearest(self, P, Q):
        if len(P) * len(Q) <= _KDTREE_THRESHOLD:
            return super().nearest(P, Q)
        from scipy.spatial import cKDTree

        return cKDTree(np.asarray(Q, dtype=float)).query(np.asarray(P, dtype=float), p=1)[0]

    def random_points(self, rng, n, low=0.0, high=1.0):
        return [tuple(row) for row in rng.uniform(low, high, size=(n, self.dim)).tolist()]

    def to_dict(self):
        return {"kind": "taxicab", "dim": self.dim}


def _wrap(theta: float, C: float) -> float:
    theta = theta % C
    # float modulo can round up to C itself
    return 0.0 if theta >= C else theta


@dataclass(frozen=True)
class Circle(Backend):
    """Circle of circumference C; antipodal pairs use the counterclockwise arc."""

    circumference: float = 2 * math.pi
    dim: int = 1

    def __post_init__(self):
        if not self.circumference > 0:
            raise DomainError("circumference must be positive")

    def point(self, coords) -> Point:
        (theta,) = _vector_point(1, coords)
        return (_wrap(theta, self.circumference),)

    def _ccw(self, a, b) -> float:
        if len(a) != 1 or len(b) != 1:
            raise StructuralError("circle points are 1-tuples")
        return _wrap(b[0] - a[0], self.circumference)

    def dist(self, a, b) -> float:
        # |a - b| rather than the ccw arc keeps the metric exactly symmetric
        if len(a) != 1 or len(b) != 1:
            raise StructuralError("circle points are 1-tuples")
        diff = abs(a[0] - b[0])
        return min(diff, self.circumference - diff)

    def geodesic_point(self, a, b, s):
        C = self.circumference
        ccw = self._ccw(a, b)
        d = self.dist(a, b)
        s = _check_arclength(s, d)
        if s == 0.0:
            return tuple(a)
        if s == d:
            return tuple(b)
        step = s if ccw <= C - ccw else -s
        return (_wrap(a[0] + step, C),)

    def pairwise(self, P, Q):
        P = np.asarray(P, dtype=float).reshape(-1, 1)
        Q = np.asarray(Q, dtype=float).reshape(-1, 1)
        diff = np.abs(P[:, None, 0] - Q[None, :, 0])
        return np.minimum(diff, self.circumference - diff)

    def random_points(self, rng, n, low=0.0, high=None):
        high = self.circumference if high is None else high
        return [(_wrap(v, self.circumference),) for v in rng.uniform(low, high, size=n).tolist()]

    def lattice(self, lo, hi, h):
        n = math.ceil(self.circumference / h)
        pts = np.arange(n) * h
        return pts[pts < self.circumference].reshape(-1, 1)

    def bounding_box(self, points):
        return np.array([0.0]), np.array([self.circumference])

    def to_dict(self):
        return {"kind": "circle", "circumference": self.circumference}


def backend_from_dict(doc: dict) -> Backend:
    kind = doc.get("kind")
    if kind == "euclidean":
        return Euclidean(int(doc.get("dim", 2)))
    if kind == "taxicab":
        return Taxicab(int(doc.get("dim", 2)))
    if kind == "circle":
        return Circle(float(doc.get("circumference", 2 * math.pi)))
    raise DomainError(f"unknown backend kind {kind!r}")
