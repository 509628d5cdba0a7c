"""The taxicab product of the real line with a backend, in closed form.

Events are ``(t, x)`` pairs. With ``d`` the backend metric,

    (t,x) << (s,y)  iff  s - t > d(x,y)
    (t,x) <= (s,y)  iff  s - t >= d(x,y)
    tau  = s - t - d(x,y) on causal pairs, 0 otherwise
    d_T  = |s - t| + d(x,y)

The model doubles as a metric space (``as_array``/``pairwise``/``nearest``),
so event sets can be fed to the Hausdorff machinery directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .backends import Backend, Circle, nearest_bruteforce
from .core import CausalModel
from .errors import DomainError, StructuralError
from .metric_hyperspace import FiniteSet, SampledCurve, curve_length_d


class Event(NamedTuple):
    t: float
    x: tuple

    def to_dict(self):
        return {"t": self.t, "x": list(self.x)}


@dataclass(frozen=True)
class Diamond:
    """J+(bottom) & J-(top); bottom <= top is checked by ``MinkowskiTaxicab.diamond``."""

    bottom: Event
    top: Event

    def to_dict(self):
        return {"bottom": self.bottom.to_dict(), "top": self.top.to_dict()}


class MinkowskiTaxicab(CausalModel):
    def __init__(self, X: Backend):
        if not isinstance(X, Backend):
            raise StructuralError("the spatial factor must be a backend")
        self.X = X
        self.dim = 1 + X.dim
        self.name = f"R11xT{type(X).__name__}{X.dim}"

    def __eq__(self, other):
        return isinstance(other, MinkowskiTaxicab) and other.X == self.X

    def __hash__(self):
        return hash((MinkowskiTaxicab, self.X))

    def __repr__(self):
        return f"MinkowskiTaxicab({self.X!r})"

    # construction

    def event(self, t, x) -> Event:
        return Event(float(t), self.X.point(x))

    def diamond(self, bottom, top) -> Diamond:
        bottom, top = self.point(bottom), self.point(top)
        if not self.causal(bottom, top):
            raise DomainError(f"diamond vertices are not causally related: {bottom} !<= {top}")
        return Diamond(bottom, top)

    def point(self, e) -> Event:
        if isinstance(e, dict):
            return self.event(e["t"], e["x"])
        t, x = e
        return self.event(t, x)

    # the four functions

    def dist(self, e1, e2):
        return abs(e2[0] - e1[0]) + self.X.dist(e1[1], e2[1])

    def chron(self, e1, e2):
        return e2[0] - e1[0] > self.X.dist(e1[1], e2[1])

    def causal(self, e1, e2):
        return e2[0] - e1[0] >= self.X.dist(e1[1], e2[1])

    def tau(self, e1, e2):
        dt, d = e2[0] - e1[0], self.X.dist(e1[1], e2[1])
        return dt - d if dt > d else 0.0

    def interpolate(self, e1, e2, lam):
        if lam == 1:
            return e2
        d = self.X.dist(e1[1], e2[1])
        return Event(e1[0] + lam * (e2[0] - e1[0]), self.X.geodesic_point(e1[1], e2[1], lam * d))

    def relation_matrices(self, xs, ys=None):
        ys = xs if ys is None else ys
        T1 = np.array([e[0] for e in xs], dtype=float)[:, None]
        T2 = np.array([e[0] for e in ys], dtype=float)[None, :]
        D = self.X.pairwise([e[1] for e in xs], [e[1] for e in ys])
        dt = T2 - T1
        chron = dt > D
        return {
            "chron": chron,
            "causal": dt >= D,
            "tau": np.where(chron, dt - D, 0.0),
            "dist": np.abs(dt) + D,
        }

    # metric-space interface (events as rows [t, x0, x1, ...])

    def as_array(self, events) -> np.ndarray:
        return np.array([(e[0], *e[1]) for e in events], dtype=float).reshape(-1, self.dim)

    def pairwise(self, P, Q) -> np.ndarray:
        P = np.asarray(P, dtype=float)
        Q = np.asarray(Q, dtype=float)
        return np.abs(Q[None, :, 0] - P[:, None, 0]) + self.X.pairwise(P[:, 1:], Q[:, 1:])

    def nearest(self, P, Q) -> np.ndarray:
        return nearest_bruteforce(self.pairwise, P, Q)

    def geodesic_point(self, e1, e2, s):
        """d_T geodesic: the time coordinate moves first, then space."""
        dt = e2[0] - e1[0]
        if s <= abs(dt):
            return Event(e1[0] + math.copysign(s, dt), e1[1])
        return Event(e2[0], self.X.geodesic_point(e1[1], e2[1], s - abs(dt)))

    def bounding_box(self, events):
        arr = self.as_array(events)
        if isinstance(self.X, Circle):
            return (np.array([arr[:, 0].min(), 0.0]),
                    np.array([arr[:, 0].max(), self.X.circumference]))
        return arr.min(axis=0), arr.max(axis=0)

    def lattice(self, lo, hi, h):
        k0, k1 = math.ceil(lo[0] / h), math.floor(hi[0] / h)
        ts = np.arange(k0, k1 + 1) * h
        xs = self.X.lattice(lo[1:], hi[1:], h)
        return np.column_stack([np.repeat(ts, len(xs)), np.tile(xs, (len(ts), 1))])


# module-level operations, mirroring the model methods


def event_tau(M: MinkowskiTaxicab, e1, e2):
    return M.tau(e1, e2)


def event_causal(M: MinkowskiTaxicab, e1, e2):
    return M.causal(e1, e2)


def event_chron(M: MinkowskiTaxicab, e1, e2):
    return M.chron(e1, e2)


def event_dist(M: MinkowskiTaxicab, e1, e2):
    return M.dist(e1, e2)


def maximal_segment(M: MinkowskiTaxicab, e1, e2, steps: int = 16) -> SampledCurve:
    """Maximal causal curve from e1 to e2 with ``steps + 1`` samples.

    Timelike pairs (L = tau > 0) are parametrised by tau itself on [0, L],
    so tau between samples equals the parameter gap; null pairs use [0, 1].
    Space follows the backend's canonical geodesic at constant speed.
    """
    e1, e2 = M.point(e1), M.point(e2)
    if not M.causal(e1, e2):
        raise DomainError("maximal segments join causally related events")
    if e1 == e2:
        raise DomainError("maximal segments need distinct endpoints")
    if steps < 1:
        raise DomainError("steps must be positive")
    (t, x), (s, y) = e1, e2
    d = M.X.dist(x, y)
    L = M.tau(e1, e2)
    span = L if L > 0 else 1.0
    params = [span * k / steps for k in range(steps + 1)]
    points = [e1]
    for u in params[1:-1]:
        lam = u / span
        points.append(Event(t + lam * (s - t), M.X.geodesic_point(x, y, lam * d)))
    points.append(e2)
    return SampledCurve(params, points)


def staircase_curve(M: MinkowskiTaxicab, e1, e2, breakpoints) -> SampledCurve:
    """Causal staircase through the canonical geodesic from e1.x to e2.x.

    ``breakpoints`` are interior (time, arclength) pairs. Every step must
    satisfy dt >= dsigma >= 0 and dt > 0; the curve is parametrised by time.
    """
    e1, e2 = M.point(e1), M.point(e2)
    (t, x), (s, y) = e1, e2
    D = M.X.dist(x, y)
    knots = [(t, 0.0), *[(float(a), float(b)) for a, b in breakpoints], (s, D)]
    for (ta, sa), (tb, sb) in zip(knots, knots[1:]):
        if not (tb - ta > 0 and tb - ta >= sb - sa >= 0):
            raise DomainError(f"step ({ta}, {sa}) -> ({tb}, {sb}) is not a causal staircase step")
    points = [e1]
    for tk, sk in knots[1:-1]:
        points.append(Event(tk, M.X.geodesic_point(x, y, min(sk, D))))
    points.append(e2)
    return SampledCurve([k[0] for k in knots], points)


def alt_maximal_curves(M: MinkowskiTaxicab, e1, e2, k: int, seed: int = 0, steps: int = 6):
    """``k`` distinct maximal causal curves from e1 to e2 (random staircases).

    Each staircase splits the spatial distance D and the slack L = tau(e1, e2)
    into ``steps`` random portions and takes dsigma_i = D w_i,
    dt_i = dsigma_i + L v_i. All of them have tau-length L by telescoping.
    """
    e1, e2 = M.point(e1), M.point(e2)
    if not M.chron(e1, e2):
        raise DomainError("alternative maximal curves need chronologically related events")
    if k < 2:
        raise DomainError("k must be at least 2")
    if steps < 2:
        raise DomainError("a staircase needs at least 2 steps")
    (t, x), (s, y) = e1, e2
    D = M.X.dist(x, y)
    L = M.tau(e1, e2)
    rng = np.random.default_rng(seed)
    curves, seen = [], set()
    while len(curves) < k:
        w = rng.dirichlet(np.ones(steps))
        v = rng.dirichlet(np.ones(steps))
        sig = np.cumsum(D * w)[:-1]
        ts = t + np.cumsum(D * w + L * v)[:-1]
        key = tuple(np.round(np.concatenate([sig, ts]), 12))
        if key in seen or np.any(np.diff(np.concatenate([[t], ts, [s]])) <= 0):
            continue
        seen.add(key)
        points = [e1]
        for tk, sk in zip(ts.tolist(), sig.tolist()):
            points.append(Event(tk, M.X.geodesic_point(x, y, min(sk, D))))
        points.append(e2)
        curves.append(SampledCurve([t, *ts.tolist(), s], points))
    return curves


def diamond_membership(M: MinkowskiTaxicab, D: Diamond, e) -> bool:
    return M.causal(D.bottom, e) and M.causal(e, D.top)


def _spatial_offsets(X: Backend, x0, R: float, h: float) -> np.ndarray:
    """Grid of spacing h, anchored at x0, covering the closed ball of radius R."""
    if isinstance(X, Circle):
        C = X.circumference
        n = math.floor(R / h) if 2 * R < C else math.ceil(C / h)
        js = np.arange(-n, n + 1) if 2 * R < C else np.arange(n)
        pos = np.mod(x0[0] + js * h, C)
        pos = np.where(pos >= C, 0.0, pos)
        return np.unique(pos).reshape(-1, 1)
    n = math.floor(R / h)
    ax = np.arange(-n, n + 1) * h
    mesh = np.meshgrid(*([ax] * X.dim), indexing="ij")
    return np.asarray(x0, dtype=float) + np.stack([m.ravel() for m in mesh], axis=1)


def diamond_sample(M: MinkowskiTaxicab, D: Diamond, h: float) -> FiniteSet:
    """Grid events of D (spacing h in time and in every spatial coordinate,
    anchored at the bottom vertex), plus both vertices, in lexicographic order."""
    if not h > 0:
        raise DomainError("grid spacing must be positive")
    (t0, x0), (t1, x1) = D.bottom, D.top
    T = t1 - t0
    ts = t0 + np.arange(math.floor(T / h) + 1) * h
    ts = ts[ts <= t1]
    X = _spatial_offsets(M.X, x0, T, h)
    d0 = M.X.pairwise(X, [x0])[:, 0]
    d1 = M.X.pairwise(X, [x1])[:, 0]
    events = {D.bottom, D.top}
    for u in ts.tolist():
        mask = (u - t0 >= d0) & (t1 - u >= d1)
        for row in X[mask].tolist():
            events.add(Event(u, tuple(row)))
    return FiniteSet(M, sorted(events))


def localizing_membership(M: MinkowskiTaxicab, center, r: float, q) -> bool:
    """q in I+(t - r, x) & I-(t + r, x) for center (t, x)."""
    if not r > 0:
        raise DomainError("localizing radius must be positive")
    t, x = center
    return M.chron(Event(t - r, x), q) and M.chron(q, Event(t + r, x))


def check_imprisonment_bound(M: MinkowskiTaxicab, center, r: float, c: SampledCurve) -> bool:
    """Whether the d_T-length of a curve inside the localizing set is below 2r."""
    for p in c.points:
        if not localizing_membership(M, center, r, p):
            raise DomainError(f"sample {p} lies outside the localizing neighbourhood")
    return curve_length_d(M, c) < 2 * r
