"""Causal diamonds of R11 x_T X as points of their own causal space.

A diamond J+(t,x) & J-(s,y) is stored as its vertex pair. Everything here
is a closed form in the vertices:

    D1 <=_H D2  iff  bottom1 <= bottom2 and top1 <= top2
    d_H         =    max(d_T(bottom1, bottom2), d_T(top1, top2))
    tau_H       =    min(tau(bottom1, bottom2), tau(top1, top2))   (0 off <=_H)

so the vertex map D -> (bottom, top) is a distance- and tau-preserving
embedding into the uniform product of two copies of R11 x_T X.
"""

from __future__ import annotations

import numpy as np

from .backends import Circle
from .core import CausalModel
from .errors import DegenerateError, DomainError, StructuralError
from .minkowski_taxi import Diamond, Event, MinkowskiTaxicab
from .products import UniformProduct


def causal_H_diamonds(M: CausalModel, D1: Diamond, D2: Diamond) -> bool:
    return M.causal(D1.bottom, D2.bottom) and M.causal(D1.top, D2.top)


def hausdorff_diamonds(M: CausalModel, D1: Diamond, D2: Diamond) -> float:
    return max(M.dist(D1.bottom, D2.bottom), M.dist(D1.top, D2.top))


def tau_H_diamonds(M: CausalModel, D1: Diamond, D2: Diamond) -> float:
    if not causal_H_diamonds(M, D1, D2):
        return 0.0
    return min(M.tau(D1.bottom, D2.bottom), M.tau(D1.top, D2.top))


def diamond_tubular(M: MinkowskiTaxicab, D: Diamond, r: float) -> Diamond:
    """Closed r-neighbourhood of D in d_T, which is again a diamond."""
    if r < 0:
        raise DomainError("tubular radius must be nonnegative")
    if r == 0:
        return D
    (t, x), (s, y) = D.bottom, D.top
    return Diamond(Event(t - r, x), Event(s + r, y))


def causal_geodesic(M: MinkowskiTaxicab, D1: Diamond, D2: Diamond, u: float) -> Diamond:
    """gamma(u) = J+(t2 + u - r, x2) & J-(s1 + u, y1) with r = d_H(D1, D2).

    tau_H(gamma(u), gamma(v)) = v - u for u <= v. The endpoints need not
    coincide with D1 and D2; see ``causal_geodesic_endpoint_gap``.
    """
    if not causal_H_diamonds(M, D1, D2):
        raise DomainError("causal geodesics join causally related diamonds")
    r = hausdorff_diamonds(M, D1, D2)
    if r == 0:
        raise DegenerateError("the diamonds coincide")
    if not 0 <= u <= r:
        raise DomainError(f"u = {u!r} outside [0, {r!r}]")
    t2, x2 = D2.bottom
    s1, y1 = D1.top
    # bottom <= top holds for every u in exact arithmetic; on null
    # configurations rounding may miss it by an ulp, so no re-validation
    return Diamond(Event(t2 + u - r, x2), Event(s1 + u, y1))


def causal_geodesic_endpoint_gap(M: MinkowskiTaxicab, D1: Diamond, D2: Diamond):
    """(d_H(gamma(0), D1), d_H(gamma(r), D2)) for the closed-form causal family."""
    r = hausdorff_diamonds(M, D1, D2)
    g0 = causal_geodesic(M, D1, D2, 0.0)
    g1 = causal_geodesic(M, D1, D2, r)
    return hausdorff_diamonds(M, g0, D1), hausdorff_diamonds(M, g1, D2)


def _straight(M: MinkowskiTaxicab, e1, e2, lam: float) -> Event:
    # The straight segment is a d_T geodesic for euclidean and taxicab
    # factors, and unlike the canonical taxicab path it is convex, which
    # keeps interpolated vertices causally ordered.
    if lam == 0:
        return e1
    if lam == 1:
        return e2
    (t, x), (s, y) = e1, e2
    if isinstance(M.X, Circle):
        xs = M.X.geodesic_point(x, y, lam * M.X.dist(x, y))
    else:
        xs = tuple(a + (b - a) * lam for a, b in zip(x, y))
    return Event(t + (s - t) * lam, xs)


def interpolate_diamonds(M: MinkowskiTaxicab, D1: Diamond, D2: Diamond, t: float) -> Diamond:
    """Metric geodesic of diamonds: both vertices move affinely at the same rate t/r.

    d_H(D1, result) = t and d_H(result, D2) = r - t. On a circle the
    interpolated vertices can fall out of causal order; that raises.
    """
    r = hausdorff_diamonds(M, D1, D2)
    if r == 0:
        raise DegenerateError("the diamonds coincide")
    if not 0 <= t <= r:
        raise DomainError(f"t = {t!r} outside [0, {r!r}]")
    if t == 0:
        return D1
    if t == r:
        return D2
    lam = t / r
    bottom = _straight(M, D1.bottom, D2.bottom, lam)
    top = _straight(M, D1.top, D2.top, lam)
    # convexity makes the order exact for vector backends up to rounding
    slack = top.t - bottom.t - M.X.dist(bottom.x, top.x)
    if slack < -1e-9 * max(1.0, abs(top.t), abs(bottom.t)):
        raise DomainError("interpolated vertices are not causally ordered")
    return Diamond(bottom, top)


def embed(D: Diamond) -> tuple:
    return (D.bottom, D.top)


def embedding_space(M: MinkowskiTaxicab) -> UniformProduct:
    return UniformProduct(M, M)


def interval_tau_H(I1, I2) -> float:
    """tau_H between intervals [x - t, x + t] and [y - s, y + s] given as (x, t), (y, s)."""
    (x, t), (y, s) = I1, I2
    if t < 0 or s < 0:
        raise DomainError("interval half-widths must be nonnegative")
    gap = y - x - abs(t - s)
    return gap if gap > 0 else 0.0


def interval_diamond(I) -> Diamond:
    """The interval [x - t, x + t] as a diamond of R11 (vertices are plain reals)."""
    x, t = I
    return Diamond(x - t, x + t)


class DiamondModel(CausalModel):
    """The diamond space over a base model with its closed-form structure."""

    def __init__(self, M: CausalModel):
        self.M = M
        self.name = f"D({getattr(M, 'name', 'model')})"

    def _check(self, D):
        if not isinstance(D, Diamond):
            raise StructuralError(f"{D!r} is not a diamond")

    def dist(self, D1, D2):
        self._check(D1), self._check(D2)
        return hausdorff_diamonds(self.M, D1, D2)

    def causal(self, D1, D2):
        self._check(D1), self._check(D2)
        return causal_H_diamonds(self.M, D1, D2)

    def tau(self, D1, D2):
        self._check(D1), self._check(D2)
        return tau_H_diamonds(self.M, D1, D2)

    def chron(self, D1, D2):
        return self.tau(D1, D2) > 0

    def relation_matrices(self, xs, ys=None):
        ys = xs if ys is None else ys
        B = self.M.relation_matrices([D.bottom for D in xs], [D.bottom for D in ys])
        T = self.M.relation_matrices([D.top for D in xs], [D.top for D in ys])
        causal = B["causal"] & T["causal"]
        tau = np.where(causal, np.minimum(B["tau"], T["tau"]), 0.0)
        return {
            "chron": tau > 0,
            "causal": causal,
            "tau": tau,
            "dist": np.maximum(B["dist"], T["dist"]),
        }
