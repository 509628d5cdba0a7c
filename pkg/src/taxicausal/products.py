"""Lorentzian taxicab product ``Y x_T X`` and uniform product ``X x_oo Y``.

The taxicab product pairs a causal factor Y with a plain metric backend X:
distances add, and (a,b) << (p,q) iff tau_Y(a,p) > d_X(b,q). The uniform
product pairs two causal factors: distance is the max, relations are taken
componentwise and tau is the min.
"""

from __future__ import annotations

import numpy as np

from .backends import Backend
from .core import NOT_CAUSAL, CausalModel, classify_curve, curve_at
from .errors import DomainError, StructuralError
from .metric_hyperspace import SampledCurve


def _split(e):
    try:
        a, b = e
    except (TypeError, ValueError):
        raise StructuralError(f"{e!r} is not a pair") from None
    return a, b


class TaxicabProduct(CausalModel):
    def __init__(self, Y: CausalModel, X: Backend):
        if not isinstance(Y, CausalModel) or not isinstance(X, Backend):
            raise StructuralError("taxicab products need a causal factor and a metric backend")
        self.Y = Y
        self.X = X
        self.name = f"{getattr(Y, 'name', 'Y')}xT{type(X).__name__}{X.dim}"

    def __eq__(self, other):
        return isinstance(other, TaxicabProduct) and other.Y == self.Y and other.X == self.X

    def __hash__(self):
        return hash((TaxicabProduct, self.X))

    def dist(self, e1, e2):
        (a, b), (p, q) = _split(e1), _split(e2)
        return self.Y.dist(a, p) + self.X.dist(b, q)

    def chron(self, e1, e2):
        (a, b), (p, q) = _split(e1), _split(e2)
        return self.Y.tau(a, p) > self.X.dist(b, q)

    def causal(self, e1, e2):
        (a, b), (p, q) = _split(e1), _split(e2)
        return self.Y.tau(a, p) >= self.X.dist(b, q) and self.Y.causal(a, p)

    def tau(self, e1, e2):
        (a, b), (p, q) = _split(e1), _split(e2)
        tY, dX = self.Y.tau(a, p), self.X.dist(b, q)
        return tY - dX if tY > dX else 0.0

    def interpolate(self, e1, e2, lam):
        (a, b), (p, q) = _split(e1), _split(e2)
        return (self.Y.interpolate(a, p, lam), self.X.geodesic_point(b, q, lam * self.X.dist(b, q)))

    def relation_matrices(self, xs, ys=None):
        ys = xs if ys is None else ys
        MY = self.Y.relation_matrices([e[0] for e in xs], [e[0] for e in ys])
        DX = self.X.pairwise([e[1] for e in xs], [e[1] for e in ys])
        chron = MY["tau"] > DX
        return {
            "chron": chron,
            "causal": (MY["tau"] >= DX) & MY["causal"],
            "tau": np.where(chron, MY["tau"] - DX, 0.0),
            "dist": MY["dist"] + DX,
        }


def taxi_dist(P: TaxicabProduct, e1, e2):
    return P.dist(e1, e2)


def taxi_chron(P: TaxicabProduct, e1, e2):
    return P.chron(e1, e2)


def taxi_causal(P: TaxicabProduct, e1, e2):
    return P.causal(e1, e2)


def taxi_tau(P: TaxicabProduct, e1, e2):
    return P.tau(e1, e2)


class UniformProduct(CausalModel):
    def __init__(self, X: CausalModel, Y: CausalModel):
        if not isinstance(X, CausalModel) or not isinstance(Y, CausalModel):
            raise StructuralError("uniform products need two causal factors")
        self.X = X
        self.Y = Y
        self.name = f"({getattr(X, 'name', 'X')})xU({getattr(Y, 'name', 'Y')})"

    def dist(self, e1, e2):
        (x, y), (a, b) = _split(e1), _split(e2)
        return max(self.X.dist(x, a), self.Y.dist(y, b))

    def chron(self, e1, e2):
        (x, y), (a, b) = _split(e1), _split(e2)
        return self.X.chron(x, a) and self.Y.chron(y, b)

    def causal(self, e1, e2):
        (x, y), (a, b) = _split(e1), _split(e2)
        return self.X.causal(x, a) and self.Y.causal(y, b)

    def tau(self, e1, e2):
        (x, y), (a, b) = _split(e1), _split(e2)
        return min(self.X.tau(x, a), self.Y.tau(y, b))

    def interpolate(self, e1, e2, lam):
        (x, y), (a, b) = _split(e1), _split(e2)
        return (self.X.interpolate(x, a, lam), self.Y.interpolate(y, b, lam))

    def relation_matrices(self, xs, ys=None):
        ys = xs if ys is None else ys
        MX = self.X.relation_matrices([e[0] for e in xs], [e[0] for e in ys])
        MY = self.Y.relation_matrices([e[1] for e in xs], [e[1] for e in ys])
        return {
            "chron": MX["chron"] & MY["chron"],
            "causal": MX["causal"] & MY["causal"],
            "tau": np.minimum(MX["tau"], MY["tau"]),
            "dist": np.maximum(MX["dist"], MY["dist"]),
        }


def uni_dist(P: UniformProduct, e1, e2):
    return P.dist(e1, e2)


def uni_chron(P: UniformProduct, e1, e2):
    return P.chron(e1, e2)


def uni_causal(P: UniformProduct, e1, e2):
    return P.causal(e1, e2)


def uni_tau(P: UniformProduct, e1, e2):
    return P.tau(e1, e2)


def in_product_diamond(P: UniformProduct, lower, upper, e) -> bool:
    """Membership of e in J+(lower) & J-(upper) of the uniform product."""
    return P.causal(lower, e) and P.causal(e, upper)


def combine_causal_curves(
    P: UniformProduct, c1: SampledCurve, c2: SampledCurve, steps: int | None = None
) -> SampledCurve:
    """Run both factor curves simultaneously over [0, 1].

    Each factor is reparametrised affinely onto [0, 1] and sampled at
    ``steps + 1`` shared parameters; between its own samples a factor curve is
    followed along its model's canonical causal interpolation.
    """
    for c, factor in ((c1, P.X), (c2, P.Y)):
        if classify_curve(factor, c) == NOT_CAUSAL:
            raise DomainError("combine_causal_curves needs causal factor curves")
    if steps is None:
        steps = max(len(c1), len(c2))
    if steps < 1:
        raise DomainError("steps must be positive")
    ts = np.linspace(0.0, 1.0, steps + 1)
    points = []
    for t in ts:
        pair = []
        for c, factor in ((c1, P.X), (c2, P.Y)):
            a, b = c.params[0], c.params[-1]
            u = b if t == 1.0 else min(max(a + t * (b - a), a), b)
            pair.append(curve_at(factor, c, u))
        points.append(tuple(pair))
    return SampledCurve(ts, points)
