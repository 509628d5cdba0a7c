"""Causal structure on finite sets of events.

An event set is a ``FiniteSet`` whose ``space`` is a causal model. For
finite sets every sup/inf is attained, so all quantities below are exact:

* A <<_H B: every a has some b with a << b, and every b some a with a << b
  (<=_H likewise with <=);
* dist_L^-(x, C) = max tau(x, c), dist_L^+(C, x) = max tau(c, x);
* tau_H(A, B) = min(min_a dist_L^-(a, B), min_b dist_L^+(A, b)).
"""

from __future__ import annotations

import numpy as np

from .core import CausalModel
from .errors import DomainError, StructuralError
from .metric_hyperspace import FiniteSet

EventSet = FiniteSet


def event_set(model: CausalModel, elements) -> EventSet:
    point = getattr(model, "point", None)
    return FiniteSet(model, [point(e) if point else e for e in elements])


def _model(A: EventSet, B: EventSet) -> CausalModel:
    if A.space != B.space:
        raise StructuralError("event sets belong to different models")
    return A.space


def _both_ways(rel: np.ndarray) -> bool:
    return bool(rel.any(axis=1).all() and rel.any(axis=0).all())


def chron_H(A: EventSet, B: EventSet) -> bool:
    return _both_ways(_model(A, B).relation_matrices(A.points, B.points)["chron"])


def causal_H(A: EventSet, B: EventSet) -> bool:
    return _both_ways(_model(A, B).relation_matrices(A.points, B.points)["causal"])


def dist_L_minus(x, C: EventSet) -> float:
    m = C.space
    return max(m.tau(x, c) for c in C.points)


def dist_L_plus(C: EventSet, x) -> float:
    m = C.space
    return max(m.tau(c, x) for c in C.points)


def lorentz_tubular_membership(C: EventSet, r: float, x, sign: str) -> bool:
    """x in U^{L,-}_r(C) (sign '-') or U^{L,+}_r(C) (sign '+')."""
    if not r > 0:
        raise DomainError("Lorentzian tubular radius must be positive")
    if sign == "-":
        return dist_L_minus(x, C) >= r
    if sign == "+":
        return dist_L_plus(C, x) >= r
    raise DomainError(f"sign must be '+' or '-', got {sign!r}")


def _tau_H_from(T: np.ndarray) -> float:
    return float(min(T.max(axis=1).min(), T.max(axis=0).min()))


def tau_H(A: EventSet, B: EventSet) -> float:
    T = np.asarray(_model(A, B).relation_matrices(A.points, B.points)["tau"], dtype=float)
    return _tau_H_from(T)


class HyperspaceModel(CausalModel):
    """Finite event sets of a base model with d_H, <<_H, <=_H and tau_H."""

    def __init__(self, base: CausalModel):
        self.base = base
        self.name = f"H({getattr(base, 'name', 'model')})"

    def _rel(self, A, B):
        if A.space != self.base or B.space != self.base:
            raise StructuralError("event set does not belong to this hyperspace")
        return self.base.relation_matrices(A.points, B.points)

    def chron(self, A, B):
        return _both_ways(self._rel(A, B)["chron"])

    def causal(self, A, B):
        return _both_ways(self._rel(A, B)["causal"])

    def tau(self, A, B):
        return _tau_H_from(np.asarray(self._rel(A, B)["tau"], dtype=float))

    def dist(self, A, B):
        D = np.asarray(self._rel(A, B)["dist"], dtype=float)
        return float(max(D.min(axis=1).max(), D.min(axis=0).max()))

    def relation_matrices(self, xs, ys=None):
        ys = xs if ys is None else ys
        n, m = len(xs), len(ys)
        out = {
            "chron": np.zeros((n, m), dtype=bool),
            "causal": np.zeros((n, m), dtype=bool),
            "tau": np.zeros((n, m)),
            "dist": np.zeros((n, m)),
        }
        for i, A in enumerate(xs):
            for j, B in enumerate(ys):
                R = self._rel(A, B)
                T = np.asarray(R["tau"], dtype=float)
                D = np.asarray(R["dist"], dtype=float)
                out["chron"][i, j] = _both_ways(R["chron"])
                out["causal"][i, j] = _both_ways(R["causal"])
                out["tau"][i, j] = _tau_H_from(T)
                out["dist"][i, j] = max(D.min(axis=1).max(), D.min(axis=0).max())
        return out
