"""Seeded samplers and the registry of shipped models for the audit suite."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .backends import Backend, Circle, Euclidean, Taxicab
from .core import AxiomReport, CausalModel, Minkowski1, audit_axioms, audit_pushup
from .diamond_hyperspace import DiamondModel
from .lorentz_hyperspace import HyperspaceModel
from .metric_hyperspace import FiniteSet
from .minkowski_taxi import Diamond, Event, MinkowskiTaxicab
from .products import TaxicabProduct, UniformProduct

# time window of sampled events; wide enough that every backend sees a mix
# of timelike, null and unrelated pairs
T_SPAN = 6.0


def _spatial(X: Backend, rng, n, integer: bool):
    if isinstance(X, Circle):
        C = X.circumference
        if integer:
            return [X.point(v) for v in rng.integers(0, max(1, int(C)), size=n).tolist()]
        return X.random_points(rng, n)
    if integer:
        return [X.point(row) for row in rng.integers(0, 4, size=(n, X.dim)).tolist()]
    return X.random_points(rng, n, 0.0, 3.0)


def sample_reals(rng, n) -> list:
    """Half uniform reals, half small integers (so ties and equalities occur)."""
    k = n // 2
    return rng.uniform(0.0, T_SPAN, size=n - k).tolist() + [float(v) for v in rng.integers(0, 7, size=k)]


def sample_events(M: MinkowskiTaxicab, rng, n) -> list:
    """Events with a share on an integer lattice, where null pairs are exact."""
    k = n // 2
    ts = rng.uniform(0.0, T_SPAN, size=n - k).tolist() + [float(v) for v in rng.integers(0, 7, size=k)]
    xs = _spatial(M.X, rng, n - k, False) + _spatial(M.X, rng, k, True)
    return [Event(t, x) for t, x in zip(ts, xs)]


# integer offsets whose backend distance is exact, used for null diamonds
_EXACT_OFFSETS = {
    "euclidean": [(3, 4), (4, 3), (0, 1), (1, 0), (0, 2), (0, 0)],
    "taxicab": [(1, 2), (2, 0), (0, 1), (1, 1), (0, 0)],
}


def _exact_null_top(M: MinkowskiTaxicab, b: Event, rng) -> Event | None:
    X = M.X
    if isinstance(X, Circle):
        off = [float(rng.integers(0, 4))]
    else:
        table = _EXACT_OFFSETS.get(X.to_dict()["kind"]) if X.dim == 2 else None
        if table is None:
            return None
        off = [float(v) for v in table[int(rng.integers(0, len(table)))]]
    y = X.point([c + o for c, o in zip(b.x, off)])
    return Event(b.t + X.dist(b.x, y), y)


def sample_diamonds(M: MinkowskiTaxicab, rng, n, max_extent: float = 3.0) -> list:
    """Random diamonds: a random bottom and a top inside its causal future.

    Tops of random diamonds lie strictly inside the cone. Null diamonds are
    built only from lattice bottoms and integer offsets with exact distance:
    points pushed onto the cone by arithmetic form null chains whose causal
    relations can break by an ulp, which is rounding rather than geometry.
    """
    out = []
    bottoms = sample_events(M, rng, n)
    lattice = n - n // 2  # sample_events puts lattice events last
    for i, b in enumerate(bottoms):
        if i >= lattice and rng.random() < 0.5:
            top = _exact_null_top(M, b, rng)
            if top is not None:
                out.append(Diamond(b, top))
                continue
        T = float(rng.uniform(0.0, max_extent))
        y = M.X.random_points(rng, 1)[0] if isinstance(M.X, Circle) else \
            tuple(c + v for c, v in zip(b.x, rng.uniform(-1.0, 1.0, size=M.X.dim).tolist()))
        d = M.X.dist(b.x, y)
        if d >= T:
            y = M.X.geodesic_point(b.x, y, T * float(rng.uniform(0.3, 0.95)))
        top = Event(b.t + T, y)
        while not M.causal(b, top):
            top = Event(float(np.nextafter(top.t, np.inf)), y)
        out.append(Diamond(b, top))
    return out


def sample_event_sets(M: CausalModel, draw: Callable, rng, n, max_size: int = 4) -> list:
    return [FiniteSet(M, draw(rng, int(rng.integers(1, max_size + 1)))) for _ in range(n)]


def _jitter(M: MinkowskiTaxicab, e: Event, rng, scale: float) -> Event:
    if isinstance(M.X, Circle):
        x = M.X.point(e.x[0] + float(rng.uniform(-scale, scale)))
    else:
        x = tuple(c + v for c, v in zip(e.x, rng.uniform(-scale, scale, size=M.X.dim).tolist()))
    return Event(e.t + float(rng.uniform(-scale, scale)), x)


def sample_clustered_sets(M: MinkowskiTaxicab, rng, n, max_size: int = 4, scale: float = 0.3) -> list:
    """Small clusters around random centres, so that set relations are not rare."""
    out = []
    for c in sample_events(M, rng, n):
        k = int(rng.integers(1, max_size + 1))
        out.append(FiniteSet(M, [c, *(_jitter(M, c, rng, scale) for _ in range(k - 1))]))
    return out


def sample_uniform_pairs(M: MinkowskiTaxicab, rng, n) -> list:
    """Pairs (e, e') with e' near e, so both factors tend to be related together."""
    return [(e, _jitter(M, e, rng, 1.0)) for e in sample_events(M, rng, n)]


@dataclass
class AuditCase:
    name: str
    model: CausalModel
    sample: list


def shipped_cases(seed: int = 0, n: int = 100) -> list[AuditCase]:
    """Every model the package ships, each with a seeded sample of n elements."""
    rng = np.random.default_rng(seed)
    R = Minkowski1()
    backends = [Euclidean(2), Taxicab(2), Circle(10.0)]
    cases = [AuditCase("R11", R, sample_reals(rng, n))]
    for X in backends:
        M = MinkowskiTaxicab(X)
        cases.append(AuditCase(f"R11 x_T {type(X).__name__.lower()}", M, sample_events(M, rng, n)))
    for X in backends:
        P = TaxicabProduct(R, X)
        cases.append(AuditCase(f"taxicab product R11 x_T {type(X).__name__.lower()} (general form)", P,
                               [tuple(e) for e in sample_events(MinkowskiTaxicab(X), rng, n)]))
    U = UniformProduct(R, R)
    xs, ys = sample_reals(rng, n), sample_reals(rng, n)
    rng.shuffle(ys)
    cases.append(AuditCase("R11 x_oo R11", U, list(zip(xs, ys))))
    Mt = MinkowskiTaxicab(Taxicab(2))
    UT = UniformProduct(Mt, Mt)
    cases.append(AuditCase("taxicab x_oo taxicab", UT,
                           sample_uniform_pairs(Mt, rng, n)))
    Me = MinkowskiTaxicab(Euclidean(2))
    H = HyperspaceModel(Me)
    cases.append(AuditCase("finite-set hyperspace over R11 x_T euclidean", H,
                           sample_clustered_sets(Me, rng, n)))
    HR = HyperspaceModel(R)
    cases.append(AuditCase("finite-set hyperspace over R11", HR,
                           sample_event_sets(R, sample_reals, rng, n)))
    for X in (Euclidean(2), Circle(10.0)):
        M = MinkowskiTaxicab(X)
        cases.append(AuditCase(f"diamonds of R11 x_T {type(X).__name__.lower()}", DiamondModel(M),
                               sample_diamonds(M, rng, n)))
    return cases


def run_case(case: AuditCase, seed: int = 0, tol: float = 1e-9) -> AxiomReport:
    report = audit_axioms(case.model, case.sample, seed=seed, tol=tol)
    report.merge(audit_pushup(case.model, case.sample, seed=seed))
    report.model = case.name
    return report


def run_suite(seed: int = 0, n: int = 100, extra: list[AuditCase] | None = None) -> list[AxiomReport]:
    cases = shipped_cases(seed, n) + list(extra or [])
    return [run_case(c, seed) for c in cases]
