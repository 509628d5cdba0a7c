"""Lorentzian pre-length spaces as in-process models, plus the audit engine.

A model supplies four functions on its elements: ``chron`` (the
chronological relation), ``causal`` (the causal relation), ``tau`` (time
separation, a float that may be ``math.inf``) and ``dist`` (the metric).
Chronology is evaluated with exact float comparisons; null pairs are causal
but never chronological.

The audits evaluate every relation on all ordered pairs of a sample and then
check the axioms over all pairs and triples (or a seeded random subset of
triples when the sample is too large to enumerate). A failing check always
carries concrete witnesses.
"""

from __future__ import annotations

import bisect
import dataclasses
import math
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .errors import DomainError, StructuralError
from .metric_hyperspace import SampledCurve

TIMELIKE = "timelike"
CAUSAL = "causal"
NULL = "null"
NOT_CAUSAL = "not_causal"

DEFAULT_TOL = 1e-9
MAX_WITNESSES = 5


class CausalModel:
    """Interface of a Lorentzian pre-length space.

    Subclasses implement the four scalar functions; ``relation_matrices`` may
    be overridden with a vectorised version but must agree with them exactly.
    """

    name = "model"

    def chron(self, a, b) -> bool:
        raise NotImplementedError

    def causal(self, a, b) -> bool:
        raise NotImplementedError

    def tau(self, a, b) -> float:
        raise NotImplementedError

    def dist(self, a, b) -> float:
        raise NotImplementedError

    def interpolate(self, a, b, lam: float):
        """Point at fraction ``lam`` of a canonical causal path from a to b."""
        raise NotImplementedError(f"{type(self).__name__} has no interpolation")

    def relation_matrices(self, xs: Sequence, ys: Sequence | None = None) -> dict:
        ys = xs if ys is None else ys
        n, m = len(xs), len(ys)
        chron = np.zeros((n, m), dtype=bool)
        causal = np.zeros((n, m), dtype=bool)
        tau = np.zeros((n, m))
        dist = np.zeros((n, m))
        for i, a in enumerate(xs):
            for j, b in enumerate(ys):
                chron[i, j] = self.chron(a, b)
                causal[i, j] = self.causal(a, b)
                tau[i, j] = self.tau(a, b)
                dist[i, j] = self.dist(a, b)
        return {"chron": chron, "causal": causal, "tau": tau, "dist": dist}


class Minkowski1(CausalModel):
    """The real line with its standard time orientation."""

    name = "R11"

    def __eq__(self, other):
        return isinstance(other, Minkowski1)

    def __hash__(self):
        return hash(Minkowski1)

    def _check(self, *xs):
        for x in xs:
            if not isinstance(x, (int, float, np.floating, np.integer)):
                raise StructuralError(f"{x!r} is not a point of the real line")

    def chron(self, a, b):
        self._check(a, b)
        return a < b

    def causal(self, a, b):
        self._check(a, b)
        return a <= b

    def tau(self, a, b):
        self._check(a, b)
        return b - a if a <= b else 0.0

    def dist(self, a, b):
        self._check(a, b)
        return abs(b - a)

    def interpolate(self, a, b, lam):
        if lam == 1:
            return b
        return a + lam * (b - a)

    def relation_matrices(self, xs, ys=None):
        ys = xs if ys is None else ys
        X = np.asarray(xs, dtype=float)[:, None]
        Y = np.asarray(ys, dtype=float)[None, :]
        diff = Y - X
        causal = X <= Y
        return {
            "chron": X < Y,
            "causal": causal,
            "tau": np.where(causal, diff, 0.0),
            "dist": np.abs(diff),
        }


class FiniteModel(CausalModel):
    """A model given by explicit tables over labelled elements.

    ``chron`` and ``causal`` are collections of label pairs, ``tau`` maps a
    label pair to its separation (missing pairs are 0) and ``dist`` likewise
    (missing off-diagonal pairs default to 1, the discrete metric).
    """

    def __init__(self, elements, chron=(), causal=(), tau=None, dist=None, name="table"):
        self.elements = list(elements)
        self._labels = set(self.elements)
        self._chron = {tuple(p) for p in chron}
        self._causal = {tuple(p) for p in causal}
        self._tau = {tuple(k): float(v) for k, v in (tau or {}).items()}
        self._dist = {tuple(k): float(v) for k, v in (dist or {}).items()}
        self.name = name

    def _check(self, a, b):
        if a not in self._labels or b not in self._labels:
            raise StructuralError(f"unknown element in pair {(a, b)!r}")

    def chron(self, a, b):
        self._check(a, b)
        return (a, b) in self._chron

    def causal(self, a, b):
        self._check(a, b)
        return (a, b) in self._causal

    def tau(self, a, b):
        self._check(a, b)
        return self._tau.get((a, b), 0.0)

    def dist(self, a, b):
        self._check(a, b)
        if a == b:
            return 0.0
        if (a, b) in self._dist:
            return self._dist[(a, b)]
        return self._dist.get((b, a), 1.0)


def in_chron_future(m: CausalModel, base, q) -> bool:
    return m.chron(base, q)


def in_causal_future(m: CausalModel, base, q) -> bool:
    return m.causal(base, q)


def in_chron_past(m: CausalModel, base, q) -> bool:
    return m.chron(q, base)


def in_causal_past(m: CausalModel, base, q) -> bool:
    return m.causal(q, base)


def classify_curve(m: CausalModel, c: SampledCurve) -> str:
    """Causal character of a sampled curve, judged on all ordered sample pairs."""
    if len(c) < 2:
        raise DomainError("classification needs at least 2 samples")
    M = m.relation_matrices(c.points)
    upper = np.triu(np.ones(M["chron"].shape, dtype=bool), k=1)
    if M["chron"][upper].all():
        return TIMELIKE
    if M["causal"][upper].all():
        return NULL if not M["chron"][upper].any() else CAUSAL
    return NOT_CAUSAL


def curve_length_tau(m: CausalModel, c: SampledCurve) -> float:
    """Sum of tau over consecutive samples.

    By the reverse triangle inequality this can only decrease under
    refinement, so it bounds the tau-length of the underlying curve from above.
    """
    if classify_curve(m, c) == NOT_CAUSAL:
        raise DomainError("tau-length is only defined for causal curves")
    return math.fsum(m.tau(p, q) for p, q in c.segments())


# ---------------------------------------------------------------- audits


@dataclass
class AxiomResult:
    passed: bool = True
    checked: int = 0
    violations: int = 0
    witnesses: list = field(default_factory=list)


@dataclass
class AxiomReport:
    model: str
    seed: int
    n_elements: int
    n_pairs: int
    n_triples: int
    axioms: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.axioms.values())

    def failures(self) -> list[str]:
        return [k for k, r in self.axioms.items() if not r.passed]

    def merge(self, other: "AxiomReport") -> "AxiomReport":
        self.axioms.update(other.axioms)
        return self

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "seed": self.seed,
            "elements": self.n_elements,
            "pairs": self.n_pairs,
            "triples": self.n_triples,
            "passed": self.passed,
            "axioms": {
                k: {
                    "passed": r.passed,
                    "checked": r.checked,
                    "violations": r.violations,
                    "witnesses": [plain(w) for w in r.witnesses],
                }
                for k, r in self.axioms.items()
            },
        }


def plain(obj: Any):
    """JSON-friendly rendering of model elements (witness tuples, events, sets)."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        if hasattr(obj, "to_dict"):
            return obj.to_dict()
        return {f.name: plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if hasattr(obj, "_asdict"):
        return {k: plain(v) for k, v in obj._asdict().items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, float) and math.isinf(obj):
        return "inf" if obj > 0 else "-inf"
    return obj


class _Recorder:
    def __init__(self, sample):
        self.sample = sample
        self.results: dict[str, AxiomResult] = {}

    def record(self, name: str, mask: np.ndarray, checked: int, index_arrays):
        res = self.results.setdefault(name, AxiomResult())
        res.checked += int(checked)
        bad = int(mask.sum())
        if bad:
            res.passed = False
            res.violations += bad
            idx = np.argwhere(mask)
            for row in idx[: MAX_WITNESSES - len(res.witnesses)]:
                ids = [int(arr[tuple(row)]) for arr in index_arrays]
                res.witnesses.append(tuple(self.sample[i] for i in ids))

    def touch(self, name):
        self.results.setdefault(name, AxiomResult())


def _triples(n: int, max_triples: int, seed: int, M: dict):
    """Yield (I, J, K) index arrays covering the triples to check.

    All n^3 triples when that fits in ``max_triples``; otherwise a seeded
    draw, half along causal chains (so chain-conditioned axioms are not
    vacuous) and half uniform.
    """
    if n ** 3 <= max_triples:
        ar = np.arange(n)
        for j in range(n):
            I, K = np.meshgrid(ar, ar, indexing="ij")
            yield I, np.full_like(I, j), K
        return
    rng = np.random.default_rng(seed)
    half = max_triples // 2
    I = rng.integers(0, n, size=half)
    J = rng.integers(0, n, size=half)
    K = rng.integers(0, n, size=half)
    yield I, J, K
    succ = [np.flatnonzero(row) for row in M["causal"]]
    ci = rng.integers(0, n, size=max_triples - half)
    cj = np.array([rng.choice(succ[i]) if len(succ[i]) else i for i in ci])
    ck = np.array([rng.choice(succ[j]) if len(succ[j]) else j for j in cj])
    yield ci, cj, ck


def _matrices(m: CausalModel, sample):
    M = m.relation_matrices(list(sample))
    M["tau"] = np.asarray(M["tau"], dtype=float)
    M["dist"] = np.asarray(M["dist"], dtype=float)
    return M


def audit_axioms(
    m: CausalModel,
    sample: Sequence,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    max_triples: int = 50_000_000,
) -> AxiomReport:
    """Check the pre-length space axioms (and the metric axioms of ``dist``)."""
    sample = list(sample)
    if not sample:
        raise DomainError("audit sample must be nonempty")
    n = len(sample)
    M = _matrices(m, sample)
    C, X, T, D = M["causal"], M["chron"], M["tau"], M["dist"]
    rec = _Recorder(sample)
    I2, J2 = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    diag = np.arange(n)

    rec.record("causal_reflexive", ~C[diag, diag], n, [diag])
    rec.record("chron_implies_causal", X & ~C, n * n, [I2, J2])
    rec.record("tau_nonnegative", ~(T >= 0), n * n, [I2, J2])
    rec.record("tau_positive_iff_chron", (T > 0) != X, n * n, [I2, J2])
    rec.record("tau_zero_off_causal", ~C & (T != 0), n * n, [I2, J2])
    rec.record("dist_nonnegative", ~(D >= 0), n * n, [I2, J2])
    rec.record("dist_symmetric", np.abs(D - D.T) > tol, n * n, [I2, J2])
    rec.record("dist_zero_on_diagonal", D[diag, diag] != 0, n, [diag])
    distinct = np.array([[a != b for b in sample] for a in sample], dtype=bool) if n <= 2000 else None
    if distinct is not None:
        rec.record("dist_positive_off_diagonal", distinct & ~(D > 0), n * n, [I2, J2])

    n_triples = 0
    for I, J, K in _triples(n, max_triples, seed, M):
        n_triples += I.size
        cij, cjk, cik = C[I, J], C[J, K], C[I, K]
        xij, xjk, xik = X[I, J], X[J, K], X[I, K]
        chain = cij & cjk
        rec.record("causal_transitive", chain & ~cik, chain.sum(), [I, J, K])
        xchain = xij & xjk
        rec.record("chron_transitive", xchain & ~xik, xchain.sum(), [I, J, K])
        with np.errstate(invalid="ignore"):
            lhs = T[I, K]
            rhs = T[I, J] + T[J, K]
            reverse_bad = chain & ~((lhs >= rhs - tol) | (lhs == math.inf))
        rec.record("reverse_triangle", reverse_bad, chain.sum(), [I, J, K])
        with np.errstate(invalid="ignore"):
            tri_bad = D[I, K] > D[I, J] + D[J, K] + tol
        rec.record("dist_triangle", tri_bad, I.size, [I, J, K])
    return AxiomReport(
        model=getattr(m, "name", type(m).__name__),
        seed=seed,
        n_elements=n,
        n_pairs=n * n,
        n_triples=n_triples,
        axioms=rec.results,
    )


def audit_pushup(
    m: CausalModel, sample: Sequence, seed: int = 0, max_triples: int = 50_000_000
) -> AxiomReport:
    """x <= y << z or x << y <= z must give x << z."""
    sample = list(sample)
    if not sample:
        raise DomainError("audit sample must be nonempty")
    n = len(sample)
    M = _matrices(m, sample)
    C, X = M["causal"], M["chron"]
    rec = _Recorder(sample)
    rec.touch("push_up")
    n_triples = 0
    for I, J, K in _triples(n, max_triples, seed, M):
        n_triples += I.size
        premise = (C[I, J] & X[J, K]) | (X[I, J] & C[J, K])
        rec.record("push_up", premise & ~X[I, K], premise.sum(), [I, J, K])
    return AxiomReport(
        model=getattr(m, "name", type(m).__name__),
        seed=seed,
        n_elements=n,
        n_pairs=n * n,
        n_triples=n_triples,
        axioms=rec.results,
    )


def curve_at(m: CausalModel, c: SampledCurve, u: float):
    """Point of the curve at parameter u, interpolating causally between samples."""
    params = c.params
    if not params[0] <= u <= params[-1]:
        raise DomainError(f"parameter {u!r} outside [{params[0]!r}, {params[-1]!r}]")
    k = bisect.bisect_right(params, u) - 1
    if params[k] == u:
        return c.points[k]
    lam = (u - params[k]) / (params[k + 1] - params[k])
    return m.interpolate(c.points[k], c.points[k + 1], lam)
