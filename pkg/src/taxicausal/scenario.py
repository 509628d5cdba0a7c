"""Scenario files: one JSON document naming the objects a CLI run works on.

    {
      "backend":   {"kind": "euclidean", "dim": 2},
      "events":    {"e1": {"t": 0.0, "x": [0.0, 0.0]}, ...},
      "diamonds":  {"D1": {"bottom": {...event...}, "top": {...event...}}, ...},
      "sets":      {"A": {"kind": "points", "elements": [[0.0, 0.0], ...]},
                    "S": {"kind": "events", "elements": [{...event...}, ...]}},
      "intervals": {"I1": [-1.0, 1.0], ...},
      "audit":     {"samples": 100, "seed": 0, "grid": 0.05, "tables": [...]}
    }

Names are unique across all sections. Audit tables describe finite models
directly (elements, chron and causal pairs, tau and dist triples); they are
audited next to the shipped models, which is how a deliberately broken
table is exercised.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from .backends import Backend, backend_from_dict
from .core import FiniteModel
from .errors import DomainError, TaxicausalError
from .metric_hyperspace import FiniteSet
from .minkowski_taxi import Diamond, Event, MinkowskiTaxicab

SECTIONS = ("backend", "events", "diamonds", "sets", "intervals", "audit")


class ScenarioError(TaxicausalError):
    """A scenario document is malformed; the message names the location."""


@dataclass
class AuditSettings:
    samples: int = 100
    seed: int = 0
    grid: float = 0.05
    tables: list = field(default_factory=list)


@dataclass
class Scenario:
    backend: Backend
    events: dict = field(default_factory=dict)
    diamonds: dict = field(default_factory=dict)
    sets: dict = field(default_factory=dict)
    intervals: dict = field(default_factory=dict)
    audit: AuditSettings = field(default_factory=AuditSettings)

    @property
    def model(self) -> MinkowskiTaxicab:
        return MinkowskiTaxicab(self.backend)

    def lookup(self, name: str):
        for section in ("events", "diamonds", "sets", "intervals"):
            table = getattr(self, section)
            if name in table:
                return section, table[name]
        raise KeyError(name)

    def table_models(self) -> list[FiniteModel]:
        return [_table_model(t) for t in self.audit.tables]

    def to_dict(self) -> dict:
        audit = {"samples": self.audit.samples, "seed": self.audit.seed, "grid": self.audit.grid}
        if self.audit.tables:
            audit["tables"] = self.audit.tables
        return {
            "backend": self.backend.to_dict(),
            "events": {k: _event_out(e) for k, e in self.events.items()},
            "diamonds": {k: {"bottom": _event_out(D.bottom), "top": _event_out(D.top)}
                         for k, D in self.diamonds.items()},
            "sets": {k: _set_out(S) for k, S in self.sets.items()},
            "intervals": {k: [float(lo), float(hi)] for k, (lo, hi) in self.intervals.items()},
            "audit": audit,
        }


def _event_out(e: Event) -> dict:
    return {"t": float(e.t), "x": [float(c) for c in e.x]}


def _set_out(S: FiniteSet) -> dict:
    if isinstance(S.space, MinkowskiTaxicab):
        return {"kind": "events", "elements": [_event_out(e) for e in S.points]}
    return {"kind": "points", "elements": [[float(c) for c in p] for p in S.points]}


def dumps(sc: Scenario) -> str:
    return json.dumps(sc.to_dict(), indent=2) + "\n"


def _no_duplicate_keys(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise ScenarioError(f"duplicate key {k!r}")
        out[k] = v
    return out


def _num(v, where: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ScenarioError(f"{where}: expected a number, got {v!r}")
    return float(v)


def _obj(v, where: str) -> dict:
    if not isinstance(v, dict):
        raise ScenarioError(f"{where}: expected an object")
    return v


def _event_in(M: MinkowskiTaxicab, v, where: str) -> Event:
    v = _obj(v, where)
    if set(v) != {"t", "x"}:
        raise ScenarioError(f"{where}: an event has exactly the fields 't' and 'x'")
    if not isinstance(v["x"], list):
        raise ScenarioError(f"{where}.x: expected a list of coordinates")
    coords = [_num(c, f"{where}.x[{i}]") for i, c in enumerate(v["x"])]
    try:
        return M.event(_num(v["t"], f"{where}.t"), coords)
    except TaxicausalError as exc:
        raise ScenarioError(f"{where}: {exc}") from None


def _table_model(t: dict) -> FiniteModel:
    return FiniteModel(
        t["elements"],
        chron=[tuple(p) for p in t.get("chron", [])],
        causal=[tuple(p) for p in t.get("causal", [])],
        tau={(a, b): v for a, b, v in t.get("tau", [])},
        dist={(a, b): v for a, b, v in t.get("dist", [])},
        name=t.get("name", "table"),
    )


def _check_table(t, where: str) -> dict:
    t = _obj(t, where)
    unknown = set(t) - {"name", "elements", "chron", "causal", "tau", "dist"}
    if unknown:
        raise ScenarioError(f"{where}: unknown fields {sorted(unknown)}")
    elements = t.get("elements")
    if not isinstance(elements, list) or not elements or not all(isinstance(e, str) for e in elements):
        raise ScenarioError(f"{where}.elements: expected a nonempty list of labels")
    labels = set(elements)
    for key in ("chron", "causal"):
        for i, p in enumerate(t.get(key, [])):
            if not (isinstance(p, list) and len(p) == 2 and set(p) <= labels):
                raise ScenarioError(f"{where}.{key}[{i}]: expected a pair of known labels")
    for key in ("tau", "dist"):
        for i, p in enumerate(t.get(key, [])):
            if not (isinstance(p, list) and len(p) == 3 and set(p[:2]) <= labels):
                raise ScenarioError(f"{where}.{key}[{i}]: expected [label, label, value]")
            _num(p[2], f"{where}.{key}[{i}][2]")
    return t


def from_dict(doc) -> Scenario:
    doc = _obj(doc, "scenario")
    unknown = set(doc) - set(SECTIONS)
    if unknown:
        raise ScenarioError(f"scenario: unknown top-level keys {sorted(unknown)}")
    if "backend" not in doc:
        raise ScenarioError("scenario: missing 'backend'")
    try:
        backend = backend_from_dict(_obj(doc["backend"], "backend"))
    except (TaxicausalError, TypeError, ValueError) as exc:
        raise ScenarioError(f"backend: {exc}") from None
    M = MinkowskiTaxicab(backend)
    sc = Scenario(backend)
    seen: set[str] = set()

    def names(section):
        table = _obj(doc.get(section, {}), section)
        for k in table:
            if k in seen:
                raise ScenarioError(f"{section}.{k}: name already used")
            seen.add(k)
        return table.items()

    for k, v in names("events"):
        sc.events[k] = _event_in(M, v, f"events.{k}")
    for k, v in names("diamonds"):
        v = _obj(v, f"diamonds.{k}")
        if set(v) != {"bottom", "top"}:
            raise ScenarioError(f"diamonds.{k}: a diamond has exactly the fields 'bottom' and 'top'")
        b = _event_in(M, v["bottom"], f"diamonds.{k}.bottom")
        t = _event_in(M, v["top"], f"diamonds.{k}.top")
        try:
            sc.diamonds[k] = M.diamond(b, t)
        except DomainError as exc:
            raise ScenarioError(f"diamonds.{k}: {exc}") from None
    for k, v in names("sets"):
        v = _obj(v, f"sets.{k}")
        kind, elements = v.get("kind"), v.get("elements")
        if not isinstance(elements, list) or not elements:
            raise ScenarioError(f"sets.{k}.elements: expected a nonempty list")
        if kind == "events":
            pts = [_event_in(M, e, f"sets.{k}.elements[{i}]") for i, e in enumerate(elements)]
            sc.sets[k] = FiniteSet(M, pts)
        elif kind == "points":
            pts = []
            for i, e in enumerate(elements):
                where = f"sets.{k}.elements[{i}]"
                if not isinstance(e, list):
                    raise ScenarioError(f"{where}: expected a coordinate list")
                try:
                    pts.append(backend.point([_num(c, where) for c in e]))
                except TaxicausalError as exc:
                    raise ScenarioError(f"{where}: {exc}") from None
            sc.sets[k] = FiniteSet(backend, pts)
        else:
            raise ScenarioError(f"sets.{k}.kind: expected 'points' or 'events', got {kind!r}")
    for k, v in names("intervals"):
        if not (isinstance(v, list) and len(v) == 2):
            raise ScenarioError(f"intervals.{k}: expected [lo, hi]")
        lo, hi = _num(v[0], f"intervals.{k}[0]"), _num(v[1], f"intervals.{k}[1]")
        if lo > hi:
            raise ScenarioError(f"intervals.{k}: lo > hi")
        sc.intervals[k] = (lo, hi)
    a = _obj(doc.get("audit", {}), "audit")
    unknown = set(a) - {"samples", "seed", "grid", "tables"}
    if unknown:
        raise ScenarioError(f"audit: unknown fields {sorted(unknown)}")
    samples = a.get("samples", 100)
    seed = a.get("seed", 0)
    if isinstance(samples, bool) or not isinstance(samples, int) or samples < 1:
        raise ScenarioError("audit.samples: expected a positive integer")
    if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
        raise ScenarioError("audit.seed: expected a nonnegative integer")
    grid = _num(a.get("grid", 0.05), "audit.grid")
    if not grid > 0:
        raise ScenarioError("audit.grid: must be positive")
    tables = a.get("tables", [])
    if not isinstance(tables, list):
        raise ScenarioError("audit.tables: expected a list")
    sc.audit = AuditSettings(samples, seed, grid,
                             [_check_table(t, f"audit.tables[{i}]") for i, t in enumerate(tables)])
    return sc


def loads(text: str) -> Scenario:
    try:
        doc = json.loads(text, object_pairs_hook=_no_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_dict(doc)


def load(path) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return loads(text)
    except ScenarioError as exc:
        raise ScenarioError(f"{path}: {exc}") from None


def default_text() -> str:
    return resources.files("taxicausal").joinpath("data/default_scenario.json").read_text(encoding="utf-8")


def default() -> Scenario:
    return loads(default_text())


def interval_center(lo: float, hi: float) -> tuple:
    """[lo, hi] as (x, t): centre and half-width."""
    return ((lo + hi) / 2, (hi - lo) / 2)
