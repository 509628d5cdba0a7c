"""Taxicab and uniform Lorentzian products, hyperspaces of finite sets and of
causal diamonds, and a brute-force audit engine for their axioms."""

from .backends import Circle, Euclidean, Taxicab, backend_from_dict
from .core import (
    CausalModel,
    FiniteModel,
    Minkowski1,
    audit_axioms,
    audit_pushup,
    classify_curve,
    curve_length_tau,
)
from .diamond_hyperspace import (
    DiamondModel,
    causal_geodesic,
    causal_H_diamonds,
    diamond_tubular,
    embed,
    hausdorff_diamonds,
    interpolate_diamonds,
    interval_tau_H,
    tau_H_diamonds,
)
from .errors import DegenerateError, DomainError, StructuralError, TaxicausalError
from .lorentz_hyperspace import HyperspaceModel, causal_H, chron_H, event_set, tau_H
from .metric_hyperspace import FiniteSet, SampledCurve, hausdorff, hyperspace_geodesic
from .minkowski_taxi import Diamond, Event, MinkowskiTaxicab, maximal_segment
from .products import TaxicabProduct, UniformProduct

__version__ = "0.1.0"
