import numpy as np
import pytest

from taxicausal.audits import sample_diamonds
from taxicausal.backends import Circle, Euclidean, Taxicab
from taxicausal.core import Minkowski1, audit_axioms, audit_pushup
from taxicausal.diamond_hyperspace import (
    DiamondModel,
    causal_geodesic,
    causal_geodesic_endpoint_gap,
    causal_H_diamonds,
    diamond_tubular,
    embed,
    embedding_space,
    hausdorff_diamonds,
    interpolate_diamonds,
    interval_diamond,
    interval_tau_H,
    tau_H_diamonds,
)
from taxicausal.errors import DegenerateError, DomainError
from taxicausal.lorentz_hyperspace import causal_H, event_set, tau_H
from taxicausal.metric_hyperspace import FiniteSet, dist_point_set
from taxicausal.minkowski_taxi import Diamond, Event, MinkowskiTaxicab, diamond_membership, diamond_sample

M = MinkowskiTaxicab(Euclidean(2))


def dm(b, top):
    return M.diamond(b, top)


D1 = dm((0, (0, 0)), (10, (0, 0)))
D2 = dm((4, (1, 0)), (16, (2, 0)))


def test_causal_order_examples():
    assert causal_H_diamonds(M, D1, D2)
    assert not causal_H_diamonds(M, D1, dm((0, (1, 0)), (16, (2, 0))))
    assert causal_H_diamonds(M, D1, D1)


def test_hausdorff_examples():
    assert hausdorff_diamonds(M, D1, dm((2, (1, 0)), (11, (0, 1)))) == 3
    assert hausdorff_diamonds(M, D1, D1) == 0
    assert hausdorff_diamonds(M, D1, D2) == 8


def test_tau_examples():
    assert tau_H_diamonds(M, D1, D2) == 3
    assert tau_H_diamonds(M, D1, D1) == 0
    assert tau_H_diamonds(M, D2, D1) == 0


def test_tubular_examples():
    assert diamond_tubular(M, D1, 2) == dm((-2, (0, 0)), (12, (0, 0)))
    assert diamond_tubular(M, D1, 0) == D1
    with pytest.raises(DomainError):
        diamond_tubular(M, D1, -1)


def test_tubular_against_sampled_distance(rng):
    h = 0.1
    Ds = sample_diamonds(M, rng, 100, max_extent=1.0)
    for D in Ds:
        S = diamond_sample(M, D, h)
        r = float(rng.uniform(0, 1))
        e = Event(D.bottom.t + float(rng.uniform(-1.5, 2.5)), tuple(np.add(D.bottom.x, rng.uniform(-1.5, 1.5, 2)).tolist()))
        inside = diamond_membership(M, diamond_tubular(M, D, r), e)
        d = dist_point_set(e, S)
        if inside:
            assert d <= r + 2 * h
        # the closed form is exact; the sampled distance can only overestimate
        if d <= r:
            assert inside


def test_causal_geodesic_examples():
    g2 = causal_geodesic(M, D1, D2, 2)
    assert g2 == Diamond(Event(-2.0, (1.0, 0.0)), Event(12.0, (0.0, 0.0)))
    assert tau_H_diamonds(M, g2, causal_geodesic(M, D1, D2, 5)) == 3
    with pytest.raises(DomainError):
        causal_geodesic(M, D1, D2, 9)
    with pytest.raises(DomainError):
        causal_geodesic(M, D2, D1, 1)
    with pytest.raises(DegenerateError):
        causal_geodesic(M, D1, D1, 0)


def test_causal_geodesic_endpoint_gap_is_a_finding():
    # gamma(0) = (-4,(1,0)) -> (10,(0,0)) is not D1
    gap0, gap1 = causal_geodesic_endpoint_gap(M, D1, D2)
    assert causal_geodesic(M, D1, D2, 0).bottom == (-4.0, (1.0, 0.0))
    assert gap0 == 5 and gap1 == 4


def test_causal_geodesic_vertices_always_ordered(rng):
    for X in (Euclidean(2), Taxicab(2), Circle(10.0)):
        Mx = MinkowskiTaxicab(X)
        Ds = sample_diamonds(Mx, rng, 80)
        for A, B in zip(Ds[::2], Ds[1::2]):
            if not causal_H_diamonds(Mx, A, B) or hausdorff_diamonds(Mx, A, B) == 0:
                continue
            r = hausdorff_diamonds(Mx, A, B)
            for u in np.linspace(0, r, 7):
                g = causal_geodesic(Mx, A, B, float(u))
                # exact in real arithmetic; null configurations can be off by an ulp
                assert g.top.t - g.bottom.t >= X.dist(g.bottom.x, g.top.x) - 1e-9


def test_interpolation_examples():
    r = hausdorff_diamonds(M, D1, D2)
    assert interpolate_diamonds(M, D1, D2, 0) == D1
    assert interpolate_diamonds(M, D1, D2, r) == D2
    A = dm((0, (0, 0)), (10, (0, 0)))
    B = dm((4, (0, 0)), (10, (0, 0)))
    assert interpolate_diamonds(M, A, B, 2).bottom.t == 2
    with pytest.raises(DegenerateError):
        interpolate_diamonds(M, D1, D1, 0)
    with pytest.raises(DomainError):
        interpolate_diamonds(M, D1, D2, r + 1)


@pytest.mark.parametrize("X", [Euclidean(2), Taxicab(2)], ids=repr)
def test_interpolation_distance_identities(X, rng):
    Mx = MinkowskiTaxicab(X)
    Ds = sample_diamonds(Mx, rng, 100)
    for A, B in zip(Ds[::2], Ds[1::2]):
        r = hausdorff_diamonds(Mx, A, B)
        prev, prev_t = A, 0.0
        for t in np.linspace(0, r, 6)[1:]:
            g = interpolate_diamonds(Mx, A, B, float(t))
            assert abs(hausdorff_diamonds(Mx, A, g) - t) <= 1e-9
            assert abs(hausdorff_diamonds(Mx, g, B) - (r - t)) <= 1e-9
            assert abs(hausdorff_diamonds(Mx, prev, g) - (t - prev_t)) <= 1e-9
            prev, prev_t = g, float(t)


def test_embedding_examples():
    assert embed(D1) == ((0.0, (0.0, 0.0)), (10.0, (0.0, 0.0)))
    U = embedding_space(M)
    assert U.dist(embed(D1), embed(D2)) == 8 == hausdorff_diamonds(M, D1, D2)
    assert U.tau(embed(D1), embed(D2)) == 3 == tau_H_diamonds(M, D1, D2)


def test_interval_examples():
    assert interval_tau_H((0, 1), (5, 1)) == 5
    assert interval_tau_H((0, 1), (0, 1)) == 0
    assert interval_tau_H((5, 1), (0, 1)) == 0
    R = Minkowski1()
    assert tau_H_diamonds(R, interval_diamond((0, 1)), interval_diamond((5, 1))) == 5


def test_order_matches_quantifier_form_on_samples(rng):
    Ds = sample_diamonds(M, rng, 40, max_extent=0.6)
    samples = [diamond_sample(M, D, 0.2) for D in Ds]
    for i in range(0, 40, 2):
        for j in range(1, 40, 3):
            assert causal_H_diamonds(M, Ds[i], Ds[j]) == causal_H(samples[i], samples[j])


def test_diamond_model_audits(rng):
    for X in (Euclidean(2), Taxicab(2), Circle(10.0)):
        Mx = MinkowskiTaxicab(X)
        Ds = sample_diamonds(Mx, rng, 60) + [Mx.diamond((1, X.point([1.0])), (1, X.point([1.0]))) if X.dim == 1
                                               else Mx.diamond((1, (1.0, 1.0)), (1, (1.0, 1.0)))]
        DM = DiamondModel(Mx)
        assert audit_axioms(DM, Ds).passed
        assert audit_pushup(DM, Ds).passed


def test_point_diamonds_are_legal():
    P = dm((1, (1, 1)), (1, (1, 1)))
    assert tau_H_diamonds(M, P, P) == 0 and causal_H_diamonds(M, P, P)
    assert diamond_sample(M, P, 0.1).points == (P.bottom,)


def test_nested_diamonds_via_endpoint_bounds(rng):
    # a diamond whose vertices lie in J+(p) & J-(q) has its whole sample there
    p, q = Event(0.0, (0.0, 0.0)), Event(4.0, (0.0, 0.0))
    outer = M.diamond(p, q)
    for D in sample_diamonds(M, rng, 40, max_extent=1.5):
        inner = Diamond(Event(D.bottom.t - 3, D.bottom.x), Event(D.top.t - 3, D.top.x))
        if diamond_membership(M, outer, inner.bottom) and diamond_membership(M, outer, inner.top):
            for e in diamond_sample(M, inner, 0.25).points:
                assert diamond_membership(M, outer, e)
