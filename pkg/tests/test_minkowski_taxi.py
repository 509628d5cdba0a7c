import numpy as np
import pytest

from taxicausal.backends import Circle, Euclidean, Taxicab
from taxicausal.core import CAUSAL, NOT_CAUSAL, TIMELIKE, classify_curve, curve_length_tau
from taxicausal.errors import DomainError, StructuralError
from taxicausal.metric_hyperspace import SampledCurve, curve_length_d
from taxicausal.minkowski_taxi import (
    Diamond,
    Event,
    MinkowskiTaxicab,
    alt_maximal_curves,
    check_imprisonment_bound,
    diamond_membership,
    diamond_sample,
    event_causal,
    event_chron,
    event_dist,
    event_tau,
    localizing_membership,
    maximal_segment,
    staircase_curve,
)

M = MinkowskiTaxicab(Euclidean(2))
O = Event(0.0, (0.0, 0.0))
E7 = Event(7.0, (3.0, 4.0))


def test_event_examples():
    assert event_tau(M, O, E7) == 2 and event_dist(M, O, E7) == 12
    N = Event(5.0, (3.0, 4.0))
    assert event_tau(M, O, N) == 0 and event_causal(M, O, N) and not event_chron(M, O, N)
    with pytest.raises(StructuralError):
        MinkowskiTaxicab("euclidean")


def test_maximal_segment_examples():
    c = maximal_segment(M, O, E7, 4)
    assert c.params[2] == 1.0 and c.points[2] == (3.5, (1.5, 2.0))
    null = maximal_segment(M, O, Event(5.0, (3.0, 4.0)), 4)
    assert null.params[-1] == 1.0
    assert curve_length_tau(M, null) == 0 and curve_length_d(M, null) == 10
    c64 = maximal_segment(M, O, E7, 63)
    assert abs(curve_length_tau(M, c64) - 2) <= 1e-9 and abs(curve_length_d(M, c64) - 12) <= 1e-9


def test_maximal_segment_errors():
    with pytest.raises(DomainError):
        maximal_segment(M, E7, O)
    with pytest.raises(DomainError):
        maximal_segment(M, O, O)


def test_maximal_segment_tau_between_samples_is_parameter_gap(rng):
    for X in (Euclidean(2), Taxicab(2), Circle(10.0)):
        Mx = MinkowskiTaxicab(X)
        for _ in range(20):
            e1 = Event(0.0, X.random_points(rng, 1)[0])
            e2 = Event(float(rng.uniform(6, 9)), X.random_points(rng, 1, 0.0, 3.0)[0])
            c = maximal_segment(Mx, e1, e2, 8)
            for i in range(len(c)):
                for j in range(i + 1, len(c)):
                    assert abs(Mx.tau(c.points[i], c.points[j]) - (c.params[j] - c.params[i])) <= 1e-9


def test_staircase_examples():
    via_time = staircase_curve(M, O, E7, [(2.0, 0.0)])
    assert curve_length_tau(M, via_time) == 2
    via_space = staircase_curve(M, O, E7, [(5.0, 5.0)])
    assert via_space.points[1] == (5.0, (3.0, 4.0))
    assert curve_length_tau(M, via_space) == 2
    with pytest.raises(DomainError):
        staircase_curve(M, O, E7, [(1.0, 3.0)])


def test_alt_maximal_curves():
    curves = alt_maximal_curves(M, O, E7, 5, seed=3)
    assert len(curves) == 5
    for c in curves:
        assert abs(curve_length_tau(M, c) - 2) <= 1e-9
        assert classify_curve(M, c) in (TIMELIKE, CAUSAL)
    for i in range(5):
        for j in range(i + 1, 5):
            assert curves[i].points != curves[j].points
    assert [c.points for c in alt_maximal_curves(M, O, E7, 5, seed=3)] == [c.points for c in curves]
    with pytest.raises(DomainError):
        alt_maximal_curves(M, O, Event(5.0, (3.0, 4.0)), 3)
    with pytest.raises(DomainError):
        alt_maximal_curves(M, O, E7, 1)


def test_diamond_membership_examples():
    D = M.diamond(O, Event(10.0, (0.0, 0.0)))
    assert diamond_membership(M, D, Event(5.0, (2.0, 0.0)))
    assert not diamond_membership(M, D, Event(5.0, (6.0, 0.0)))
    assert diamond_membership(M, D, D.bottom)
    with pytest.raises(DomainError):
        M.diamond(E7, O)


def test_diamond_sample_examples():
    D = M.diamond(O, O)
    assert diamond_sample(M, D, 0.5).points == (O,)
    M1 = MinkowskiTaxicab(Euclidean(1))
    S = diamond_sample(M1, M1.diamond((0, (0,)), (2, (0,))), 1)
    assert set(S.points) == {(0.0, (0.0,)), (1.0, (-1.0,)), (1.0, (0.0,)), (1.0, (1.0,)), (2.0, (0.0,))}
    with pytest.raises(DomainError):
        diamond_sample(M, D, 0)


@pytest.mark.parametrize("X", [Euclidean(2), Taxicab(2), Circle(10.0)], ids=repr)
def test_diamond_samples_are_inside_and_bounded(X, rng):
    from taxicausal.audits import sample_diamonds

    Mx = MinkowskiTaxicab(X)
    for D in sample_diamonds(Mx, rng, 30, max_extent=1.0):
        S = diamond_sample(Mx, D, 0.2)
        assert D.bottom in S.points and D.top in S.points
        T = D.top.t - D.bottom.t
        for e in S.points:
            assert diamond_membership(Mx, D, e)
            assert D.bottom.t <= e.t <= D.top.t
            assert X.dist(D.bottom.x, e.x) <= T
        assert list(S.points) == sorted(S.points)


def test_localizing_examples():
    assert localizing_membership(M, O, 2, O)
    assert not localizing_membership(M, O, 2, Event(0.0, (2.0, 0.0)))
    assert localizing_membership(M, O, 2, Event(1.5, (0.0, 0.0)))
    with pytest.raises(DomainError):
        localizing_membership(M, O, 0, O)


def test_imprisonment_examples():
    c = SampledCurve([0, 1], [Event(-0.95, (0.0, 0.0)), Event(0.95, (0.0, 0.0))])
    assert check_imprisonment_bound(M, O, 1, c)
    seg = maximal_segment(M, Event(-1.5, (0.0, 0.0)), Event(1.5, (0.2, 0.3)), 6)
    assert check_imprisonment_bound(M, O, 2, seg)
    with pytest.raises(DomainError):
        check_imprisonment_bound(M, O, 1, SampledCurve([0, 1], [O, Event(5.0, (0.0, 0.0))]))


def test_out_and_back_curve_exceeds_two_r():
    # A causal curve that drifts out along +x and comes back stays inside the
    # localizing set but is longer than 2r in d_T: the 2r bound needs the
    # spatial part to run along a single geodesic.
    M1 = MinkowskiTaxicab(Euclidean(1))
    eps = 0.05
    pts = [Event(-1 + eps, (0.0,)), Event(-1 + eps + (1 - eps), (1 - eps,)),
           Event(-1 + eps + 2 * (1 - eps) - 1e-3, (1e-3,))]
    c = SampledCurve([0, 1, 2], pts)
    assert classify_curve(M1, c) != NOT_CAUSAL
    assert all(localizing_membership(M1, Event(0.0, (0.0,)), 1, p) for p in pts)
    assert not check_imprisonment_bound(M1, Event(0.0, (0.0,)), 1, c)
    assert curve_length_d(M1, c) < 4


def test_causal_relation_is_closed_under_limits():
    a, b = O, Event(5.0, (3.0, 4.0))
    for k in range(1, 30):
        eps = 2.0 ** -k
        bk = Event(5.0 + eps, (3.0, 4.0))
        assert M.causal(a, bk)
    assert M.causal(a, b)


def test_relation_matrices_match_scalars(rng):
    from taxicausal.audits import sample_events

    for X in (Euclidean(2), Taxicab(2), Circle(10.0)):
        Mx = MinkowskiTaxicab(X)
        ev = sample_events(Mx, rng, 40)
        R = Mx.relation_matrices(ev)
        for i, a in enumerate(ev):
            for j, b in enumerate(ev):
                assert R["chron"][i, j] == Mx.chron(a, b)
                assert R["causal"][i, j] == Mx.causal(a, b)
                assert R["tau"][i, j] == Mx.tau(a, b)
                assert R["dist"][i, j] == Mx.dist(a, b)
