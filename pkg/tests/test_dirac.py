import random

import pytest

from superpoisson import dirac, gallery, lifts, sampling
from superpoisson.charts import make_cotangent_antivb_chart, make_darboux_chart
from superpoisson.dirac import (BivectorGraph, CoordinateSubbundle, GraphError,
                                TwoFormGraph)
from superpoisson.lifts import LiftError
from superpoisson.poisson import bracket
from superpoisson.superpoly import parse_expr, substitute, to_text


def test_cross7_coordinate_graph_is_tangent_and_isotropic():
    inst = gallery.build("cross7")
    assert inst.graph is not None
    assert inst.graph.kind == "coords"
    assert dirac.is_isotropic(inst.graph)
    assert dirac.tangency_residual(inst.theta, inst.graph).is_zero


def test_metric_chart_survivors_fail_isotropy():
    inst = gallery.build("euclidean_cubic")
    ch = inst.chart
    graph = CoordinateSubbundle(ch, ["xi1"])
    assert dirac.tangency_residual(inst.theta, graph).is_zero
    assert not dirac.is_isotropic(graph)
    with pytest.raises(GraphError, match="isotropic"):
        dirac.induced_almost_lie(inst.theta, graph)


def test_non_tangent_graph_is_rejected():
    inst = gallery.build("euclidean_cubic")
    graph = CoordinateSubbundle(inst.chart, ["xi2"])
    res = dirac.tangency_residual(inst.theta, graph)
    assert to_text(res) == "xi1*xi4*xi5"
    with pytest.raises(GraphError, match="residual"):
        dirac.induced_almost_lie(inst.theta, graph)


def test_vanishing_base_coordinates_rejected():
    ch = make_cotangent_antivb_chart(1, 2)
    with pytest.raises(GraphError, match="base"):
        CoordinateSubbundle(ch, ["x1"])
    with pytest.raises(GraphError, match="unknown"):
        CoordinateSubbundle(ch, ["nope"])


def random_bivector(ch, rng, pairs):
    field = ch.zero()
    for (i, j) in pairs:
        c = sampling.random_base_function(ch, rng)
        field = field + c * ch.gen("pi%d" % i) * ch.gen("pi%d" % j)
    if field.is_zero:
        field = ch.gen("pi%d" % pairs[0][0]) * ch.gen("pi%d" % pairs[0][1])
    return field


def random_projectable_potential(ch, rng, rank, dim):
    """Random odd weight-3 potential with an anchor part, a fibre-bracket
    part, and a cubic part, and nothing from the cofibre-heavy sectors.
    The closed graph formulas are exact for this shape only."""
    T = ch.gen("xi1") * ch.gen("p1")
    for _ in range(rng.randrange(4)):
        i = rng.randrange(1, rank + 1)
        a = rng.randrange(1, dim + 1)
        T = T + sampling.random_base_function(ch, rng) \
            * ch.gen("xi%d" % i) * ch.gen("p%d" % a)
    for _ in range(rng.randrange(3)):
        i = rng.randrange(1, rank)
        j = rng.randrange(i + 1, rank + 1)
        k = rng.randrange(1, rank + 1)
        T = T + sampling.random_base_function(ch, rng) \
            * ch.gen("xi%d" % i) * ch.gen("xi%d" % j) * ch.gen("pi%d" % k)
    if rank >= 3:
        for _ in range(rng.randrange(3)):
            T = T + sampling.random_base_function(ch, rng) \
                * ch.gen("xi1") * ch.gen("xi2") * ch.gen("xi3")
    return T


def test_bivector_closed_formula_matches_pullback():
    rng = random.Random(61)
    ch = make_cotangent_antivb_chart(2, 3)
    pairs = [(1, 2), (1, 3), (2, 3)]
    for r in range(12):
        graph = BivectorGraph(ch, random_bivector(ch, rng, pairs))
        T = random_projectable_potential(ch, rng, 3, 2)
        got = dirac.bivector_closed_formula(T, graph)
        want = dirac.pullback(graph, T)
        assert got == want, r
        assert dirac.is_isotropic(graph)


def test_twoform_residual_route_matches_pullback():
    rng = random.Random(62)
    ch = make_cotangent_antivb_chart(1, 3)
    for r in range(12):
        form = ch.zero()
        for (i, j) in ((1, 2), (1, 3), (2, 3)):
            c = sampling.random_base_function(ch, rng)
            form = form + c * ch.gen("xi%d" % i) * ch.gen("xi%d" % j)
        if form.is_zero:
            form = ch.gen("xi1") * ch.gen("xi2")
        graph = TwoFormGraph(ch, form)
        T = random_projectable_potential(ch, rng, 3, 1)
        got = dirac.twoform_residual_route(T, graph)
        want = dirac.tangency_residual(T, graph)
        assert got == want, r


def test_momentum_split_recomposes():
    rng = random.Random(63)
    ch = make_cotangent_antivb_chart(2, 2)
    kill = {ch.generators[i].name: ch.zero()
            for i in dirac.momentum_indices(ch)}
    for r in range(10):
        P = sampling.random_potential(ch, rng)
        hi, lo = dirac.momentum_split(P)
        assert hi + lo == P
        assert substitute(hi, kill).is_zero
        assert substitute(lo, kill) == lo


def test_sector_validation_rejects_bad_fields():
    ch = make_cotangent_antivb_chart(1, 2)
    with pytest.raises(GraphError, match="even"):
        BivectorGraph(ch, ch.gen("pi1"))
    with pytest.raises(GraphError):
        BivectorGraph(ch, parse_expr(ch, "xi1*pi1"))
    with pytest.raises(GraphError):
        TwoFormGraph(ch, parse_expr(ch, "pi1*pi2"))
    other = make_cotangent_antivb_chart(1, 2)
    with pytest.raises(GraphError, match="wrong chart"):
        BivectorGraph(ch, parse_expr(other, "pi1*pi2"))


def test_induced_structure_on_skew_cotangent_graph():
    inst = gallery.build("skew_cotangent")
    ind = dirac.induced_almost_lie(inst.default_potential, inst.graph)
    assert ind.sections == ["pi1", "pi2", "pi3", "pi4"]
    assert ind.base_names == ["x1"]
    assert to_text(ind.bracket_table[("pi1", "pi2")]) == "pi3"
    assert to_text(ind.anchor_table[("pi2", "x1")]) == "x1"
    assert ind.ok
    assert ind.problems() == []
    for label, poly in (ind.symmetry_residuals + ind.leibniz_residuals
                        + ind.d_squared_residuals):
        assert poly.is_zero, label


def test_vb_graph_checks():
    plain = gallery.build("vb_plain")
    assert lifts.weighted_dirac_check(plain.default_potential,
                                      plain.graph).is_zero
    twist = gallery.build("vb_twist")
    res = lifts.weighted_dirac_check(twist.default_potential, twist.graph)
    assert to_text(res) \
        == "x1*dx2*dx3*dq1 + x2*q1*dx1*dx2*dx3 - x3*dx1*dx2*dq1"
    route = dirac.twoform_residual_route(twist.default_potential, twist.graph)
    assert route == dirac.tangency_residual(twist.default_potential,
                                            twist.graph)
    fixed = gallery.build("vb_dirac")
    assert lifts.weighted_dirac_check(fixed.default_potential,
                                      fixed.graph).is_zero


def test_graph_json_round_trips():
    ch = make_cotangent_antivb_chart(1, 3)
    coords = CoordinateSubbundle(ch, ["pi1", "pi2", "pi3"])
    biv = BivectorGraph(ch, parse_expr(ch, "x1*pi1*pi2"))
    form = TwoFormGraph(ch, parse_expr(ch, "x1*xi2*xi3"))
    for graph in (coords, biv, form):
        data = dirac.graph_to_json(graph)
        back = dirac.graph_from_json(ch, data)
        assert back.kind == graph.kind
        assert dirac.graph_to_json(back) == data
    with pytest.raises(GraphError, match="kind"):
        dirac.graph_from_json(ch, {"kind": "mystery"})


def test_route_kind_gates():
    ch = make_cotangent_antivb_chart(1, 2)
    biv = BivectorGraph(ch, parse_expr(ch, "pi1*pi2"))
    form = TwoFormGraph(ch, parse_expr(ch, "xi1*xi2"))
    T = parse_expr(ch, "xi1*p1")
    with pytest.raises(GraphError):
        dirac.bivector_closed_formula(T, form)
    with pytest.raises(GraphError):
        dirac.twoform_residual_route(T, biv)


def lifted_pair(rank, k):
    base = make_cotangent_antivb_chart(0, rank)
    flat = lifts.flatten_chart(base)
    lifted = lifts.tangent_lift_chart(flat, k)
    return flat, lifted


def test_weighted_gate_rejects_offgrade_bivector():
    flat, lifted = lifted_pair(2, 2)
    T = lifts.complete_lift(parse_expr(flat, "xi1*xi2*pi1"), 2, lifted)
    bad = BivectorGraph(lifted, parse_expr(lifted, "pi1_0*pi2_0"))
    with pytest.raises(LiftError, match="weight"):
        lifts.weighted_dirac_check(T, bad)
    good = BivectorGraph(
        lifted, parse_expr(lifted, "pi1_0*pi2_1 + pi1_1*pi2_0"))
    lifts.weighted_dirac_check(T, good)


def test_lifted_coordinate_graph_stays_tangent():
    inst = gallery.build("cross3")
    flat = lifts.flatten_chart(inst.chart)
    lifted = lifts.tangent_lift_chart(flat, 2)
    T = lifts.complete_lift(lifts.flatten_poly(inst.theta, flat), 2, lifted)
    graph = CoordinateSubbundle(flat, ["pi1", "pi2", "pi3"])
    up = lifts.lift_graph(graph, lifted, 2)
    assert set(up.vanish) == {"pi%d_%d" % (i, e)
                              for i in (1, 2, 3) for e in (0, 1)}
    assert lifts.weighted_dirac_check(T, up).is_zero
    biv = BivectorGraph(lifted, parse_expr(lifted, "pi1_0*pi2_1 + pi1_1*pi2_0"))
    with pytest.raises(LiftError, match="coordinate"):
        lifts.lift_graph(biv, lifted, 2)
