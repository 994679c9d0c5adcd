"""Catalogue of pinned instances: charts, potentials and expected values.

Each builder returns an Instance whose expected block records the verdict,
spot values and residuals for one concrete structure.  Every frozen value
was computed by an independent route (hand calculation, a second formula,
or a measured dual route) before being written here; the check runner then
recomputes everything with the library and reports mismatches.

Instances serialize to JSON files under the package data directory.  The
files are the command line's input format, and a test asserts that the
committed files match the builders byte for byte.
"""

import json
import os
from fractions import Fraction

from .superpoly import SuperPoly, parse_expr, to_text
from .poisson import bracket
from .charts import (Chart, EVEN, ODD, chart_from_json, chart_to_json,
                     hyperbolic_metric, identity_metric,
                     make_cotangent_antivb_chart, make_darboux_chart,
                     validate_chart)
from . import complexes, courant, dirac, lifts

SCHEMA_VERSION = 1


class GalleryError(ValueError):
    pass


class Instance:
    """One chart with a potential, optional twist pencil, optional graph,
    optional lift request, and the expected block the checker consumes."""

    def __init__(self, name, chart, theta, expected, *, twist=None,
                 lambdas=(), graph=None, lift_k=None, l_elements=()):
        self.name = name
        self.chart = chart
        self.theta = theta
        self.expected = expected
        self.twist = twist
        self.lambdas = tuple(Fraction(l) for l in lambdas)
        self.graph = graph
        self.lift_k = lift_k
        self.l_elements = tuple(l_elements)

    def potential_at(self, lam):
        if self.twist is None:
            raise GalleryError("instance %s has no twist" % self.name)
        return self.theta + self.twist * Fraction(lam)

    @property
    def default_potential(self):
        """The potential the spot checks run against: the twist at its
        reference value 1 when a pencil is present, theta otherwise."""
        if self.twist is not None:
            return self.theta + self.twist
        return self.theta


# -- concrete data ----------------------------------------------------------

CROSS7_TRIPLES = ((1, 2, 3), (1, 4, 5), (1, 7, 6), (2, 4, 6), (2, 5, 7),
                  (3, 6, 5))
CROSS7_EXTRA_TRIPLE = (3, 4, 7)


def epsilon_table(triples):
    """Totally antisymmetric table with value +1 on each listed triple."""
    eps = {}
    for (i, j, k) in triples:
        for perm in ((i, j, k), (j, k, i), (k, i, j)):
            eps[perm] = 1
        for perm in ((j, i, k), (i, k, j), (k, j, i)):
            eps[perm] = -1
    return eps


def cross_product_potential(chart, triples):
    """(1/2) eps_ijk xi^i xi^j pi_k for the given structure triples."""
    T = chart.zero()
    for (i, j, k), s in sorted(epsilon_table(triples).items()):
        T = T + (chart.gen("xi%d" % i) * chart.gen("xi%d" % j)
                 * chart.gen("pi%d" % k) * Fraction(s, 2))
    return T


def degree2_vb_chart(base_dim=3):
    """Chart of the phase space of a shifted degree-2 bundle: base x/q,
    fibre dx/dq, conjugate momenta p/y and pi/chi, bi-graded with axis 0
    the extra vector-bundle weight and axis 1 the symplectic weight."""
    gens = []
    for a in range(base_dim):
        gens.append(("x%d" % (a + 1), EVEN, (0, 0)))
    gens.append(("q1", EVEN, (1, 0)))
    for a in range(base_dim):
        gens.append(("dx%d" % (a + 1), ODD, (0, 1)))
    gens.append(("dq1", ODD, (1, 1)))
    for a in range(base_dim):
        gens.append(("p%d" % (a + 1), EVEN, (1, 2)))
    gens.append(("y1", EVEN, (0, 2)))
    for a in range(base_dim):
        gens.append(("pi%d" % (a + 1), ODD, (1, 1)))
    gens.append(("chi1", ODD, (0, 1)))
    pairing = []
    for a in range(base_dim):
        pairing.append(("p%d" % (a + 1), "x%d" % (a + 1), Fraction(1)))
        pairing.append(("dx%d" % (a + 1), "pi%d" % (a + 1), Fraction(1)))
    pairing.append(("y1", "q1", Fraction(1)))
    pairing.append(("dq1", "chi1", Fraction(1)))
    roles = {}
    for a in range(base_dim):
        roles["x%d" % (a + 1)] = "base"
        roles["dx%d" % (a + 1)] = "fibre"
        roles["p%d" % (a + 1)] = "momentum"
        roles["pi%d" % (a + 1)] = "cofibre"
    roles["q1"] = "base"
    roles["dq1"] = "fibre"
    roles["y1"] = "momentum"
    roles["chi1"] = "cofibre"
    return Chart("degree2_vb(%d)" % base_dim, 2, gens, pairing,
                 n_manifold=True, symplectic_axes=(1,), roles=roles,
                 lift_degree=2)


def _cross_instance(name, rank, triples, expected, lift_k, l_elements,
                    graph_vanish=None):
    chart = make_cotangent_antivb_chart(0, rank)
    theta = cross_product_potential(chart, triples)
    graph = None
    if graph_vanish is not None:
        graph = dirac.CoordinateSubbundle(chart, graph_vanish)
    return Instance(name, chart, theta, expected, graph=graph,
                    lift_k=lift_k,
                    l_elements=[parse_expr(chart, e) for e in l_elements])


def _build_cross3():
    expected = {
        "verdict": "Courant",
        "spots": [
            {"op": "pre_bracket", "args": ["pi1", "pi2"], "value": "pi3"},
            {"op": "pre_bracket", "args": ["pi2", "pi3"], "value": "pi1"},
            {"op": "pairing", "args": ["pi1", "pi2"], "value": "0"},
            {"op": "pairing", "args": ["xi1", "pi1"], "value": "1"},
            {"op": "jacobiator", "args": ["pi1", "pi2", "pi3"], "value": "0"},
        ],
        "cohomology_point": [1, 3],
        "naive_condition": True,
        "lift_verdict": "Courant",
    }
    return _cross_instance("cross3", 3, ((1, 2, 3),), expected, 3,
                           ["xi1", "xi1*xi2", "xi1*xi2*xi3"])


def _build_cross7():
    expected = {
        "verdict": "PreCourant",
        "spots": [
            {"op": "pre_bracket", "args": ["pi1", "pi2"], "value": "pi3"},
            {"op": "pre_bracket", "args": ["pi2", "pi5"], "value": "pi7"},
            {"op": "pre_bracket", "args": ["pi3", "pi6"], "value": "pi5"},
            {"op": "pairing", "args": ["pi1", "pi2"], "value": "0"},
            {"op": "pairing", "args": ["xi2", "pi2"], "value": "1"},
            {"op": "jacobiator", "args": ["pi1", "pi2", "pi4"],
             "value": "-2*pi7"},
        ],
        "cohomology_point": [1, 7],
        "naive_condition": False,
        "lift_verdict": "PreCourant",
        "dirac": {"isotropic": True, "residual_zero": True},
    }
    return _cross_instance(
        "cross7", 7, CROSS7_TRIPLES, expected, 2,
        ["xi1", "xi1*xi2", "xi1*xi2*xi4", "xi3*xi6"],
        graph_vanish=["xi%d" % i for i in range(1, 8)])


def _build_cross7_full():
    triples = CROSS7_TRIPLES + (CROSS7_EXTRA_TRIPLE,)
    expected = {
        "verdict": "PreCourant",
        "spots": [
            {"op": "pre_bracket", "args": ["pi3", "pi4"], "value": "pi7"},
            {"op": "pre_bracket", "args": ["pi1", "pi2"], "value": "pi3"},
        ],
        "cohomology_point": [1, 7],
        "naive_condition": False,
        "lift_verdict": "PreCourant",
    }
    return _cross_instance("cross7_full", 7, triples, expected, 2,
                           ["xi1", "xi3*xi4", "xi3*xi4*xi7"])


def _build_twisted_pencil():
    chart = make_cotangent_antivb_chart(1, 4)
    theta = parse_expr(chart, "xi1*p1")
    alpha = parse_expr(chart, "x1*xi2*xi3*xi4")
    expected = {
        "verdicts": {"0": "Courant", "1": "PreCourant", "-2": "PreCourant"},
        "pre_courant": True,
        "twist_sigma_factor": "2",
        "spots": [
            {"op": "poisson", "args": ["xi1*p1", "xi1*p1"], "value": "0"},
            {"op": "poisson",
             "args": ["x1*xi2*xi3*xi4", "x1*xi2*xi3*xi4"], "value": "0"},
            {"op": "poisson", "args": ["xi1*p1", "x1*xi2*xi3*xi4"],
             "value": "xi1*xi2*xi3*xi4"},
        ],
        "lift_verdict": "PreCourant",
    }
    return Instance("twisted_pencil", chart, theta, expected, twist=alpha,
                    lambdas=(0, 1, -2), lift_k=2,
                    l_elements=[parse_expr(chart, e) for e in
                                ["xi2", "x1*xi3", "xi2*xi3*xi4",
                                 "xi1*xi2*xi3"]])


def _build_twisted_pencil_closed():
    chart = make_cotangent_antivb_chart(1, 4)
    theta = parse_expr(chart, "xi1*p1")
    alpha = parse_expr(chart, "x1*xi1*xi2*xi3")
    expected = {
        "verdicts": {"0": "Courant", "1": "Courant", "-2": "Courant"},
        "pre_courant": True,
        "twist_sigma_factor": "2",
        "spots": [
            {"op": "poisson", "args": ["xi1*p1", "x1*xi1*xi2*xi3"],
             "value": "0"},
        ],
        "lift_verdict": "Courant",
    }
    return Instance("twisted_pencil_closed", chart, theta, expected,
                    twist=alpha, lambdas=(0, 1, -2), lift_k=2,
                    l_elements=[parse_expr(chart, e) for e in
                                ["xi1", "x1*xi1*xi2", "xi1*xi2*xi3"]])


def _build_bialgebroid():
    chart = make_cotangent_antivb_chart(1, 2)
    theta = parse_expr(chart, "xi1*p1")
    nu = parse_expr(chart, "pi2*p1")
    expected = {
        "verdicts": {"0": "Courant", "1": "Courant", "-2": "Courant"},
        "pre_courant": True,
        "twist_sigma_factor": "2",
        "spots": [
            {"op": "poisson", "args": ["xi1*p1", "pi2*p1"], "value": "0"},
            {"op": "poisson", "args": ["pi2*p1", "pi2*p1"], "value": "0"},
        ],
        "lift_verdict": "Courant",
    }
    return Instance("bialgebroid", chart, theta, expected, twist=nu,
                    lambdas=(0, 1, -2), lift_k=2,
                    l_elements=[parse_expr(chart, e) for e in
                                ["xi1", "pi2", "x1*xi1", "xi1*pi2"]])


_SKEW_BRACKET_TERMS = "xi1*xi2*pi3 + xi3*xi4*pi1"


def _build_action_algebra():
    chart = make_cotangent_antivb_chart(1, 4)
    theta = parse_expr(chart, "-xi2*p1 + " + _SKEW_BRACKET_TERMS)
    expected = {
        "verdict": "PreCourant",
        "spots": [
            {"op": "pre_bracket", "args": ["pi1", "pi2"], "value": "pi3"},
            {"op": "pre_bracket", "args": ["pi3", "pi4"], "value": "pi1"},
            {"op": "pre_bracket", "args": ["pi1", "pi3"], "value": "0"},
            {"op": "anchor", "args": ["pi2", "x1"], "value": "1"},
            {"op": "anchor", "args": ["pi1", "x1"], "value": "0"},
            {"op": "anchor", "args": ["pi3", "x1"], "value": "0"},
            {"op": "jacobiator", "args": ["pi1", "pi2", "pi4"],
             "value": "-pi1"},
            {"op": "jacobiator", "args": ["pi2", "pi3", "pi4"],
             "value": "-pi3"},
            {"op": "jacobiator", "args": ["pi1", "pi2", "pi3"],
             "value": "0"},
        ],
        "lift_verdict": "PreCourant",
    }
    return Instance("action_algebra", chart, theta, expected, lift_k=2,
                    l_elements=[parse_expr(chart, e) for e in
                                ["xi1", "x1*xi2", "xi1*xi3*xi4"]])


def _build_skew_cotangent():
    chart = make_cotangent_antivb_chart(1, 4)
    theta = parse_expr(chart, "-xi2*x1*p1 + " + _SKEW_BRACKET_TERMS)
    expected = {
        "verdict": "PreCourant",
        "spots": [
            {"op": "pre_bracket", "args": ["pi1", "pi2"], "value": "pi3"},
            {"op": "pre_bracket", "args": ["pi3", "pi4"], "value": "pi1"},
            {"op": "anchor", "args": ["pi2", "x1"], "value": "x1"},
            {"op": "anchor", "args": ["pi4", "x1"], "value": "0"},
            {"op": "jacobiator", "args": ["pi1", "pi2", "pi4"],
             "value": "-pi1"},
        ],
        "lift_verdict": "PreCourant",
        "dirac": {"isotropic": True, "residual_zero": True},
    }
    graph = dirac.CoordinateSubbundle(
        chart, ["xi1", "xi2", "xi3", "xi4", "p1"])
    return Instance("skew_cotangent", chart, theta, expected, graph=graph,
                    lift_k=2,
                    l_elements=[parse_expr(chart, e) for e in
                                ["xi2", "x1*xi1", "xi2*xi3*xi4"]])


def _build_rflux():
    chart = make_cotangent_antivb_chart(
        4, 4, fibre_names=["xs%d" % i for i in range(1, 5)])
    theta = parse_expr(chart, "xs2*p1 - xs1*p2")
    flux = parse_expr(chart, "R*xs4*xs3*xs2")
    expected = {
        "verdicts": {"0": "Courant", "1": "PreCourant"},
        "pre_courant": True,
        "twist_sigma_factor": "2",
        "spots": [
            {"op": "poisson", "args": ["xs2*p1 - xs1*p2", "xs2*p1 - xs1*p2"],
             "value": "0"},
            {"op": "poisson", "args": ["R*xs4*xs3*xs2", "R*xs4*xs3*xs2"],
             "value": "0"},
            {"op": "poisson",
             "args": ["xs2*p1 - xs1*p2", "R*xs4*xs3*xs2"],
             "value": "D[R; x2]*xs1*xs2*xs3*xs4"},
            {"op": "nested_poisson",
             "args": ["xs2*p1 - xs1*p2", "R*xs4*xs3*xs2", "f"],
             "value": "0"},
        ],
        "lift_verdict": "PreCourant",
    }
    return Instance("rflux", chart, theta, expected, twist=flux,
                    lambdas=(0, 1), lift_k=2,
                    l_elements=[parse_expr(chart, e) for e in
                                ["xs1", "xs1*xs2", "xs2*xs3*xs4"]])


def _quasi_lambda(chart, a, b):
    """The formal antisymmetric bivector entry for row a, column b."""
    if a == b:
        return chart.zero()
    name = "L%d%d" % (min(a, b), max(a, b))
    sym = SuperPoly.symbol(chart, name)
    return sym if a < b else -sym


def _quasi_dlambda(chart, a, b, c):
    """Formal derivative of the bivector entry by the c-th base coordinate."""
    if a == b:
        return chart.zero()
    name = "L%d%d" % (min(a, b), max(a, b))
    jet = chart.name_to_index["x%d" % c]
    sym = SuperPoly.symbol(chart, name, (jet,))
    return sym if a < b else -sym


def quasi_poisson_obstruction(chart):
    """The trilinear obstruction polynomial rebuilt index by index:
    (1/2) (L^{bc} dL^{ad}/dx^c - L^{dc} dL^{ab}/dx^c - L^{ac} dL^{bd}/dx^c)
    xs_d xs_b df/dx^a, summed over all indices."""
    dim = 3
    out = chart.zero()
    fjet = {a: SuperPoly.symbol(chart, "f", (chart.name_to_index["x%d" % a],))
            for a in range(1, dim + 1)}
    for a in range(1, dim + 1):
        for b in range(1, dim + 1):
            for c in range(1, dim + 1):
                for d in range(1, dim + 1):
                    coeff = (_quasi_lambda(chart, b, c)
                             * _quasi_dlambda(chart, a, d, c)
                             - _quasi_lambda(chart, d, c)
                             * _quasi_dlambda(chart, a, b, c)
                             - _quasi_lambda(chart, a, c)
                             * _quasi_dlambda(chart, b, d, c))
                    out = out + (coeff * chart.gen("xs%d" % d)
                                 * chart.gen("xs%d" % b) * fjet[a])
    return out * Fraction(1, 2)


def _build_quasi_poisson():
    dim = 3
    chart = make_cotangent_antivb_chart(
        dim, dim, fibre_names=["xs%d" % i for i in range(1, dim + 1)])
    theta = chart.zero()
    for a in range(1, dim + 1):
        for b in range(1, dim + 1):
            theta = theta + (_quasi_lambda(chart, a, b)
                             * chart.gen("xs%d" % b) * chart.gen("p%d" % a))
    for c in range(1, dim + 1):
        for a in range(1, dim + 1):
            for b in range(1, dim + 1):
                theta = theta - (chart.gen("pi%d" % c)
                                 * _quasi_dlambda(chart, a, b, c)
                                 * chart.gen("xs%d" % b)
                                 * chart.gen("xs%d" % a)) * Fraction(1, 2)
    expected = {
        "verdict": "Nearly",
        "witness_nonzero": True,
        "spots": [
            {"op": "potential_nest", "args": ["f"],
             "value": to_text(quasi_poisson_obstruction(chart))},
        ],
        "lift_verdict": "Nearly",
    }
    return Instance("quasi_poisson", chart, theta, expected, lift_k=2,
                    l_elements=[parse_expr(chart, e) for e in
                                ["xs1", "xs1*xs2", "xs1*xs2*xs3"]])


def _build_euclidean_cubic():
    chart = make_darboux_chart(0, 5)
    theta = parse_expr(chart, "xi1*xi2*xi3 + xi1*xi4*xi5")
    expected = {
        "verdict": "PreCourant",
        "spots": [
            {"op": "poisson",
             "args": ["xi1*xi2*xi3 + xi1*xi4*xi5",
                      "xi1*xi2*xi3 + xi1*xi4*xi5"],
             "value": "2*xi2*xi3*xi4*xi5"},
        ],
        "lift_verdict": "PreCourant",
    }
    return Instance("euclidean_cubic", chart, theta, expected, lift_k=2,
                    l_elements=[parse_expr(chart, e) for e in
                                ["xi1", "xi1*xi4", "xi2*xi3*xi5"]])


def _build_hyperbolic_cubic():
    chart = make_darboux_chart(0, 4, metric=hyperbolic_metric(2))
    theta = parse_expr(chart, "xi1*xi2*xi3 + xi1*xi3*xi4")
    expected = {
        "verdict": "Courant",
        "spots": [
            {"op": "poisson",
             "args": ["xi1*xi2*xi3 + xi1*xi3*xi4",
                      "xi1*xi2*xi3 + xi1*xi3*xi4"],
             "value": "0"},
        ],
        "lift_verdict": "Courant",
    }
    return Instance("hyperbolic_cubic", chart, theta, expected, lift_k=2,
                    l_elements=[parse_expr(chart, e) for e in
                                ["xi1", "xi1*xi2", "xi1*xi2*xi3"]])


def _build_nearly_witness():
    chart = make_darboux_chart(1, 4)
    theta = parse_expr(chart, "xi1*p1 + x1*xi2*xi3*xi4")
    expected = {
        "verdict": "Nearly",
        "witness_nonzero": True,
        "witness_name": "x1",
        "lift_verdict": "Nearly",
    }
    return Instance("nearly_witness", chart, theta, expected, lift_k=2,
                    l_elements=[parse_expr(chart, e) for e in
                                ["xi2", "x1*xi3", "xi2*xi3*xi4"]])


_VB_THETA = "dx1*p1 + dx2*p2 + dx3*p3 + dq1*y1"
_VB_BETA = "q1*x2*dx1*dx2*dx3"
_VB_ALPHA = "-x1*x3*dx2*dq1"


def _build_vb_plain():
    chart = degree2_vb_chart()
    theta = parse_expr(chart, _VB_THETA)
    expected = {
        "verdict": "Courant",
        "dirac": {"isotropic": True, "residual_zero": True},
        "spots": [
            {"op": "anchor", "args": ["pi1", "x1"], "value": "-1"},
            {"op": "anchor", "args": ["chi1", "q1"], "value": "-1"},
            {"op": "anchor", "args": ["dx1", "x1"], "value": "0"},
            {"op": "pre_bracket", "args": ["dx1", "dx2"], "value": "0"},
            {"op": "pairing", "args": ["dx1", "pi1"], "value": "1"},
        ],
    }
    graph = dirac.BivectorGraph(chart, chart.zero())
    return Instance("vb_plain", chart, theta, expected, graph=graph,
                    l_elements=[parse_expr(chart, e) for e in
                                ["dx1", "q1*dx2", "dx1*dx2*dq1"]])


def _build_vb_twist():
    chart = degree2_vb_chart()
    theta = parse_expr(chart, _VB_THETA)
    beta = parse_expr(chart, _VB_BETA)
    alpha = parse_expr(chart, _VB_ALPHA)
    expected = {
        "verdicts": {"0": "Courant", "1": "PreCourant"},
        "pre_courant": True,
        "twist_sigma_factor": "2",
        "dirac": {
            "isotropic": True,
            "residual_zero": False,
            "residual": ("x1*dx2*dx3*dq1 + x2*q1*dx1*dx2*dx3"
                         " - x3*dx1*dx2*dq1"),
        },
    }
    graph = dirac.TwoFormGraph(chart, alpha)
    return Instance("vb_twist", chart, theta, expected, twist=beta,
                    lambdas=(0, 1), graph=graph,
                    l_elements=[parse_expr(chart, e) for e in
                                ["dx1", "x2*dx3", "dx1*dx2*dq1"]])


def _build_vb_dirac():
    chart = degree2_vb_chart()
    theta = parse_expr(chart, _VB_THETA)
    alpha = parse_expr(chart, _VB_ALPHA)
    beta = chart.zero() - bracket(theta, alpha)
    expected = {
        "verdict": "Courant",
        "dirac": {"isotropic": True, "residual_zero": True},
    }
    graph = dirac.TwoFormGraph(chart, alpha)
    return Instance("vb_dirac", chart, theta + beta, expected, graph=graph,
                    l_elements=[parse_expr(chart, e) for e in
                                ["dq1", "x1*dx2", "dx2*dx3*dq1"]])


_BUILDERS = {
    "cross3": _build_cross3,
    "cross7": _build_cross7,
    "cross7_full": _build_cross7_full,
    "twisted_pencil": _build_twisted_pencil,
    "twisted_pencil_closed": _build_twisted_pencil_closed,
    "bialgebroid": _build_bialgebroid,
    "action_algebra": _build_action_algebra,
    "skew_cotangent": _build_skew_cotangent,
    "rflux": _build_rflux,
    "quasi_poisson": _build_quasi_poisson,
    "euclidean_cubic": _build_euclidean_cubic,
    "hyperbolic_cubic": _build_hyperbolic_cubic,
    "nearly_witness": _build_nearly_witness,
    "vb_plain": _build_vb_plain,
    "vb_twist": _build_vb_twist,
    "vb_dirac": _build_vb_dirac,
}

INSTANCE_NAMES = tuple(_BUILDERS)


def names():
    return list(INSTANCE_NAMES)


def build(name):
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise GalleryError("unknown instance %r; known: %s"
                           % (name, ", ".join(INSTANCE_NAMES)))
    return builder()


# -- checking ---------------------------------------------------------------

def _spot_result(inst, spot):
    chart = inst.chart
    args = [parse_expr(chart, a) for a in spot["args"]]
    op = spot["op"]
    T = inst.default_potential
    if op == "poisson":
        return bracket(args[0], args[1])
    if op == "nested_poisson":
        return bracket(bracket(args[0], args[1]), args[2])
    if op == "potential_nest":
        return bracket(T, bracket(T, args[0]))
    if op == "pre_bracket":
        return courant.pre_bracket(T, args[0], args[1])
    if op == "anchor":
        return courant.anchor_apply(T, args[0], args[1])
    if op == "pairing":
        return courant.pairing(args[0], args[1])
    if op == "jacobiator":
        return courant.jacobiator(T, args[0], args[1], args[2])
    raise GalleryError("unknown spot op %r" % op)


def _spot_text(spot):
    return "%s(%s)" % (spot["op"], ", ".join(spot["args"]))


def section_frame(chart):
    """A basis of the weight-1 sections and a dual family with
    <basis[i], dual[j]> = delta_ij."""
    if chart.metric is not None:
        names_, _ = chart.metric
        basis = [chart.gen(nm) for nm in names_]
        return basis, courant.metric_frame(chart)
    basis = []
    dual = []
    for idx in chart.role_indices("fibre"):
        g = chart.generators[idx]
        conj = chart.conjugates(idx)
        if len(conj) != 1:
            raise GalleryError(
                "no single conjugate for section %s" % g.name)
        hj, c = conj[0]
        basis.append(chart.gen(g.name))
        dual.append(chart.gen(chart.generators[hj].name) * (1 / c))
    if not basis:
        raise GalleryError("chart %s has no fibre sections" % chart.name)
    return basis, dual


def check_instance(inst):
    """Run every expected-value assertion of one instance; returns a list
    of failure descriptions, empty when all hold."""
    failures = []
    chart = inst.chart
    expected = inst.expected
    report = validate_chart(chart)
    failures.extend("chart: " + p for p in report.problems)

    classify_fn = (courant.weighted_classify if chart.lift_degree is not None
                   else courant.classify)

    def check_verdict(P, want, label):
        try:
            courant.validate_potential(P)
        except courant.PotentialError as e:
            failures.append("%s: %s" % (label, e))
            return
        got = classify_fn(P)
        if got.verdict != want:
            failures.append("%s: verdict %s, expected %s"
                            % (label, got.verdict, want))
        return got

    if inst.twist is not None:
        verdicts = expected.get("verdicts", {})
        for lam in inst.lambdas:
            want = verdicts.get(str(lam))
            if want is None:
                failures.append("no expected verdict for lambda %s" % lam)
                continue
            P = inst.potential_at(lam)
            check_verdict(P, want, "lambda %s" % lam)
            factor = expected.get("twist_sigma_factor")
            if factor is not None:
                lhs = bracket(P, P)
                rhs = bracket(inst.theta, inst.twist) * (Fraction(factor)
                                                         * lam)
                if lhs != rhs:
                    failures.append(
                        "lambda %s: {T,T} != %s*lambda*{theta,twist}"
                        % (lam, factor))
    else:
        check_verdict(inst.theta, expected["verdict"], "potential")

    sc = classify_fn(inst.default_potential)
    if expected.get("pre_courant") is not None:
        if sc.is_pre_courant != expected["pre_courant"]:
            failures.append("pre-Courant property is %s, expected %s"
                            % (sc.is_pre_courant, expected["pre_courant"]))
    if expected.get("witness_nonzero"):
        if sc.witness_value is None or sc.witness_value.is_zero:
            failures.append("expected a nonzero classification witness")
        want_name = expected.get("witness_name")
        if want_name is not None and sc.witness_name != want_name:
            failures.append("witness is %r, expected %r"
                            % (sc.witness_name, want_name))

    for spot in expected.get("spots", ()):
        got = _spot_result(inst, spot)
        if spot.get("nonzero"):
            if got.is_zero:
                failures.append("%s: expected nonzero, got 0"
                                % _spot_text(spot))
            continue
        want = parse_expr(chart, spot["value"])
        if got != want:
            failures.append("%s: got %s, expected %s"
                            % (_spot_text(spot), to_text(got), spot["value"]))

    if inst.graph is not None and "dirac" in expected:
        want = expected["dirac"]
        iso = dirac.is_isotropic(inst.graph)
        if iso != want.get("isotropic", True):
            failures.append("graph isotropy is %s, expected %s"
                            % (iso, want.get("isotropic", True)))
        T = inst.default_potential
        if chart.lift_degree is not None:
            residual = lifts.weighted_dirac_check(T, inst.graph)
        else:
            residual = dirac.tangency_residual(T, inst.graph)
        if "residual" in want:
            if residual != parse_expr(chart, want["residual"]):
                failures.append("graph residual %s, expected %s"
                                % (to_text(residual), want["residual"]))
        if want.get("residual_zero") is not None:
            if residual.is_zero != want["residual_zero"]:
                failures.append("graph residual zero is %s, expected %s"
                                % (residual.is_zero, want["residual_zero"]))

    if "cohomology_point" in expected:
        got = complexes.cohomology_point(inst.default_potential)
        if list(got) != list(expected["cohomology_point"]):
            failures.append("point cohomology %s, expected %s"
                            % (list(got), expected["cohomology_point"]))
    if "naive_condition" in expected:
        got = complexes.naive_cohomology_condition(inst.default_potential)
        if got != expected["naive_condition"]:
            failures.append("naive cohomology condition %s, expected %s"
                            % (got, expected["naive_condition"]))

    for el in inst.l_elements:
        if not complexes.naive_membership(inst.default_potential, el):
            failures.append("element %s left the small complex"
                            % to_text(el))
        elif sc.is_pre_courant:
            image = complexes.q_theta(inst.default_potential, el)
            if not complexes.naive_membership(inst.default_potential, image):
                failures.append("differential of %s left the small complex"
                                % to_text(el))

    if inst.lift_k is not None and "lift_verdict" in expected:
        flat = lifts.flatten_chart(chart)
        Tf = lifts.flatten_poly(inst.default_potential, flat)
        Tc = lifts.complete_lift(Tf, inst.lift_k)
        got = courant.weighted_classify(Tc)
        if got.verdict != expected["lift_verdict"]:
            failures.append("lift verdict %s, expected %s"
                            % (got.verdict, expected["lift_verdict"]))
    return failures


def run_all():
    """Check every instance; the report lists per-instance failures."""
    rows = []
    ok = True
    for name in INSTANCE_NAMES:
        inst = build(name)
        failures = check_instance(inst)
        ok = ok and not failures
        rows.append({"name": name, "ok": not failures,
                     "failures": failures})
    return {"schema_version": SCHEMA_VERSION, "ok": ok, "instances": rows}


# -- serialization ----------------------------------------------------------

def instance_to_json(inst):
    d = {
        "schema_version": SCHEMA_VERSION,
        "name": inst.name,
        "chart": chart_to_json(inst.chart),
        "potential": to_text(inst.theta),
    }
    if inst.twist is not None:
        d["twist"] = {"expr": to_text(inst.twist),
                      "lambdas": [str(l) for l in inst.lambdas]}
    if inst.graph is not None:
        d["dirac"] = dirac.graph_to_json(inst.graph)
    if inst.lift_k is not None:
        d["lift"] = {"k": inst.lift_k}
    if inst.l_elements:
        d["l_elements"] = [to_text(e) for e in inst.l_elements]
    d["expected"] = inst.expected
    return d


def instance_from_json(d, *, strict=True):
    if d.get("schema_version") != SCHEMA_VERSION:
        raise GalleryError("unsupported schema version %r"
                           % (d.get("schema_version"),))
    chart = chart_from_json(d["chart"], strict=strict)
    theta = parse_expr(chart, d["potential"])
    twist = None
    lambdas = ()
    if "twist" in d:
        twist = parse_expr(chart, d["twist"]["expr"])
        lambdas = tuple(Fraction(l) for l in d["twist"]["lambdas"])
    graph = None
    if "dirac" in d:
        graph = dirac.graph_from_json(chart, d["dirac"])
    lift_k = d.get("lift", {}).get("k")
    l_elements = [parse_expr(chart, e) for e in d.get("l_elements", ())]
    return Instance(d["name"], chart, theta, d.get("expected", {}),
                    twist=twist, lambdas=lambdas, graph=graph,
                    lift_k=lift_k, l_elements=l_elements)


def canonical_json(obj):
    """Byte-stable rendering: sorted keys, compact separators, newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def data_dir():
    return os.path.join(os.path.dirname(__file__), "data")


def data_path(name):
    return os.path.join(data_dir(), name + ".json")


def load_instance(path, *, strict=True):
    with open(path, "r", encoding="utf-8") as fh:
        return instance_from_json(json.load(fh), strict=strict)


def write_data_files(target=None):
    """Serialize every instance into the data directory; returns paths."""
    target = target or data_dir()
    os.makedirs(target, exist_ok=True)
    paths = []
    for name in INSTANCE_NAMES:
        text = canonical_json(instance_to_json(build(name)))
        path = os.path.join(target, name + ".json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        paths.append(path)
    return paths
