"""Isotropic coordinate subbundles, Lagrangian graphs and induced brackets.

A chart whose generators carry roles splits into a position sector (roles
"base" and "fibre") and a momentum sector (roles "momentum" and "cofibre").
A graded subbundle is described here by a substitution that expresses some
of the coordinates through the surviving ones:

* CoordinateSubbundle(chart, vanish): the named coordinates are set to 0.
* BivectorGraph(chart, field): the even weight-2 function ``field`` is
  built from the cofibre sector over the base; every fibre and momentum
  coordinate z is replaced by {field, z}.  The zero field gives the
  restriction that kills the fibre and momentum sectors.
* TwoFormGraph(chart, form): the even weight-2 function ``form`` is built
  from the fibre sector over the base; every momentum coordinate m with
  conjugate position z and pairing constant c = {m, z} is replaced by
  c times the left partial of the form by z.

``pullback`` applies the substitution to any polynomial and
``tangency_residual`` applies it to a potential; the residual is zero
precisely when the Hamiltonian vector field of the potential is tangent to
the subbundle, which makes it a sub-Dirac structure.  Two closed-form
routes are exposed for cross-checking the substitution route:

* for a two-form graph the residual equals
  {theta, form} + (position part of theta), and
* for a bivector graph the pullback of theta equals
  (1/2){L, {L, theta_m}} + (1/3!){L, {L, {L, theta_p}}}
  where theta = theta_m + theta_p is the momentum split and L the field.

Both equalities were measured on random projectable potentials before
being frozen here and are enforced by the test suite.
"""

from fractions import Fraction

from .superpoly import SuperPoly, homogeneity, left_partial, substitute, to_text
from .poisson import bracket
from .courant import anchor_apply, pre_bracket, symmetry_defect, validate_potential

POSITION_ROLES = ("base", "fibre")
MOMENTUM_ROLES = ("momentum", "cofibre")


class GraphError(ValueError):
    pass


def _require_roles(chart):
    if chart.roles is None:
        raise GraphError(
            "chart %s carries no sector roles; graphs need them" % chart.name)


def position_indices(chart):
    _require_roles(chart)
    out = []
    for idx, g in enumerate(chart.generators):
        if chart.roles.get(g.name) in POSITION_ROLES:
            out.append(idx)
    return out


def momentum_indices(chart):
    _require_roles(chart)
    out = []
    for idx, g in enumerate(chart.generators):
        if chart.roles.get(g.name) in MOMENTUM_ROLES:
            out.append(idx)
    return out


def momentum_split(P):
    """Split P into (momentum part, position part) term by term.

    The momentum part collects every term containing at least one momentum
    or cofibre coordinate; the position part is the rest.  For a projectable
    potential on a cotangent chart this is exactly the split into the
    anchor-plus-fibre-bracket part and the pure cubic part.
    """
    chart = P.chart
    mom = set(momentum_indices(chart))
    hi = {}
    lo = {}
    for key, c in P.items():
        scal, even, odd = key
        touched = any(i in mom for i, _e in even) or any(i in mom for i in odd)
        (hi if touched else lo)[key] = c
    return SuperPoly(chart, hi), SuperPoly(chart, lo)


def _check_sector_function(chart, value, odd_role, what):
    """value must be even, of symplectic weight 2, and use only odd
    generators of the given role plus even base-sector generators."""
    if value.is_zero:
        return
    hom = homogeneity(value)
    if not hom.homogeneous:
        raise GraphError("%s must be homogeneous: %s" % (what, to_text(value)))
    if hom.parity != 0:
        raise GraphError("%s must be even: %s" % (what, to_text(value)))
    if chart.symplectic_weight(hom.weight) != 2:
        raise GraphError(
            "%s must have symplectic weight 2, got %d"
            % (what, chart.symplectic_weight(hom.weight)))
    for key, _c in value.items():
        _scal, even, odd = key
        for idx, _e in even:
            if chart.roles.get(chart.generators[idx].name) != "base":
                raise GraphError(
                    "%s uses %s outside the base sector"
                    % (what, chart.generators[idx].name))
        for idx in odd:
            if chart.roles.get(chart.generators[idx].name) != odd_role:
                raise GraphError(
                    "%s uses %s outside the %s sector"
                    % (what, chart.generators[idx].name, odd_role))


class CoordinateSubbundle:
    """Subbundle given by setting the named coordinates to zero."""

    kind = "coords"

    def __init__(self, chart, vanish):
        self.chart = chart
        seen = []
        for name in vanish:
            if name not in chart.name_to_index:
                raise GraphError("unknown coordinate %r" % name)
            if name in seen:
                continue
            idx = chart.name_to_index[name]
            if chart.gen_symplectic_weight(idx) == 0:
                raise GraphError(
                    "vanishing the base coordinate %s would move the "
                    "support off the full base, which is not supported"
                    % name)
            seen.append(name)
        self.vanish = tuple(seen)

    def substitution(self):
        return {name: self.chart.zero() for name in self.vanish}

    def survivor_indices(self):
        dead = {self.chart.name_to_index[name] for name in self.vanish}
        return [i for i in range(len(self.chart.generators)) if i not in dead]


class BivectorGraph:
    """Graph of an even weight-2 cofibre-sector function."""

    kind = "bivector"

    def __init__(self, chart, field):
        _require_roles(chart)
        self.chart = chart
        if field.chart is not chart:
            raise GraphError("field lives on the wrong chart")
        _check_sector_function(chart, field, "cofibre", "bivector field")
        self.field = field

    def substitution(self):
        chart = self.chart
        sub = {}
        for idx, g in enumerate(chart.generators):
            if chart.roles.get(g.name) in ("fibre", "momentum"):
                sub[g.name] = bracket(self.field, chart.gen(g.name))
        return sub

    def survivor_indices(self):
        chart = self.chart
        return [idx for idx, g in enumerate(chart.generators)
                if chart.roles.get(g.name) in ("base", "cofibre")]


class TwoFormGraph:
    """Graph of an even weight-2 fibre-sector function."""

    kind = "twoform"

    def __init__(self, chart, form):
        _require_roles(chart)
        self.chart = chart
        if form.chart is not chart:
            raise GraphError("form lives on the wrong chart")
        _check_sector_function(chart, form, "fibre", "two-form")
        self.form = form

    def substitution(self):
        chart = self.chart
        sub = {}
        for idx in momentum_indices(chart):
            conj = chart.conjugates(idx)
            if len(conj) != 1:
                raise GraphError(
                    "momentum coordinate %s has %d conjugates, need exactly 1"
                    % (chart.generators[idx].name, len(conj)))
            zidx, c = conj[0]
            zname = chart.generators[zidx].name
            if chart.roles.get(zname) not in POSITION_ROLES:
                raise GraphError(
                    "conjugate of %s is %s, which is not a position "
                    "coordinate" % (chart.generators[idx].name, zname))
            sub[chart.generators[idx].name] = left_partial(self.form, zname) * c
        return sub

    def survivor_indices(self):
        return position_indices(self.chart)


def pullback(graph, P):
    """Apply the graph substitution to P."""
    if P.chart is not graph.chart:
        raise GraphError("polynomial lives on the wrong chart")
    return substitute(P, graph.substitution())


def tangency_residual(theta, graph):
    """Pullback of the potential; zero iff the graph is a sub-Dirac
    structure for theta."""
    validate_potential(theta)
    return pullback(graph, theta)


def bivector_closed_formula(theta, graph):
    """Route the bivector pullback of theta through nested brackets:
    (1/2){L,{L,theta_m}} + (1/3!){L,{L,{L,theta_p}}} with theta split into
    momentum and position parts.  Must agree with pullback(graph, theta)."""
    if graph.kind != "bivector":
        raise GraphError("closed formula applies to bivector graphs")
    lam = graph.field
    hi, lo = momentum_split(theta)
    quad = bracket(lam, bracket(lam, hi)) * Fraction(1, 2)
    cub = bracket(lam, bracket(lam, bracket(lam, lo))) * Fraction(1, 6)
    return quad + cub


def twoform_residual_route(theta, graph):
    """Route the two-form tangency residual through the differential:
    {theta, form} + (position part of theta).  Must agree with
    tangency_residual(theta, graph)."""
    if graph.kind != "twoform":
        raise GraphError("differential route applies to two-form graphs")
    _hi, lo = momentum_split(theta)
    return bracket(theta, graph.form) + lo


def is_isotropic(graph):
    """Whether all pairings among surviving weight-1 coordinates vanish.

    Graph kinds are isotropic by construction; for coordinate subbundles
    the surviving sector is inspected entry by entry."""
    if graph.kind != "coords":
        return True
    chart = graph.chart
    alive = [i for i in graph.survivor_indices()
             if chart.gen_symplectic_weight(i) == 1]
    for i in alive:
        for j in alive:
            if chart.pairing.get((i, j), 0) != 0:
                return False
    return True


class InducedAlmostLie:
    """Bracket and anchor tables induced on the sections along a graph,
    together with the residuals that certify the almost Lie axioms."""

    def __init__(self, sections, base_names, bracket_table, anchor_table,
                 symmetry_residuals, leibniz_residuals, d_squared_residuals):
        self.sections = sections
        self.base_names = base_names
        self.bracket_table = bracket_table
        self.anchor_table = anchor_table
        self.symmetry_residuals = symmetry_residuals
        self.leibniz_residuals = leibniz_residuals
        self.d_squared_residuals = d_squared_residuals

    @property
    def ok(self):
        for _key, value in (self.symmetry_residuals + self.leibniz_residuals
                            + self.d_squared_residuals):
            if not value.is_zero:
                return False
        return True

    def problems(self):
        out = []
        for label, value in (self.symmetry_residuals + self.leibniz_residuals
                             + self.d_squared_residuals):
            if not value.is_zero:
                out.append("%s: %s" % (label, to_text(value)))
        return out


def induced_almost_lie(theta, graph):
    """Restrict the derived bracket and anchor to the sections along the
    graph.  Requires a vanishing tangency residual and, for coordinate
    subbundles, an isotropic surviving sector."""
    chart = theta.chart
    res = tangency_residual(theta, graph)
    if not res.is_zero:
        raise GraphError("tangency residual is nonzero: %s" % to_text(res))
    if not is_isotropic(graph):
        raise GraphError("surviving sector is not isotropic")
    sub = graph.substitution()

    def pb(P):
        return substitute(P, sub)

    alive = graph.survivor_indices()
    sections = [chart.generators[i].name for i in alive
                if chart.gen_symplectic_weight(i) == 1]
    base_names = [chart.generators[i].name for i in alive
                  if chart.gen_symplectic_weight(i) == 0
                  and chart.generators[i].parity == 0]

    bracket_table = {}
    symmetry_residuals = []
    for sname in sections:
        for tname in sections:
            s = chart.gen(sname)
            t = chart.gen(tname)
            bracket_table[(sname, tname)] = pb(pre_bracket(theta, s, t))
            symmetry_residuals.append(
                (("symmetry", sname, tname), pb(symmetry_defect(theta, s, t))))

    anchor_table = {}
    for sname in sections:
        for fname in base_names:
            anchor_table[(sname, fname)] = pb(
                anchor_apply(theta, chart.gen(sname), chart.gen(fname)))

    leibniz_residuals = []
    if base_names:
        for i, sname in enumerate(sections):
            tname = sections[(i + 1) % len(sections)]
            for fname in base_names:
                s = chart.gen(sname)
                t = chart.gen(tname)
                f = chart.gen(fname)
                res = pre_bracket(theta, s, f * t) \
                    - anchor_apply(theta, s, f) * t \
                    - f * pre_bracket(theta, s, t)
                leibniz_residuals.append(
                    (("leibniz", sname, fname, tname), pb(res)))

    d_squared_residuals = []
    for fname in base_names:
        one = pb(bracket(theta, chart.gen(fname)))
        two = pb(bracket(theta, one))
        d_squared_residuals.append((("d_squared", fname), two))

    return InducedAlmostLie(sections, base_names, bracket_table, anchor_table,
                            symmetry_residuals, leibniz_residuals,
                            d_squared_residuals)


def graph_from_json(chart, data):
    """Build a graph from {"kind": ..., "expr" | "vanish": ...}."""
    kind = data.get("kind")
    if kind == "coords":
        return CoordinateSubbundle(chart, list(data.get("vanish", ())))
    if kind == "bivector":
        return BivectorGraph(chart, chart.parse(data["expr"]))
    if kind == "twoform":
        return TwoFormGraph(chart, chart.parse(data["expr"]))
    raise GraphError("unknown graph kind %r" % kind)


def graph_to_json(graph):
    if graph.kind == "coords":
        return {"kind": "coords", "vanish": list(graph.vanish)}
    if graph.kind == "bivector":
        return {"kind": "bivector", "expr": to_text(graph.field)}
    return {"kind": "twoform", "expr": to_text(graph.form)}
