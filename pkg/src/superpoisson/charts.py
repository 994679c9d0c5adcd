"""Graded symplectic charts: generators, constant pairing, validation, JSON.

A Chart is an ordered list of graded generators together with the constant
symplectic pairing data {g, h} = P^gh (conjugate pairs and, on metric
charts, the odd metric block).  The pairing is stored completed to graded
antisymmetry P^gh = -(-1)^(g~ h~) P^hg, and every structural invariant the
bracket engine relies on (weight compatibility, parity compatibility,
nondegeneracy over the rationals) is checked here, not in the engine.
"""

from fractions import Fraction

from .superpoly import (EVEN, ODD, Generator, SuperPoly, parse_expr, to_text)
from . import linalg

ROLES = ("base", "fibre", "momentum", "cofibre")


class ChartError(ValueError):
    pass


class ValidationReport:
    __slots__ = ("ok", "problems")

    def __init__(self, problems):
        self.problems = list(problems)
        self.ok = not self.problems

    def __repr__(self):
        return "ValidationReport(ok=%r, problems=%r)" % (self.ok, self.problems)


def _is_identifier(name):
    if not name or name[0].isdigit():
        return False
    return all(ch.isalnum() or ch == "_" for ch in name)


class Chart:
    """Chart data plus completed pairing; construction validates by default.

    generators: list of (name, parity, weight) with parity 0/1 and weight a
    tuple of non-negative ints, one entry per axis.
    pairing: list of (gname, hname, coefficient) seed entries; the graded
    antisymmetric completion is computed, and giving both orientations is
    allowed only when they are consistent.
    symplectic_axes: the axes whose weight sum is the symplectic weight
    (defaults to all axes).  The symplectic form has weight 2 there.
    """

    def __init__(self, name, axes, generators, pairing, *, metric=None,
                 n_manifold=False, symplectic_axes=None, roles=None,
                 lift_degree=None, strict=True):
        self.name = name
        self.axes = int(axes)
        self.generators = []
        self.name_to_index = {}
        for spec in generators:
            gname, parity, weight = spec
            gen = Generator(gname, parity, weight, len(self.generators))
            self.generators.append(gen)
            if gname not in self.name_to_index:
                self.name_to_index[gname] = gen.index
        self.pairing_given = [(g, h, Fraction(c)) for g, h, c in pairing]
        self.metric = None
        if metric is not None:
            mnames, rows = metric
            self.metric = (tuple(mnames),
                           tuple(tuple(Fraction(x) for x in row)
                                 for row in rows))
        self.n_manifold = bool(n_manifold)
        if symplectic_axes is None:
            symplectic_axes = tuple(range(self.axes))
        self.symplectic_axes = tuple(int(a) for a in symplectic_axes)
        self.roles = None
        if roles is not None:
            self.roles = {str(k): str(v) for k, v in roles.items()}
        self.lift_degree = lift_degree

        self._problems = []
        self.pairing = {}
        self._complete_pairing()
        self._index_sectors()
        self._problems.extend(_structural_problems(self))
        if strict and self._problems:
            raise ChartError("invalid chart %r: %s"
                             % (self.name, "; ".join(self._problems)))

    # -- construction helpers -------------------------------------------

    def _complete_pairing(self):
        for gname, hname, c in self.pairing_given:
            if gname not in self.name_to_index or hname not in self.name_to_index:
                self._problems.append(
                    "pairing entry (%s, %s) names an unknown generator"
                    % (gname, hname))
                continue
            if not c:
                continue
            gi = self.name_to_index[gname]
            hj = self.name_to_index[hname]
            g = self.generators[gi]
            h = self.generators[hj]
            # graded antisymmetry: P^hg = -(-1)^(g~ h~) P^gh
            mirror = (c if (g.parity and h.parity) else -c)
            if gi == hj:
                if g.parity == EVEN:
                    self._problems.append(
                        "even generator %s cannot pair with itself" % g.name)
                    continue
                if (gi, hj) in self.pairing and self.pairing[(gi, hj)] != c:
                    self._problems.append(
                        "conflicting self-pairing for %s" % g.name)
                    continue
                self.pairing[(gi, hj)] = c
                continue
            if (gi, hj) in self.pairing:
                if self.pairing[(gi, hj)] != c:
                    self._problems.append(
                        "pairing entries for (%s, %s) conflict: %s vs %s"
                        % (gname, hname, self.pairing[(gi, hj)], c))
                continue
            if (hj, gi) in self.pairing:
                if self.pairing[(hj, gi)] != mirror:
                    self._problems.append(
                        "pairing breaks graded antisymmetry on (%s, %s): "
                        "{%s,%s} = %s requires {%s,%s} = %s, got %s"
                        % (gname, hname, gname, hname, c, hname, gname,
                           mirror, self.pairing[(hj, gi)]))
                continue
            self.pairing[(gi, hj)] = c
            self.pairing[(hj, gi)] = mirror

    def _index_sectors(self):
        self.base_indices = tuple(
            g.index for g in self.generators
            if self.symplectic_weight(g.weight) == 0)
        base = set(self.base_indices)
        momenta = set()
        for (gi, hj) in self.pairing:
            if hj in base:
                momenta.add(gi)
        self.momentum_indices = tuple(sorted(momenta))
        self.true_base_indices = tuple(
            g.index for g in self.generators if g.is_true_base)

    # -- lookups ---------------------------------------------------------

    def generator(self, name):
        return self.generators[self.name_to_index[name]]

    def symplectic_weight(self, weight):
        return sum(weight[a] for a in self.symplectic_axes)

    def gen_symplectic_weight(self, idx):
        return self.symplectic_weight(self.generators[idx].weight)

    def element_symplectic_weight(self, P):
        w = P.weight()
        if w is None:
            return None
        return self.symplectic_weight(w)

    def pairing_entries(self):
        """All nonzero ordered pairs (gi, hj, coefficient), deterministic."""
        return [(gi, hj, self.pairing[(gi, hj)])
                for gi, hj in sorted(self.pairing)]

    def conjugates(self, idx):
        return [(hj, c) for (gi, hj), c in sorted(self.pairing.items())
                if gi == idx]

    def role_indices(self, role):
        if self.roles is None:
            return ()
        return tuple(g.index for g in self.generators
                     if self.roles.get(g.name) == role)

    @property
    def pair_weight(self):
        for (gi, hj) in sorted(self.pairing):
            g = self.generators[gi]
            h = self.generators[hj]
            return tuple(a + b for a, b in zip(g.weight, h.weight))
        return None

    # -- element factories ----------------------------------------------

    def zero(self):
        return SuperPoly(self, {})

    def const(self, value):
        return SuperPoly.constant(self, value)

    def one(self):
        return SuperPoly.constant(self, 1)

    def gen(self, name):
        return SuperPoly.generator_monomial(self, self.generator(name))

    def symbol(self, name, jets=()):
        jets = tuple(self.generator(j).index if isinstance(j, str) else j
                     for j in jets)
        return SuperPoly.symbol(self, name, jets)

    def parse(self, text):
        return parse_expr(self, text)

    def text(self, P):
        return to_text(P)

    def __repr__(self):
        return "Chart(%r, %d generators)" % (self.name, len(self.generators))


def _structural_problems(chart):
    problems = []
    if chart.axes < 1:
        problems.append("a chart needs at least one weight axis")
        return problems
    if not chart.symplectic_axes:
        problems.append("symplectic_axes must be non-empty")
    for a in chart.symplectic_axes:
        if not (0 <= a < chart.axes):
            problems.append("symplectic axis %d out of range" % a)
            return problems

    seen = set()
    for g in chart.generators:
        if not _is_identifier(g.name):
            problems.append("generator name %r is not an identifier" % g.name)
        if g.name in seen:
            problems.append("duplicate generator name %r" % g.name)
        seen.add(g.name)
        if len(g.weight) != chart.axes:
            problems.append("generator %s has %d weight entries, chart has "
                            "%d axes" % (g.name, len(g.weight), chart.axes))
        if any(w < 0 for w in g.weight):
            problems.append("generator %s has a negative weight" % g.name)

    pair_weight = None
    for (gi, hj), c in sorted(chart.pairing.items()):
        g = chart.generators[gi]
        h = chart.generators[hj]
        if g.parity != h.parity:
            problems.append(
                "pairing {%s,%s} joins different parities (a nonzero "
                "constant bracket is even)" % (g.name, h.name))
        if len(g.weight) == len(h.weight) == chart.axes:
            w = tuple(a + b for a, b in zip(g.weight, h.weight))
            if pair_weight is None:
                pair_weight = w
            elif w != pair_weight:
                problems.append(
                    "pairing {%s,%s} has weight %r, other pairs have %r"
                    % (g.name, h.name, w, pair_weight))
    if pair_weight is None:
        problems.append("chart has an empty pairing")
    elif chart.symplectic_weight(pair_weight) != 2:
        problems.append(
            "conjugate weights sum to %r; the symplectic form must have "
            "symplectic weight 2" % (pair_weight,))

    n = len(chart.generators)
    if n and pair_weight is not None:
        matrix = [[chart.pairing.get((i, j), Fraction(0)) for j in range(n)]
                  for i in range(n)]
        if linalg.det(matrix) == 0:
            problems.append("pairing matrix is degenerate over the rationals")

    if chart.n_manifold:
        for g in chart.generators:
            if g.parity != chart.symplectic_weight(g.weight) % 2:
                problems.append(
                    "N-manifold rule broken: %s has parity %d but "
                    "symplectic weight %d"
                    % (g.name, g.parity, chart.symplectic_weight(g.weight)))

    if chart.metric is not None:
        mnames, rows = chart.metric
        r = len(mnames)
        if any(len(row) != r for row in rows) or len(rows) != r:
            problems.append("metric block is not square")
        else:
            for name in mnames:
                if name not in chart.name_to_index:
                    problems.append("metric names unknown generator %r" % name)
            if all(name in chart.name_to_index for name in mnames):
                idxs = [chart.name_to_index[m] for m in mnames]
                for a in range(r):
                    if chart.generators[idxs[a]].parity != ODD:
                        problems.append(
                            "metric generator %s is not odd" % mnames[a])
                    for b in range(r):
                        if rows[a][b] != rows[b][a]:
                            problems.append("metric block is not symmetric")
                        got = chart.pairing.get((idxs[a], idxs[b]),
                                                Fraction(0))
                        if got != rows[a][b]:
                            problems.append(
                                "pairing {%s,%s} = %s disagrees with the "
                                "metric entry %s"
                                % (mnames[a], mnames[b], got, rows[a][b]))
                if linalg.det([list(row) for row in rows]) == 0:
                    problems.append("metric block is singular")

    if chart.roles is not None:
        for name, role in sorted(chart.roles.items()):
            if name not in chart.name_to_index:
                problems.append("role for unknown generator %r" % name)
                continue
            if role not in ROLES:
                problems.append("unknown role %r for %s" % (role, name))
                continue
            idx = chart.name_to_index[name]
            if role == "base" and chart.gen_symplectic_weight(idx) != 0:
                problems.append(
                    "generator %s has role base but nonzero symplectic "
                    "weight" % name)
            if role in ("momentum", "cofibre"):
                want = ("base", "fibre") if role == "momentum" else ("fibre",)
                ok = any(chart.roles.get(chart.generators[hj].name) in want
                         for hj, _ in chart.conjugates(idx))
                if not ok:
                    problems.append(
                        "generator %s has role %s but no conjugate with "
                        "role in %r" % (name, role, want))
    return problems


def validate_chart(chart):
    """Re-run every structural check; returns a ValidationReport."""
    problems = list(chart._problems)
    for p in _structural_problems(chart):
        if p not in problems:
            problems.append(p)
    return ValidationReport(problems)


# -- constructors -------------------------------------------------------


def identity_metric(rank):
    return [[Fraction(1 if i == j else 0) for j in range(rank)]
            for i in range(rank)]


def hyperbolic_metric(half_rank):
    """Off-diagonal identity blocks: <xi^i, xi^(r+j)> = delta."""
    r = 2 * half_rank
    rows = [[Fraction(0)] * r for _ in range(r)]
    for i in range(half_rank):
        rows[i][half_rank + i] = Fraction(1)
        rows[half_rank + i][i] = Fraction(1)
    return rows


def make_darboux_chart(base_dim, rank, metric=None, *, name=None,
                       odd_names=None):
    """Affine Darboux chart: x^a (weight 0), p_a (weight 2), xi^i (weight 1)
    with {p_a, x^b} = delta and {xi^i, xi^j} = g^ij."""
    if metric is None:
        metric = identity_metric(rank)
    if odd_names is None:
        odd_names = ["xi%d" % (i + 1) for i in range(rank)]
    assert len(odd_names) == rank
    gens = []
    for a in range(base_dim):
        gens.append(("x%d" % (a + 1), EVEN, (0,)))
    for a in range(base_dim):
        gens.append(("p%d" % (a + 1), EVEN, (2,)))
    for i in range(rank):
        gens.append((odd_names[i], ODD, (1,)))
    pairing = []
    for a in range(base_dim):
        pairing.append(("p%d" % (a + 1), "x%d" % (a + 1), Fraction(1)))
    for i in range(rank):
        for j in range(i, rank):
            c = Fraction(metric[i][j])
            if c:
                pairing.append((odd_names[i], odd_names[j], c))
    roles = {}
    for a in range(base_dim):
        roles["x%d" % (a + 1)] = "base"
        roles["p%d" % (a + 1)] = "momentum"
    for i in range(rank):
        roles[odd_names[i]] = "fibre"
    return Chart(name or "darboux(%d|%d)" % (base_dim, rank), 1, gens,
                 pairing, metric=(odd_names, metric), n_manifold=True,
                 symplectic_axes=(0,), roles=roles)


def make_cotangent_antivb_chart(base_dim, fibre_rank, *, name=None,
                                base_names=None, fibre_names=None,
                                momentum_names=None, cofibre_names=None):
    """Chart of the cotangent of a parity-shifted vector bundle: x^a (0,0)
    even, xi^i (1,0) odd, p_a (1,1) even, pi_i (0,1) odd, with {p_a, x^b} =
    delta and {xi^i, pi_j} = delta.  Symplectic weight is the total weight."""
    base_names = base_names or ["x%d" % (a + 1) for a in range(base_dim)]
    fibre_names = fibre_names or ["xi%d" % (i + 1) for i in range(fibre_rank)]
    momentum_names = momentum_names or ["p%d" % (a + 1)
                                        for a in range(base_dim)]
    cofibre_names = cofibre_names or ["pi%d" % (i + 1)
                                      for i in range(fibre_rank)]
    assert len(base_names) == len(momentum_names) == base_dim
    assert len(fibre_names) == len(cofibre_names) == fibre_rank
    gens = []
    for nm in base_names:
        gens.append((nm, EVEN, (0, 0)))
    for nm in fibre_names:
        gens.append((nm, ODD, (1, 0)))
    for nm in momentum_names:
        gens.append((nm, EVEN, (1, 1)))
    for nm in cofibre_names:
        gens.append((nm, ODD, (0, 1)))
    pairing = []
    for a in range(base_dim):
        pairing.append((momentum_names[a], base_names[a], Fraction(1)))
    for i in range(fibre_rank):
        pairing.append((fibre_names[i], cofibre_names[i], Fraction(1)))
    roles = {}
    for nm in base_names:
        roles[nm] = "base"
    for nm in fibre_names:
        roles[nm] = "fibre"
    for nm in momentum_names:
        roles[nm] = "momentum"
    for nm in cofibre_names:
        roles[nm] = "cofibre"
    return Chart(name or "cotangent_antivb(%d|%d)" % (base_dim, fibre_rank),
                 2, gens, pairing, n_manifold=True, symplectic_axes=(0, 1),
                 roles=roles)


# -- serialization ------------------------------------------------------


def chart_to_json(chart):
    d = {
        "name": chart.name,
        "axes": chart.axes,
        "generators": [
            {"name": g.name,
             "parity": "odd" if g.parity else "even",
             "weight": list(g.weight)}
            for g in chart.generators],
        "pairing": [[g, h, str(c)] for g, h, c in chart.pairing_given],
        "n_manifold": chart.n_manifold,
        "symplectic_axes": list(chart.symplectic_axes),
    }
    if chart.metric is not None:
        mnames, rows = chart.metric
        d["metric"] = {"generators": list(mnames),
                       "rows": [[str(x) for x in row] for row in rows]}
    if chart.roles is not None:
        d["roles"] = dict(sorted(chart.roles.items()))
    if chart.lift_degree is not None:
        d["lift_degree"] = chart.lift_degree
    return d


def _parity_from_json(p):
    if p in (0, 1):
        return p
    if p == "even":
        return EVEN
    if p == "odd":
        return ODD
    raise ChartError("parity must be 'even' or 'odd', got %r" % (p,))


def chart_from_json(d, *, strict=True):
    gens = [(g["name"], _parity_from_json(g["parity"]), tuple(g["weight"]))
            for g in d["generators"]]
    pairing = [(g, h, Fraction(c)) for g, h, c in d.get("pairing", [])]
    metric = None
    if d.get("metric") is not None:
        metric = (list(d["metric"]["generators"]),
                  [[Fraction(x) for x in row] for row in d["metric"]["rows"]])
    return Chart(d.get("name", "chart"), d["axes"], gens, pairing,
                 metric=metric, n_manifold=d.get("n_manifold", False),
                 symplectic_axes=tuple(d.get("symplectic_axes",
                                             range(d["axes"]))),
                 roles=d.get("roles"), lift_degree=d.get("lift_degree"),
                 strict=strict)
