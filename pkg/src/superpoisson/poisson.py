"""The graded Poisson bracket of a chart and its axiom checker.

The bracket of the constant-rank symplectic structure is

    {X, Y} = sum over ordered pairs (g, h) with P^gh != 0 of
             (-1)^(g~ (X~ + 1)) (d_g X) P^gh (d_h Y)

with left derivatives, applied separately to each parity-homogeneous part
of X.  On an affine Darboux chart this is the familiar

    {X, Y} = dX/dp_a dY/dx^a - dX/dx^a dY/dp_a
             + (-1)^(X~+1) g^ij dX/dxi^j dY/dxi^i,

which the test suite checks term by term against an independent
transcription of that display.
"""

import random
from fractions import Fraction

from .superpoly import EVEN, ODD, SuperPoly, left_partial, to_text
from . import sampling


def bracket(X, Y):
    """Graded Poisson bracket of two elements of one chart."""
    chart = X.chart
    if isinstance(Y, (int, Fraction)):
        Y = SuperPoly.constant(chart, Y)
    if Y.chart is not chart:
        raise ValueError("bracket arguments live on different charts")
    entries = chart.pairing_entries()
    dY_cache = {}
    total = chart.zero()
    for flag in (EVEN, ODD):
        Xp = X.parity_part(flag)
        if Xp.is_zero:
            continue
        dX_cache = {}
        for gi, hj, coeff in entries:
            g = chart.generators[gi]
            if gi not in dX_cache:
                dX_cache[gi] = left_partial(Xp, g)
            dX = dX_cache[gi]
            if dX.is_zero:
                continue
            if hj not in dY_cache:
                dY_cache[hj] = left_partial(Y, chart.generators[hj])
            dY = dY_cache[hj]
            if dY.is_zero:
                continue
            sign = -1 if (g.parity == ODD and flag == EVEN) else 1
            total = total + dX * dY * (coeff * sign)
    return total


class AxiomsReport:
    """Outcome of check_poisson_axioms: counts plus concrete failures."""

    __slots__ = ("chart_name", "samples", "seed", "checked", "failures")

    def __init__(self, chart_name, samples, seed):
        self.chart_name = chart_name
        self.samples = samples
        self.seed = seed
        self.checked = {"skew": 0, "leibniz": 0, "jacobi": 0,
                        "weight": 0, "parity": 0}
        self.failures = []

    @property
    def ok(self):
        return not self.failures

    def add_failure(self, identity, detail):
        self.failures.append({"identity": identity, "detail": detail})

    def __repr__(self):
        return ("AxiomsReport(chart=%r, samples=%d, ok=%r, failures=%d)"
                % (self.chart_name, self.samples, self.ok,
                   len(self.failures)))


def check_poisson_axioms(chart, samples=200, seed=0, *, max_terms=2,
                         max_factors=3, allow_symbols=True):
    """Graded skew, Leibniz, Jacobi, weight and parity of the bracket on
    seeded random homogeneous triples.  Exact; any failure is reported with
    the offending elements printed."""
    rng = random.Random(seed)
    report = AxiomsReport(chart.name, samples, seed)
    pair_weight = chart.pair_weight
    for _ in range(samples):
        X = sampling.random_homogeneous(chart, rng, max_terms=max_terms,
                                        max_factors=max_factors,
                                        allow_symbols=allow_symbols)
        Y = sampling.random_homogeneous(chart, rng, max_terms=max_terms,
                                        max_factors=max_factors,
                                        allow_symbols=allow_symbols)
        Z = sampling.random_homogeneous(chart, rng, max_terms=max_terms,
                                        max_factors=max_factors,
                                        allow_symbols=allow_symbols)
        px, py = X.parity(), Y.parity()
        sxy = -1 if (px and py) else 1

        BXY = bracket(X, Y)
        skew = BXY + bracket(Y, X) * sxy
        report.checked["skew"] += 1
        if not skew.is_zero:
            report.add_failure("skew", {
                "X": to_text(X), "Y": to_text(Y), "defect": to_text(skew)})

        leib = bracket(X, Y * Z) - BXY * Z - Y * bracket(X, Z) * sxy
        report.checked["leibniz"] += 1
        if not leib.is_zero:
            report.add_failure("leibniz", {
                "X": to_text(X), "Y": to_text(Y), "Z": to_text(Z),
                "defect": to_text(leib)})

        jac = (bracket(X, bracket(Y, Z)) - bracket(BXY, Z)
               - bracket(Y, bracket(X, Z)) * sxy)
        report.checked["jacobi"] += 1
        if not jac.is_zero:
            report.add_failure("jacobi", {
                "X": to_text(X), "Y": to_text(Y), "Z": to_text(Z),
                "defect": to_text(jac)})

        if not BXY.is_zero:
            wx, wy = X.weight(), Y.weight()
            if wx is not None and wy is not None and pair_weight is not None:
                report.checked["weight"] += 1
                want = tuple(a + b - p
                             for a, b, p in zip(wx, wy, pair_weight))
                if BXY.weight() != want:
                    report.add_failure("weight", {
                        "X": to_text(X), "Y": to_text(Y),
                        "expected": want, "got": BXY.weight()})
            report.checked["parity"] += 1
            if BXY.parity() != (px + py) % 2:
                report.add_failure("parity", {
                    "X": to_text(X), "Y": to_text(Y),
                    "expected": (px + py) % 2, "got": BXY.parity()})
    return report
