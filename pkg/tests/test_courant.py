import itertools
import random
from fractions import Fraction

import pytest

import identities
import oracles
from superpoisson import courant, sampling
from superpoisson.charts import (hyperbolic_metric, make_cotangent_antivb_chart,
                                 make_darboux_chart)
from superpoisson.courant import PotentialError
from superpoisson.poisson import bracket
from superpoisson.superpoly import parse_expr, to_text


def cross7():
    ch = make_cotangent_antivb_chart(0, 7)
    return ch, oracles.cross_theta(ch, oracles.CROSS7_TRIPLES)


def test_pre_bracket_matches_structure_constants():
    ch, T = cross7()
    eps = oracles.epsilon_table(oracles.CROSS7_TRIPLES)
    for i in range(1, 8):
        for j in range(1, 8):
            got = courant.pre_bracket(T, ch.gen("pi%d" % i),
                                      ch.gen("pi%d" % j))
            want = ch.zero()
            for k in range(1, 8):
                c = eps.get((i, j, k), 0)
                if c:
                    want = want + ch.gen("pi%d" % k) * Fraction(c)
            assert got == want, (i, j)


def test_jacobiator_matches_algebra_oracle_everywhere():
    ch, T = cross7()
    eps = oracles.epsilon_table(oracles.CROSS7_TRIPLES)
    for (i, j, k) in itertools.combinations(range(1, 8), 3):
        got = courant.jacobiator(T, ch.gen("pi%d" % i), ch.gen("pi%d" % j),
                                 ch.gen("pi%d" % k))
        alg = oracles.algebra_jacobiator(eps, 7, i, j, k)
        want = ch.zero()
        for l, c in alg.items():
            want = want + ch.gen("pi%d" % l) * Fraction(-c)
        assert got == want, (i, j, k)


def test_pairing_and_anchor_on_point_chart():
    ch, T = cross7()
    assert courant.pairing(ch.gen("xi1"), ch.gen("pi1")) == 1
    assert courant.pairing(ch.gen("pi1"), ch.gen("pi2")).is_zero
    assert courant.pairing(ch.gen("xi1"), ch.gen("xi2")).is_zero


def sample_setups(rounds, seed):
    rng = random.Random(seed)
    charts = [make_darboux_chart(1, 3),
              make_cotangent_antivb_chart(1, 2),
              make_darboux_chart(2, 2, metric=hyperbolic_metric(1))]
    for n in range(rounds):
        ch = charts[n % len(charts)]
        T = sampling.random_potential(ch, rng)
        s = sampling.random_section(ch, rng)
        p = sampling.random_section(ch, rng)
        l = sampling.random_section(ch, rng)
        f = sampling.random_base_function(ch, rng)
        yield T, s, p, l, f


def test_symmetry_defect_vanishes():
    for T, s, p, l, f in sample_setups(40, 31):
        assert courant.symmetry_defect(T, s, p).is_zero


def test_anchor_defect_vanishes():
    for T, s, p, l, f in sample_setups(40, 32):
        assert courant.anchor_defect(T, s, p, f).is_zero


def test_jacobiator_equals_master_route():
    for T, s, p, l, f in sample_setups(40, 33):
        assert identities.jacobiator_master_defect(T, s, p, l).is_zero


def test_leibniz_over_functions():
    for T, s, p, l, f in sample_setups(40, 34):
        assert identities.leibniz_over_functions_defect(T, s, f, p).is_zero


def test_pairing_invariance():
    for T, s, p, l, f in sample_setups(40, 35):
        assert identities.pairing_invariance_defect(T, s, p, l).is_zero


def test_d_operator_against_anchor():
    for T, s, p, l, f in sample_setups(20, 36):
        lhs = courant.pairing(courant.d_operator(T, f), s)
        rhs = courant.anchor_apply(T, s, f)
        assert (lhs - rhs).is_zero or (lhs + rhs).is_zero


def test_classify_verdicts():
    ch = make_darboux_chart(0, 5)
    T = parse_expr(ch, "xi1*xi2*xi3 + xi1*xi4*xi5")
    sc = courant.classify(T)
    assert sc.verdict == "PreCourant"
    assert sc.is_pre_courant
    chh = make_darboux_chart(0, 4, metric=hyperbolic_metric(2))
    Th = parse_expr(chh, "xi1*xi2*xi3 + xi1*xi3*xi4")
    assert courant.classify(Th).verdict == "Courant"
    chn = make_darboux_chart(1, 4)
    Tn = parse_expr(chn, "xi1*p1 + x1*xi2*xi3*xi4")
    scn = courant.classify(Tn)
    assert scn.verdict == "Nearly"
    assert not scn.is_pre_courant
    assert scn.witness_name == "x1"
    assert scn.witness_value is not None and not scn.witness_value.is_zero


def test_validate_potential_rejects_bad_inputs():
    ch = make_darboux_chart(1, 2)
    with pytest.raises(PotentialError):
        courant.validate_potential(parse_expr(ch, "x1*p1"))
    with pytest.raises(PotentialError):
        courant.validate_potential(parse_expr(ch, "xi1"))
    courant.validate_potential(parse_expr(ch, "xi1*p1"))


def test_momentum_free():
    ch = make_darboux_chart(1, 2)
    assert courant.momentum_free(parse_expr(ch, "x1*xi1*xi2"))
    assert not courant.momentum_free(parse_expr(ch, "x1*p1"))


def test_metric_frame_reproduces_metric():
    for metric, rank in ((None, 3), (hyperbolic_metric(2), 4)):
        ch = make_darboux_chart(1, rank, metric=metric)
        frame = courant.metric_frame(ch)
        names, rows = ch.metric
        for i in range(rank):
            for j in range(rank):
                got = courant.pairing(ch.gen(names[i]), frame[j])
                assert got == (1 if i == j else 0)


def test_extract_reassemble_round_trip():
    rng = random.Random(41)
    for rank, dim in ((2, 1), (3, 2)):
        ch = make_darboux_chart(dim, rank)
        for _ in range(8):
            T = sampling.random_potential(ch, rng)
            anchor, cubic = courant.extract_structure_functions(T)
            back = courant.reassemble_structure_functions(ch, anchor, cubic)
            assert back == T


def test_structure_residual_equivalence_samples():
    rng = random.Random(42)
    ch = make_darboux_chart(1, 3)
    seen = set()
    for _ in range(20):
        T = sampling.random_potential(ch, rng)
        sc = courant.classify(T)
        seen.add(sc.verdict)
        vanish = courant.residuals_vanish(
            courant.structure_equations_residual(T))
        assert vanish == (sc.verdict != "Nearly")
        assert (sc.verdict == "Courant") == bracket(T, T).is_zero


def test_weighted_classify_requires_lift_degree():
    ch = make_darboux_chart(0, 3)
    T = oracles.cross_theta(make_cotangent_antivb_chart(0, 3), ((1, 2, 3),))
    with pytest.raises(PotentialError):
        courant.weighted_classify(parse_expr(ch, "xi1*xi2*xi3"))
