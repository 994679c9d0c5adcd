from fractions import Fraction

import pytest

from superpoisson.charts import (ChartError, chart_from_json, chart_to_json,
                                 hyperbolic_metric, identity_metric,
                                 make_cotangent_antivb_chart,
                                 make_darboux_chart, validate_chart)
from superpoisson.gallery import degree2_vb_chart


def test_factories_validate():
    for ch in (make_darboux_chart(2, 4),
               make_darboux_chart(0, 4, metric=hyperbolic_metric(2)),
               make_cotangent_antivb_chart(1, 3),
               make_cotangent_antivb_chart(0, 7),
               degree2_vb_chart()):
        report = validate_chart(ch)
        assert report.problems == [], (ch.name, report.problems)


def test_pairing_mirror_completion():
    ch = make_darboux_chart(1, 2)
    p1 = ch.name_to_index["p1"]
    x1 = ch.name_to_index["x1"]
    assert ch.pairing[(p1, x1)] == 1
    assert ch.pairing[(x1, p1)] == -1
    xi1 = ch.name_to_index["xi1"]
    assert ch.pairing[(xi1, xi1)] == 1


def test_antivb_weights_and_roles():
    ch = make_cotangent_antivb_chart(2, 2)
    assert ch.axes == 2
    assert ch.symplectic_axes == (0, 1)
    gen = ch.generators[ch.name_to_index["xi1"]]
    assert gen.weight == (1, 0)
    assert gen.parity == 1
    mom = ch.generators[ch.name_to_index["p2"]]
    assert mom.weight == (1, 1)
    assert sorted(ch.role_indices("fibre")) == [
        ch.name_to_index["xi1"], ch.name_to_index["xi2"]]


def test_custom_fibre_names():
    ch = make_cotangent_antivb_chart(2, 2, fibre_names=["xs1", "xs2"])
    assert "xs1" in ch.name_to_index
    assert ch.generators[ch.name_to_index["xs1"]].parity == 1


def test_conjugates():
    ch = make_cotangent_antivb_chart(1, 2)
    xi1 = ch.name_to_index["xi1"]
    pairs = ch.conjugates(xi1)
    assert len(pairs) == 1
    idx, coeff = pairs[0]
    assert ch.generators[idx].name == "pi1"
    assert coeff == 1


def test_metrics():
    assert identity_metric(2) == [[1, 0], [0, 1]]
    hyp = hyperbolic_metric(2)
    assert hyp[0][2] == 1 and hyp[2][0] == 1
    assert hyp[0][0] == 0 and len(hyp) == 4


def test_json_round_trip():
    for ch in (make_darboux_chart(1, 3),
               make_cotangent_antivb_chart(1, 2),
               degree2_vb_chart()):
        doc = chart_to_json(ch)
        again = chart_from_json(doc)
        assert chart_to_json(again) == doc
        assert validate_chart(again).problems == []


def test_json_detects_pairing_conflict():
    doc = chart_to_json(make_darboux_chart(1, 1))
    doc["pairing"].append(["x1", "p1", "1"])
    with pytest.raises(ChartError):
        chart_from_json(doc)
    lax = chart_from_json(doc, strict=False)
    problems = validate_chart(lax).problems
    assert any("conflict" in p for p in problems)


def test_validate_reports_parity_weight_mismatch():
    doc = chart_to_json(make_darboux_chart(1, 1))
    doc["generators"][0]["weight"] = [1]
    lax = chart_from_json(doc, strict=False)
    assert validate_chart(lax).problems != []


def test_degree2_vb_chart_shape():
    ch = degree2_vb_chart()
    assert ch.symplectic_axes == (1,)
    assert ch.lift_degree == 2
    dq = ch.generators[ch.name_to_index["dq1"]]
    assert dq.weight == (1, 1)
    assert ch.pairing[(ch.name_to_index["y1"], ch.name_to_index["q1"])] == 1
