import json

from superpoisson import cli, gallery
from superpoisson.superpoly import to_text


def run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_gallery_list(capsys):
    code, out, _err = run(capsys, ["gallery", "--list"])
    assert code == 0
    names = out.split()
    assert names == list(gallery.names())


def test_gallery_json_report(capsys):
    code, out, _err = run(capsys, ["gallery", "--json"])
    assert code == 0
    report = json.loads(out)
    assert report["ok"] is True
    assert len(report["instances"]) == 16


def test_gallery_single_instance(capsys):
    code, out, _err = run(capsys, ["gallery", "cross3"])
    assert code == 0
    assert "cross3" in out


def test_bracket_commands(capsys):
    for argv, want in (
            (["bracket", "cross7", "--pre", "pi1", "pi2"], "pi3"),
            (["bracket", "twisted_pencil", "--poisson", "p1", "x1"], "1"),
            (["bracket", "euclidean_cubic", "--pairing", "xi1", "xi1"], "1"),
            (["bracket", "hyperbolic_cubic", "--pairing", "xi1", "xi3"], "1"),
            (["bracket", "hyperbolic_cubic", "--pairing", "xi1", "xi1"], "0"),
    ):
        code, out, _err = run(capsys, argv)
        assert code == 0, argv
        assert out.strip().splitlines()[-1] == want, argv


def test_jacobiator_command(capsys):
    code, out, _err = run(capsys, ["jacobiator", "cross7",
                                   "pi1", "pi2", "pi4"])
    assert code == 0
    assert "-2*pi7" in out
    assert "agrees" in out


def test_check_by_name(capsys):
    code, out, _err = run(capsys, ["check", "cross3"])
    assert code == 0
    assert "ok" in out


def test_check_json_is_byte_stable(capsys):
    argv = ["check", "cross7", "--json", "--seed", "3", "--samples", "3"]
    code1, out1, _ = run(capsys, argv)
    code2, out2, _ = run(capsys, argv)
    assert code1 == code2 == 0
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["ok"] is True


def test_lift_roundtrip(tmp_path, capsys):
    target = tmp_path / "cross7_lift2.json"
    code, out, _err = run(capsys, ["lift", "cross7", "-k", "2",
                                   "--out", str(target)])
    assert code == 0
    assert "PreCourant" in out
    assert target.exists()
    code2, out2, _err2 = run(capsys, ["check", str(target)])
    assert code2 == 0, out2

    code3, out3, _err3 = run(capsys, ["lift", "cross3", "-k", "3",
                                      "--out", str(tmp_path / "c3.json")])
    assert code3 == 0
    assert "Courant" in out3


def test_lift_usage_errors(capsys):
    code, _out, err = run(capsys, ["lift", "cross7", "-k", "1"])
    assert code == 2
    assert "at least 2" in err
    code2, _out2, err2 = run(capsys, ["lift", "vb_plain", "-k", "2"])
    assert code2 == 2
    assert "non-symplectic" in err2


def test_unknown_instance_lists_names(capsys):
    code, _out, err = run(capsys, ["check", "nope"])
    assert code == 2
    assert "cross3" in err


def test_bad_potential_text_in_file(tmp_path, capsys):
    d = json.loads(gallery.canonical_json(
        gallery.instance_to_json(gallery.build("cross3"))))
    d["potential"] = "xi1*+"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(d))
    code, _out, err = run(capsys, ["check", str(path)])
    assert code == 2
    assert "parse error" in err


def test_malformed_json_file(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _out, err = run(capsys, ["check", str(path)])
    assert code == 2
    assert "parse error" in err


def test_corrupted_structure_constants_fail_with_witness(tmp_path, capsys):
    inst = gallery.build("cross7")
    truncated = tuple(t for t in gallery.CROSS7_TRIPLES if t != (3, 6, 5))
    d = json.loads(gallery.canonical_json(gallery.instance_to_json(inst)))
    d["potential"] = to_text(
        gallery.cross_product_potential(inst.chart, truncated))
    path = tmp_path / "corrupt.json"
    path.write_text(json.dumps(d))
    code, out, err = run(capsys, ["check", str(path)])
    assert code == 1
    text = out + err
    assert "pre_bracket(pi3, pi6): got 0, expected pi5" in text


def test_broken_pairing_fails_with_witness(tmp_path, capsys):
    d = json.loads(gallery.canonical_json(
        gallery.instance_to_json(gallery.build("twisted_pencil"))))
    d["chart"]["pairing"].append(["x1", "p1", "1"])
    path = tmp_path / "pairing.json"
    path.write_text(json.dumps(d))
    code, out, err = run(capsys, ["check", str(path)])
    assert code == 1
    text = out + err
    assert "pairing entries for (x1, p1) conflict" in text
