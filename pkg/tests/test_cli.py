import json
from fractions import Fraction as F

import pytest

from edgepoly.cli import main


def run(argv, capsys=None):
    code = main([str(a) for a in argv])
    return code


def statuses(report):
    return {c["name"]: c["status"] for c in report["checks"]}


def values(report, name):
    return next(c["values"] for c in report["checks"] if c["name"] == name)


@pytest.fixture
def gen(tmp_path):
    def _gen(*args):
        out = tmp_path / ("_".join(map(str, args)).replace("/", "over") + ".json")
        assert run(["generate", *args, "-o", out]) == 0
        return out
    return _gen


def test_generate_talata(gen):
    doc = json.loads(gen("talata", "--dim", 4, "--eps", "1/10").read_text())
    assert len(doc["vertices"]) == 7
    assert doc["recommended_norm"] == "relative"
    assert all(isinstance(x, str) for row in doc["vertices"] for x in row)


def test_generate_hypercube_and_l1subspace(gen):
    assert len(json.loads(gen("hypercube", "--dim", 3).read_text())["vertices"]) == 8
    doc = json.loads(gen("l1subspace", "--dim", 6).read_text())
    assert doc["ambient_dim"] == 7 and len(doc["vertices"]) == 8
    assert len(doc["affine_constraints"]) == 1


def test_generate_rejects_bad_spec(tmp_path):
    assert run(["generate", "talata", "--dim", 3, "-o", tmp_path / "x.json"]) == 1


def test_analyze_talata(gen, tmp_path):
    out = tmp_path / "r.json"
    assert run(["analyze", gen("talata", "--dim", 4, "--eps", "1/10"), "--norm", "relative", "-o", out]) == 0
    rep = json.loads(out.read_text())
    st = statuses(rep)
    assert st["edge_antipodal"] == "true" and st["antipodal"] == "false"
    assert values(rep, "lambda")["lambda"]["ratio_squared"] == "49/25"


def test_analyze_hypercube(gen, tmp_path):
    out = tmp_path / "r.json"
    assert run(["analyze", gen("hypercube", "--dim", 3), "--norm", "linf", "-o", out, "--seed", 42]) == 0
    rep = json.loads(out.read_text())
    assert rep["seed"] == 42
    assert statuses(rep)["equidistant"] == "true"
    assert values(rep, "lambda")["lambda"]["ratio_squared"] == "1"


def test_analyze_l1_subspace(gen, tmp_path):
    out = tmp_path / "r.json"
    assert run(["analyze", gen("l1subspace", "--dim", 4), "--norm", "l1", "-o", out]) == 0
    rep = json.loads(out.read_text())
    assert statuses(rep)["subequilateral"] == "true"
    lam = values(rep, "lambda")["lambda"]
    assert lam["ratio_squared"] == "4"


def test_report_roundtrip(gen, tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    src = gen("talata", "--dim", 4)
    assert run(["analyze", src, "-o", first]) == 0
    assert run(["analyze", first, "-o", second]) == 0
    a, b = json.loads(first.read_text()), json.loads(second.read_text())
    assert a["instance_digest"] == b["instance_digest"]
    assert a["checks"] == b["checks"]


def test_input_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"ambient_dim": 2, "vertices": [[0.5, 0], [1, 0], [0, 1]]}))
    assert run(["analyze", bad]) == 1
    bad.write_text("{not json")
    assert run(["analyze", bad]) == 1
    assert run(["analyze", tmp_path / "missing.json"]) == 1
    dup = tmp_path / "dup.json"
    dup.write_text(json.dumps({"ambient_dim": 2, "vertices": [["0", "0"], ["0", "0"], ["1", "0"]]}))
    assert run(["analyze", dup]) == 1


def test_reduce_flag(tmp_path, capsys):
    f = tmp_path / "cloud.json"
    f.write_text(json.dumps({"ambient_dim": 2,
                             "vertices": [["0", "0"], ["2", "0"], ["0", "2"], ["1/2", "1/2"]]}))
    assert run(["analyze", f, "--norm", "l1", "-o", tmp_path / "r0.json"]) == 1
    assert run(["analyze", f, "--norm", "l1", "--reduce", "-o", tmp_path / "r.json"]) == 0
    rep = json.loads((tmp_path / "r.json").read_text())
    assert len(rep["instance"]["vertices"]) == 3


@pytest.mark.parametrize("d", [4, 8])
def test_certify_apex_pair(gen, tmp_path, d):
    out = tmp_path / "c.json"
    assert run(["certify", gen("l1subspace", "--dim", d), "--pair", d, d + 1, "--norm", "l1", "-o", out]) == 0
    cert = json.loads(out.read_text())["certificate"]
    assert cert["lower_bound"]["value"] == "4" and cert["distance"]["value"] == "4"
    assert cert["tight"] is True and cert["valid"] is True
    for side in ("x_side", "y_side"):
        assert F(cert[side]["dominant_coefficient"]) >= F(1, d)


def test_certify_cube_diagonal(gen, tmp_path):
    out = tmp_path / "c.json"
    assert run(["certify", gen("hypercube", "--dim", 3), "--pair", 0, 7, "--norm", "relative", "-o", out]) == 0
    cert = json.loads(out.read_text())["certificate"]
    assert F(cert["x_side"]["dominant_coefficient"]) >= F(1, 3)


def test_certify_errors(gen):
    cube = gen("hypercube", "--dim", 3)
    assert run(["certify", cube, "--pair", 0, 1, "--norm", "linf"]) == 1  # an edge
    assert run(["certify", cube, "--pair", 0, 7, "--norm", "l2"]) == 1  # not subequilateral
    assert run(["certify", cube, "--pair", 0, 99]) == 1


def test_probe(tmp_path):
    out = tmp_path / "p.json"
    assert run(["probe", "--dim", 2, "--objective", "max-vertices", "--seed", 7,
                "--iterations", 100, "-o", out]) == 0
    rep = json.loads(out.read_text())
    assert rep["best_score"] == "4" and rep["seed"] == 7
    assert rep["inconsistencies"] == []
    assert run(["probe", "--dim", 1]) == 1


def test_probe_threads_env(tmp_path, monkeypatch):
    monkeypatch.setenv("EDGEPOLY_THREADS", "2")
    out = tmp_path / "p.json"
    assert run(["probe", "--dim", 2, "--iterations", 20, "--restarts", 2, "-o", out]) == 0


def test_verify_suite_subset(capsys):
    assert run(["verify-suite", "--quick", "--only", 1, 2, 6]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 3 and all(l.startswith("[PASS]") for l in lines)
