import json

import pytest

from jacrank.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


F7_EXAMPLE = {"p": 7, "h": 1, "m": 3, "exponents": [1, 1, 2], "branch": [0, 1, 3], "base": "P1"}


def test_deuring(capsys):
    code, out, _ = run(capsys, "deuring", "-p", "5")
    assert code == 0
    obj = json.loads(out)
    assert obj["coeffs"] == [1, 4, 1] and obj["field"]["modulus"]


def test_jacobi(capsys):
    code, out, _ = run(capsys, "jacobi", "-m", "3", "-p", "7", "-h", "1", "-a", "1,1,2")
    obj = json.loads(out)
    assert code == 0 and obj["abs_square"] == 49 and obj["valuations"] == [1, 1]
    code, out, _ = run(capsys, "jacobi", "-m", "3", "-p", "5", "-a", "1,1")
    assert code == 0 and json.loads(out)["field"]["h"] == 2


def test_stickelberger_and_criteria(capsys):
    code, out, _ = run(capsys, "stickelberger", "-m", "5", "-p", "11", "-a", "1,1,1")
    obj = json.loads(out)
    assert code == 0 and obj["d"] == {"1": 0, "2": 1, "3": 1, "4": 2} and "modulus" in obj["field"]
    code, out, _ = run(capsys, "criteria", "-m", "5", "-p", "11", "-a", "1,1,1")
    obj = json.loads(out)
    assert obj["not_supersingular"] and obj["not_prank0_if_base_P1"]


def test_prank_f7_example(capsys, tmp_path):
    path = write(tmp_path, "f7.json", F7_EXAMPLE)
    code, out, _ = run(capsys, "prank", "--curve", path, "--route", "all")
    obj = json.loads(out)
    assert code == 0 and obj["agree"]
    assert all(v["prank"] >= 1 for v in obj["verdicts"] if v["prank"] is not None)


def test_lpoly_and_zeta(capsys, tmp_path):
    path = write(tmp_path, "f7.json", F7_EXAMPLE)
    code, out, _ = run(capsys, "lpoly", "--curve", path)
    assert code == 0 and json.loads(out)["constant_term"]["ok"]
    code, out, _ = run(capsys, "zeta", "--curve", path)
    obj = json.loads(out)
    assert code == 0 and obj["genus"] == 2 and obj["field"]["p"] == 7


def test_cartier(capsys):
    code, out, _ = run(capsys, "cartier", "-p", "5", "-f", "0,2,-3,1")
    obj = json.loads(out)
    assert code == 0 and obj["matrix"] == [[3]] and obj["semilinear_prank"] == 1


def test_search_tsv(capsys, tmp_path):
    tmpl = dict(F7_EXAMPLE, p=5, h=2, branch=[0, 1, None])
    path = write(tmp_path, "tmpl.json", tmpl)
    code, out, _ = run(capsys, "search", "--curve-template", path, "--route", "all")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "x2\tverdict\twitnesses"
    assert all(line.split("\t")[1] == "prank0" for line in lines[1:])


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["jacobi", "-m", "3"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["nosuch"])
    assert exc.value.code == 1


@pytest.mark.parametrize("obj,needle", [
    ({"h": 1, "m": 3, "exponents": [1], "branch": [0]}, "'p'"),
    (dict(F7_EXAMPLE, exponents=[1, 3, 2]), ""),
    (dict(F7_EXAMPLE, branch=[0, "x", 3]), "branch[1]"),
    (dict(F7_EXAMPLE, modulus=[1, 1]), "modulus"),
])
def test_validation_errors(capsys, tmp_path, obj, needle):
    path = write(tmp_path, "bad.json", obj)
    code, _, err = run(capsys, "zeta", "--curve", path)
    assert code == 2 and needle in err


def test_malformed_json(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{\n  \"p\": 7,\n  oops\n}")
    code, _, err = run(capsys, "zeta", "--curve", str(path))
    assert code == 2 and "line 3" in err


def test_budget_exit(capsys, tmp_path):
    path = write(tmp_path, "f7.json", F7_EXAMPLE)
    code, _, err = run(capsys, "zeta", "--curve", path, "--max-field", "10")
    assert code == 4 and "budget" in err


def test_disagreement_exit(capsys, tmp_path, monkeypatch):
    from jacrank import criteria
    real = criteria.criterion_verdict

    def wrong(C, budget):
        v = real(C, budget)
        return criteria.PrankVerdict(v.route, v.prank + 1, v.supersingular, v.detail)

    monkeypatch.setattr(criteria, "criterion_verdict", wrong)
    path = write(tmp_path, "f7.json", F7_EXAMPLE)
    code, out, _ = run(capsys, "prank", "--curve", path)
    assert code == 3 and not json.loads(out)["agree"]


def test_output_independent_of_threads(capsys, tmp_path, monkeypatch):
    path = write(tmp_path, "c.json", {"p": 11, "m": 5, "exponents": [1, 2, 3, 1], "branch": [0, 1, 4, 7]})
    outs = []
    for t in ("1", "3"):
        code, out, _ = run(capsys, "--threads", t, "lpoly", "--curve", path, "-j", "2")
        assert code == 0
        outs.append(out)
    monkeypatch.setenv("JACRANK_THREADS", "2")
    outs.append(run(capsys, "lpoly", "--curve", path, "-j", "2")[1])
    assert outs[0] == outs[1] == outs[2]
