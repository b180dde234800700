import csv
import io
import json
import shutil
import subprocess

import pytest

from etaleopen.cli import main

SQ = "pair{n=1; f=y^2 - x1; g=y}"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--out", "json")
    return code, json.loads(out)


def test_validate(capsys):
    code, d = run_json(capsys, "validate", "--pair", SQ)
    assert code == 0 and d["verdict"] == "Valid"
    code, d = run_json(capsys, "validate", "--pair", "pair{n=1; f=y^2 - x1; g=1}")
    assert code == 0 and d["verdict"] == "Invalid" and d["witness"]["alpha"] == ["0"]


def test_image_json_and_csv(capsys):
    code, d = run_json(capsys, "image", "--pair", SQ, "--field", "Fq:7^1")
    assert code == 0 and d["size"] == 3 and [p[0] for p in d["points"]] == ["1", "2", "4"]
    code, out, _ = run(capsys, "image", "--pair", SQ, "--field", "Fq:3^2", "--out", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["point"] and len(rows) == 5


def test_member(capsys):
    code, d = run_json(capsys, "member", "--pair", SQ, "--field", "Qp:5@12", "--alpha", "6")
    assert d["verdict"] == "Yes"
    code, d = run_json(capsys, "member", "--pair", SQ, "--field", "Qp:5@12", "--alpha", "5")
    assert d["verdict"] == "No"
    code, d = run_json(capsys, "member", "--pair", SQ, "--field", "R", "--alpha", "-1")
    assert d["verdict"] == "No"


def test_intervals(capsys):
    code, d = run_json(capsys, "intervals", "--pair", SQ)
    (iv,) = d["intervals"]
    assert iv["lo"] == {"kind": "rational", "value": "0"}
    assert iv["hi"]["kind"] == "infinite"


def test_weil_and_descend(capsys):
    code, d = run_json(capsys, "weil", "--basis", "Qi", "--poly", "x1^2 + 1")
    assert sorted(d["components"]) == sorted(["-x1_2^2 + x1_1^2 + 1", "2*x1_1*x1_2"])
    code, d = run_json(capsys, "descend", "--basis", "Qi", "--poly", "e2*x1 + x2")
    assert sorted(d["equations"]) == ["x1", "x2"]


def test_steinitz(capsys):
    code, d = run_json(capsys, "steinitz", "--field", "Fs:3^{2*5^inf}", "--square", "2", "--contains", "25")
    assert d["k0"] == 2 and d["square"]["is_square"] and d["contains"]["25"]
    code, d = run_json(capsys, "steinitz", "2^3*5^inf*7", "--contains", "40")
    assert d["divides"]["40"] and d["val_2"] == "3"


def test_paley_and_exit_codes(capsys):
    code, d = run_json(capsys, "paley", "--q", "13", "--k", "2", "--betas", "0,1")
    assert code == 0 and d["rows"][0]["count"] == 2
    code, out, _ = run(capsys, "paley", "--q", "p:100:120", "--k", "1", "--out", "csv")
    assert code == 0 and len(out.strip().splitlines()) == 1 + 5
    code, d = run_json(capsys, "density", "--pair", "pair{n=1; f=y^2 - x1; g=0}", "--q", "101")
    assert code == 1 and d["rows"][0]["pass"] is False


def test_reproducible_output(capsys):
    a = run(capsys, "paley", "--q", "p:200:300", "--k", "2", "--trials", "3", "--seed", "s1")[1]
    b = run(capsys, "paley", "--q", "p:200:300", "--k", "2", "--trials", "3", "--seed", "s1")[1]
    c = run(capsys, "paley", "--q", "p:200:300", "--k", "2", "--trials", "3", "--seed", "s2")[1]
    assert a == b != c


def test_probe_witness_hensel_cofinal_audit(capsys):
    code, d = run_json(capsys, "probe", "--p", "3", "--tower", "1,3")
    assert code == 0 and d["first_failure"] == 1
    code, d = run_json(capsys, "witness", "--p", "5")
    assert d["alpha"] == "3"
    code, d = run_json(capsys, "hensel-demo", "--n", "2", "--field", "Qp:5@12")
    assert code == 0 and d["members"] == 27 and d["pass"]
    code, d = run_json(capsys, "cofinal", "--pair", "pair{n=1; f=y^3 - x1; g=y}", "--p", "7", "--m", "1,2")
    assert [r["complement"] for r in d["rows"]] == [5, 33]
    code, d = run_json(capsys, "audit", "--pair", SQ, "--field", "Qp:5@12", "--members", "1;4;6;9")
    assert code == 0 and d["failures"] == 0


def test_usage_errors(capsys):
    assert run(capsys, "witness", "--p", "7")[0] == 2
    assert run(capsys, "validate", "--pair", "pair{n=1; f=2*y; g=1}")[0] == 2
    with pytest.raises(SystemExit) as e:
        main(["bogus"])
    assert e.value.code == 2
    code, _, err = run(capsys, "image", "--pair", "pair{n=2; f=y^2 - x1*x2; g=y}", "--field", "Fp:101",
                       "--budget", "1000")
    assert code == 2 and "budget" in err


@pytest.mark.skipif(shutil.which("etaleopen") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["etaleopen", "validate", "--pair", SQ], capture_output=True, text=True)
    assert res.returncode == 0 and '"Valid"' in res.stdout
