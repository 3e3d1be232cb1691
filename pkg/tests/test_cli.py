import io
import json
import subprocess
import sys

import pytest
from hypothesis import given

from conftest import terms
from dcat.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_check_ko():
    code, out, _ = run("check", "k1{O,O}", "k2{O,O}")
    assert code == 0
    assert json.loads(out)["verdict"] == "equal"


def test_check_not_equal():
    code, out, _ = run("check", "id{O*p}", "l{O*p} . k1{O,p}")
    assert code == 1
    assert json.loads(out)["verdict"] == "not-equal"


def test_counterexample_then_check(tmp_path):
    code, out, _ = run("counterexample", "--base", "p", "--n", "0")
    assert code == 0
    d = json.loads(out)
    assert d["graph"] == {"dom": 1, "cod": 1, "pairs": [[0, 0]]}
    (tmp_path / "f").write_text(d["f"])
    (tmp_path / "g").write_text(d["g"])
    code, out, _ = run("check", f"@{tmp_path / 'f'}", f"@{tmp_path / 'g'}", "--theory", "dicart")
    assert code == 2
    assert json.loads(out)["verdict"] == "unknown"


@pytest.mark.parametrize("argv", [
    ("check", "k{p}", "k{p}"),                      # k under sesqui
    ("check", "id{p", "id{p}"),                     # parse error
    ("check", "id{p}", "id{q}"),                    # type mismatch
    ("check", "id{p}"),                             # missing argument
    ("frobnicate",),
    ("graph", "id{p}", "--format", "svg"),
    ("check", "@/nonexistent/file", "id{p}"),
    ("counterexample", "--n", "-1"),
])
def test_usage_errors(argv):
    code, out, err = run(*argv)
    assert code == 64
    assert err


def test_graph_formats():
    code, out, _ = run("graph", "w{p}")
    assert json.loads(out) == {"dom": 1, "cod": 2, "pairs": [[0, 0], [0, 1]]}
    code, out, _ = run("graph", "w{p}", "--format", "dot")
    assert out.startswith("graph G {") and "s0 -- t1;" in out
    code, out, _ = run("graph", "w{p}", "--format", "text")
    assert out.strip() == "1->2 {(0,0), (0,1)}"


def test_normalize():
    _, out, _ = run("normalize", "k1{p,p} . w{p}")
    assert json.loads(out)["term"] == "id{p}"
    _, out, _ = run("normalize", "w{p} . m{p}", "--mode", "kl")
    d = json.loads(out)
    assert (d["k_part"], d["l_part"]) == ("w{p + p}", "m{p} * m{p}")


def test_homset():
    _, out, _ = run("homset", "O*p", "O*p", "--list")
    d = json.loads(out)
    assert d["count"] == 2 and d["certified_exact"]
    assert all("members" in c for c in d["classes"])


def test_classify():
    _, out, _ = run("classify", "((p*O)+I)*O", "--theory", "dicart")
    d = json.loads(out)
    assert d["contradiction"] and not d["o_normal"]
    _, out, _ = run("classify", "O*O")
    d = json.loads(out)
    assert d["class"] == {"kind": "O", "forward": "k1{O, O}", "backward": "w{O}"}


def test_oracle_commands(monkeypatch):
    code, out, _ = run("oracle", "soundness", "--samples", "5", "--seed", "3")
    d = json.loads(out)
    assert code == 0 and d["ok"] and d["seed"] == 3
    code, out, _ = run("oracle", "faithfulness", "p*p", "p")
    d = json.loads(out)
    assert code == 0 and d["graph_classes"] == d["closure_classes"] == 2
    monkeypatch.setenv("DCAT_BUDGET_STEPS", "7")
    code, out, _ = run("oracle", "closure", "id{O*p}", "l{O*p} . k1{O,p}")
    d = json.loads(out)
    assert code == 0 and d["max_steps"] == 7 and len(d["classes"]) == 2
    code, _, _ = run("oracle", "faithfulness", "p")
    assert code == 64


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dcat", "check", "k1{O,O}", "k2{O,O}"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["verdict"] == "equal"


@given(terms("sesqui", 8))
def test_check_reflexive(t):
    code, _, _ = run("check", str(t), str(t))
    assert code == 0
