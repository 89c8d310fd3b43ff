import io
import json
import subprocess
import sys

import pytest

from racahweyl.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    old = sys.stdout, sys.stderr
    sys.stdout, sys.stderr = out, err
    try:
        code = main(list(argv))
    finally:
        sys.stdout, sys.stderr = old
    return code, out.getvalue(), err.getvalue()


def test_eval_text():
    code, out, _ = run("eval", "acomm(x1, d1)", "-n", "1")
    assert code == 0 and out.strip() == "1 + 2*x1*d1"


def test_eval_k3_has_sixteenths():
    code, out, _ = run("eval", "comm(K1,K2)", "-n", "6")
    assert code == 0 and "1/16*" in out


def test_eval_with_oracle():
    code, out, _ = run("eval", "Casimir(sp2, {1,2,3,4}) + 2*K1", "--oracle")
    assert code == 0
    assert out.splitlines()[0] == "0" and "oracle agrees" in out


def test_eval_json():
    code, out, _ = run("eval", "a1*x1^-2", "-n", "3", "--params", "a1,a2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["params"] == ["a1", "a2"]
    term, = data["terms"]
    assert term["xexp"] == [-2, 0, 0] and term["coeff"] == [{"params": [1, 0], "num": "1", "den": "1"}]


def test_comm_command():
    code, out, _ = run("comm", "d1", "x1", "-n", "1")
    assert code == 0 and out.strip() == "1"


@pytest.mark.parametrize("argv", [
    ("eval", "L(1,1)"),
    ("eval", "x1 +"),
    ("eval", "x1", "-n", "0"),
    ("eval", "x1", "--params", "x1"),
    ("verify", "--suite", "nope"),
])
def test_usage_errors_exit_2(argv):
    code, _, err = run(*argv)
    assert code == 2 and err.startswith("error:")


def test_unknown_suite_lists_suites():
    _, _, err = run("verify", "--suite", "nope")
    assert "racah-o6" in err and "all" in err


def test_verify_json_exit_zero():
    code, out, _ = run("verify", "--suite", "howe", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["all_passed"] and data["suite"] == "howe"


def test_verify_failure_exits_one():
    code, out, _ = run("verify", "--suite", "third-relation-variants")
    assert code == 1 and "FAIL  third-relation-variants/third-relation-k2-variant" in out


def test_list():
    code, out, _ = run("list")
    assert code == 0 and "K3lit" in out and "key-identities" in out
    code, out, _ = run("list", "--format", "json")
    assert json.loads(out)["suites"]["o6-structure"] == 106


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "racahweyl", "eval", "comm(d1,x1)", "-n", "1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "1"
