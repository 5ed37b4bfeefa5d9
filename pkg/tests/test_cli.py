import json
import subprocess
import sys

import pytest

from tracecode.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_field_info(capsys):
    code, out, _ = run(capsys, "field-info", "-p", "3", "-m", "3")
    assert code == 0
    assert "modulus = 1,2,0,1" in out and "q = 27" in out and "m_p = 0" in out
    code, out, _ = run(capsys, "field-info", "-p", "3", "-m", "3", "--format", "json")
    assert json.loads(out)["modulus"] == [1, 2, 0, 1]


def test_field_info_errors(capsys):
    code, _, err = run(capsys, "field-info", "-p", "4", "-m", "2")
    assert code == 4 and "p must be an odd prime" in err
    code, _, err = run(capsys, "field-info", "-p", "3", "-m", "2", "--modulus", "2,0,1")
    assert code == 4 and "x^2 + 2 is reducible over GF(3)" in err


def test_enumerate_methods_byte_identical(capsys):
    outs = {}
    for method in ("brute", "walsh", "fast"):
        code, out, _ = run(capsys, "enumerate", "-p", "3", "-m", "5", "--method", method)
        assert code == 0
        outs[method] = json.loads(out)
    assert outs["fast"]["weights"] == {"42": 30, "45": 60, "48": 90, "51": 42, "54": 20}
    dumped = {k: json.dumps(v["weights"]) for k, v in outs.items()}
    assert dumped["brute"] == dumped["walsh"] == dumped["fast"]


def test_enumerate_formats(capsys):
    _, out, _ = run(capsys, "enumerate", "-p", "3", "-m", "3", "--format", "csv")
    assert out.splitlines() == ["4,6", "5,6", "6,8", "7,6"]
    _, out, _ = run(capsys, "enumerate", "-p", "3", "-m", "3", "--format", "text")
    assert out.strip() == "[8, 3, 4] 1+6z^4+6z^5+8z^6+6z^7"


def test_numeric_key_order(capsys):
    _, out, _ = run(capsys, "enumerate", "-p", "7", "-m", "3")
    keys = list(json.loads(out)["weights"])
    assert keys == sorted(keys, key=int)


def test_output_independent_of_workers(capsys):
    base = ("enumerate", "-p", "3", "-m", "6", "--method", "brute")
    _, a, _ = run(capsys, *base, "--workers", "1")
    _, b, _ = run(capsys, *base, "--workers", "3")
    assert a == b


def test_budget_exit(capsys, monkeypatch):
    code, _, err = run(capsys, "enumerate", "-p", "5", "-m", "8", "--method", "brute")
    assert code == 3 and "--method fast" in err
    monkeypatch.setenv("TRACECODE_BUDGET", "100")
    code, _, _ = run(capsys, "enumerate", "-p", "3", "-m", "5", "--method", "brute")
    assert code == 3
    code, _, _ = run(capsys, "enumerate", "-p", "3", "-m", "5", "--method", "brute",
                     "--budget", "1e6")
    assert code == 0


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "-p", "5", "-m", "3")
    assert code == 0
    code, out, _ = run(capsys, "verify", "-p", "3", "-m", "4")
    assert code == 2
    assert json.loads(out)["enumeration"]["weights"] == {"18": 6, "24": 72, "27": 2}
    code, out, _ = run(capsys, "verify", "-p", "3", "-m", "6")
    rep = json.loads(out)
    assert code == 0 and rep["ratio"] == {"case": "m≡2 (mod 4), m_p=0", "in_scope": True,
                                          "pass": True}


def test_predict(capsys):
    code, out, _ = run(capsys, "predict", "-p", "5", "-m", "6")
    assert code == 0
    assert json.loads(out)["weights"] == {"2500": 7124, "2525": 4900, "2550": 3600}
    code, _, err = run(capsys, "predict", "-p", "3", "-m", "4")
    assert code == 2 and "enumeration" in err


def test_sums(capsys):
    code, out, _ = run(capsys, "sums", "-p", "3", "-m", "3", "-a", "1,0,0", "-b", "0,0,0")
    assert code == 0 and out.splitlines() == ["-3*z^1 + 3*z^2", "agree=true"]
    _, out, _ = run(capsys, "sums", "-p", "3", "-m", "3", "-a", "0,0,0", "-b", "1,0,0")
    assert out.splitlines()[0] == "0"
    code, _, _ = run(capsys, "sums", "-p", "3", "-m", "3", "-a", "1,0", "-b", "0,0,0")
    assert code == 4


def test_export(capsys, tmp_path):
    path = tmp_path / "out.txt"
    code, _, _ = run(capsys, "export-genmatrix", "-p", "3", "-m", "2", str(path))
    assert code == 0
    assert path.read_text().startswith("3 2 3 2\n")


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["enumerate", "-p", "3"])
    assert exc.value.code == 4


def test_console_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "tracecode.cli", "--help"], capture_output=True, text=True
    )
    assert res.returncode == 0
    assert "export-genmatrix" in res.stdout and "exit codes" in res.stdout
