import csv
import io
import json
import math
import subprocess
import sys

import pytest

from smoothgerms.cli import run


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), out=buf)
    return code, buf.getvalue()


def call_json(*argv):
    code, text = call(*argv)
    return code, json.loads(text)


def test_germ_cmp():
    code, out = call_json("germ", "cmp", "x", "x^2")
    assert code == 0
    assert out["relation"] == "precedes" and out["dominates"] is True
    assert {"lhs", "rhs", "relation", "witness_threshold"} <= set(out)


def test_zeroset_components():
    code, out = call_json("zeroset", "components", "x^3-x")
    assert code == 0 and out["points"] == ["-1", "0", "1"]
    assert all(c["exact"] == c["lo"] == c["hi"] for c in out["components"])


def test_quot_hadamard():
    code, out = call_json("quot", "hadamard", "--poly", "x1*x2")
    assert code == 0 and out["g1"] == "y2" and out["g2"] == "x1"


@pytest.mark.parametrize(
    "argv,key,value",
    [
        (("germ", "sign", "-2*x^3 + 100*x^2"), "sign", "Negative"),
        (("germ", "inv", "x^2 - 3*x"), "witness_threshold", "3"),
        (("germ", "diff", "x^3"), "derivative", "3*x^2"),
        (("germ", "order", "(x^2+1)/x"), "growth_order", 1),
        (("zeroset", "dichotomy", "x - 5", "--cutoff", "0"), "verdict", "EventuallyPositive"),
        (("zeroset", "dichotomy", "1", "--cutoff", "0"), "extension_smooth", False),
        (("quot", "eq", "x", "x + bump(x; 0, 1, 2)"), "equal", True),
        (("quot", "eq", "x", "x + 1"), "ideal_witness", None),
        (("quot", "phi", "--poly", "x1 + x2", "--args", "x", "(-x)"), "class_rep", "0"),
        (("quot", "embed", "--germ", "1/x"), "class_rep", "(1)/(x)"),
    ],
)
def test_json_verbs(argv, key, value):
    code, out = call_json(*argv)
    assert code == 0
    assert out[key] == value


def test_isolate_width():
    code, out = call_json("zeroset", "isolate", "x^2 - 2", "--width", "1/1000000")
    assert code == 0 and out["count"] == 2
    from fractions import Fraction

    for r in out["roots"]:
        assert Fraction(r["hi"]) - Fraction(r["lo"]) <= Fraction(1, 10**6)


def read_csv(text):
    rows = list(csv.DictReader(io.StringIO(text)))
    return rows, [float(r["x"]) for r in rows]


@pytest.mark.parametrize(
    "argv",
    [
        ("smooth", "bump", "--q", "0", "--a", "1", "--b", "2"),
        ("smooth", "tietze", "--set", "(-inf,-1],[1,inf)", "--data", "(-inf,-1/2): -1; (1/2,inf): 1"),
        ("smooth", "extend", "--expr", "1/x", "--from", "0", "--cutoff", "1"),
        ("smooth", "pou", "--cover", "(-3,1/2),(0,3)", "--window", "-2", "2"),
    ],
)
def test_smooth_csv_is_clean(argv):
    code, text = call(*argv, "--grid", "301")
    assert code == 0
    rows, xs = read_csv(text)
    assert len(rows) == 301
    assert all(b > a for a, b in zip(xs, xs[1:]))
    for r in rows:
        assert all(math.isfinite(float(v)) for v in r.values())


def test_smooth_csv_columns():
    _, text = call("smooth", "bump", "--grid", "5")
    assert text.splitlines()[0] == "x,value,d1,d2,d3"


def test_extend_values():
    code, out = call_json("smooth", "extend", "--expr", "1/x", "--from", "0", "--cutoff", "1",
                          "--lo", "-1", "--hi", "2", "--grid", "4", "--format", "json")
    assert code == 0
    vals = {s["x"]: s["value"] for s in out["samples"]}
    assert vals[-1.0] == 0.0 and vals[2.0] == 0.5


def test_pou_certificate_json():
    code, out = call_json("smooth", "pou", "--cover", "(-1,0.7),(0.3,2)", "--window", "0", "1", "--format", "json")
    assert code == 0 and out["certificate"]["ok"] is True


@pytest.mark.parametrize(
    "argv,etype",
    [
        (("germ", "inv", "0"), "ZeroGermError"),
        (("smooth", "pou", "--cover", "(-1,0.4),(0.6,2)", "--window", "0", "1"), "CoverageError"),
        (("quot", "eq", "1/x", "x"), "NotTotalError"),
        (("smooth", "tietze", "--set", "[0,2]", "--data", "(-1,3/2): x; (1,3): x + 1"), "OverlapMismatch"),
        (("zeroset", "isolate", "0"), "ZeroPolynomialError"),
    ],
)
def test_domain_errors_exit_1(argv, etype):
    code, out = call_json(*argv)
    assert code == 1
    assert out["error"]["type"] == etype and out["error"]["message"]


@pytest.mark.parametrize(
    "argv",
    [
        ("germ", "cmp", "x"),
        ("germ", "frob", "x"),
        ("germ", "sign", "x +"),
        ("germ", "sign", "x", "--bogus"),
        ("nothing",),
        ("smooth", "pou", "--cover", "[0,1]", "--window", "0", "1"),
        ("smooth", "bump", "--grid", "1"),
        ("germ", "sign", "x", "--format", "csv"),
    ],
)
def test_usage_errors_exit_2(argv):
    code, out = call_json(*argv)
    assert code == 2
    assert "error" in out


def test_selftest_listing():
    code, text = call("selftest", "--list")
    names = text.split()
    assert code == 0
    assert {"hardy-field-axioms", "partition-of-unity", "quotient-embedding"} <= set(names)


def test_selftest_windowed_partition():
    code, text = call("selftest", "--suite", "partition-of-unity", "--window", "-2", "3", "--scale", "0.2")
    assert code == 0
    assert text.startswith("PASS partition-of-unity")


def test_selftest_unknown_suite():
    code, _ = call("selftest", "--suite", "nope")
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "smoothgerms", "germ", "cmp", "x", "x^2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["relation"] == "precedes"


def test_leading_minus_after_separator():
    code, out = call_json("germ", "sign", "--", "-x")
    assert code == 0 and out["sign"] == "Negative"
