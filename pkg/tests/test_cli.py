import csv
import json
import math
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hermfock import io
from hermfock.bargmann import bargmann_series
from hermfock.cli import main, parse_weight
from hermfock.hermite import HermiteExpansion, analyze, hermite_eval
from hermfock.specs import Gaussian, HermiteCombo, Sampled
from hermfock.weights import GS, FlatExp, Poly, Quadratic, Radial

PHI = json.dumps({"type": "gaussian", "A": [[1.0]], "C": math.pi**-0.25})


def combo(*terms):
    return json.dumps({"type": "hermite_combo", "terms": [{"alpha": [k], "re": re, "im": im} for k, re, im in terms]})


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def read_csv(text):
    return list(csv.DictReader(text.splitlines()))


def test_fmt_uses_17_digits():
    assert io.fmt(0.1) == "0.10000000000000001"
    assert io.fmt(float("inf")) == "Infinity"
    assert io.dumps({"z": 1 + 2j, "xs": [1.0, 2]}) == '{\n  "z": {\n    "re": 1,\n    "im": 2\n  },\n  "xs": [1, 2]\n}\n'


def test_expansion_round_trip():
    e = HermiteExpansion(2, 5, {(1, 2): 0.1 - 1 / 3j, (0, 0): math.pi}, 1e-17, ("note",))
    back = io.expansion_from_dict(json.loads(io.dumps(io.expansion_to_dict(e))))
    assert back == e


@pytest.mark.parametrize(
    "spec",
    [
        Gaussian(np.array([[1.5 + 0.5j]]), [0.3 - 0.2j], 2.0),
        HermiteCombo((((0,), 1.0), ((3,), 2 - 1j))),
        Sampled((np.linspace(-1, 1, 5),), np.arange(5) + 1j),
    ],
)
def test_spec_round_trip(spec):
    back = io.spec_from_dict(json.loads(io.dumps(io.spec_to_dict(spec))))
    assert io.dumps(io.spec_to_dict(back)) == io.dumps(io.spec_to_dict(spec))


def test_spec_errors_name_the_field():
    with pytest.raises(ValueError, match="'A'"):
        io.spec_from_dict({"type": "gaussian"})
    with pytest.raises(ValueError, match="terms\\[0\\]"):
        io.spec_from_dict({"type": "hermite_combo", "terms": [{"re": 1}]})
    with pytest.raises(ValueError, match="'type'"):
        io.spec_from_dict({"type": "wavelet"})


def test_parse_weight():
    assert parse_weight("gs:0.5,0.5,-1") == GS(0.5, 0.5, -1.0)
    assert parse_weight("quadratic:0.25") == Quadratic(0.25)
    assert parse_weight("flat_exp:1") == FlatExp(1.0)
    assert parse_weight("poly:2") == Poly(2.0)
    assert isinstance(parse_weight("radial:exponential:1"), Radial)


def test_analyze_window(capsys):
    code, out, _ = run(["analyze", "--input", PHI, "--cutoff", "8"], capsys)
    assert code == 0
    d = json.loads(out)
    assert len(d["coeffs"]) == 1
    assert d["coeffs"][0]["alpha"] == [0]
    assert d["coeffs"][0]["re"] == pytest.approx(1.0, abs=1e-10)


def test_analyze_echoes_combo(capsys):
    _, out, _ = run(["analyze", "--input", combo((0, 1.0, 0.0), (3, 2.0, -1.0)), "--cutoff", "5"], capsys)
    coeffs = {tuple(c["alpha"]): complex(c["re"], c["im"]) for c in json.loads(out)["coeffs"]}
    assert coeffs == {(0,): 1.0, (3,): 2 - 1j}


def test_analyze_sampled_matches_symbolic(capsys, tmp_path):
    x = np.linspace(-12, 12, 2401)
    g = Gaussian([[1.0]], [0.5])
    path = tmp_path / "sampled.json"
    path.write_text(io.dumps(io.spec_to_dict(Sampled((x,), g.evaluate(x)))))
    _, out, _ = run(["analyze", "--input", str(path), "--cutoff", "10"], capsys)
    got = io.expansion_from_dict(json.loads(out))
    ref = analyze(g, cutoff=10)
    for a, c in ref.coeffs.items():
        assert got.coeffs.get(a, 0) == pytest.approx(c, abs=1e-6)


def test_transform_bargmann_points(capsys):
    _, out, _ = run(["transform", "bargmann", "--input", combo((1, 1.0, 0.0)), "--cutoff", "4", "--points", "0,1j,2"], capsys)
    rows = read_csv(out)
    assert [float(r["re_z1"]) for r in rows] == [0.0, 0.0, 2.0]
    assert float(rows[2]["re"]) == pytest.approx(2.0, abs=1e-12)


def test_transform_stft_window(capsys):
    _, out, _ = run(["transform", "stft", "--input", PHI, "--cutoff", "8", "--points", "0:0"], capsys)
    assert float(read_csv(out)[0]["re"]) == pytest.approx(0.398942, abs=1e-6)


def test_transform_fracft(capsys):
    _, out, _ = run(["transform", "fracft", "--input", combo((3, 1.0, 0.0)), "--cutoff", "3", "--r", "2", "--points", "1"], capsys)
    row = read_csv(out)[0]
    assert float(row["re"]) == pytest.approx(-hermite_eval((3,), 1.0), rel=1e-14)


def test_transform_grid_order(capsys):
    _, out, _ = run(["transform", "bargmann", "--input", combo((0, 1.0, 0.0)), "--grid", "-1:1:2,0:1:3"], capsys)
    pts = [(float(r["re_z1"]), float(r["im_z1"])) for r in read_csv(out)]
    assert pts == sorted(pts) and len(pts) == 6


def test_round_trip_through_files(capsys, tmp_path):
    src = tmp_path / "g.json"
    src.write_text(json.dumps({"type": "gaussian", "A": [[2.0]], "L": [{"re": 0.3, "im": -0.1}]}))
    exp = tmp_path / "e.json"
    assert main(["analyze", "--input", str(src), "--cutoff", "30", "--output", str(exp)]) == 0
    _, out, _ = run(["transform", "bargmann", "--input", str(exp), "--points", "0.5+0.25j,-1"], capsys)
    rows = read_csv(out)
    mem = analyze(io.spec_from_dict(json.loads(src.read_text())), cutoff=30)
    for r, z in zip(rows, [0.5 + 0.25j, -1]):
        v = complex(bargmann_series(mem, z))
        assert complex(float(r["re"]), float(r["im"])) == v


def test_classify_commands(capsys):
    _, out, _ = run(["classify", "--input", combo((0, 1.0, 0.0), (3, 2.0, 0.0))], capsys)
    assert json.loads(out)["verdicts"]["S0"] == "member"
    rule = json.dumps({"type": "coefficient_rule", "rule": "stretched_exp", "params": {"r": 1.0, "s": 0.5}})
    _, out, _ = run(["classify", "--input", rule], capsys)
    assert json.loads(out)["verdicts"]["S_0.5"] == "member"
    g = json.dumps({"type": "gaussian", "A": [[2.0]]})
    code, out, _ = run(["classify", "--input", g], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["verdicts"]["Sigma_0.5"] == "non-member"
    assert rep["gaussian_criterion"]["member"] is False and rep["gaussian_criterion"]["agreement"] is True


def test_norm_commands(capsys):
    _, out, _ = run(["norm", "a2-series", "--input", combo((3, 1.0, 0.0)), "--profile", "exponential:1"], capsys)
    assert json.loads(out)["value"] == pytest.approx(0.25, rel=1e-9)
    _, out, _ = run(["norm", "a2-quadrature", "--input", combo((3, 1.0, 0.0)), "--profile", "exponential:1"], capsys)
    assert json.loads(out)["value"] == pytest.approx(0.25, rel=1e-9)
    _, out, _ = run(["norm", "pilipovic", "--input", combo((0, 1.0, 0.0)), "--h", "1", "--s", "0.5"], capsys)
    assert json.loads(out) == {"kind": "pilipovic", "value": 1.0, "maximizer": 0}
    _, out, _ = run(["norm", "modulation", "--input", PHI, "--grid", "-10:10:201,-10:10:201"], capsys)
    assert json.loads(out)["value"] == pytest.approx(1.0, abs=1e-3)


def test_verify_is_deterministic(capsys):
    code, first, _ = run(["verify", "fracft", "--seed", "3"], capsys)
    assert code == 0
    _, second, _ = run(["verify", "fracft", "--seed", "3"], capsys)
    assert first == second
    rep = json.loads(first)
    assert rep["suite"] == "fracft" and all(c["status"] == "pass" for c in rep["checks"])


def test_plotdata(tmp_path):
    rule = json.dumps({"type": "coefficient_rule", "rule": "stretched_exp", "params": {"r": 1.0, "s": 0.5}})
    assert main(["plotdata", "--input", rule, "--cutoff", "20", "--output", str(tmp_path), "--grid", "-2:2:5,-2:2:5"]) == 0
    decay = read_csv((tmp_path / "decay.csv").read_text())
    x = np.array([float(r["order_pow"]) for r in decay])
    y = np.array([float(r["log_abs_c"]) for r in decay])
    assert np.allclose(y, -x, atol=1e-12)
    assert main(["plotdata", "--input", combo((0, 1.0, 0.0)), "--output", str(tmp_path / "h0"), "--grid", "-2:2:5,-2:2:5"]) == 0
    heat = read_csv((tmp_path / "h0" / "heatmap.csv").read_text())
    for r in heat:
        r2 = float(r["re_z1"]) ** 2 + float(r["im_z1"]) ** 2
        assert float(r["abs_F_damped"]) == pytest.approx(math.exp(-r2 / 2), rel=1e-14)
    assert main(["plotdata", "--input", combo((1, 1.0, 0.0)), "--output", str(tmp_path / "h1"), "--grid", "-2:2:5,-2:2:5"]) == 0
    heat = read_csv((tmp_path / "h1" / "heatmap.csv").read_text())
    origin = [r for r in heat if float(r["re_z1"]) == 0 and float(r["im_z1"]) == 0]
    assert float(origin[0]["abs_F"]) == 0


def test_errors_exit_nonzero(capsys, tmp_path):
    code, _, err = run(["transform", "bargmann", "--input", str(tmp_path / "missing.json")], capsys)
    assert code == 2 and "not found" in err
    code, _, err = run(["analyze", "--input", '{"type": "gaussian"}'], capsys)
    assert code == 2 and "'A'" in err
    code, _, err = run(["verify", "nonsense"], capsys)
    assert code == 2 and "bridge" in err
    code, _, err = run(["analyze", "--input", '{"type": "gaussian", "A": [[-1]]}'], capsys)
    assert code == 2 and "positive definite" in err


def test_module_entry_point(tmp_path):
    out = tmp_path / "a.json"
    res = subprocess.run(
        [sys.executable, "-m", "hermfock", "analyze", "--input", PHI, "--cutoff", "4", "--output", str(out)],
        capture_output=True, text=True,
    )
    assert res.returncode == 0, res.stderr
    first = out.read_bytes()
    subprocess.run([sys.executable, "-m", "hermfock", "analyze", "--input", PHI, "--cutoff", "4", "--output", str(out)], check=True)
    assert out.read_bytes() == first
    assert b"\r\n" not in first


@settings(max_examples=50, deadline=None)
@given(st.floats(allow_nan=False, allow_infinity=False))
def test_float_format_round_trips(x):
    assert float(io.fmt(x)) == x
