import io
import json

import pytest

from pcbounds import report
from pcbounds.cli import run
from pcbounds.oracle import OracleResult
from pcbounds.core import Interval

from conftest import DATA


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv, "--format", "json")
    assert code == 0, err
    return json.loads(out)


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_simple_text_report():
    code, out, _ = call("simple", "--experimental", DATA / "table1.csv")
    assert code == 0
    assert "PC interval: [0.6000, 1.0000]" in out
    assert "RR = 2.5000 (> 2: lower bound exceeds 0.5)" in out


def test_simple_json_report():
    rep = call_json("simple", "--experimental", DATA / "table1.csv")
    assert rep["interval"] == {"lo": 0.6, "hi": 1.0}
    assert rep["raw"]["hi"] == pytest.approx(0.88 / 0.30, abs=1e-9)
    assert rep["risk_ratio"] == 2.5 and rep["rr_exceeds_2"] is True
    assert rep["oracle"] is None


def test_mediation_verify_json():
    rep = call_json("mediation", "--experimental", DATA / "mediation.csv", "--verify")
    assert rep["interval"]["lo"] == pytest.approx(0.6, abs=1e-9)
    assert rep["interval"]["hi"] == pytest.approx(0.758333333333, abs=1e-9)
    assert rep["oracle"]["agrees"] is True
    assert rep["oracle"]["agreement"]["hi"] <= 1e-9
    assert rep["diagnostics"]["markov"]["passed"] is True


def test_confounded_requires_observational():
    code, out, err = call("confounded", "--experimental", DATA / "table1.csv")
    assert code == 2 and out == ""
    assert "observational table required" in err


def test_confounded_report():
    rep = call_json("confounded", "--experimental", DATA / "table1.csv", "--observational", DATA / "table2.csv", "--verify")
    assert rep["interval"]["lo"] == pytest.approx(1.0, abs=1e-9)
    assert rep["interval"]["hi"] == pytest.approx(1.0, abs=1e-9)


def test_covariate_report_with_and_without_stratum():
    rep = call_json("covariate", "--experimental", DATA / "covariate.csv")
    assert rep["interval"]["lo"] == pytest.approx(1.0, abs=1e-9)
    rep = call_json("covariate", "--experimental", DATA / "covariate.csv", "--ann-stratum", "1", "--verify")
    assert rep["interval"] == {"lo": 1.0, "hi": 1.0}
    assert rep["diagnostics"]["stratum_risk_ratio"] == "inf"


def test_inconsistent_evidence_exit_code(tmp_path):
    obs = write(tmp_path, "o.csv", "x,y,count\n1,1,10\n1,0,10\n0,1,40\n0,0,40\n")
    code, _, err = call("confounded", "--experimental", DATA / "table1.csv", "--observational", obs)
    assert code == 3 and "inconsistent" in err


def test_oracle_only_inconsistency_exit_code(tmp_path):
    # passes the closed-form check but Q(X=1, Y=1) = 0.4 > P(Y(1)=1) = 0.3
    obs = write(tmp_path, "o.csv", "x,y,count\n1,1,4\n1,0,2\n0,1,1\n0,0,3\n")
    code, _, _ = call("confounded", "--experimental", DATA / "table1.csv", "--observational", obs)
    assert code == 0
    code, _, err = call("confounded", "--experimental", DATA / "table1.csv", "--observational", obs, "--verify")
    assert code == 3


@pytest.mark.parametrize(
    "argv",
    [
        ("simple",),
        ("bogus",),
        ("simple", "--experimental", "/nonexistent.csv"),
        ("simple", "--experimental", DATA / "covariate.csv"),
        ("simple", "--experimental", DATA / "table1.csv", "--grid", "1"),
        ("covariate", "--experimental", DATA / "covariate.csv", "--ann-stratum", "9"),
        ("covariate", "--experimental", DATA / "covariate.csv", "--ann-stratum", "0"),
    ],
)
def test_input_errors_exit_2(argv):
    code, out, err = call(*argv)
    assert code == 2 and out == "" and err


def test_from_config(tmp_path):
    rep = call_json("from-config", DATA / "confounded.json")
    assert rep["scenario"] == "confounded" and rep["oracle"]["agrees"]


def test_json_is_byte_identical_and_schema_stable(tmp_path):
    a = call("mediation", "--experimental", DATA / "mediation.csv", "--format", "json")[1]
    b = call("mediation", "--experimental", DATA / "mediation.csv", "--format", "json")[1]
    assert a == b
    other = write(tmp_path, "m.csv", "x,m,y,count\n0,0,1,5\n0,0,0,20\n0,1,1,7\n0,1,0,3\n1,0,1,3\n1,0,0,9\n1,1,1,30\n1,1,0,2\n")
    c = call("mediation", "--experimental", other, "--format", "json")[1]

    def keys(d, prefix=""):
        out = set()
        for k, v in d.items():
            out.add(prefix + k)
            if isinstance(v, dict) and k not in ("strata",):
                out |= keys(v, prefix + k + ".")
        return out

    assert keys(json.loads(a)) == keys(json.loads(c))


# -- warning registry ----------------------------------------------------------


def _codes(rep):
    return {w["code"] for w in rep["warnings"]}


def test_every_warning_can_fire(tmp_path, monkeypatch):
    seen = set()
    seen |= _codes(call_json("simple", "--experimental", DATA / "table1.csv"))
    seen |= _codes(call_json("simple", "--experimental", write(tmp_path, "a.csv", "x,y,count\n1,1,1\n1,0,9\n0,1,3\n0,0,7\n")))
    seen |= _codes(call_json("covariate", "--experimental", DATA / "covariate.csv", "--ann-stratum", "1"))
    seen |= _codes(call_json("covariate", "--experimental", write(
        tmp_path, "s.csv", "s,x,y,count\na,1,1,3\na,1,0,2\na,0,0,5\nb,1,1,0\n")))
    seen |= _codes(call_json("simple", "--experimental", write(
        tmp_path, "f.csv", "x,y,count\n1,1,0.15\n1,0,0.35\n0,1,0.06\n0,0,0.44\n")))
    seen |= _codes(call_json("mediation", "--experimental", write(
        tmp_path, "v.csv", "x,m,y,count\n1,1,1,90\n1,1,0,10\n0,1,1,50\n0,1,0,50\n1,0,1,20\n1,0,0,80\n0,0,1,20\n0,0,0,80\n")))
    seen |= _codes(call_json("mediation", "--experimental", write(
        tmp_path, "u.csv", "x,m,y,count\n1,1,1,90\n1,1,0,10\n1,0,1,20\n1,0,0,80\n0,0,1,20\n0,0,0,80\n")))

    def bad_oracle(m, g):
        return OracleResult(Interval(0.1, 0.2), {}, {}, g.resolution)

    monkeypatch.setattr(report, "frechet_oracle_simple", bad_oracle)
    seen |= _codes(call_json("simple", "--experimental", DATA / "table1.csv", "--verify"))
    assert seen == set(report.WARNINGS)
