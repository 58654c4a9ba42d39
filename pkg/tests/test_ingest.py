import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pcbounds import (
    DegenerateTable,
    ExperimentalMargins,
    MediatedObservations,
    MediatorMargins,
    ObservationalJoint,
    ParseError,
    SchemaMismatch,
    StratifiedMargins,
)
from pcbounds.ingest import load_scenario_config, parse_table_csv, read_table, schema_of, to_csv, to_margins

from conftest import DATA


def test_table1_file():
    t = parse_table_csv(DATA / "table1.csv", "xy")
    assert not t.is_frequency and t.total == 200
    m = to_margins(t)
    assert (m.p1, m.p0) == (0.30, 0.12)


def test_table2_file_as_observational():
    q = to_margins(parse_table_csv(DATA / "table2.csv", "xy"), observational=True)
    assert isinstance(q, ObservationalJoint)
    assert [q[(1, 1)], q[(1, 0)], q[(0, 1)], q[(0, 0)]] == pytest.approx([0.09, 0.41, 0.12, 0.38], abs=1e-15)


def test_stratified_file():
    s = to_margins(parse_table_csv(DATA / "covariate.csv", "sxy"))
    assert isinstance(s, StratifiedMargins)
    assert s.strata["1"].weight == 0.5 and s.strata["0"].weight == 0.5
    assert (s.strata["1"].margins.p1, s.strata["1"].margins.p0) == (0.6, 0.0)
    assert (s.strata["0"].margins.p1, s.strata["0"].margins.p0) == (0.0, 0.24)


def test_mediation_file():
    obs = to_margins(parse_table_csv(DATA / "mediation.csv", "xmy"))
    assert isinstance(obs, MediatedObservations)
    assert obs.table.sum() == 16000


@pytest.mark.parametrize(
    "text,schema,exc",
    [
        ("x,y,count\n", "xy", ParseError),
        ("", "xy", ParseError),
        ("x,y,count\n1,2,5\n", "xy", ParseError),
        ("x,y,count\n1,1,-5\n", "xy", ParseError),
        ("x,y,count\n1,1,abc\n", "xy", ParseError),
        ("x,y,count\n1,1\n", "xy", ParseError),
        ("x,y,count\n1,1,nan\n", "xy", ParseError),
        ("x,m,count\n1,1,5\n", "xy", SchemaMismatch),
        ("x,y,count\n1,1,5\n", "sxy", SchemaMismatch),
        ("x,y,count\n1,1,5\n", "xyz", SchemaMismatch),
        ("s,x,y,count\n,1,1,5\n", "sxy", ParseError),
    ],
)
def test_parse_errors(text, schema, exc):
    with pytest.raises(exc):
        read_table(text, schema)


def test_empty_file_message():
    with pytest.raises(ParseError, match="no data rows"):
        read_table("x,y,count\n", "xy")


def test_duplicates_summed_and_missing_cells_zero():
    t = read_table("x,y,count\n1,1,10\n1,1,5\n1,0,15\n0,0,10\n", "xy")
    assert t.get(1, 1) == 15 and t.get(0, 1) == 0
    m = to_margins(t)
    assert (m.p1, m.p0) == (0.5, 0.0)


def test_column_order_free():
    a = to_margins(read_table("count,y,x\n30,1,1\n70,0,1\n12,1,0\n88,0,0\n", "xy"))
    assert (a.p1, a.p0) == (0.30, 0.12)


def test_frequency_detection():
    t = read_table("x,y,count\n1,1,0.09\n1,0,0.41\n0,1,0.12\n0,0,0.38\n", "xy")
    assert t.is_frequency


def test_zero_unexposed_is_degenerate():
    with pytest.raises(DegenerateTable):
        to_margins(read_table("x,y,count\n1,1,30\n1,0,70\n", "xy"))


def test_stratum_missing_an_arm_is_degenerate():
    with pytest.raises(DegenerateTable):
        to_margins(read_table("s,x,y,count\na,1,1,3\na,1,0,2\nb,1,1,1\nb,0,1,1\n", "sxy"))


def test_empty_stratum_kept_with_zero_weight():
    s = to_margins(read_table("s,x,y,count\na,1,1,3\na,1,0,2\na,0,0,5\nb,1,1,0\n", "sxy"))
    assert s.strata["b"].weight == 0.0 and s.strata["a"].weight == 1.0


def test_observational_requires_xy():
    with pytest.raises(SchemaMismatch):
        to_margins(read_table("s,x,y,count\na,1,1,3\n", "sxy"), observational=True)


def test_row_permutation_invariance(rng):
    lines = ["1,1,1,60", "1,1,0,40", "1,0,1,0", "1,0,0,100", "0,1,1,0", "0,1,0,100", "0,0,1,24", "0,0,0,76"]
    ref = to_margins(read_table("s,x,y,count\n" + "\n".join(lines), "sxy"))
    for _ in range(20):
        perm = list(rng.permutation(lines))
        assert to_margins(read_table("s,x,y,count\n" + "\n".join(perm), "sxy")) == ref


def _roundtrip(obj, observational=False):
    return to_margins(read_table(to_csv(obj), schema_of(obj)), observational)


unit = st.floats(0, 1, allow_nan=False)
pos = st.floats(1e-3, 1.0)


@given(unit, unit)
def test_roundtrip_experimental(p1, p0):
    got = _roundtrip(ExperimentalMargins(p1, p0))
    assert abs(got.p1 - p1) <= 1e-12 and abs(got.p0 - p0) <= 1e-12


@given(st.lists(pos, min_size=4, max_size=4))
def test_roundtrip_observational(cells):
    tot = sum(cells)
    q = ObservationalJoint.from_cells(*(c / tot for c in cells))
    got = _roundtrip(q, observational=True)
    for k in q.q:
        assert abs(got[k] - q[k]) <= 1e-12


@settings(max_examples=100)
@given(st.lists(st.tuples(pos, unit, unit), min_size=1, max_size=5))
def test_roundtrip_stratified(rows):
    tot = sum(r[0] for r in rows)
    s = StratifiedMargins.from_rows([(str(i), w / tot, p1, p0) for i, (w, p1, p0) in enumerate(rows)])
    got = _roundtrip(s)
    assert list(got.strata) == list(s.strata)
    for l, st_ in s.strata.items():
        g = got.strata[l]
        assert abs(g.weight - st_.weight) <= 1e-12
        assert abs(g.margins.p1 - st_.margins.p1) <= 1e-12
        assert abs(g.margins.p0 - st_.margins.p0) <= 1e-12


@given(st.lists(unit, min_size=4, max_size=4))
def test_roundtrip_mediated(v):
    obs = MediatedObservations.from_margins(MediatorMargins(*v))
    got = _roundtrip(obs)
    assert np.allclose(got.table, obs.table, atol=1e-12, rtol=0)


def test_scenario_config(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"scenario": "covariate", "experimental": "t.csv", "ann_stratum": 1, "grid_resolution": 50}))
    c = load_scenario_config(cfg)
    assert c.scenario == "covariate" and c.experimental == tmp_path / "t.csv"
    assert c.ann_stratum == "1" and c.grid_resolution == 50 and c.verify is False


@pytest.mark.parametrize(
    "payload",
    ["{not json", "[]", '{"scenario": "other", "experimental": "a"}', '{"scenario": "simple"}',
     '{"scenario": "simple", "experimental": "a", "grid_resolution": "x"}'],
)
def test_scenario_config_errors(tmp_path, payload):
    cfg = tmp_path / "c.json"
    cfg.write_text(payload)
    with pytest.raises(ParseError):
        load_scenario_config(cfg)
