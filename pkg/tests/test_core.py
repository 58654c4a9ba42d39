import math

import pytest
from hypothesis import given, strategies as st

from pcbounds.core import ExperimentalMargins, Interval, Probability, clamp_to_unit, probability, risk_ratio
from pcbounds.errors import InvalidInterval, InvalidProbability


@pytest.mark.parametrize("bad", [-0.01, 1.0000001, float("nan"), float("inf")])
def test_probability_rejects_out_of_range(bad):
    with pytest.raises(InvalidProbability):
        Probability(bad)


def test_probability_tolerant_constructor_snaps_only_within_tol():
    assert probability(1 + 5e-10, 1e-9) == 1.0
    assert probability(-5e-10, 1e-9) == 0.0
    with pytest.raises(InvalidProbability):
        probability(1 + 5e-9, 1e-9)


@pytest.mark.parametrize("p1,p0,expected", [(0.30, 0.12, 2.5), (0.5, 0.5, 1.0), (0.2, 0.0, math.inf), (0.0, 0.0, 1.0)])
def test_risk_ratio(p1, p0, expected):
    assert risk_ratio(ExperimentalMargins(p1, p0)) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("x,expected", [(2.933, 1.0), (-0.2, 0.0), (0.6, 0.6)])
def test_clamp_to_unit(x, expected):
    assert clamp_to_unit(x) == expected


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_clamp_idempotent(x):
    assert clamp_to_unit(clamp_to_unit(x)) == clamp_to_unit(x)


@given(st.floats(0, 1), st.floats(1e-6, 1))
def test_risk_ratio_reconstructs_p1(p1, p0):
    rr = risk_ratio(ExperimentalMargins(p1, p0))
    assert rr >= 0
    assert abs(rr * p0 - p1) <= 1e-12


def test_interval_validation():
    with pytest.raises(InvalidInterval):
        Interval(0.6, 0.5)
    iv = Interval(0.5 + 5e-13, 0.5)
    assert iv.lo == iv.hi
    iv = Interval.from_raw(0.6, 2.9333)
    assert iv.as_tuple() == (0.6, 1.0) and iv.raw_hi == 2.9333


def test_types_are_immutable():
    m = ExperimentalMargins(0.3, 0.12)
    with pytest.raises(AttributeError):
        m.p1 = 0.5
