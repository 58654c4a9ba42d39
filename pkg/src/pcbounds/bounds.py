"""Analytic bounds on the probability of causation.

Three evidence regimes are covered:

* experimental margins only (:func:`simple_bounds`),
* experimental margins stratified by a pre-treatment covariate, either
  observed for the individual (:func:`covariate_conditional_bounds`) or only
  in the population (:func:`covariate_marginal_bounds`),
* experimental margins combined with an observational joint of exposure and
  outcome, allowing for confounding in the individual's exposure
  (:func:`tian_pearl_bounds`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable, Mapping

from .core import INGEST_TOL, ExperimentalMargins, Interval, Probability, risk_ratio
from .errors import (
    ConditioningEventImpossible,
    InconsistentEvidence,
    InvalidProbability,
    UnknownStratum,
)


@dataclass(frozen=True)
class Stratum:
    weight: Probability
    margins: ExperimentalMargins

    def __post_init__(self):
        object.__setattr__(self, "weight", Probability(self.weight))


@dataclass(frozen=True)
class StratifiedMargins:
    """Covariate weights ``Pr(S=s)`` with stratum-specific experimental margins.

    ``strata`` maps a stratum label to a :class:`Stratum`. Weights must sum to
    one within ``1e-9``; zero-weight strata are allowed.
    """

    strata: Mapping[Hashable, Stratum]

    def __post_init__(self):
        strata = dict(self.strata)
        if not strata:
            raise ValueError("at least one stratum is required")
        total = sum(s.weight for s in strata.values())
        if abs(total - 1.0) > INGEST_TOL:
            raise InvalidProbability(f"stratum weights sum to {total!r}, not 1")
        object.__setattr__(self, "strata", strata)

    @classmethod
    def from_rows(cls, rows) -> "StratifiedMargins":
        """Build from ``(label, weight, p1, p0)`` tuples."""
        strata = {}
        for label, w, p1, p0 in rows:
            if label in strata:
                raise ValueError(f"duplicate stratum label {label!r}")
            strata[label] = Stratum(w, ExperimentalMargins(p1, p0))
        return cls(strata)

    def __len__(self):
        return len(self.strata)

    def marginalized(self) -> ExperimentalMargins:
        """Population margins ``p_x = sum_s Pr(S=s) p_x(s)``."""
        p1 = sum(s.weight * s.margins.p1 for s in self.strata.values())
        p0 = sum(s.weight * s.margins.p0 for s in self.strata.values())
        return ExperimentalMargins(min(p1, 1.0), min(p0, 1.0))


@dataclass(frozen=True)
class ObservationalJoint:
    """Joint observational law ``Q(X=x, Y=y)``; ``q[(x, y)]`` is a cell."""

    q: Mapping[tuple[int, int], Probability]

    def __post_init__(self):
        cells = {(x, y): Probability(self.q.get((x, y), 0.0)) for x in (0, 1) for y in (0, 1)}
        extra = set(self.q) - set(cells)
        if extra:
            raise KeyError(f"unexpected cells {sorted(extra)}")
        total = sum(cells.values())
        if abs(total - 1.0) > INGEST_TOL:
            raise InvalidProbability(f"observational cells sum to {total!r}, not 1")
        object.__setattr__(self, "q", cells)

    @classmethod
    def from_cells(cls, q11, q10, q01, q00) -> "ObservationalJoint":
        return cls({(1, 1): q11, (1, 0): q10, (0, 1): q01, (0, 0): q00})

    def __getitem__(self, key):
        return self.q[key]

    @property
    def y1(self) -> float:
        return self.q[(1, 1)] + self.q[(0, 1)]


def _lower_from_rr(m: ExperimentalMargins) -> float:
    rr = risk_ratio(m)
    return 1.0 if math.isinf(rr) else 1.0 - 1.0 / rr


def simple_bounds(m: ExperimentalMargins) -> Interval:
    """Bounds ``1 - 1/RR <= PC <= Pr(Y=0|X<-0) / Pr(Y=1|X<-1)``.

    Requires no confounding between exposure and potential responses, for
    the study subjects and for the individual alike.
    """
    if m.p1 <= 0:
        raise ConditioningEventImpossible("Pr(Y=1 | X<-1) is zero")
    raw_lo = _lower_from_rr(m)
    raw_hi = (1.0 - m.p0) / m.p1
    return Interval.from_raw(raw_lo, raw_hi)


def covariate_conditional_bounds(s: StratifiedMargins, ann_stratum) -> Interval:
    """Simple bounds within the individual's own covariate stratum.

    The lower endpoint is ``1 - 1/RR(s)``; the upper endpoint is the same
    stratum-conditional ratio that :func:`simple_bounds` uses.
    """
    try:
        stratum = s.strata[ann_stratum]
    except KeyError:
        raise UnknownStratum(f"unknown stratum {ann_stratum!r}; known: {list(s.strata)}") from None
    if stratum.margins.p1 <= 0:
        raise ConditioningEventImpossible(
            f"Pr(Y=1 | X<-1, S={ann_stratum!r}) is zero; the observed case is impossible in this stratum"
        )
    return simple_bounds(stratum.margins)


def delta_gamma(s: StratifiedMargins) -> tuple[float, float]:
    """Weighted positive parts ``(Delta, Gamma)`` used by the marginal bounds."""
    delta = gamma = 0.0
    for st in s.strata.values():
        p1, p0 = st.margins.p1, st.margins.p0
        delta += st.weight * max(0.0, p1 - p0)
        gamma += st.weight * max(0.0, p1 - (1.0 - p0))
    return delta, gamma


def covariate_marginal_bounds(s: StratifiedMargins) -> Interval:
    """Bounds when the covariate is seen in the data but not for the individual."""
    p1 = sum(st.weight * st.margins.p1 for st in s.strata.values())
    if p1 <= 0:
        raise ConditioningEventImpossible("marginal Pr(Y=1 | X<-1) is zero")
    delta, gamma = delta_gamma(s)
    return Interval.from_raw(delta / p1, 1.0 - gamma / p1)


def tian_pearl_bounds(m: ExperimentalMargins, q: ObservationalJoint) -> Interval:
    """Bounds combining experimental margins with observational data.

    Only the experimental study is assumed unconfounded; the individual is
    taken to share the exposure/response dependence of the observational
    population.

    Raises :class:`InconsistentEvidence` when the lower endpoint exceeds the
    upper one, which no joint law of the two data sources can produce.
    """
    q11 = q[(1, 1)]
    if q11 <= 0:
        raise ConditioningEventImpossible("Q(X=1, Y=1) is zero")
    raw_lo = (q.y1 - m.p0) / q11
    raw_hi = ((1.0 - m.p0) - q[(0, 0)]) / q11
    lo, hi = max(0.0, raw_lo), min(1.0, raw_hi)
    if lo > hi + INGEST_TOL:
        raise InconsistentEvidence(
            f"experimental and observational data are incompatible: lower {lo:.6g} > upper {hi:.6g}"
        )
    if lo > hi:
        lo = hi = 0.5 * (lo + hi)
    return Interval(Probability(lo), Probability(hi), raw_lo, raw_hi)
