"""Probability of causation when a mediator carries the whole effect.

The causal chain is ``X -> M -> Y`` with no direct arrow from ``X`` to ``Y``
and mutually independent exposure, mediator potential pair
``(M(0), M(1))`` and outcome potential pair ``(Y(0), Y(1))``. Here ``Y(m)``
is indexed by the mediator value, and the composite response to exposure is
``Y*(x) = Y(M(x))``.

Margin notation follows the usual ``+`` convention: ``m_{1+} = Pr(M(0)=1)``
and ``m_{+1} = Pr(M(1)=1)``, likewise for ``y``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bounds import simple_bounds
from .core import INGEST_TOL, ExperimentalMargins, Interval, Probability, clamp_to_unit, probability
from .errors import ConditioningEventImpossible, DegenerateTable, InvalidProbability

TIE_TOL = 1e-12


@dataclass(frozen=True)
class MediatorMargins:
    """The four identified interventional margins of the mediation model."""

    m1_given_x0: Probability  # m_{1+}
    m1_given_x1: Probability  # m_{+1}
    y1_given_m0: Probability  # y_{1+}
    y1_given_m1: Probability  # y_{+1}

    def __post_init__(self):
        for name in ("m1_given_x0", "m1_given_x1", "y1_given_m0", "y1_given_m1"):
            object.__setattr__(self, name, Probability(getattr(self, name)))

    # short aliases in the m_{a+} / m_{+b} notation
    @property
    def m1p(self):
        return self.m1_given_x0

    @property
    def m0p(self):
        return 1.0 - self.m1_given_x0

    @property
    def mp1(self):
        return self.m1_given_x1

    @property
    def mp0(self):
        return 1.0 - self.m1_given_x1

    @property
    def y1p(self):
        return self.y1_given_m0

    @property
    def y0p(self):
        return 1.0 - self.y1_given_m0

    @property
    def yp1(self):
        return self.y1_given_m1

    @property
    def yp0(self):
        return 1.0 - self.y1_given_m1

    @property
    def A(self) -> float:
        """``y_{+0} - y_{0+}``, the identified shift linking ``y_{10}`` to ``y_{01}``."""
        return self.yp0 - self.y0p

    @property
    def B(self) -> float:
        """``m_{+0} - m_{0+}``, the identified shift linking ``m_{10}`` to ``m_{01}``."""
        return self.mp0 - self.m0p


@dataclass(frozen=True)
class PotentialPairJoint:
    """Joint law of a binary potential-response pair ``(V(0), V(1))``."""

    p00: Probability
    p01: Probability
    p10: Probability
    p11: Probability

    def __post_init__(self):
        for name in ("p00", "p01", "p10", "p11"):
            object.__setattr__(self, name, Probability(getattr(self, name)))
        total = self.p00 + self.p01 + self.p10 + self.p11
        if abs(total - 1.0) > INGEST_TOL:
            raise InvalidProbability(f"joint cells sum to {total!r}, not 1")

    @classmethod
    def from_margins(cls, first1: float, second1: float, p01: float) -> "PotentialPairJoint":
        """Complete a joint from ``Pr(V(0)=1)``, ``Pr(V(1)=1)`` and the ``01`` cell."""
        p11 = second1 - p01
        p10 = first1 - p11
        p00 = 1.0 - p01 - p10 - p11
        return cls(*(probability(c, INGEST_TOL) for c in (p00, p01, p10, p11)))

    def as_array(self) -> np.ndarray:
        return np.array([[self.p00, self.p01], [self.p10, self.p11]], dtype=float)

    @property
    def first1(self) -> float:
        """``Pr(V(0) = 1)``."""
        return self.p10 + self.p11

    @property
    def second1(self) -> float:
        """``Pr(V(1) = 1)``."""
        return self.p01 + self.p11


def compose_ystar(m: PotentialPairJoint, y: PotentialPairJoint) -> PotentialPairJoint:
    """Joint law of ``(Y*(0), Y*(1))`` from the mediator and outcome pair laws."""
    y0p, yp0 = y.p00 + y.p01, y.p00 + y.p10
    y1p, yp1 = y.p10 + y.p11, y.p01 + y.p11
    switch = m.p01 + m.p10
    cells = (
        m.p00 * y0p + switch * y.p00 + m.p11 * yp0,
        m.p01 * y.p01 + m.p10 * y.p10,
        m.p01 * y.p10 + m.p10 * y.p01,
        m.p00 * y1p + switch * y.p11 + m.p11 * yp1,
    )
    return PotentialPairJoint(*(clamp_to_unit(c) for c in cells))


def ystar_margins(mm: MediatorMargins) -> ExperimentalMargins:
    """Identified outcome rates ``Pr(Y=1 | X<-x)`` implied by the mediator margins."""
    p1 = mm.mp0 * mm.y1p + mm.mp1 * mm.yp1
    p0 = mm.m0p * mm.y1p + mm.m1p * mm.yp1
    return ExperimentalMargins(min(p1, 1.0), min(p0, 1.0))


def _table3_cell(mm: MediatorMargins, m_hi: bool, y_hi: bool) -> float:
    if y_hi and m_hi:
        return mm.m0p * mm.y0p + mm.mp0 * mm.yp0
    if y_hi:
        return mm.m1p * mm.yp0 + mm.mp1 * mm.y0p
    if m_hi:
        return mm.m0p * mm.yp1 + mm.mp0 * mm.y1p
    return mm.m1p * mm.y1p + mm.mp1 * mm.yp1


def numerator_upper(mm: MediatorMargins) -> float:
    """Largest feasible value of ``y*_{01} = m_{01} y_{01} + m_{10} y_{10}``.

    The case split is on whether ``m_{1+} + m_{+1}`` and ``y_{1+} + y_{+1}``
    reach one. At a sum of exactly one both candidate cells agree; the ``>=``
    branch is taken and the agreement is asserted.
    """
    m_sum = mm.m1p + mm.mp1
    y_sum = mm.y1p + mm.yp1
    m_hi, y_hi = m_sum >= 1.0, y_sum >= 1.0
    value = _table3_cell(mm, m_hi, y_hi)
    if abs(m_sum - 1.0) <= TIE_TOL:
        alt = _table3_cell(mm, not m_hi, y_hi)
        assert abs(alt - value) <= TIE_TOL, (value, alt)
    if abs(y_sum - 1.0) <= TIE_TOL:
        alt = _table3_cell(mm, m_hi, not y_hi)
        assert abs(alt - value) <= TIE_TOL, (value, alt)
    return value


def unidentified_ranges(mm: MediatorMargins) -> dict[str, tuple[float, float]]:
    """Feasible ranges of ``mu = m_{01}`` and ``eta = y_{01}``.

    Neither is point identified; these ranges are all the data say about them.
    """
    return {
        "mu": (max(0.0, -mm.B), float(min(mm.m0p, mm.mp1))),
        "eta": (max(0.0, -mm.A), float(min(mm.y0p, mm.yp1))),
    }


def mediation_bounds(mm: MediatorMargins) -> Interval:
    """Bounds on the probability of causation for an exposed case with the outcome.

    The lower endpoint coincides with :func:`simple_bounds` on the induced
    outcome rates: observing the mediator in the study does not help there.
    The upper endpoint uses the mediator and can be much tighter.
    """
    margins = ystar_margins(mm)
    if margins.p1 <= 0:
        raise ConditioningEventImpossible("Pr(Y=1 | X<-1) implied by the mediator margins is zero")
    lo = simple_bounds(margins)
    raw_hi = numerator_upper(mm) / margins.p1
    return Interval.from_raw(lo.raw_lo, raw_hi)


@dataclass(frozen=True)
class MediatedObservations:
    """Counts or frequencies over ``(x, m, y)``; ``table[x, m, y]``.

    Exposure is assumed randomized, so each exposure arm must have positive mass.
    """

    table: np.ndarray

    def __post_init__(self):
        t = np.array(self.table, dtype=float)
        if t.shape != (2, 2, 2):
            raise ValueError(f"expected a 2x2x2 table indexed [x, m, y], got shape {t.shape}")
        if not np.all(np.isfinite(t)) or np.any(t < 0):
            raise ValueError("cell counts must be finite and nonnegative")
        for x in (0, 1):
            if t[x].sum() <= 0:
                raise DegenerateTable(f"exposure arm X={x} is empty")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @classmethod
    def from_margins(cls, mm: MediatorMargins, exposure_rate: float = 0.5) -> "MediatedObservations":
        """Exact frequency table of a conforming world with the given margins."""
        t = np.zeros((2, 2, 2))
        pm = {0: mm.m1_given_x0, 1: mm.m1_given_x1}
        py = {0: mm.y1_given_m0, 1: mm.y1_given_m1}
        for x, px in ((0, 1.0 - exposure_rate), (1, exposure_rate)):
            for m in (0, 1):
                m_prob = pm[x] if m else 1.0 - pm[x]
                t[x, m, 1] = px * m_prob * py[m]
                t[x, m, 0] = px * m_prob * (1.0 - py[m])
        return cls(t)

    def rate(self, x: int, m: int) -> float | None:
        """``P(Y=1 | X=x, M=m)``, or ``None`` if that cell is empty."""
        n = self.table[x, m].sum()
        return None if n <= 0 else float(self.table[x, m, 1] / n)


def simulate_mediated(
    m_joint: PotentialPairJoint,
    y_joint: PotentialPairJoint,
    n_per_arm: int,
    rng: np.random.Generator,
) -> MediatedObservations:
    """Forward-sample a randomized study from a world satisfying the model."""
    table = np.zeros((2, 2, 2))
    pairs = np.array([(0, 0), (0, 1), (1, 0), (1, 1)])
    for x in (0, 1):
        mp = pairs[rng.choice(4, size=n_per_arm, p=_cells(m_joint))]
        yp = pairs[rng.choice(4, size=n_per_arm, p=_cells(y_joint))]
        m = mp[:, x]
        y = yp[np.arange(n_per_arm), m]
        np.add.at(table, (x, m, y), 1)
    return MediatedObservations(table)


def _cells(j: PotentialPairJoint) -> np.ndarray:
    p = np.array([j.p00, j.p01, j.p10, j.p11], dtype=float)
    return p / p.sum()


@dataclass(frozen=True)
class MarkovCheck:
    """Outcome of testing ``Y _||_ X | M`` on a mediated table.

    ``discrepancy[m]`` is ``None`` for an untestable slice (an empty
    ``(x, m)`` cell).
    """

    discrepancy: dict[int, float | None]
    rates: dict[tuple[int, int], float | None]
    tolerance: float
    passed: bool
    untestable: tuple[int, ...] = field(default=())


def markov_check(obs: MediatedObservations, tolerance: float = 0.05) -> MarkovCheck:
    rates = {(x, m): obs.rate(x, m) for x in (0, 1) for m in (0, 1)}
    disc: dict[int, float | None] = {}
    for m in (0, 1):
        r1, r0 = rates[(1, m)], rates[(0, m)]
        disc[m] = None if r1 is None or r0 is None else abs(r1 - r0)
    untestable = tuple(m for m, d in disc.items() if d is None)
    if len(untestable) == 2:
        raise DegenerateTable("no mediator slice has observations in both exposure arms")
    passed = all(d <= tolerance for d in disc.values() if d is not None)
    return MarkovCheck(disc, rates, tolerance, passed, untestable)


def extract_mediator_margins(obs: MediatedObservations) -> MediatorMargins:
    """Estimate the four margins from a randomized study.

    Mediator margins come from each exposure arm. Outcome margins pool both
    arms within each mediator slice, which is valid under ``Y _||_ X | M``.
    """
    t = obs.table
    m_rate = [t[x, 1].sum() / t[x].sum() for x in (0, 1)]
    y_rate = []
    for m in (0, 1):
        n = t[:, m].sum()
        if n <= 0:
            raise DegenerateTable(f"no observations with M={m}; Pr(Y=1 | M<-{m}) is not estimable")
        y_rate.append(t[:, m, 1].sum() / n)
    return MediatorMargins(m_rate[0], m_rate[1], y_rate[0], y_rate[1])
