"""Probability-aware scalars and intervals used by every bound computation."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidInterval, InvalidProbability

#: Tolerance for validating frequencies computed from input tables.
INGEST_TOL = 1e-9
#: Tolerance within which a reversed interval is collapsed instead of rejected.
INTERVAL_TOL = 1e-12


class Probability(float):
    """A float constrained to the closed unit interval.

    Out-of-range values raise :class:`InvalidProbability`; nothing is clamped
    silently. Use :func:`clamp_to_unit` when clamping is intended.
    """

    def __new__(cls, value):
        v = float(value)
        if not (0.0 <= v <= 1.0):  # also rejects nan
            raise InvalidProbability(f"probability out of [0, 1]: {value!r}")
        return super().__new__(cls, v)

    def __repr__(self):
        return f"Probability({float(self)!r})"

    @property
    def complement(self) -> "Probability":
        return Probability(1.0 - self)


def probability(value, tol: float = 0.0) -> Probability:
    """Validate ``value`` as a probability, snapping values within ``tol`` of the range."""
    v = float(value)
    if tol and (-tol <= v < 0.0 or 1.0 < v <= 1.0 + tol):
        v = min(1.0, max(0.0, v))
    return Probability(v)


def clamp_to_unit(x: float) -> Probability:
    if not math.isfinite(x):
        raise InvalidProbability(f"cannot clamp non-finite value {x!r}")
    return Probability(min(1.0, max(0.0, x)))


@dataclass(frozen=True)
class Interval:
    """Closed interval ``[lo, hi]`` inside ``[0, 1]``.

    ``raw_lo`` and ``raw_hi`` keep the unclamped values a bound formula
    produced, e.g. an upper bound of 2.93 that was clamped to 1.
    """

    lo: Probability
    hi: Probability
    raw_lo: float | None = None
    raw_hi: float | None = None

    def __post_init__(self):
        lo, hi = Probability(self.lo), Probability(self.hi)
        if lo > hi + INTERVAL_TOL:
            raise InvalidInterval(f"lower endpoint {lo!r} exceeds upper endpoint {hi!r}")
        if lo > hi:
            lo = hi = Probability(0.5 * (lo + hi))
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "raw_lo", float(lo if self.raw_lo is None else self.raw_lo))
        object.__setattr__(self, "raw_hi", float(hi if self.raw_hi is None else self.raw_hi))

    @classmethod
    def from_raw(cls, raw_lo: float, raw_hi: float) -> "Interval":
        """Clamp both endpoints to the unit interval, remembering the originals."""
        return cls(clamp_to_unit(raw_lo), clamp_to_unit(raw_hi), raw_lo, raw_hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, other: "Interval", tol: float = 0.0) -> bool:
        return other.lo >= self.lo - tol and other.hi <= self.hi + tol

    def as_tuple(self) -> tuple[float, float]:
        return float(self.lo), float(self.hi)


@dataclass(frozen=True)
class ExperimentalMargins:
    """Interventional outcome rates ``Pr(Y=1 | X<-1)`` and ``Pr(Y=1 | X<-0)``."""

    p1: Probability
    p0: Probability

    def __post_init__(self):
        object.__setattr__(self, "p1", Probability(self.p1))
        object.__setattr__(self, "p0", Probability(self.p0))


def risk_ratio(m: ExperimentalMargins) -> float:
    """Experimental risk ratio ``p1 / p0``.

    Returns ``math.inf`` when ``p0 == 0 < p1`` and 1.0 when both rates are 0.
    """
    if m.p0 > 0:
        return m.p1 / m.p0
    if m.p1 > 0:
        return math.inf
    return 1.0
