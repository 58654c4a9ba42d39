"""Brute-force cross-checks for the analytic bounds.

Each oracle writes the joint law of the relevant potential responses as an
affine function of its free parameters, finds the parameter ranges that keep
every cell nonnegative, and evaluates the probability of causation on a grid
over those ranges. Range endpoints are always grid points, so extrema at
corners are evaluated exactly.

None of the oracles reuse the closed-form bound formulas.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .bounds import ObservationalJoint, StratifiedMargins
from .core import ExperimentalMargins, Interval
from .errors import ConditioningEventImpossible, InconsistentEvidence, TooManyStrata
from .mediation import MediatorMargins, PotentialPairJoint, compose_ystar

DEFAULT_RESOLUTION = 1000
FEASIBILITY_TOL = 1e-9
MAX_STRATA = 20
_MAX_GRID_POINTS = 4_000_000


@dataclass(frozen=True)
class GridSpec:
    resolution: int = DEFAULT_RESOLUTION

    def __post_init__(self):
        if int(self.resolution) != self.resolution or self.resolution < 2:
            raise ValueError(f"grid resolution must be an integer >= 2, got {self.resolution!r}")

    def points(self, lo: float, hi: float) -> np.ndarray:
        return np.linspace(lo, hi, int(self.resolution) + 1)


@dataclass(frozen=True)
class OracleResult:
    """Extremes of the probability of causation over a gridded feasible set.

    ``argmin`` / ``argmax`` hold the free parameters and full joint law at
    the extremes; ``residual`` is the largest constraint violation of either.
    """

    interval: Interval
    argmin: dict[str, Any]
    argmax: dict[str, Any]
    resolution: int
    residual: float = 0.0
    meta: dict[str, Any] = field(default_factory=dict)


def feasible_segment(base, slope, tol: float = FEASIBILITY_TOL) -> tuple[float, float]:
    """Range of ``t`` with ``base + t * slope >= 0`` in every component.

    Raises :class:`InconsistentEvidence` if the range is empty, allowing each
    cell a violation of ``tol``.
    """
    base = np.asarray(base, dtype=float)
    slope = np.asarray(slope, dtype=float)
    flat = slope == 0
    if np.any(base[flat] < -tol):
        raise InconsistentEvidence("a constraint cell is negative for every parameter value")
    lo, hi = -np.inf, np.inf
    pos, neg = slope > 0, slope < 0
    if pos.any():
        lo = float(np.max(-base[pos] / slope[pos]))
    if neg.any():
        hi = float(np.min(-base[neg] / slope[neg]))
    if lo > hi:
        # how negative some cell must be for the best compromise value of t
        t = 0.5 * (lo + hi)
        if float(np.min(base + t * slope)) < -tol:
            raise InconsistentEvidence("no joint distribution satisfies all constraints")
        lo = hi = t
    return lo, hi


def _simple_joint(m: ExperimentalMargins):
    # cells (y00, y01, y10, y11) of (Y(0), Y(1)) parametrized by t = y01
    base = np.array([1.0 - m.p0, 0.0, m.p0 - m.p1, m.p1])
    slope = np.array([-1.0, 1.0, 1.0, -1.0])
    return base, slope


def _pair_residual(cells, first1: float, second1: float) -> float:
    p00, p01, p10, p11 = cells
    return max(
        abs(p10 + p11 - first1),
        abs(p01 + p11 - second1),
        abs(p00 + p01 + p10 + p11 - 1.0),
        -min(0.0, *cells),
    )


def frechet_oracle_simple(m: ExperimentalMargins, g: GridSpec = GridSpec()) -> OracleResult:
    """Scan every joint of ``(Y(0), Y(1))`` with the given margins."""
    if m.p1 <= 0:
        raise ConditioningEventImpossible("Pr(Y=1 | X<-1) is zero")
    base, slope = _simple_joint(m)
    lo, hi = feasible_segment(base, slope)
    t = g.points(lo, hi)
    pc = t / m.p1
    i, j = int(np.argmin(pc)), int(np.argmax(pc))
    wit = []
    for k in (i, j):
        cells = tuple(float(c) for c in base + t[k] * slope)
        wit.append({"y01": float(t[k]), "joint": cells})
    res = max(_pair_residual(w["joint"], m.p0, m.p1) for w in wit)
    return OracleResult(
        Interval.from_raw(float(pc[i]), float(pc[j])), wit[0], wit[1], g.resolution, res
    )


def _tp_joint(m: ExperimentalMargins, q: ObservationalJoint):
    """Cells ``c[x, y0, y1]`` of ``(X, Y(0), Y(1))`` as affine maps of ``(t1, t0)``.

    ``t1 = c[1,0,1]`` and ``t0 = c[0,0,1]``. Returned as ``(base, d1, d0)``
    arrays of shape (2, 2, 2).
    """
    q11, q10, q01, q00 = q[(1, 1)], q[(1, 0)], q[(0, 1)], q[(0, 0)]
    a1 = m.p0 - q01  # P(X=1, Y(0)=1)
    a0 = q11 + q10 - a1  # P(X=1, Y(0)=0)
    b1 = m.p1 - q11  # P(X=0, Y(1)=1)
    base = np.zeros((2, 2, 2))
    d1 = np.zeros((2, 2, 2))
    d0 = np.zeros((2, 2, 2))
    base[1, 1, 1], d1[1, 1, 1] = q11, -1
    d1[1, 0, 1] = 1
    base[1, 0, 0], d1[1, 0, 0] = a0, -1
    base[1, 1, 0], d1[1, 1, 0] = q10 - a0, 1
    d0[0, 0, 1] = 1
    base[0, 1, 1], d0[0, 1, 1] = b1, -1
    base[0, 0, 0], d0[0, 0, 0] = q00, -1
    base[0, 1, 0], d0[0, 1, 0] = q01 - b1, 1
    return base, d1, d0


def tp_residual(joint: np.ndarray, m: ExperimentalMargins, q: ObservationalJoint) -> float:
    """Largest violation of the experimental and observational constraints by ``joint[x, y0, y1]``."""
    c = np.asarray(joint, dtype=float)
    r = [
        abs(c[:, 1, :].sum() - m.p0),
        abs(c[:, :, 1].sum() - m.p1),
        abs(c.sum() - 1.0),
        -min(0.0, float(c.min())),
    ]
    for y in (0, 1):
        r.append(abs(c[1, :, y].sum() - q[(1, y)]))  # X=1 reveals Y(1)
        r.append(abs(c[0, y, :].sum() - q[(0, y)]))  # X=0 reveals Y(0)
    return float(max(r))


def oracle_tian_pearl(
    m: ExperimentalMargins, q: ObservationalJoint, g: GridSpec = GridSpec()
) -> OracleResult:
    """Scan joint laws of ``(X, Y(0), Y(1))`` matching both data sources."""
    q11 = q[(1, 1)]
    if q11 <= 0:
        raise ConditioningEventImpossible("Q(X=1, Y=1) is zero")
    base, d1, d0 = _tp_joint(m, q)
    exposed, unexposed = base[1].ravel(), base[0].ravel()
    lo1, hi1 = feasible_segment(exposed, d1[1].ravel())
    lo0, hi0 = feasible_segment(unexposed, d0[0].ravel())
    t0 = 0.5 * (lo0 + hi0)
    t1 = g.points(lo1, hi1)
    pc = t1 / q11
    i, j = int(np.argmin(pc)), int(np.argmax(pc))
    wit = []
    for k in (i, j):
        joint = base + t1[k] * d1 + t0 * d0
        wit.append({"t1": float(t1[k]), "t0": float(t0), "joint": joint.tolist()})
    res = max(tp_residual(w["joint"], m, q) for w in wit)
    if res > FEASIBILITY_TOL:
        raise InconsistentEvidence(f"best candidate joint violates constraints by {res:.3g}")
    return OracleResult(
        Interval.from_raw(float(pc[i]), float(pc[j])),
        wit[0],
        wit[1],
        g.resolution,
        res,
        {"t0_range": (lo0, hi0)},
    )


def _mediator_cells(mm: MediatorMargins):
    # m-pair cells (00, 01, 10, 11) in mu = m01; y-pair cells in eta = y01
    m_base = np.array([mm.m0p, 0.0, mm.m1p - mm.mp1, mm.mp1])
    y_base = np.array([mm.y0p, 0.0, mm.y1p - mm.yp1, mm.yp1])
    slope = np.array([-1.0, 1.0, 1.0, -1.0])
    return m_base, y_base, slope


def oracle_mediation(mm: MediatorMargins, g: GridSpec = GridSpec()) -> OracleResult:
    """Scan the unidentified mediator and outcome pair laws on a 2-D grid."""
    p1 = mm.mp0 * mm.y1p + mm.mp1 * mm.yp1
    if p1 <= 0:
        raise ConditioningEventImpossible("Pr(Y=1 | X<-1) implied by the mediator margins is zero")
    m_base, y_base, slope = _mediator_cells(mm)
    mu = g.points(*feasible_segment(m_base, slope))
    eta = g.points(*feasible_segment(y_base, slope))
    m01, m10 = mu, m_base[2] + mu
    y01, y10 = eta, y_base[2] + eta
    numer = np.multiply.outer(m01, y01) + np.multiply.outer(m10, y10)
    pc = numer / p1
    i, j = int(np.argmin(pc)), int(np.argmax(pc))
    wit = []
    res = 0.0
    for k in (i, j):
        a, b = np.unravel_index(k, pc.shape)
        mc = m_base + mu[a] * slope
        yc = y_base + eta[b] * slope
        res = max(
            res,
            _pair_residual(tuple(mc), mm.m1p, mm.mp1),
            _pair_residual(tuple(yc), mm.y1p, mm.yp1),
        )
        w = {"mu": float(mu[a]), "eta": float(eta[b]), "m_joint": tuple(map(float, mc)),
             "y_joint": tuple(map(float, yc)), "pc": float(pc[a, b])}
        try:
            ys = compose_ystar(PotentialPairJoint(*np.clip(mc, 0, 1)), PotentialPairJoint(*np.clip(yc, 0, 1)))
            res = max(res, abs(ys.p01 / p1 - w["pc"]))
        except ValueError:
            res = max(res, 1.0)
        wit.append(w)
    return OracleResult(
        Interval.from_raw(float(pc.flat[i]), float(pc.flat[j])), wit[0], wit[1], g.resolution, res
    )


def oracle_covariate_marginal(s: StratifiedMargins, g: GridSpec = GridSpec()) -> OracleResult:
    """Enumerate per-stratum extreme joints, plus a full grid when it is small."""
    labels = list(s.strata)
    k = len(labels)
    if k > MAX_STRATA:
        raise TooManyStrata(f"{k} strata; corner enumeration supports at most {MAX_STRATA}")
    w = np.array([s.strata[l].weight for l in labels], dtype=float)
    p1 = float(np.dot(w, [s.strata[l].margins.p1 for l in labels]))
    if p1 <= 0:
        raise ConditioningEventImpossible("marginal Pr(Y=1 | X<-1) is zero")
    ranges = np.array([feasible_segment(*_simple_joint(s.strata[l].margins)) for l in labels])

    bits = (np.arange(2**k)[:, None] >> np.arange(k)) & 1
    corners = np.where(bits == 1, ranges[:, 1], ranges[:, 0])
    vals = corners @ w / p1
    i, j = int(np.argmin(vals)), int(np.argmax(vals))
    best_lo, best_hi = (vals[i], corners[i]), (vals[j], corners[j])

    grid_checked = (g.resolution + 1) ** k <= _MAX_GRID_POINTS
    if grid_checked:
        axes = [g.points(lo, hi) for lo, hi in ranges]
        total = np.zeros(())
        for wt, ax in zip(w, axes):
            total = np.add.outer(total, wt * ax)
        total = total / p1
        a, b = int(np.argmin(total)), int(np.argmax(total))
        if total.flat[a] < best_lo[0]:
            idx = np.unravel_index(a, total.shape)
            best_lo = (total.flat[a], np.array([ax[t] for ax, t in zip(axes, idx)]))
        if total.flat[b] > best_hi[0]:
            idx = np.unravel_index(b, total.shape)
            best_hi = (total.flat[b], np.array([ax[t] for ax, t in zip(axes, idx)]))

    wit = []
    res = 0.0
    for _, y01 in (best_lo, best_hi):
        joints = {}
        for l, t in zip(labels, y01):
            base, slope = _simple_joint(s.strata[l].margins)
            cells = tuple(float(c) for c in base + t * slope)
            mg = s.strata[l].margins
            res = max(res, _pair_residual(cells, mg.p0, mg.p1))
            joints[l] = cells
        wit.append({"y01": dict(zip(labels, map(float, y01))), "joints": joints})
    return OracleResult(
        Interval.from_raw(float(best_lo[0]), float(best_hi[0])),
        wit[0],
        wit[1],
        g.resolution,
        res,
        {"corners": 2**k, "grid_checked": grid_checked},
    )


def oracle_agreement(analytic: Interval, result: OracleResult) -> dict[str, float]:
    """Per-endpoint absolute differences between an analytic and an oracle interval."""
    return {
        "lo": abs(float(analytic.lo) - float(result.interval.lo)),
        "hi": abs(float(analytic.hi) - float(result.interval.hi)),
    }
