"""Structured reports for each evidence regime, with text and JSON rendering."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

from .bounds import (
    ObservationalJoint,
    StratifiedMargins,
    covariate_conditional_bounds,
    covariate_marginal_bounds,
    delta_gamma,
    simple_bounds,
    tian_pearl_bounds,
)
from .core import ExperimentalMargins, Interval, risk_ratio
from .mediation import (
    MediatedObservations,
    extract_mediator_margins,
    markov_check,
    mediation_bounds,
    unidentified_ranges,
    ystar_margins,
)
from .oracle import (
    GridSpec,
    OracleResult,
    frechet_oracle_simple,
    oracle_agreement,
    oracle_covariate_marginal,
    oracle_mediation,
    oracle_tian_pearl,
)

#: Every warning code a report can carry, with its meaning.
WARNINGS = {
    "vacuous-upper": "the raw upper bound exceeds 1 and was clamped; the upper bound is uninformative",
    "negative-lower": "the raw lower bound is below 0 (risk ratio below 1) and was clamped to 0",
    "stratum-conditional-upper": "upper endpoint: stratum-conditional simple bound",
    "zero-weight-stratum": "a stratum has zero weight and contributes nothing to the marginal bounds",
    "frequency-table": "table entries sum to 1 and were read as frequencies, not counts",
    "markov-violation": "Y and X are not conditionally independent given M within tolerance; the no-direct-effect model may not hold",
    "markov-untestable": "a mediator slice is empty in one exposure arm and could not be tested",
    "oracle-disagreement": "analytic and oracle endpoints differ by more than the oracle tolerance",
}


def _warning(code: str, detail: str | None = None) -> dict[str, str]:
    msg = WARNINGS[code]
    return {"code": code, "message": msg if detail is None else f"{msg} ({detail})"}


@dataclass
class Report:
    scenario: str
    inputs: dict[str, Any]
    interval: Interval
    risk_ratio: float
    diagnostics: dict[str, Any] = field(default_factory=dict)
    oracle: dict[str, Any] | None = None
    warnings: list[dict[str, str]] = field(default_factory=list)

    @property
    def rr_exceeds_2(self) -> bool:
        return self.risk_ratio > 2

    def to_dict(self) -> dict[str, Any]:
        rr = self.risk_ratio
        return {
            "scenario": self.scenario,
            "inputs": self.inputs,
            "interval": {"lo": float(self.interval.lo), "hi": float(self.interval.hi)},
            "raw": {"lo": self.interval.raw_lo, "hi": self.interval.raw_hi},
            "risk_ratio": "inf" if math.isinf(rr) else rr,
            "rr_exceeds_2": self.rr_exceeds_2,
            "diagnostics": self.diagnostics,
            "oracle": self.oracle,
            "warnings": self.warnings,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        iv = self.interval
        rr = self.risk_ratio
        rr_s = "inf" if math.isinf(rr) else f"{rr:.4f}"
        verdict = "> 2: lower bound exceeds 0.5" if self.rr_exceeds_2 else "<= 2: lower bound does not exceed 0.5"
        lines = [
            f"scenario: {self.scenario}",
            f"PC interval: [{iv.lo:.4f}, {iv.hi:.4f}]",
            f"raw endpoints: [{iv.raw_lo:.4f}, {iv.raw_hi:.4f}]",
            f"RR = {rr_s} ({verdict})",
        ]
        for k, v in _flatten(self.inputs):
            lines.append(f"input {k}: {v}")
        for k, v in _flatten(self.diagnostics):
            lines.append(f"diagnostic {k}: {v}")
        if self.oracle is not None:
            o = self.oracle
            lines.append(
                f"oracle interval: [{o['interval']['lo']:.4f}, {o['interval']['hi']:.4f}] "
                f"(resolution {o['resolution']}, |diff| lo {o['agreement']['lo']:.2e}, "
                f"hi {o['agreement']['hi']:.2e}, tolerance {o['tolerance']:.1e}, "
                f"{'agrees' if o['agrees'] else 'DISAGREES'})"
            )
        for w in self.warnings:
            lines.append(f"warning [{w['code']}]: {w['message']}")
        return "\n".join(lines) + "\n"


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.4f}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    if v is None:
        return "n/a"
    return str(v)


def _flatten(d, prefix=""):
    for k, v in d.items():
        if isinstance(v, dict):
            yield from _flatten(v, f"{prefix}{k}.")
        else:
            yield f"{prefix}{k}", _fmt(v)


def _clamp_warnings(iv: Interval) -> list[dict[str, str]]:
    out = []
    if iv.raw_hi > 1.0:
        out.append(_warning("vacuous-upper", f"raw upper {iv.raw_hi:.4f}"))
    if iv.raw_lo < 0.0:
        out.append(_warning("negative-lower", f"raw lower {iv.raw_lo:.4f}"))
    return out


def _attach_oracle(report: Report, result: OracleResult) -> None:
    agree = oracle_agreement(report.interval, result)
    tol = max(1.0 / result.resolution, 1e-9)
    ok = agree["lo"] <= tol and agree["hi"] <= tol
    report.oracle = {
        "interval": {"lo": float(result.interval.lo), "hi": float(result.interval.hi)},
        "agreement": agree,
        "tolerance": tol,
        "resolution": result.resolution,
        "residual": result.residual,
        "agrees": ok,
    }
    if not ok:
        report.warnings.append(_warning("oracle-disagreement"))


def _margins_dict(m: ExperimentalMargins) -> dict[str, float]:
    return {"p1": float(m.p1), "p0": float(m.p0)}


def simple_report(m: ExperimentalMargins, verify: bool = False, grid: GridSpec | None = None,
                  frequency_table: bool = False) -> Report:
    iv = simple_bounds(m)
    rep = Report("simple", {"experimental": _margins_dict(m)}, iv, risk_ratio(m), {},
                 warnings=_clamp_warnings(iv))
    if frequency_table:
        rep.warnings.append(_warning("frequency-table"))
    if verify:
        _attach_oracle(rep, frechet_oracle_simple(m, grid or GridSpec()))
    return rep


def covariate_report(s: StratifiedMargins, ann_stratum=None, verify: bool = False,
                     grid: GridSpec | None = None, frequency_table: bool = False) -> Report:
    pooled = s.marginalized()
    marginal = covariate_marginal_bounds(s)
    delta, gamma = delta_gamma(s)
    diagnostics: dict[str, Any] = {
        "marginal_interval": {"lo": float(marginal.lo), "hi": float(marginal.hi)},
        "delta": delta,
        "gamma": gamma,
        "pooled_simple_interval": None,
        "ann_stratum": None if ann_stratum is None else str(ann_stratum),
        "stratum_risk_ratio": None,
    }
    pooled_iv = simple_bounds(pooled)
    diagnostics["pooled_simple_interval"] = {"lo": float(pooled_iv.lo), "hi": float(pooled_iv.hi)}
    warnings = []
    if ann_stratum is not None:
        iv = covariate_conditional_bounds(s, ann_stratum)
        rr_s = risk_ratio(s.strata[ann_stratum].margins)
        diagnostics["stratum_risk_ratio"] = "inf" if math.isinf(rr_s) else rr_s
        warnings.append(_warning("stratum-conditional-upper"))
    else:
        iv = marginal
    warnings = _clamp_warnings(iv) + warnings
    zero = [str(l) for l, st in s.strata.items() if st.weight == 0]
    if zero:
        warnings.append(_warning("zero-weight-stratum", ", ".join(zero)))
    if frequency_table:
        warnings.append(_warning("frequency-table"))
    inputs = {
        "strata": {
            str(l): {"weight": float(st.weight), **_margins_dict(st.margins)} for l, st in s.strata.items()
        },
        "pooled": _margins_dict(pooled),
    }
    rep = Report("covariate", inputs, iv, risk_ratio(pooled), diagnostics, warnings=warnings)
    if verify:
        g = grid or GridSpec()
        if ann_stratum is None:
            _attach_oracle(rep, oracle_covariate_marginal(s, g))
        else:
            _attach_oracle(rep, frechet_oracle_simple(s.strata[ann_stratum].margins, g))
    return rep


def confounded_report(m: ExperimentalMargins, q: ObservationalJoint, verify: bool = False,
                      grid: GridSpec | None = None, frequency_table: bool = False) -> Report:
    iv = tian_pearl_bounds(m, q)
    inputs = {
        "experimental": _margins_dict(m),
        "observational": {f"x={x},y={y}": float(q[(x, y)]) for x in (1, 0) for y in (1, 0)},
    }
    diagnostics = {"simple_interval": None}
    if m.p1 > 0:
        sb = simple_bounds(m)
        diagnostics["simple_interval"] = {"lo": float(sb.lo), "hi": float(sb.hi)}
    rep = Report("confounded", inputs, iv, risk_ratio(m), diagnostics, warnings=_clamp_warnings(iv))
    if frequency_table:
        rep.warnings.append(_warning("frequency-table"))
    if verify:
        _attach_oracle(rep, oracle_tian_pearl(m, q, grid or GridSpec()))
    return rep


def mediation_report(obs: MediatedObservations, markov_tol: float = 0.05, verify: bool = False,
                     grid: GridSpec | None = None, frequency_table: bool = False) -> Report:
    mm = extract_mediator_margins(obs)
    iv = mediation_bounds(mm)
    ys = ystar_margins(mm)
    check = markov_check(obs, markov_tol)
    ranges = unidentified_ranges(mm)
    simple_iv = simple_bounds(ys)
    diagnostics = {
        "ystar_margins": _margins_dict(ys),
        "simple_interval": {"lo": float(simple_iv.lo), "hi": float(simple_iv.hi)},
        "mu_range": list(ranges["mu"]),
        "eta_range": list(ranges["eta"]),
        "markov": {
            "tolerance": markov_tol,
            "passed": check.passed,
            "discrepancy": {f"m={m}": d for m, d in check.discrepancy.items()},
            "y1_rate": {f"x={x},m={m}": r for (x, m), r in sorted(check.rates.items())},
        },
    }
    inputs = {
        "mediator_margins": {
            "m1_given_x0": float(mm.m1_given_x0),
            "m1_given_x1": float(mm.m1_given_x1),
            "y1_given_m0": float(mm.y1_given_m0),
            "y1_given_m1": float(mm.y1_given_m1),
        }
    }
    warnings = _clamp_warnings(iv)
    if not check.passed:
        worst = max(d for d in check.discrepancy.values() if d is not None)
        warnings.append(_warning("markov-violation", f"max discrepancy {worst:.4f} > {markov_tol}"))
    for m in check.untestable:
        warnings.append(_warning("markov-untestable", f"M={m}"))
    if frequency_table:
        warnings.append(_warning("frequency-table"))
    rep = Report("mediation", inputs, iv, risk_ratio(ys), diagnostics, warnings=warnings)
    if verify:
        _attach_oracle(rep, oracle_mediation(mm, grid or GridSpec()))
    return rep
