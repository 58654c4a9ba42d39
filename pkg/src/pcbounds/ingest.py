"""Long-format CSV contingency tables and JSON scenario configs.

Each CSV row is one cell of the table::

    x,y,count        experimental or observational exposure/outcome
    s,x,y,count      covariate-stratified experiment
    x,m,y,count      randomized experiment with an observed mediator

``x``, ``y`` and ``m`` must be literal ``0``/``1``. Stratum labels ``s`` are
arbitrary non-empty strings. Cells not listed are zero; repeated cells are
summed. A table whose entries sum to one (within ``1e-9``) is read as
frequencies rather than counts, which only matters for reporting.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np

from .bounds import ObservationalJoint, StratifiedMargins, Stratum
from .core import INGEST_TOL, ExperimentalMargins, probability
from .errors import DegenerateTable, ParseError, SchemaMismatch
from .mediation import MediatedObservations

SCHEMAS = {
    "xy": ("x", "y"),
    "sxy": ("s", "x", "y"),
    "xmy": ("x", "m", "y"),
}
SCENARIOS = ("simple", "covariate", "confounded", "mediation")

Margins = Union[ExperimentalMargins, StratifiedMargins, ObservationalJoint, MediatedObservations]


@dataclass(frozen=True)
class RawTable:
    """Validated cells of a contingency table keyed by level tuples in schema order."""

    schema: str
    cells: dict[tuple, float]
    is_frequency: bool = False

    @property
    def variables(self) -> tuple[str, ...]:
        return SCHEMAS[self.schema]

    @property
    def total(self) -> float:
        return sum(self.cells.values())

    def get(self, *levels) -> float:
        return self.cells.get(tuple(levels), 0.0)


def _binary(token: str, name: str, lineno: int) -> int:
    if token not in ("0", "1"):
        raise ParseError(f"line {lineno}: {name} must be 0 or 1, got {token!r}")
    return int(token)


def read_table(text: str, schema: str) -> RawTable:
    """Parse CSV text; see :func:`parse_table_csv`."""
    if schema not in SCHEMAS:
        raise SchemaMismatch(f"unknown schema {schema!r}; expected one of {sorted(SCHEMAS)}")
    columns = SCHEMAS[schema]
    reader = csv.reader(io.StringIO(text))
    header = None
    for row in reader:
        if row and any(c.strip() for c in row):
            header = [c.strip().lower() for c in row]
            break
    if header is None:
        raise ParseError("empty file: header row required")
    expected = [*columns, "count"]
    if sorted(header) != sorted(expected) or len(header) != len(expected):
        raise SchemaMismatch(f"header {header} does not match schema {schema!r}: expected {expected}")
    index = {name: header.index(name) for name in expected}

    cells: dict[tuple, float] = {}
    for row in reader:
        lineno = reader.line_num
        if not row or not any(c.strip() for c in row):
            continue
        if len(row) != len(header):
            raise ParseError(f"line {lineno}: expected {len(header)} fields, got {len(row)}")
        row = [c.strip() for c in row]
        key = []
        for name in columns:
            token = row[index[name]]
            if name == "s":
                if not token:
                    raise ParseError(f"line {lineno}: empty stratum label")
                key.append(token)
            else:
                key.append(_binary(token, name, lineno))
        try:
            count = float(row[index["count"]])
        except ValueError:
            raise ParseError(f"line {lineno}: count {row[index['count']]!r} is not a number") from None
        if not math.isfinite(count) or count < 0:
            raise ParseError(f"line {lineno}: count must be finite and nonnegative, got {count!r}")
        cells[tuple(key)] = cells.get(tuple(key), 0.0) + count
    if not cells:
        raise ParseError("no data rows")
    total = sum(cells.values())
    return RawTable(schema, cells, abs(total - 1.0) <= INGEST_TOL)


def parse_table_csv(path, schema: str) -> RawTable:
    """Read a long-format contingency table from a UTF-8 CSV file."""
    return read_table(Path(path).read_text(encoding="utf-8"), schema)


def _rate(num: float, den: float, what: str) -> float:
    if den <= 0:
        raise DegenerateTable(f"no observations with {what}")
    return probability(num / den, INGEST_TOL)


def to_margins(t: RawTable, observational: bool = False) -> Margins:
    """Convert a table into the matching domain object.

    ``xy`` tables become :class:`ExperimentalMargins` (conditioning on the
    randomized exposure), or an :class:`ObservationalJoint` when
    ``observational`` is true. ``sxy`` tables become
    :class:`StratifiedMargins`; ``xmy`` tables :class:`MediatedObservations`.
    """
    if observational and t.schema != "xy":
        raise SchemaMismatch("observational data must use the x,y,count schema")
    if t.schema == "xy":
        if observational:
            total = t.total
            if total <= 0:
                raise DegenerateTable("observational table has zero total")
            return ObservationalJoint(
                {(x, y): probability(t.get(x, y) / total, INGEST_TOL) for x in (0, 1) for y in (0, 1)}
            )
        return _arm_margins(lambda x, y: t.get(x, y), "")
    if t.schema == "sxy":
        return _stratified(t)
    table = np.zeros((2, 2, 2))
    for (x, m, y), c in t.cells.items():
        table[x, m, y] = c
    return MediatedObservations(table)


def _arm_margins(get, where: str) -> ExperimentalMargins:
    rates = []
    for x in (1, 0):
        n1, n0 = get(x, 1), get(x, 0)
        rates.append(_rate(n1, n1 + n0, f"X={x}{where}"))
    return ExperimentalMargins(*rates)


def _stratified(t: RawTable) -> StratifiedMargins:
    labels = sorted({k[0] for k in t.cells}, key=_label_order)
    total = t.total
    if total <= 0:
        raise DegenerateTable("stratified table has zero total")
    strata = {}
    for s in labels:
        mass = sum(t.get(s, x, y) for x in (0, 1) for y in (0, 1))
        if mass == 0:
            strata[s] = Stratum(0.0, ExperimentalMargins(0.0, 0.0))
            continue
        margins = _arm_margins(lambda x, y: t.get(s, x, y), f", S={s}")
        strata[s] = Stratum(mass / total, margins)
    # renormalize against rounding in the division
    wsum = sum(st.weight for st in strata.values())
    strata = {s: Stratum(min(1.0, st.weight / wsum), st.margins) for s, st in strata.items()}
    return StratifiedMargins(strata)


def _label_order(label: str):
    try:
        return (0, float(label), label)
    except ValueError:
        return (1, 0.0, label)


def load_table(path, schema: str, observational: bool = False) -> Margins:
    return to_margins(parse_table_csv(path, schema), observational)


# -- canonical serialization -------------------------------------------------


def to_csv(obj: Margins) -> str:
    """Canonical long-format CSV for a margins object; inverse of :func:`to_margins`.

    Experimental margins are written as two arms of unit mass, so the file
    reads back as counts. Zero-weight strata cannot be recovered from a
    table and are written as empty cells.
    """
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    if isinstance(obj, ExperimentalMargins):
        w.writerow(["x", "y", "count"])
        for x, p in ((1, obj.p1), (0, obj.p0)):
            w.writerow([x, 1, repr(float(p))])
            w.writerow([x, 0, repr(1.0 - p)])
    elif isinstance(obj, ObservationalJoint):
        w.writerow(["x", "y", "count"])
        for x in (1, 0):
            for y in (1, 0):
                w.writerow([x, y, repr(float(obj[(x, y)]))])
    elif isinstance(obj, StratifiedMargins):
        w.writerow(["s", "x", "y", "count"])
        for s, st in obj.strata.items():
            for x, p in ((1, st.margins.p1), (0, st.margins.p0)):
                w.writerow([s, x, 1, repr(float(st.weight * p))])
                w.writerow([s, x, 0, repr(float(st.weight * (1.0 - p)))])
    elif isinstance(obj, MediatedObservations):
        w.writerow(["x", "m", "y", "count"])
        for x in (1, 0):
            for m in (1, 0):
                for y in (1, 0):
                    w.writerow([x, m, y, repr(float(obj.table[x, m, y]))])
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return out.getvalue()


def schema_of(obj: Margins) -> str:
    if isinstance(obj, (ExperimentalMargins, ObservationalJoint)):
        return "xy"
    if isinstance(obj, StratifiedMargins):
        return "sxy"
    return "xmy"


# -- scenario configs --------------------------------------------------------


@dataclass(frozen=True)
class ScenarioConfig:
    scenario: str
    experimental: Path
    observational: Path | None = None
    ann_stratum: str | None = None
    verify: bool = False
    grid_resolution: int | None = None
    extra: dict = field(default_factory=dict)


def load_scenario_config(path) -> ScenarioConfig:
    """Read a JSON scenario config; relative table paths resolve against its directory."""
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON: {e}") from None
    if not isinstance(data, dict):
        raise ParseError(f"{path}: config must be a JSON object")
    known = {"scenario", "experimental", "observational", "ann_stratum", "verify", "grid_resolution"}
    scenario = data.get("scenario")
    if scenario not in SCENARIOS:
        raise ParseError(f"{path}: scenario must be one of {list(SCENARIOS)}, got {scenario!r}")
    if "experimental" not in data:
        raise ParseError(f"{path}: 'experimental' table path is required")

    def resolve(p):
        return None if p is None else (path.parent / p)

    grid = data.get("grid_resolution")
    if grid is not None and (not isinstance(grid, int) or isinstance(grid, bool)):
        raise ParseError(f"{path}: grid_resolution must be an integer")
    ann = data.get("ann_stratum")
    return ScenarioConfig(
        scenario=scenario,
        experimental=resolve(data["experimental"]),
        observational=resolve(data.get("observational")),
        ann_stratum=None if ann is None else str(ann),
        verify=bool(data.get("verify", False)),
        grid_resolution=grid,
        extra={k: v for k, v in data.items() if k not in known},
    )
