"""``pcbounds`` command line: one subcommand per evidence regime.

Exit status is 0 on success, 2 for bad input, 3 when the evidence is
internally inconsistent.
"""

from __future__ import annotations

import argparse
import sys

from .errors import InconsistentEvidence, PCBoundsError
from .ingest import load_scenario_config, parse_table_csv, to_margins
from .oracle import DEFAULT_RESOLUTION, GridSpec
from .report import confounded_report, covariate_report, mediation_report, simple_report

EXIT_OK, EXIT_INPUT, EXIT_INCONSISTENT = 0, 2, 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pcbounds", description="Bounds on the probability of causation.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--verify", action="store_true", help="cross-check against the brute-force oracle")
        p.add_argument("--grid", type=int, default=DEFAULT_RESOLUTION, metavar="N",
                       help="oracle grid resolution (default %(default)s)")

    p = sub.add_parser("simple", help="experimental exposure/outcome table (x,y,count)")
    p.add_argument("--experimental", required=True)
    common(p)

    p = sub.add_parser("covariate", help="covariate-stratified experiment (s,x,y,count)")
    p.add_argument("--experimental", required=True)
    p.add_argument("--ann-stratum", default=None, help="stratum of the individual, if known")
    common(p)

    p = sub.add_parser("confounded", help="experimental plus observational x,y tables")
    p.add_argument("--experimental", required=True)
    p.add_argument("--observational", default=None)
    common(p)

    p = sub.add_parser("mediation", help="randomized experiment with observed mediator (x,m,y,count)")
    p.add_argument("--experimental", required=True)
    p.add_argument("--markov-tol", type=float, default=0.05)
    common(p)

    p = sub.add_parser("from-config", help="run a scenario described by a JSON config")
    p.add_argument("config")
    p.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _report(scenario, experimental, observational=None, ann_stratum=None, verify=False,
            grid=DEFAULT_RESOLUTION, markov_tol=0.05):
    g = GridSpec(grid)
    if scenario == "simple":
        t = parse_table_csv(experimental, "xy")
        return simple_report(to_margins(t), verify, g, t.is_frequency)
    if scenario == "covariate":
        t = parse_table_csv(experimental, "sxy")
        return covariate_report(to_margins(t), ann_stratum, verify, g, t.is_frequency)
    if scenario == "confounded":
        if observational is None:
            raise _UsageError("observational table required (--observational)")
        t = parse_table_csv(experimental, "xy")
        o = parse_table_csv(observational, "xy")
        return confounded_report(to_margins(t), to_margins(o, observational=True), verify, g,
                                 t.is_frequency or o.is_frequency)
    t = parse_table_csv(experimental, "xmy")
    return mediation_report(to_margins(t), markov_tol, verify, g, t.is_frequency)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command == "from-config":
            cfg = load_scenario_config(args.config)
            rep = _report(cfg.scenario, cfg.experimental, cfg.observational, cfg.ann_stratum,
                          cfg.verify, cfg.grid_resolution or DEFAULT_RESOLUTION)
        else:
            rep = _report(
                args.command,
                args.experimental,
                getattr(args, "observational", None),
                getattr(args, "ann_stratum", None),
                args.verify,
                args.grid,
                getattr(args, "markov_tol", 0.05),
            )
    except InconsistentEvidence as e:
        print(f"pcbounds: inconsistent evidence: {e}", file=stderr)
        return EXIT_INCONSISTENT
    except (_UsageError, PCBoundsError, OSError, ValueError) as e:
        print(f"pcbounds: {e}", file=stderr)
        return EXIT_INPUT
    except SystemExit as e:  # --help
        return int(e.code or 0)
    stdout.write(rep.to_json() + "\n" if args.format == "json" else rep.to_text())
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
