"""Command-line front end.

Data (CSV) goes to stdout or --out; diagnostics go to stderr.  Exit status:
0 success, 1 input error, 2 internal numeric failure.
"""

from __future__ import annotations

import argparse
import sys

from . import scenarios, topology
from .dynamics import (
    AlphaFactors,
    ModelError,
    NumericalError,
    ParameterError,
    load_params,
)
from .scenarios import (
    EXACT,
    LocationSpec,
    Method,
    ScenarioError,
    SweepSpec,
    emit_csv,
    monte_carlo,
    parse_specs,
)
from .structure import (
    EvaluationError,
    Z99,
    evaluate_exact,
    evaluate_monte_carlo,
    minimal_cut_sets,
)
from .topology import TopologyError

_INPUT_ERRORS = (TopologyError, ParameterError, ModelError, EvaluationError, ScenarioError, OSError)


class _Parser(argparse.ArgumentParser):
    # input errors exit 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _io_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--topology", metavar="PATH", help="topology file (default: built-in reference)")
    p.add_argument("--params", metavar="PATH", help="parameter file (default: shipped defaults)")
    p.add_argument("--out", metavar="PATH", help="write CSV here instead of stdout")
    return p


def _alpha_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    for axis in ("S", "H", "O", "C"):
        p.add_argument(
            f"--alpha-{axis}",
            dest=f"alpha_{axis.lower()}",
            type=float,
            default=None,
            metavar="X",
            help=f"α_{axis} factor (default 1)",
        )
    return p


def _method_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--samples", type=int, default=None, metavar="N",
                   help="Monte Carlo sample count (default: exact evaluation)")
    p.add_argument("--seed", type=int, default=None, metavar="S",
                   help="Monte Carlo seed (default 0; requires --samples)")
    return p


def build_parser() -> _Parser:
    parser = _Parser(prog="sdnavail", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    io, alpha, method = _io_parent(), _alpha_parent(), _method_parent()

    p = sub.add_parser("eval", parents=[io, alpha, method],
                       help="evaluate one case (or a topology file) at fixed α")
    p.add_argument("--case", type=int, default=None, metavar="N", help="case id 1..8 (default 3)")
    p.add_argument("--mode", choices=("sdn", "traditional"), default="sdn")

    p = sub.add_parser("sweep", parents=[io, alpha, method],
                       help="α sweep over a grid (flags or --spec file)")
    p.add_argument("--case", type=int, default=None, metavar="N")
    p.add_argument("--axis", action="append", default=None, metavar="NAME",
                   help="swept axis (alpha_S/alpha_H/alpha_O/alpha_C); repeatable")
    p.add_argument("--grid", action="append", default=None, metavar="V1,V2,...",
                   help="grid for the preceding --axis; repeatable")
    p.add_argument("--spec", metavar="PATH", help="sweep/location spec file")

    sub.add_parser("cases", parents=[io, alpha, method],
                   help="all 8 cases plus the traditional baseline")

    p = sub.add_parser("locations", parents=[io, alpha, method],
                       help="controller-location study (default α_O=0.2)")
    p.add_argument("--pairs", metavar="A:B,C:D,...",
                   help="placement pairs of node groups (default: shipped set)")
    p.add_argument("--spec", metavar="PATH", help="spec file with location lines")

    p = sub.add_parser("cutsets", parents=[io],
                       help="minimal cut sets up to --max-order")
    p.add_argument("--case", type=int, default=None, metavar="N")
    p.add_argument("--mode", choices=("sdn", "traditional"), default="sdn")
    p.add_argument("--max-order", type=int, default=2, metavar="K")

    p = sub.add_parser("mc-check", parents=[io, alpha],
                       help="exact vs Monte Carlo consistency check (99%% CI)")
    p.add_argument("--case", type=int, default=None, metavar="N")
    p.add_argument("--mode", choices=("sdn", "traditional"), default="sdn")
    p.add_argument("--samples", type=int, default=1_000_000, metavar="N")
    p.add_argument("--seed", type=int, default=0, metavar="S")
    return parser


def _load_topology(args, parser: _Parser):
    """(topology, case-label) from --topology/--case; both together is an error."""
    case = getattr(args, "case", None)
    if args.topology is not None:
        if case is not None:
            parser.error("--case applies to the built-in reference; not valid with --topology")
        return topology.load(args.topology), scenarios.BASELINE_CASE
    case = topology.check_case_id(3 if case is None else case)
    return topology.case_topology(case), case


def _params(args):
    return load_params(args.params) if args.params is not None else load_params()


def _alphas(args, base: AlphaFactors = AlphaFactors()) -> AlphaFactors:
    values = {
        f: getattr(args, f)
        for f in ("alpha_s", "alpha_h", "alpha_o", "alpha_c")
        if getattr(args, f, None) is not None
    }
    merged = AlphaFactors(**{**base.__dict__, **values})
    return merged.check()


def _method(args) -> Method:
    if args.samples is None:
        if args.seed is not None:
            raise ScenarioError("--seed requires --samples (exact evaluation takes no seed)")
        return EXACT
    return monte_carlo(args.samples, args.seed if args.seed is not None else 0)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _cmd_eval(args, parser) -> str:
    t, case = _load_topology(args, parser)
    row = scenarios.evaluate_topology(
        t, _params(args), _alphas(args), _method(args), args.mode, case
    )
    return emit_csv([row])


def _cmd_sweep(args, parser) -> str:
    if args.spec is not None:
        if args.case is not None or args.axis or args.grid:
            parser.error("--spec excludes --case/--axis/--grid")
        if args.samples is not None or args.seed is not None:
            parser.error("--spec carries its own method; --samples/--seed are not valid")
        with open(args.spec, encoding="utf-8") as fh:
            specs = parse_specs(fh.read())
        params = _params(args)
        rows = []
        for spec in specs:
            if isinstance(spec, SweepSpec):
                rows.extend(scenarios.alpha_sweep(spec, params))
            else:
                rows.extend(scenarios.location_study(spec, params))
        return emit_csv(rows)
    if args.case is None:
        parser.error("sweep needs --case with --axis/--grid, or --spec")
    axes = args.axis or []
    grids = args.grid or []
    if len(axes) != len(grids):
        raise ScenarioError(f"{len(axes)} --axis flags but {len(grids)} --grid flags")
    parsed = []
    for name, grid in zip(axes, grids):
        try:
            parsed.append((name, tuple(float(x) for x in grid.split(","))))
        except ValueError:
            raise ScenarioError(f"bad grid {grid!r} for axis {name}") from None
    spec = SweepSpec(args.case, tuple(parsed), _alphas(args), _method(args)).check()
    return emit_csv(scenarios.alpha_sweep(spec, _params(args)))


def _cmd_cases(args, parser) -> str:
    if args.topology is not None:
        parser.error("cases always uses the built-in reference; --topology is not valid")
    rows = scenarios.run_all_cases(_params(args), _alphas(args), _method(args))
    return emit_csv(rows)


def _cmd_locations(args, parser) -> str:
    if args.topology is not None:
        parser.error("locations rebuilds the reference per placement; --topology is not valid")
    if args.spec is not None:
        if args.pairs is not None:
            parser.error("--spec excludes --pairs")
        with open(args.spec, encoding="utf-8") as fh:
            specs = [s for s in parse_specs(fh.read()) if isinstance(s, LocationSpec)]
        if not specs:
            raise ScenarioError("spec file has no location lines")
        params = _params(args)
        rows = []
        for spec in specs:
            rows.extend(scenarios.location_study(spec, params))
        return emit_csv(rows)
    placements = scenarios.DEFAULT_PLACEMENTS
    if args.pairs is not None:
        parsed = []
        for part in args.pairs.split(","):
            bits = part.split(":")
            if len(bits) != 2:
                raise ScenarioError(f"bad placement {part!r}, want A:B")
            parsed.append((bits[0], bits[1]))
        placements = tuple(parsed)
    spec = LocationSpec(placements, _alphas(args, scenarios.LOCATION_ALPHAS), _method(args))
    return emit_csv(scenarios.location_study(spec.check(), _params(args)))


def _cmd_cutsets(args, parser) -> str:
    t, _ = _load_topology(args, parser)
    cuts = minimal_cut_sets(t, args.mode, args.max_order)
    lines = ["order,components"]
    for cut in cuts:
        lines.append(f"{len(cut)},{';'.join(sorted(cut))}")
    return "\n".join(lines) + "\n"


def _cmd_mc_check(args, parser) -> str:
    t, case = _load_topology(args, parser)
    amap = scenarios.build_availability_map(t, _params(args), _alphas(args), args.mode)
    exact = evaluate_exact(t, amap, args.mode)
    est = evaluate_monte_carlo(t, amap, args.mode, args.samples, args.seed)
    low = max(est.estimate - Z99 * est.std_error, 0.0)
    high = min(est.estimate + Z99 * est.std_error, 1.0)
    verdict = "PASS" if low <= exact <= high else "FAIL"
    lines = [
        "exact,estimate,std_error,ci99_low,ci99_high,verdict",
        ",".join([_fmt(exact), _fmt(est.estimate), _fmt(est.std_error),
                  _fmt(low), _fmt(high), verdict]),
    ]
    return "\n".join(lines) + "\n"


_COMMANDS = {
    "eval": _cmd_eval,
    "sweep": _cmd_sweep,
    "cases": _cmd_cases,
    "locations": _cmd_locations,
    "cutsets": _cmd_cutsets,
    "mc-check": _cmd_mc_check,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = _COMMANDS[args.command](args, parser)
        if args.out is not None:
            with open(args.out, "wb") as fh:
                fh.write(text.encode("utf-8"))
        else:
            sys.stdout.write(text)
    except NumericalError as exc:
        print(f"sdnavail: numeric failure: {exc}", file=sys.stderr)
        return 2
    except _INPUT_ERRORS as exc:
        print(f"sdnavail: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
