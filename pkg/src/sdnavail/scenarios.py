"""Experiment drivers: case evaluations, α sweeps, location study, CSV output.

A scenario evaluation composes the other layers: build the case topology,
solve the element models (with α factors applied to the controller model per
the dynamics rules), assemble the availability map, and evaluate the system
in sdn mode.  The traditional baseline evaluates the same topology in
traditional mode with forwarding nodes parameterized as conventional routers
(`router` element class): a traditional router carries the full distributed
control software that the SDN design moves to the controllers, so comparing
SDN switches against plain `node` parameters would understate the baseline.

Rows are identified by the case id; the traditional baseline and evaluations
of user-supplied topologies use case 0, which is not a numbered study case.
Location-study rows keep case 3's id (the reference dual-homing pattern)
and appear in placement order.

CSV uses 17 significant digits so emitted values round-trip to the exact
binary float.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from . import dynamics, topology
from .dynamics import (
    CONTROLLER,
    LINK,
    NODE,
    ROUTER,
    AlphaFactors,
    ParameterSet,
    ParameterError,
    load_params,
)
from .structure import check_mode, evaluate_exact, evaluate_monte_carlo
from .topology import PAIR_GROUPS, Topology, TopologyError, case_topology

AXES = ("alpha_S", "alpha_H", "alpha_O", "alpha_C")
_AXIS_FIELD = {"alpha_S": "alpha_s", "alpha_H": "alpha_h", "alpha_O": "alpha_o", "alpha_C": "alpha_c"}

BASELINE_CASE = 0  # row label for non-numbered evaluations (baseline, custom topologies)

DEFAULT_GRID = (0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0)
DEFAULT_PLACEMENTS = (("TRD", "OSL1"), ("BRG", "STV"), ("BRG", "TRD"), ("STV", "OSL1"))
LOCATION_ALPHAS = AlphaFactors(alpha_o=0.2)

CSV_HEADER = "case,alpha_S,alpha_H,alpha_O,alpha_C,unavailability,method,ci_low,ci_high"


class ScenarioError(ValueError):
    """Invalid sweep or location specification."""


@dataclass(frozen=True)
class Method:
    """Evaluation method: exact factoring or seeded Monte Carlo."""

    kind: str = "exact"
    samples: int = 1_000_000
    seed: int = 0

    def check(self) -> "Method":
        if self.kind not in ("exact", "monte-carlo"):
            raise ScenarioError(f"unknown method {self.kind!r}, valid: exact, monte-carlo")
        if self.kind == "monte-carlo" and (not isinstance(self.samples, int) or self.samples < 1):
            raise ScenarioError(f"samples must be a positive integer, got {self.samples!r}")
        return self


EXACT = Method("exact")


def monte_carlo(samples: int = 1_000_000, seed: int = 0) -> Method:
    return Method("monte-carlo", samples, seed).check()


@dataclass(frozen=True)
class SweepRow:
    case: int
    alpha_s: float
    alpha_h: float
    alpha_o: float
    alpha_c: float
    unavailability: float
    method: str
    ci_low: float | None = None
    ci_high: float | None = None


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: a case, per-axis grids, fixed values for unswept axes."""

    case: int
    axes: tuple[tuple[str, tuple[float, ...]], ...] = ()
    fixed: AlphaFactors = field(default_factory=AlphaFactors)
    method: Method = EXACT

    def check(self) -> "SweepSpec":
        topology.check_case_id(self.case)
        seen = set()
        for name, grid in self.axes:
            if name not in AXES:
                raise ScenarioError(f"unknown sweep axis {name!r}, valid: {', '.join(AXES)}")
            if name in seen:
                raise ScenarioError(f"axis {name} listed twice")
            seen.add(name)
            if not grid:
                raise ScenarioError(f"axis {name} has an empty grid")
            if any(g <= 0 for g in grid):
                raise ScenarioError(f"axis {name} grid values must be > 0")
            if any(b <= a for a, b in zip(grid, grid[1:])):
                raise ScenarioError(f"axis {name} grid must be strictly increasing")
        self.fixed.check()
        self.method.check()
        return self


@dataclass(frozen=True)
class LocationSpec:
    """Controller-placement variants: SC1/SC2 dual-homed to two node pairs."""

    placements: tuple[tuple[str, str], ...] = DEFAULT_PLACEMENTS
    alphas: AlphaFactors = LOCATION_ALPHAS
    method: Method = EXACT

    def check(self) -> "LocationSpec":
        if not self.placements:
            raise ScenarioError("no placements given")
        for pair in self.placements:
            if len(pair) != 2:
                raise ScenarioError(f"placement {pair!r} is not a pair of node groups")
            for group in pair:
                if group not in PAIR_GROUPS:
                    raise ScenarioError(
                        f"unknown node group {group!r}, valid: {', '.join(PAIR_GROUPS)}"
                    )
            if pair[0] == pair[1]:
                raise ScenarioError(f"placement {pair!r} names the same group twice")
        self.alphas.check()
        self.method.check()
        return self


def build_availability_map(
    t: Topology,
    params: ParameterSet | None = None,
    alphas: AlphaFactors = AlphaFactors(),
    mode: str = "sdn",
) -> dict[str, float]:
    """Per-component availabilities from the element models.

    α factors scale the controller model only.  In traditional mode the
    forwarding nodes use the `router` parameter class (see module docstring).
    """
    check_mode(mode)
    if params is None:
        params = load_params()
    alphas = alphas.check()
    node_class = NODE if mode == "sdn" else ROUTER
    a_node = dynamics.element_availability(NODE, params.for_class(node_class))
    a_link = dynamics.element_availability(LINK, params.for_class(LINK))
    n = len(t.forwarding_nodes)
    k = len(t.controllers)
    a_ctrl = (
        dynamics.element_availability(CONTROLLER, params.controller_params(n, k, alphas))
        if k
        else 0.0
    )
    amap: dict[str, float] = {}
    for node in t.nodes:
        if node.kind == topology.FORWARDING:
            amap[node.id] = a_node
        elif node.kind == topology.CONTROLLER:
            amap[node.id] = a_ctrl
    for link in t.links:
        if not link.perfect:
            amap[link.id] = a_link
    return amap


def _evaluate_row(
    t: Topology,
    case: int,
    params: ParameterSet | None,
    alphas: AlphaFactors,
    method: Method,
    mode: str,
) -> SweepRow:
    method.check()
    amap = build_availability_map(t, params, alphas, mode)
    if method.kind == "exact":
        value = evaluate_exact(t, amap, mode)
        ci_low = ci_high = None
    else:
        est = evaluate_monte_carlo(t, amap, mode, method.samples, method.seed)
        value = est.estimate
        # availability CI maps to a reversed unavailability CI
        ci_low, ci_high = 1.0 - est.ci_high, 1.0 - est.ci_low
    return SweepRow(
        case=case,
        alpha_s=alphas.alpha_s,
        alpha_h=alphas.alpha_h,
        alpha_o=alphas.alpha_o,
        alpha_c=alphas.alpha_c,
        unavailability=1.0 - value,
        method=method.kind,
        ci_low=ci_low,
        ci_high=ci_high,
    )


def run_case(
    case: int,
    params: ParameterSet | None = None,
    alphas: AlphaFactors = AlphaFactors(),
    method: Method = EXACT,
    mode: str = "sdn",
) -> SweepRow:
    """Evaluate one numbered case at fixed α factors."""
    t = case_topology(case)
    return _evaluate_row(t, case, params, alphas.check(), method, mode)


def evaluate_topology(
    t: Topology,
    params: ParameterSet | None = None,
    alphas: AlphaFactors = AlphaFactors(),
    method: Method = EXACT,
    mode: str = "sdn",
    case: int = BASELINE_CASE,
) -> SweepRow:
    """Evaluate an arbitrary topology (user-supplied file) as one row."""
    return _evaluate_row(t, case, params, alphas.check(), method, mode)


def traditional_baseline(
    params: ParameterSet | None = None,
    alphas: AlphaFactors = AlphaFactors(),
    method: Method = EXACT,
) -> SweepRow:
    """Reference topology in traditional mode (controllers ignored)."""
    t = topology.reference_backbone()
    return _evaluate_row(t, BASELINE_CASE, params, alphas.check(), method, "traditional")


def alpha_sweep(spec: SweepSpec, params: ParameterSet | None = None) -> list[SweepRow]:
    """Cartesian product of the spec's grids, rows in grid order."""
    spec.check()
    names = [name for name, _ in spec.axes]
    grids = [grid for _, grid in spec.axes]
    rows = []
    for values in itertools.product(*grids):
        alphas = replace(
            spec.fixed, **{_AXIS_FIELD[n]: v for n, v in zip(names, values)}
        )
        rows.append(run_case(spec.case, params, alphas, spec.method))
    return rows


def location_study(
    spec: LocationSpec = LocationSpec(), params: ParameterSet | None = None
) -> list[SweepRow]:
    """Evaluate the reference pattern with SC1/SC2 dual-homed per placement."""
    spec.check()
    rows = []
    for group_a, group_b in spec.placements:
        t = topology.backbone_with_placement(group_a, group_b)
        rows.append(_evaluate_row(t, 3, params, spec.alphas, spec.method, "sdn"))
    return rows


def run_all_cases(
    params: ParameterSet | None = None,
    alphas: AlphaFactors = AlphaFactors(),
    method: Method = EXACT,
) -> list[SweepRow]:
    """All eight numbered cases plus the traditional baseline (case 0, last)."""
    rows = [run_case(c, params, alphas, method) for c in topology.CASE_IDS]
    rows.append(traditional_baseline(params, alphas, method))
    return rows


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def emit_csv(table: Sequence[SweepRow]) -> str:
    """Render rows as CSV; byte-deterministic, LF endings, trailing newline."""
    lines = [CSV_HEADER]
    for r in table:
        lines.append(
            ",".join(
                [
                    str(r.case),
                    _fmt(r.alpha_s),
                    _fmt(r.alpha_h),
                    _fmt(r.alpha_o),
                    _fmt(r.alpha_c),
                    _fmt(r.unavailability),
                    r.method,
                    "" if r.ci_low is None else _fmt(r.ci_low),
                    "" if r.ci_high is None else _fmt(r.ci_high),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def _parse_kv(tokens: Iterable[str], lineno: int) -> list[tuple[str, str]]:
    pairs = []
    for tok in tokens:
        if "=" not in tok:
            raise ScenarioError(f"line {lineno}: expected key=value, got {tok!r}")
        key, _, value = tok.partition("=")
        pairs.append((key, value))
    return pairs


def _parse_floats(text: str, lineno: int, what: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError:
        raise ScenarioError(f"line {lineno}: bad {what} {text!r}") from None


def parse_specs(text: str) -> list[SweepSpec | LocationSpec]:
    """Parse sweep/location spec lines.

    Same line convention as the parameter file: whitespace-separated tokens,
    `#` comments.  Examples::

        sweep case=3 axis=alpha_O grid=0.1,1,10 method=exact
        sweep case=1 axis=alpha_S grid=0.5,1,2 alpha_O=0.2 method=monte-carlo samples=100000 seed=7
        location pairs=TRD:OSL1,BRG:STV alpha_O=0.2
    """
    specs: list[SweepSpec | LocationSpec] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind, kvs = tokens[0], _parse_kv(tokens[1:], lineno)
        if kind == "sweep":
            specs.append(_parse_sweep(kvs, lineno))
        elif kind == "location":
            specs.append(_parse_location(kvs, lineno))
        else:
            raise ScenarioError(f"line {lineno}: unknown spec kind {kind!r}")
    if not specs:
        raise ScenarioError("no specs found")
    return specs


def _parse_alpha_kv(key: str, value: str, lineno: int, fixed: dict) -> bool:
    if key in AXES:
        try:
            fixed[_AXIS_FIELD[key]] = float(value)
        except ValueError:
            raise ScenarioError(f"line {lineno}: bad value for {key}: {value!r}") from None
        return True
    return False


def _parse_method(kvs: dict[str, str], lineno: int) -> Method:
    kind = kvs.pop("method", "exact")
    samples = kvs.pop("samples", None)
    seed = kvs.pop("seed", None)
    if kind == "exact":
        if samples is not None or seed is not None:
            raise ScenarioError(f"line {lineno}: samples/seed only apply to method=monte-carlo")
        return EXACT
    if kind == "monte-carlo":
        try:
            return monte_carlo(
                int(samples) if samples is not None else 1_000_000,
                int(seed) if seed is not None else 0,
            )
        except ValueError:
            raise ScenarioError(f"line {lineno}: bad samples/seed") from None
    raise ScenarioError(f"line {lineno}: unknown method {kind!r}")


def _parse_sweep(kvs: list[tuple[str, str]], lineno: int) -> SweepSpec:
    case = None
    axes: list[tuple[str, tuple[float, ...]]] = []
    pending_axis: str | None = None
    fixed: dict[str, float] = {}
    rest: dict[str, str] = {}
    for key, value in kvs:
        if key == "case":
            try:
                case = int(value)
            except ValueError:
                raise ScenarioError(f"line {lineno}: bad case {value!r}") from None
        elif key == "axis":
            if pending_axis is not None:
                raise ScenarioError(f"line {lineno}: axis {pending_axis} has no grid")
            pending_axis = value
        elif key == "grid":
            if pending_axis is None:
                raise ScenarioError(f"line {lineno}: grid without a preceding axis")
            axes.append((pending_axis, _parse_floats(value, lineno, "grid")))
            pending_axis = None
        elif _parse_alpha_kv(key, value, lineno, fixed):
            pass
        elif key in ("method", "samples", "seed"):
            rest[key] = value
        else:
            raise ScenarioError(f"line {lineno}: unknown key {key!r}")
    if pending_axis is not None:
        raise ScenarioError(f"line {lineno}: axis {pending_axis} has no grid")
    if case is None:
        raise ScenarioError(f"line {lineno}: sweep needs case=<id>")
    method = _parse_method(rest, lineno)
    try:
        return SweepSpec(case, tuple(axes), AlphaFactors(**fixed), method).check()
    except (TopologyError, ParameterError, ScenarioError) as exc:
        raise ScenarioError(f"line {lineno}: {exc}") from None


def _parse_location(kvs: list[tuple[str, str]], lineno: int) -> LocationSpec:
    placements: tuple[tuple[str, str], ...] | None = None
    fixed: dict[str, float] = {"alpha_o": LOCATION_ALPHAS.alpha_o}
    rest: dict[str, str] = {}
    for key, value in kvs:
        if key == "pairs":
            parsed = []
            for part in value.split(","):
                bits = part.split(":")
                if len(bits) != 2:
                    raise ScenarioError(f"line {lineno}: bad placement {part!r}, want A:B")
                parsed.append((bits[0], bits[1]))
            placements = tuple(parsed)
        elif _parse_alpha_kv(key, value, lineno, fixed):
            pass
        elif key in ("method", "samples", "seed"):
            rest[key] = value
        else:
            raise ScenarioError(f"line {lineno}: unknown key {key!r}")
    method = _parse_method(rest, lineno)
    try:
        return LocationSpec(
            placements if placements is not None else DEFAULT_PLACEMENTS,
            AlphaFactors(**fixed),
            method,
        ).check()
    except (ParameterError, ScenarioError) as exc:
        raise ScenarioError(f"line {lineno}: {exc}") from None
