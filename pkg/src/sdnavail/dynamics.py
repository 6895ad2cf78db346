"""Per-element continuous-time Markov models and their steady-state solution.

Each failable element class gets a small CTMC whose steady-state probability
mass on the up states is that element's availability.  Links use a two-state
chain; forwarding nodes, routers and controllers use a five-state chain with
separate hardware, software and operations failure sources plus an imperfect
automatic-recovery (coverage) branch:

    OK -> H  at lambda_H      H -> OK at mu_H
    OK -> S  at lambda_S      S -> OK at c * mu_S
                              S -> C  at (1 - c) * mu_S
    OK -> O  at lambda_O      C -> OK at mu_M
                              O -> OK at mu_O

Controller failure intensities are scaled by the dimensionless alpha factors
relative to network-wide default intensities, so deployments with different
controller counts stay parametrically comparable:

    lambda_H = alpha_H * (N / K) * lambda_dC
    lambda_S = alpha_S * N * lambda_dS
    lambda_O = alpha_O * N * lambda_dO
    coverage = 1 - alpha_C * (1 - c)

with N forwarding nodes and K controllers.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from importlib import resources

import numpy as np

LINK = "link"
NODE = "node"
CONTROLLER = "controller"
ROUTER = "router"

#: Element classes with their own parameter-file section.
PARAM_CLASSES = (LINK, NODE, CONTROLLER, ROUTER)

_CLASS_ALIASES = {"forwarding-node": NODE, "fwd": NODE, "ctrl": CONTROLLER}


class ModelError(ValueError):
    """Invalid chain or parameters."""


class NumericalError(RuntimeError):
    """Solver failed to reach the required residual."""


class ParameterError(ValueError):
    """Malformed parameter file."""


@dataclass(frozen=True)
class ElementParams:
    """Failure/repair intensities (per hour) and coverage for one element class."""

    lambda_h: float
    lambda_s: float
    lambda_o: float
    mu_h: float
    mu_s: float
    mu_o: float
    mu_m: float
    coverage: float

    def check(self) -> "ElementParams":
        rates = {
            "lambda_H": self.lambda_h,
            "lambda_S": self.lambda_s,
            "lambda_O": self.lambda_o,
            "mu_H": self.mu_h,
            "mu_S": self.mu_s,
            "mu_O": self.mu_o,
            "mu_M": self.mu_m,
        }
        for name, value in rates.items():
            if not value > 0:
                raise ModelError(f"rate {name} must be > 0, got {value!r}")
        if not 0 <= self.coverage <= 1:
            raise ModelError(f"coverage must be in [0, 1], got {self.coverage!r}")
        return self


@dataclass(frozen=True)
class AlphaFactors:
    """Dimensionless multipliers for the controller failure sources."""

    alpha_s: float = 1.0
    alpha_h: float = 1.0
    alpha_o: float = 1.0
    alpha_c: float = 1.0

    def check(self) -> "AlphaFactors":
        for name in ("alpha_s", "alpha_h", "alpha_o", "alpha_c"):
            if not getattr(self, name) > 0:
                raise ModelError(f"{name} must be > 0")
        return self

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.alpha_s, self.alpha_h, self.alpha_o, self.alpha_c)


@dataclass(frozen=True)
class DefaultIntensities:
    """Network-wide default intensities the alpha factors scale against."""

    lambda_ds: float
    lambda_do: float
    lambda_dc: float
    n_nodes: int
    k_controllers: int

    def check(self) -> "DefaultIntensities":
        if self.n_nodes < 1 or self.k_controllers < 1:
            raise ModelError("need at least one forwarding node and one controller")
        for name in ("lambda_ds", "lambda_do", "lambda_dc"):
            if not getattr(self, name) > 0:
                raise ModelError(f"{name} must be > 0")
        return self


@dataclass(frozen=True)
class ComponentModel:
    """A finite CTMC with an up-state subset."""

    states: tuple[str, ...]
    generator: np.ndarray
    up_states: frozenset[int]

    def check(self) -> "ComponentModel":
        q = self.generator
        n = len(self.states)
        if q.shape != (n, n) or n < 2:
            raise ModelError("generator must be square with >= 2 states")
        off = q - np.diag(np.diag(q))
        if (off < 0).any():
            raise ModelError("off-diagonal rates must be >= 0")
        row = np.abs(q.sum(axis=1)).max()
        if row > 1e-9 * max(1.0, np.abs(q).max()):
            raise ModelError(f"generator rows must sum to 0 (max deviation {row:g})")
        if not self.up_states or len(self.up_states) >= n:
            raise ModelError("up-state set must be non-empty and proper")
        return self


def apply_alpha(
    defaults: DefaultIntensities, base: ElementParams, alphas: AlphaFactors
) -> ElementParams:
    """Scale controller failure intensities by the alpha factors.

    Repair rates are untouched.  Forwarding nodes and links are evaluated with
    their base parameters; only controller elements go through this scaling.
    """
    defaults.check()
    base.check()
    alphas.check()
    uncovered = alphas.alpha_c * (1.0 - base.coverage)
    if uncovered > 1.0:
        raise ModelError(
            f"alpha_C={alphas.alpha_c:g} with coverage={base.coverage:g} "
            "would make coverage negative"
        )
    coverage = base.coverage if alphas.alpha_c == 1.0 else 1.0 - uncovered
    return replace(
        base,
        lambda_h=alphas.alpha_h * (defaults.n_nodes / defaults.k_controllers) * defaults.lambda_dc,
        lambda_s=alphas.alpha_s * defaults.n_nodes * defaults.lambda_ds,
        lambda_o=alphas.alpha_o * defaults.n_nodes * defaults.lambda_do,
        coverage=coverage,
    )


def build_element_model(element_class: str, params: ElementParams) -> ComponentModel:
    """Construct the CTMC for one element class."""
    params.check()
    cls = _CLASS_ALIASES.get(element_class, element_class)
    if cls == LINK:
        q = np.array(
            [
                [-params.lambda_h, params.lambda_h],
                [params.mu_h, -params.mu_h],
            ]
        )
        return ComponentModel(("UP", "DOWN"), q, frozenset({0})).check()
    if cls in (NODE, CONTROLLER, ROUTER):
        lh, ls, lo = params.lambda_h, params.lambda_s, params.lambda_o
        c = params.coverage
        q = np.zeros((5, 5))
        # states: OK, H, S, C, O
        q[0, 1] = lh
        q[0, 2] = ls
        q[0, 4] = lo
        q[1, 0] = params.mu_h
        q[2, 0] = c * params.mu_s
        q[2, 3] = (1.0 - c) * params.mu_s
        q[3, 0] = params.mu_m
        q[4, 0] = params.mu_o
        np.fill_diagonal(q, -q.sum(axis=1))
        return ComponentModel(("OK", "H", "S", "C", "O"), q, frozenset({0})).check()
    raise ModelError(f"unknown element class {element_class!r}")


def _reachable(adjacency: np.ndarray, start: int) -> np.ndarray:
    n = adjacency.shape[0]
    seen = np.zeros(n, dtype=bool)
    seen[start] = True
    stack = [start]
    while stack:
        i = stack.pop()
        for j in np.nonzero(adjacency[i])[0]:
            if not seen[j]:
                seen[j] = True
                stack.append(int(j))
    return seen


def steady_state(model: ComponentModel) -> np.ndarray:
    """Solve pi Q = 0 with sum(pi) = 1 to a residual of at most 1e-12."""
    model.check()
    q = model.generator
    n = len(model.states)

    adjacency = (q > 0) & ~np.eye(n, dtype=bool)
    forward = _reachable(adjacency, 0)
    backward = _reachable(adjacency.T, 0)
    if not forward.all() or not backward.all():
        bad = sorted(set(np.nonzero(~forward)[0]) | set(np.nonzero(~backward)[0]))
        names = ", ".join(model.states[i] for i in bad)
        raise ModelError(f"chain is reducible, unreachable states: {names}")

    a = q.T.copy()
    a[-1, :] = 1.0
    b = np.zeros(n)
    b[-1] = 1.0
    try:
        pi = np.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"steady-state solve failed: {exc}") from None

    residual = np.abs(pi @ q).max()
    if not residual <= 1e-12:  # NaN-safe
        raise NumericalError(f"steady-state residual {residual:g} exceeds 1e-12")
    if not pi.min() >= -1e-15:
        raise NumericalError(f"steady-state probability {pi.min():g} below -1e-15")
    pi = np.clip(pi, 0.0, None)
    return pi / pi.sum()


def availability_of(model: ComponentModel) -> float:
    """Steady-state probability mass on the up states."""
    pi = steady_state(model)
    value = float(sum(pi[i] for i in model.up_states))
    return min(max(value, 0.0), 1.0)


def element_availability(element_class: str, params: ElementParams) -> float:
    return availability_of(build_element_model(element_class, params))


# Shipped default parameters.  Links are plain transport gear; SDN forwarding
# nodes are lean switches with little local software; controllers concentrate
# the control software and its operational churn; routers model the
# traditional-network forwarding element that carries the full routing stack.
DEFAULT_PARAMS: dict[str, ElementParams] = {
    LINK: ElementParams(
        lambda_h=1 / 17520,
        lambda_s=1 / 17520,
        lambda_o=1 / 17520,
        mu_h=0.5,
        mu_s=2.0,
        mu_o=0.5,
        mu_m=0.5,
        coverage=0.97,
    ),
    NODE: ElementParams(
        lambda_h=1 / 8760,
        lambda_s=1 / 8760,
        lambda_o=1 / 17520,
        mu_h=0.25,
        mu_s=4.0,
        mu_o=0.5,
        mu_m=0.25,
        coverage=0.97,
    ),
    CONTROLLER: ElementParams(
        lambda_h=1 / 4380,
        lambda_s=1 / 720,
        lambda_o=1 / 1440,
        mu_h=1 / 12,
        mu_s=2.0,
        mu_o=0.25,
        mu_m=1 / 12,
        coverage=0.97,
    ),
    ROUTER: ElementParams(
        lambda_h=1 / 8760,
        lambda_s=1 / 2190,
        lambda_o=1 / 2920,
        mu_h=0.25,
        mu_s=2.0,
        mu_o=0.25,
        mu_m=0.25,
        coverage=0.97,
    ),
}

#: Reference deployment the default intensities are normalized against, so
#: that alpha = 1 on the reference case reproduces the base controller rates.
REFERENCE_N = 10
REFERENCE_K = 2

_PARAM_NAMES = {
    "lambda_H": "lambda_h",
    "lambda_S": "lambda_s",
    "lambda_O": "lambda_o",
    "mu_H": "mu_h",
    "mu_S": "mu_s",
    "mu_O": "mu_o",
    "mu_M": "mu_m",
    "c": "coverage",
}

_DEFAULT_NAMES = ("lambda_dS", "lambda_dO", "lambda_dC")


@dataclass(frozen=True)
class ParameterSet:
    """Per-class element parameters plus the default-intensity overrides."""

    link: ElementParams
    node: ElementParams
    controller: ElementParams
    router: ElementParams
    lambda_ds: float | None = None
    lambda_do: float | None = None
    lambda_dc: float | None = None

    def for_class(self, element_class: str) -> ElementParams:
        return getattr(self, _CLASS_ALIASES.get(element_class, element_class))

    def default_intensities(self, n_nodes: int, k_controllers: int) -> DefaultIntensities:
        """Default intensities for a deployment of given size.

        Unless overridden in the parameter file, they are derived from the
        base controller rates at the reference deployment size, which makes
        alpha = 1 the identity there.
        """
        ctrl = self.controller
        return DefaultIntensities(
            lambda_ds=self.lambda_ds if self.lambda_ds is not None else ctrl.lambda_s / REFERENCE_N,
            lambda_do=self.lambda_do if self.lambda_do is not None else ctrl.lambda_o / REFERENCE_N,
            lambda_dc=(
                self.lambda_dc
                if self.lambda_dc is not None
                else REFERENCE_K * ctrl.lambda_h / REFERENCE_N
            ),
            n_nodes=n_nodes,
            k_controllers=k_controllers,
        ).check()

    def controller_params(self, n_nodes: int, k_controllers: int, alphas: AlphaFactors) -> ElementParams:
        defaults = self.default_intensities(n_nodes, k_controllers)
        return apply_alpha(defaults, self.controller, alphas)


def parse_params(text: str) -> ParameterSet:
    """Parse the line-oriented parameter format.

    Lines are ``param <element-class> <name> <value>`` with classes link,
    node, controller, router, defaults; unknown classes or names are
    rejected.  Values not present keep their shipped defaults.
    """
    overrides: dict[str, dict[str, float]] = {c: {} for c in PARAM_CLASSES}
    default_overrides: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] != "param" or len(fields) != 4:
            raise ParameterError(f"line {lineno}: expected 'param <element-class> <name> <value>'")
        _, cls, name, value = fields
        cls = _CLASS_ALIASES.get(cls, cls)
        try:
            number = float(value)
        except ValueError:
            raise ParameterError(f"line {lineno}: bad numeric value {value!r}") from None
        if cls == "defaults":
            if name not in _DEFAULT_NAMES:
                raise ParameterError(
                    f"line {lineno}: unknown default intensity {name!r}, "
                    f"valid: {', '.join(_DEFAULT_NAMES)}"
                )
            default_overrides[name] = number
        elif cls in overrides:
            if name not in _PARAM_NAMES:
                raise ParameterError(
                    f"line {lineno}: unknown parameter {name!r}, "
                    f"valid: {', '.join(_PARAM_NAMES)}"
                )
            overrides[cls][_PARAM_NAMES[name]] = number
        else:
            raise ParameterError(
                f"line {lineno}: unknown element class {cls!r}, "
                f"valid: {', '.join(PARAM_CLASSES + ('defaults',))}"
            )

    classes = {
        cls: replace(DEFAULT_PARAMS[cls], **overrides[cls]).check() for cls in PARAM_CLASSES
    }
    return ParameterSet(
        link=classes[LINK],
        node=classes[NODE],
        controller=classes[CONTROLLER],
        router=classes[ROUTER],
        lambda_ds=default_overrides.get("lambda_dS"),
        lambda_do=default_overrides.get("lambda_dO"),
        lambda_dc=default_overrides.get("lambda_dC"),
    )


def load_params(path: str | None = None) -> ParameterSet:
    """Load a parameter file; with no path, load the shipped defaults."""
    if path is None:
        text = resources.files("sdnavail").joinpath("data/defaults.params").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return parse_params(text)
