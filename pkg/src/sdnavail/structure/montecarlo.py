"""Monte Carlo estimation of system availability.

Each component draws its up/down state from a dedicated random substream
derived from (seed, component id), so two runs with the same seed use common
random numbers for every component the topologies share.  Estimates are
therefore coupled across case variants — adding redundant components to a
topology can never raise the estimated unavailability under a shared seed —
and bit-identical across predicate backends.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass

import numpy as np

from ..topology import Topology
from . import _backend
from .predicate import EvaluationError, check_mode, compile_problem

BATCH = 1 << 16
Z95 = 1.959963984540054
Z99 = 2.5758293035489004


@dataclass(frozen=True)
class EstimateWithCI:
    """Point estimate with a normal-approximation confidence interval."""

    estimate: float
    std_error: float
    ci_low: float
    ci_high: float
    samples: int
    seed: int


def component_stream(seed: int, component_id: str) -> np.random.Generator:
    """Independent generator for one component under one seed.

    The substream key is derived from the component id alone, so components
    with equal ids get equal draws across topologies evaluated with the same
    seed (common random numbers).
    """
    digest = hashlib.sha256(component_id.encode()).digest()
    key = struct.unpack("<4I", digest[:16])
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))


def evaluate_monte_carlo(
    t: Topology,
    availability: dict[str, float],
    mode: str = "sdn",
    samples: int = 1_000_000,
    seed: int = 0,
) -> EstimateWithCI:
    """Estimate system availability from independent status replicates."""
    check_mode(mode)
    if not isinstance(samples, int) or samples < 1:
        raise EvaluationError(f"samples must be a positive integer, got {samples!r}")
    if not isinstance(seed, int) or not 0 <= seed < 2**64:
        raise EvaluationError(f"seed must be an integer in [0, 2^64), got {seed!r}")

    problem = compile_problem(t)
    avail = problem.availability_vector(availability)
    require_anchor = mode == "sdn"
    streams = [component_stream(seed, c) for c in problem.component_ids]

    n = problem.n_components
    up_count = 0
    done = 0
    while done < samples:
        b = min(BATCH, samples - done)
        statuses = np.empty((b, n), dtype=np.uint8)
        for j, rng in enumerate(streams):
            statuses[:, j] = rng.random(b) < avail[j]
        up = _backend.batch_is_operational(problem, statuses, require_anchor)
        up_count += int(up.sum())
        done += b

    estimate = up_count / samples
    std_error = float(np.sqrt(estimate * (1.0 - estimate) / samples))
    low = max(estimate - Z95 * std_error, 0.0)
    high = min(estimate + Z95 * std_error, 1.0)
    return EstimateWithCI(
        estimate=estimate,
        std_error=std_error,
        ci_low=low,
        ci_high=high,
        samples=samples,
        seed=seed,
    )
