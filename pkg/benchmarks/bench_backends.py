#!/usr/bin/env python3
"""Throughput of the compiled predicate kernel vs the pure-numpy fallback.

Runs the batched operational predicate over random status matrices for a few
topology sizes and reports rows/second per backend, plus an end-to-end
Monte Carlo rate.  The compiled backend is used automatically when the
extension is built; set SDNAVAIL_PURE=1 to force the fallback at import time.
"""

import argparse
import sys
import time

import numpy as np

sys.path.insert(0, "tests")

from sdnavail.structure import backend_name, compile_problem, evaluate_monte_carlo
from sdnavail.structure import _backend, _kernels_py
from sdnavail.topology import case_topology

from _topologies import bridge_network, reduced_case


def _throughput(fn, problem, statuses, require_anchor, repeat):
    fn(problem, statuses[:128], require_anchor)  # warm-up
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(problem, statuses, require_anchor)
        best = min(best, time.perf_counter() - t0)
    return statuses.shape[0] / best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rows", type=int, default=200_000, help="status rows per call")
    ap.add_argument("--repeat", type=int, default=5, help="timing repetitions, best-of")
    ap.add_argument("--mc-samples", type=int, default=1_000_000)
    args = ap.parse_args(argv)

    kernels = [("pure-python", _kernels_py.batch_is_operational)]
    if backend_name() == "compiled":
        kernels.append(("compiled", _backend.batch_is_operational))
    else:
        print("note: compiled extension not built; benchmarking the fallback only")

    topologies = [
        ("bridge (12 comps)", bridge_network()),
        ("reduced case 3 (14 comps)", reduced_case(3)),
        ("full case 3 (31 comps)", case_topology(3)),
        ("full case 7 (37 comps)", case_topology(7)),
    ]

    rng = np.random.default_rng(0)
    print(f"batched predicate, {args.rows} rows/call, best of {args.repeat}")
    print(f"{'topology':<28} {'mode':<12} " + " ".join(f"{n:>14}" for n, _ in kernels))
    for label, t in topologies:
        problem = compile_problem(t)
        statuses = (rng.random((args.rows, len(problem.component_ids))) < 0.9).astype(np.uint8)
        for mode, anchor in (("sdn", True), ("traditional", False)):
            rates = [_throughput(fn, problem, statuses, anchor, args.repeat) for _, fn in kernels]
            cells = " ".join(f"{r / 1e6:>11.2f} M/s" for r in rates)
            print(f"{label:<28} {mode:<12} {cells}")

    t = case_topology(3)
    amap = {c: 0.999 for c in t.failable_ids()}
    t0 = time.perf_counter()
    evaluate_monte_carlo(t, amap, "sdn", samples=args.mc_samples, seed=0)
    dt = time.perf_counter() - t0
    print(
        f"\nend-to-end Monte Carlo ({backend_name()} backend): "
        f"{args.mc_samples} samples in {dt:.2f}s = {args.mc_samples / dt / 1e6:.2f} M samples/s"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
