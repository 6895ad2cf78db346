"""Compiled extension vs pure-python kernel: identical bits, same MC results."""

import json
import os
import subprocess
import sys

import numpy as np
import pytest

from sdnavail.structure import backend_name, batch_is_operational, compile_problem
from sdnavail.structure import _kernels_py
from sdnavail.topology import case_topology

from _topologies import bridge_network, reduced_case, series_toy

compiled_only = pytest.mark.skipif(
    backend_name() != "compiled", reason="compiled extension not built"
)


def test_backend_name_is_known():
    assert backend_name() in ("compiled", "pure-python")


@pytest.mark.parametrize("require_anchor", [True, False])
def test_dispatcher_agrees_with_pure_kernel(require_anchor):
    rng = np.random.default_rng(101)
    for t in (series_toy(), bridge_network(), reduced_case(3), case_topology(3), case_topology(7)):
        problem = compile_problem(t)
        n = len(problem.component_ids)
        statuses = (rng.random((4096, n)) < rng.uniform(0.3, 0.95)).astype(np.uint8)
        via_backend = batch_is_operational(problem, statuses, require_anchor)
        via_pure = _kernels_py.batch_is_operational(problem, statuses, require_anchor)
        assert via_backend.dtype == np.uint8
        assert np.array_equal(via_backend, via_pure)


def test_batch_shape_validation():
    problem = compile_problem(series_toy())
    with pytest.raises(Exception):
        batch_is_operational(problem, np.zeros((4, 99), dtype=np.uint8), True)


def _run_probe(env_extra):
    code = (
        "import json\n"
        "from sdnavail.structure import backend_name, evaluate_monte_carlo\n"
        "from sdnavail.topology import case_topology\n"
        "t = case_topology(3)\n"
        "amap = {c: 0.95 for c in t.failable_ids()}\n"
        "est = evaluate_monte_carlo(t, amap, 'sdn', samples=30000, seed=11)\n"
        "print(json.dumps({'backend': backend_name(),\n"
        "                  'estimate': est.estimate.hex(),\n"
        "                  'std_error': est.std_error.hex()}))\n"
    )
    env = dict(os.environ, **env_extra)
    out = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True
    )
    return json.loads(out.stdout)


@compiled_only
def test_pure_fallback_env_var_selects_and_matches():
    compiled = _run_probe({"SDNAVAIL_PURE": ""})
    pure = _run_probe({"SDNAVAIL_PURE": "1"})
    assert compiled["backend"] == "compiled"
    assert pure["backend"] == "pure-python"
    assert compiled["estimate"] == pure["estimate"]
    assert compiled["std_error"] == pure["std_error"]
