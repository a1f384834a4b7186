#!/usr/bin/env python3
"""Benchmark the compiled term-combination kernel against the pure-Python one.

Each workload runs in a fresh interpreter with ENRQ_KERNEL forced, so the
numbers compare the two backends end to end on representative pipelines.

    python benchmarks/bench_kernel.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOADS = {
    "main-term-q8": (
        "from enrq.perverse import ph_main_term; ph_main_term(8)"
    ),
    "betti-term-q8": (
        "from enrq.perverse import BettiTable, ph_betti_term;"
        "ph_betti_term(BettiTable.default(), 8)"
    ),
    "full-fiber-q6": (
        "from enrq.series import Window;"
        "from enrq.enriques import pt_fiber_full;"
        "pt_fiber_full(6, Window(-20, 20, False))"
    ),
    "chain-q5": (
        "from enrq.perverse import check_primitive_chain;"
        "assert check_primitive_chain(q_order=5)['ok']"
    ),
    "toda-q9": (
        "from enrq.enriques import assemble_pt_from_dt, dt_fiber_table;"
        "assemble_pt_from_dt(dt_fiber_table(9), 9)"
    ),
}

DRIVER = """
import json, sys, time
from enrq.kernel import BACKEND
code = sys.argv[1]
repeat = int(sys.argv[2])
times = []
for _ in range(repeat):
    t0 = time.perf_counter()
    exec(code)
    times.append(time.perf_counter() - t0)
print(json.dumps({"backend": BACKEND, "best": min(times)}))
"""


def run(workload, backend, repeat):
    env = dict(os.environ, ENRQ_KERNEL=backend)
    proc = subprocess.run(
        [sys.executable, "-c", DRIVER, WORKLOADS[workload], str(repeat)],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    result = json.loads(proc.stdout)
    assert result["backend"] == backend, f"requested {backend}, got {result['backend']}"
    return result["best"]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    try:
        run("main-term-q8", "c", 1)
    except (subprocess.CalledProcessError, AssertionError):
        print("compiled kernel unavailable; rebuild with `pip install -e .`", file=sys.stderr)
        return 1

    print(f"{'workload':<16} {'compiled':>10} {'pure py':>10} {'speedup':>9}")
    for name in WORKLOADS:
        tc = run(name, "c", args.repeat)
        tp = run(name, "py", args.repeat)
        print(f"{name:<16} {tc * 1e3:>8.1f}ms {tp * 1e3:>8.1f}ms {tp / tc:>8.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
