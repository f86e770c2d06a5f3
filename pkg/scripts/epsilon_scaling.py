#!/usr/bin/env python3
"""Report how monitoring time grows with the clock-skew bound.

Runs a fixed random workload at epsilon 1, 2, 3 and prints the mean wall
time per run. Reported, not asserted: absolute numbers are machine
specific, only the trend is of interest. The exhaustive engine runs a
20-event workload; pass --engine smt for the solver-backed engine on a
smaller one (every solver round is a subprocess, so it is far slower).
"""

import argparse
import statistics
import sys
import time

from mtlmon.casegen import gen_random_computation
from mtlmon.parser import parse_spec
from mtlmon.pipeline import MonitorConfig, monitor
from mtlmon.smt import bundled_solver_command


def mean_runtime(engine: str, epsilon: int, events: int, repeats: int) -> float:
    comp = gen_random_computation(
        seed=2024, processes=2, events=events, epsilon=epsilon, max_gap=6
    )
    formula = parse_spec("G[0,40) (p -> F[0,12) q)")
    cfg = MonitorConfig(
        epsilon=epsilon,
        segments=4 if engine == "enumerate" else 3,
        engine=engine,
        solver_command=bundled_solver_command() if engine == "smt" else None,
        max_verdicts_per_segment=64,
        branch_cap=256,
    )
    samples = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        monitor(list(comp.events), formula, cfg)
        samples.append(time.perf_counter() - t0)
    return statistics.mean(samples)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--engine", choices=["enumerate", "smt"], default="enumerate")
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()
    events = 20 if args.engine == "enumerate" else 9
    print(f"{args.engine} engine, {events}-event workload")
    print(f"{'epsilon':>8} {'mean seconds':>14}")
    prev = None
    for eps in (1, 2, 3):
        t = mean_runtime(args.engine, eps, events, args.repeats)
        trend = "" if prev is None or t >= prev else "  (decreased)"
        print(f"{eps:>8} {t:>14.3f}{trend}")
        prev = t
    return 0


if __name__ == "__main__":
    sys.exit(main())
