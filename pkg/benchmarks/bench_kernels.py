"""Timing comparison of the jit-compiled and plain-numpy kernel paths.

Runs the subspace grid scan and the random falsifier on a mid-size
scenario through both implementations, checks they agree, and prints a
small table with the speedup. The jit path needs one warmup call per
kernel to absorb compilation; that cost is reported separately.

Usage: python benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import math
import time

import numpy as np

from dfrc import ArrayGeometry, Scenario
from dfrc.kernels import (
    NUMBA_ENABLED,
    falsifier_scan_numba,
    falsifier_scan_numpy,
    grid_scan_numba,
    grid_scan_numpy,
)

GRID_SIDE = 1001
FALSIFIER_TRIALS = 200_000


def _scenario() -> Scenario:
    geom = ArrayGeometry(num_antennas=10, spacing_over_wavelength=0.5)
    return Scenario.with_los_user(geom, np.deg2rad(-30.0), 0.0, 1.0)


def _grid_args(scenario: Scenario, gamma: float):
    power = scenario.power_budget
    hh = scenario.channel_norm_sq
    amps = np.linspace(0.0, math.sqrt(power / hh), GRID_SIDE)
    phases = np.linspace(0.0, 2.0 * math.pi, GRID_SIDE, endpoint=False)
    amp0_feasible = gamma <= scenario.max_target_power * (1.0 + 1e-12)
    return (
        amps,
        phases,
        float(np.angle(scenario.cross_gain)),
        power,
        gamma,
        hh,
        scenario.steering_norm_sq,
        abs(scenario.cross_gain),
        amp0_feasible,
    )


def _falsifier_args(scenario: Scenario, gamma: float):
    return (
        0,
        FALSIFIER_TRIALS,
        scenario.channel,
        scenario.target_steering,
        scenario.power_budget,
        gamma,
    )


def _time(fn, args, repeats: int) -> float:
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    scenario = _scenario()
    gamma = 5.0
    cases = [
        ("grid scan %dx%d" % (GRID_SIDE, GRID_SIDE), grid_scan_numpy, grid_scan_numba, _grid_args(scenario, gamma)),
        ("falsifier %.0e draws" % FALSIFIER_TRIALS, falsifier_scan_numpy, falsifier_scan_numba, _falsifier_args(scenario, gamma)),
    ]

    print(f"numba available: {NUMBA_ENABLED}")
    print(f"{'kernel':<24} {'numpy':>10} {'numba':>10} {'speedup':>8}")
    for name, numpy_fn, numba_fn, fn_args in cases:
        t_numpy = _time(numpy_fn, fn_args, args.repeats)
        if NUMBA_ENABLED:
            t0 = time.perf_counter()
            jit_result = numba_fn(*fn_args)
            compile_s = time.perf_counter() - t0
            t_numba = _time(numba_fn, fn_args, args.repeats)
            ref_result = numpy_fn(*fn_args)
            if not np.allclose(
                np.asarray(jit_result, dtype=float),
                np.asarray(ref_result, dtype=float),
                rtol=0.0,
                atol=0.0,
                equal_nan=True,
            ):
                raise AssertionError(f"{name}: paths disagree: {jit_result} vs {ref_result}")
            print(
                f"{name:<24} {t_numpy * 1e3:>8.1f}ms {t_numba * 1e3:>8.1f}ms "
                f"{t_numpy / t_numba:>7.1f}x  (first call {compile_s:.2f}s)"
            )
        else:
            print(f"{name:<24} {t_numpy * 1e3:>8.1f}ms {'-':>10} {'-':>8}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
