"""Timing comparison of the gate kernel backends.

Runs the head rotation and the controlled flip over a range of tape sizes
for every available backend (compiled extension, numpy fallback) and prints
per-call times plus the speedup. The two backends must agree numerically,
so the benchmark also cross-checks the final state.

Usage: python benchmarks/bench_kernels.py [--max-tape-size 20] [--repeats 5]
"""

import argparse
import math
import time

import numpy as np

from qtm.kernels import available_backends
from qtm.state import make_product_state


def bench_backend(mod, num_tape_spins, repeats):
    alpha = math.pi / math.sqrt(3.0)
    c, s = math.cos(alpha / 2), math.sin(alpha / 2)
    state = make_product_state(0.0, "0" * num_tape_spins)
    amps = state.amplitudes
    best_rot = math.inf
    best_flip = math.inf
    cycle_best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        mod.rotate_head(amps, c, s)
        best_rot = min(best_rot, time.perf_counter() - t0)

        t0 = time.perf_counter()
        mod.cnot_flip(amps, num_tape_spins)  # worst stride
        best_flip = min(best_flip, time.perf_counter() - t0)

        t0 = time.perf_counter()
        for mu in range(1, num_tape_spins + 1):
            mod.rotate_head(amps, c, s)
            mod.cnot_flip(amps, mu)
        cycle_best = min(cycle_best, time.perf_counter() - t0)
    return best_rot, best_flip, cycle_best, amps


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-tape-size", type=int, default=20)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    backends = available_backends()
    print(f"backends: {', '.join(backends)}")
    sizes = [m for m in (8, 12, 16, args.max_tape_size) if m <= args.max_tape_size]
    for m in sizes:
        row = {}
        finals = {}
        for name, mod in backends.items():
            rot, flip, cyc, amps = bench_backend(mod, m, args.repeats)
            row[name] = (rot, flip, cyc)
            finals[name] = amps
        print(f"\nM={m} ({2 ** (m + 1)} amplitudes)")
        for name, (rot, flip, cyc) in row.items():
            print(f"  {name:>8}: rotate {rot * 1e6:9.1f} us   "
                  f"flip {flip * 1e6:9.1f} us   cycle {cyc * 1e3:8.2f} ms")
        if len(row) == 2:
            a, b = (row["numpy"], row["compiled"])
            print(f"  speedup : rotate {a[0] / b[0]:9.2f} x   "
                  f"flip {a[1] / b[1]:9.2f} x   cycle {a[2] / b[2]:8.2f} x")
            diff = float(np.abs(finals["numpy"] - finals["compiled"]).max())
            print(f"  backend disagreement: {diff:.3e}")


if __name__ == "__main__":
    main()
