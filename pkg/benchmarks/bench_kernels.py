"""Compare the numba kernels against the pure-numpy fallback.

Each backend runs in its own interpreter because the choice is made once,
at import time, from ``BOUNDSCRAMBLE_NUMBA``.

    python3 benchmarks/bench_kernels.py [--samples 512] [--repeat 50]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

CHILD = r"""
import json, sys, time
import numpy as np
from boundscramble import BACKEND, linalg
from boundscramble.scrambler import ScrambleConfig
from boundscramble.states import Family, StateSpec
from boundscramble.sweep import TimeGrid, run_time_sweep

samples, repeat = int(sys.argv[1]), int(sys.argv[2])
rng = np.random.default_rng(0)
out = {"backend": BACKEND}
for n in (9, 18):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    h = a + a.conj().T
    linalg.eig_hermitian(h)  # warm-up, triggers compilation
    t0 = time.perf_counter()
    for _ in range(repeat):
        linalg.eig_hermitian(h)
    out[f"eigh_{n}x{n}_us"] = 1e6 * (time.perf_counter() - t0) / repeat
run_time_sweep(StateSpec(Family.BENNETT), ScrambleConfig(D=0.6, placement="both"), TimeGrid(10.0, 4))
t0 = time.perf_counter()
run_time_sweep(StateSpec(Family.BENNETT), ScrambleConfig(D=0.6, placement="both"), TimeGrid(10.0, samples))
out["sweep_s"] = time.perf_counter() - t0
print(json.dumps(out))
"""


def run_backend(flag: str, samples: int, repeat: int) -> dict:
    env = dict(os.environ, BOUNDSCRAMBLE_NUMBA=flag)
    proc = subprocess.run([sys.executable, "-c", CHILD, str(samples), str(repeat)],
                          env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--samples", type=int, default=512, help="time points in the sweep")
    parser.add_argument("--repeat", type=int, default=50, help="eigensolver repetitions")
    args = parser.parse_args(argv)

    rows = [run_backend(flag, args.samples, args.repeat) for flag in ("1", "0")]
    keys = ["eigh_9x9_us", "eigh_18x18_us", "sweep_s"]
    print(f"{'backend':<8}" + "".join(f"{k:>16}" for k in keys))
    for r in rows:
        print(f"{r['backend']:<8}" + "".join(f"{r[k]:>16.3f}" for k in keys))
    fast, slow = rows
    print("speedup " + "".join(f"{slow[k] / fast[k]:>15.1f}x" for k in keys))
    return 0


if __name__ == "__main__":
    sys.exit(main())
