"""Benchmark the compiled Lambert W kernel against the pure-Python twin.

Each backend runs in its own interpreter (selection happens at import
time), timing the raw kernel and an end-to-end Borel-Laplace resummation:

    python benchmarks/bench_backends.py
"""

import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, time
import numpy as np
import gammares
from gammares._backend import BACKEND, w_many
from gammares.borelplane import ray_sampler
from gammares.laplace import laplace_ray
from gammares.quadrature import QuadratureSpec

rng = np.random.default_rng(42)
xs = (rng.uniform(-3, 3, 20000) + 1j * rng.uniform(-3, 3, 20000))

t0 = time.perf_counter()
for k in (-1, 0, 1):
    w_many(xs, k)
t_kernel = time.perf_counter() - t0

spec = QuadratureSpec()
sampler = ray_sampler("lambda_3_2", 0.0)
t0 = time.perf_counter()
for z in (2.0, 5.0, 3 + 3j, 10.0):
    laplace_ray(sampler, 0.0, z, spec, growth=(0.5, 2.0))
t_resum = time.perf_counter() - t0

print(json.dumps({"backend": BACKEND, "kernel_s": t_kernel, "resum_s": t_resum}))
"""


def run(pure: bool):
    env = dict(os.environ)
    if pure:
        env["GAMMARES_PURE"] = "1"
    else:
        env.pop("GAMMARES_PURE", None)
    out = subprocess.run([sys.executable, "-c", WORKLOAD], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    rows = [run(pure=True)]
    probe = run(pure=False)
    if probe["backend"] == "compiled":
        rows.append(probe)
    else:
        print("compiled kernel not built; timing the pure backend only")
    print(f"{'backend':<10} {'60k W evals':>14} {'4 resummations':>16}")
    for row in rows:
        print(f"{row['backend']:<10} {row['kernel_s']:>12.3f} s "
              f"{row['resum_s']:>14.3f} s")
    if len(rows) == 2:
        print(f"{'speedup':<10} {rows[0]['kernel_s'] / rows[1]['kernel_s']:>12.1f} x "
              f"{rows[0]['resum_s'] / rows[1]['resum_s']:>14.1f} x")


if __name__ == "__main__":
    main()
