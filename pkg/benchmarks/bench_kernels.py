"""Compare the compiled and numpy MLP kernels.

Times ``loss_grad`` and ``predict`` per call at several batch sizes, then one
short end-to-end training run under each backend (selected with
``CLMIMO_BACKEND`` in a subprocess, the same switch users have).

    python3 benchmarks/bench_kernels.py [--repeat 2000]
"""
from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from clmimo.nn import _kernels_py, init_params, network_sizes
from clmimo.rng import make_rng

try:
    from clmimo.nn import _kernels_c
except ImportError:  # extension not built
    _kernels_c = None

END_TO_END = """
import time
from clmimo.config import RunConfig, ProtocolConfig, StrategyConfig
from clmimo.experiment import run
from clmimo.nn import BACKEND
cfg = RunConfig(protocol=ProtocolConfig(kind="SNR", n_samples=2000, values=(0.0, 10.0, 20.0)),
                strategy=StrategyConfig(method="DERPP", epochs=5, lr=0.05))
t = time.perf_counter()
r = run(cfg)
print(BACKEND, time.perf_counter() - t, repr(r["avg_mse"]))
"""


def per_call_us(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=repeat, repeat=3)) / repeat * 1e6


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=2000)
    args = ap.parse_args()

    sizes = network_sizes(8, 5)
    p = init_params(sizes, make_rng(0))
    sz = np.asarray(sizes, dtype=np.int64)
    backends = {"numpy": _kernels_py}
    if _kernels_c is not None:
        backends["cython"] = _kernels_c
    else:
        print("compiled extension not available; timing numpy only")

    print(f"{'op':10s} {'batch':>6s} " + " ".join(f"{name + ' us':>12s}" for name in backends) + "   speedup")
    for n in (1, 32, 64, 256, 2000):
        rng = make_rng(n)
        x, y = rng.standard_normal((n, 16)), rng.standard_normal((n, 16))
        g, out = np.empty(p.n_params), np.empty((n, 16))
        for op in ("loss_grad", "predict"):
            times = {}
            for name, k in backends.items():
                if op == "loss_grad":
                    fn = lambda k=k: k.loss_grad(p.flat, sz, x, y, g)  # noqa: E731
                else:
                    fn = lambda k=k: k.predict(p.flat, sz, x, out)  # noqa: E731
                times[name] = per_call_us(fn, max(1, args.repeat // max(1, n // 32)))
            speed = times["numpy"] / times["cython"] if "cython" in times else float("nan")
            cols = " ".join(f"{t:12.1f}" for t in times.values())
            print(f"{op:10s} {n:6d} {cols}   {speed:6.2f}x")

    print("\nend-to-end DER++ run (3 tasks x 1800 samples x 5 epochs):")
    results = {}
    for backend in ("python", "cython") if _kernels_c is not None else ("python",):
        env = dict(os.environ, CLMIMO_BACKEND=backend)
        proc = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
        name, secs, mse = proc.stdout.split()
        results[name] = (float(secs), mse)
        print(f"  {name:7s} {float(secs):7.2f} s   AVG_MSE {mse}")
    if len(results) == 2:
        print(f"  speedup {results['python'][0] / results['cython'][0]:.2f}x")


if __name__ == "__main__":
    main()
