"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Each backend runs in its own interpreter (the backend is fixed at import),
and the best of N timings per workload is reported.
"""
import argparse
import json
import os
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent

WORKER = r"""
import json, random, sys, time
from exaffine import kernels, steinberg as st
from exaffine.qtorus import Cocycle, TorusRing
from exaffine.specfile import load_spec

repeat, spec_dir = int(sys.argv[1]), sys.argv[2]


def poly_mul(m, K):
    R = TorusRing(Cocycle(m, K), variables=("t",))
    rng = random.Random(0)
    def rand():
        x = R.zero()
        for _ in range(12):
            lat = (rng.randint(-3, 3), rng.randint(-3, 3))
            x = x + R.monomial(lat, rng.randint(-5, 5), (rng.randint(0, 3),))
        return x
    xs = [rand() for _ in range(40)]
    def run():
        acc = R.one()
        for a in xs:
            for b in xs[:10]:
                acc = a * b + acc
    return run


def st2(name):
    D = load_spec(f"{spec_dir}/{name}.spec").descriptor()
    return lambda: st.verify_st2(D, bound=0, seed=0)


loads = {
    "poly_mul trivial cocycle": poly_mul(1, [[0, 0], [0, 0]]),
    "poly_mul m=4 cocycle": poly_mul(4, [[1, 1], [1, 0]]),
    "st2 B2 twisted, bound 0": st2("b2n2_t1_k4"),
    "st2 G2, bound 0": st2("g2n2_t0_k6"),
}
out = {}
for label, fn in loads.items():
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    out[label] = best
print(json.dumps({"backend": kernels.BACKEND, "times": out}))
"""


def run_backend(pure, repeat):
    env = dict(os.environ)
    env.pop("EXAFFINE_PURE_PYTHON", None)
    if pure:
        env["EXAFFINE_PURE_PYTHON"] = "1"
    proc = subprocess.run([sys.executable, "-c", WORKER, str(repeat), str(ROOT / "specs")],
                          env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main():
    p = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args()
    fast = run_backend(False, args.repeat)
    slow = run_backend(True, args.repeat)
    if fast["backend"] != "cython":
        print("compiled extension not built; both columns are pure Python")
    print(f"{'workload':<28}{fast['backend']:>10}{slow['backend']:>10}{'speedup':>10}")
    for label, t in fast["times"].items():
        s = slow["times"][label]
        print(f"{label:<28}{t:>9.3f}s{s:>9.3f}s{s / t:>9.2f}x")


if __name__ == "__main__":
    main()
