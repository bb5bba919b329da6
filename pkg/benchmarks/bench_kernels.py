"""Compare the compiled kernels with the pure-Python fallback.

Micro benchmarks call both kernel modules directly.  The end-to-end number
runs the singular-factor computation of a degree-10 curve in a subprocess
per backend, since the backend is fixed at import time.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import os
import random
import subprocess
import sys
import timeit

from curvesing.polycore import _pykernels as py

try:
    from curvesing.polycore import _ckernels as cy
except ImportError:
    cy = None

END_TO_END = """
import time
from curvesing.polycore.kernels import BACKEND
from curvesing.mubasis import Parameterization
from curvesing.polycore.poly import BiHomPoly
from curvesing.singularity import analyse
s, v = BiHomPoly.linear(1, 0), BiHomPoly.linear(0, 1)
phi = Parameterization(s**2 * (2*s + v)**2 * (s + v)**6,
                       s**3 * (2*s + v)**5 * (3*s*s + 2*s*v + v*v), -(s + v)**10)
start = time.perf_counter()
analyse(phi)
print(BACKEND, time.perf_counter() - start)
"""


def workloads(rng):
    a = [rng.randint(-10**6, 10**6) for _ in range(40)]
    b = [rng.randint(-10**6, 10**6) for _ in range(30)]
    g = [rng.randint(-50, 50) for _ in range(8)]
    ga, gb = py.mul(a, g), py.mul(b, g)
    m = [[rng.randint(-100, 100) for _ in range(12)] for _ in range(12)]
    rows = [[rng.randint(-9, 9) for _ in range(6)] for _ in range(10)]
    return {
        "mul 40x30": lambda k: k.mul(a, b),
        "gcd deg 47/37": lambda k: k.gcd(ga, gb),
        "pseudo_divmod": lambda k: k.pseudo_divmod(ga, b),
        "det 12x12": lambda k: k.det(m),
        "rank 10x6": lambda k: k.rank(rows),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--skip-end-to-end", action="store_true")
    args = ap.parse_args()
    if cy is None:
        print("compiled kernels are not built; run 'python3 setup.py build_ext --inplace'")
        return 1
    print(f"{'kernel':<16}{'python (ms)':>14}{'cython (ms)':>14}{'speedup':>10}")
    for name, fn in workloads(random.Random(0)).items():
        t_py = min(timeit.repeat(lambda: fn(py), number=20, repeat=args.repeat)) / 20
        t_cy = min(timeit.repeat(lambda: fn(cy), number=20, repeat=args.repeat)) / 20
        print(f"{name:<16}{t_py * 1e3:>14.3f}{t_cy * 1e3:>14.3f}{t_py / t_cy:>9.1f}x")
    if args.skip_end_to_end:
        return 0
    print("\nend to end, degree-10 singular factors:")
    for pure in ("1", "0"):
        env = dict(os.environ, CURVESING_PURE_PYTHON=pure)
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env,
                             capture_output=True, text=True, check=True).stdout.split()
        print(f"  {out[0]:<8}{float(out[1]):8.2f} s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
