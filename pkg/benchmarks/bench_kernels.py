"""Compare the compiled and numpy counting kernels on Dwork-type torus counts.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import time

import numpy as np

from toriczeta import _kernels_py
from toriczeta.ff import make_tower

try:
    from toriczeta import _kernels
except ImportError:
    _kernels = None

CASES = [
    # (p, a, k, n): counting over G_m^n(F_{p^(a k)})
    (7, 1, 2, 2),
    (7, 1, 3, 2),
    (5, 1, 2, 3),
    (13, 1, 2, 2),
    (3, 1, 5, 2),
    (7, 1, 4, 2),
]


def dwork_terms(n):
    exps = np.vstack([np.eye(n, dtype=np.int64), -np.ones((1, n), dtype=np.int64)])
    return np.zeros(n + 1, dtype=np.int64), exps


def run(impl, zech, consts, exps, Q, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        hist = impl.value_histogram(zech, consts, exps, Q, 0, Q - 1)
        best = min(best, time.perf_counter() - t)
    return best, hist


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'field':>10} {'n':>2} {'points':>12} {'cython s':>10} {'numpy s':>10} {'speedup':>8}")
    for p, a, k, n in CASES:
        F = make_tower(p, a, k).field(k)
        Q = F.order
        zech = np.asarray(F.zech_table, dtype=np.int64)
        consts, exps = dwork_terms(n)
        t_py, h_py = run(_kernels_py, zech, consts, exps, Q, args.repeat)
        if _kernels is not None:
            t_c, h_c = run(_kernels, zech, consts, exps, Q, args.repeat)
            assert (h_c == h_py).all(), "backends disagree"
            c_txt, ratio = f"{t_c:10.4f}", f"{t_py / t_c:8.1f}"
        else:
            c_txt, ratio = f"{'n/a':>10}", f"{'-':>8}"
        print(f"{p}^{a * k:<7} {n:>2} {(Q - 1) ** n:>12} {c_txt} {t_py:10.4f} {ratio}")


if __name__ == "__main__":
    main()
