"""Time the compiled and numpy spectral scans on the same inputs.

    python benchmarks/bench_backends.py [--repeat 3] [--csv out.csv]
"""
import argparse
import math
import time

import numpy as np

from grades import _backend, gen_gaussian_matrix
from grades.io import format_csv
from grades.rip import gram, sample_supports

CASES = [
    # (label, m, n, s, kind)
    ("exact n=20 s=4", 16, 20, 4, "lex"),
    ("exact n=24 s=6", 30, 24, 6, "lex"),
    ("exact n=40 s=3", 30, 40, 3, "lex"),
    ("sampled n=256 s=10 x2000", 100, 256, 10, "sampled"),
]


def time_case(impl, g, s, kind, supports, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        if kind == "lex":
            out = impl.lex_extremes(g, s)
        else:
            out = impl.support_extremes(g, supports)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--csv")
    args = p.parse_args()

    names = _backend.available()
    rows = []
    for label, m, n, s, kind in CASES:
        g = gram(gen_gaussian_matrix(m, n, 0))
        supports = sample_supports(n, s, 2000, 0) if kind == "sampled" else None
        count = math.comb(n, s) if kind == "lex" else 2000
        times, outs = {}, {}
        for name in names:
            times[name], outs[name] = time_case(_backend.get(name), g, s, kind, supports, args.repeat)
        agree = max(abs(outs[a][i] - outs[names[0]][i]) for a in names for i in (0, 1))
        speedup = times["python"] / times["compiled"] if "compiled" in times else float("nan")
        rows.append([label, count] + [times.get(k, float("nan")) * 1e3 for k in ("compiled", "python")]
                    + [speedup, agree])
        print(f"{label:28s} {count:>8d} supports  "
              + "  ".join(f"{k}={times[k] * 1e3:9.2f} ms" for k in names)
              + f"  speedup={speedup:5.2f}x  max|diff|={agree:.1e}")
    if args.csv:
        header = ["case", "supports", "compiled_ms", "python_ms", "speedup", "max_abs_diff"]
        with open(args.csv, "w", newline="\n") as fh:
            fh.write(format_csv(header, rows))


if __name__ == "__main__":
    main()
