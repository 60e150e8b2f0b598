"""Compare the compiled and pure-Python acyclic-partition kernels.

    python benchmarks/bench_kernels.py [--repeat 3] [--heavy]

Times the exact solver (``kernels.dichromatic``) under both backends and
checks that they agree.  Pair digraphs of the usual posets are settled by
the bounds almost at once; oriented random graphs (no 2-cycles, so the
clique bound is 1) make the search prove infeasibility and show the gap.
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from coverdim import kernels
from coverdim.dimension import critical_pairs, inc_between, inc_minmax_pairs, pair_digraph
from coverdim.generators import kelly, random_bipartite, standard_example


def _digraph(p, pairs):
    g = pair_digraph(p, pairs[:64])
    return list(g.out), list(g.inn)


def oriented(n, prob, seed):
    rng = random.Random(seed)
    out, inn = [0] * n, [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < prob:
                a, b = (u, v) if rng.random() < 0.5 else (v, u)
                out[a] |= 1 << b
                inn[b] |= 1 << a
    return out, inn


def instances(heavy):
    for d in (5, 7):
        p = standard_example(d)
        yield f"S{d} critical", _digraph(p, critical_pairs(p))
    yield "kelly5 min-max", _digraph(kelly(5), inc_minmax_pairs(kelly(5)))
    p = random_bipartite(8, 8, 0.75, 2)
    yield "bipartite16", _digraph(p, inc_between(p, p.minimals(), p.maximals()))
    for n, prob in ((28, 0.8), (32, 0.8), (36, 0.7), (40, 0.7), (44, 0.7)):
        yield f"oriented n={n} p={prob}", oriented(n, prob, n * 100 + int(prob * 100))
    if heavy:
        for n in (36, 40):
            yield f"oriented n={n} p=0.9", oriented(n, 0.9, n * 100 + 90)


def best_of(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--heavy", action="store_true", help="add instances taking ~20 s each in pure Python")
    args = ap.parse_args(argv)
    if kernels._compiled is None:
        print("compiled kernels unavailable; build with `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1

    print(f"{'instance':<22}{'verts':>6}{'chi':>5}{'python s':>11}{'cython s':>11}{'speedup':>9}")
    total_py = total_cy = 0.0
    for name, (out, inn) in instances(args.heavy):
        t_py, r_py = best_of(lambda: kernels.dichromatic(out, inn, "python"), args.repeat)
        t_cy, r_cy = best_of(lambda: kernels.dichromatic(out, inn, "cython"), args.repeat)
        if r_py[0] != r_cy[0]:
            raise SystemExit(f"{name}: backends disagree ({r_py[0]} vs {r_cy[0]})")
        total_py += t_py
        total_cy += t_cy
        print(f"{name:<22}{len(out):>6}{r_py[0]:>5}{t_py:>11.4f}{t_cy:>11.4f}{t_py / max(t_cy, 1e-9):>8.1f}x")
    print(f"{'total':<33}{total_py:>11.4f}{total_cy:>11.4f}{total_py / max(total_cy, 1e-9):>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
