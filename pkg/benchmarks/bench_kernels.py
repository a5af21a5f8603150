"""Compiled word kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N] [--length L]

Prints the best-of-N time per workload for each backend and the speedup.
"""

import argparse
import random
import sys
import timeit

from ncham.kernels import _fallback

try:
    from ncham.kernels import _core
except ImportError:
    _core = None


def _weyl_table(n):
    m = 2 * n
    c = [[0] * m for _ in range(m)]
    for i in range(n):
        c[n + i][i], c[i][n + i] = 1, -1  # p_i q_i -> q_i p_i + h
    return tuple(tuple(r) for r in c)


def workloads(length, seed=0):
    rng = random.Random(seed)
    ctab = _weyl_table(2)
    words = [tuple(rng.randrange(4) for _ in range(length)) for _ in range(20)]
    reversed_word = tuple([2] * (length // 2) + [0] * (length - length // 2))

    def random_words(mod):
        for w in words:
            mod.normal_order(w, ctab)

    def worst_case(mod):
        mod.normal_order(reversed_word, ctab)

    def leibniz(mod):
        for exps in [(3, 2, 4), (6, 6), (2, 2, 2, 2)]:
            mod.leibniz_terms(exps)

    return {"random words": random_words, "p^k q^k": worst_case, "leibniz terms": leibniz}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--length", type=int, default=12)
    args = ap.parse_args(argv)
    if _core is None:
        print("compiled core not built; run `pip install -e . --no-build-isolation` first", file=sys.stderr)
        return 1
    print(f"{'workload':<16}{'python':>12}{'compiled':>12}{'speedup':>10}")
    for name, fn in workloads(args.length).items():
        t_py = min(timeit.repeat(lambda: fn(_fallback), number=1, repeat=args.repeat))
        t_c = min(timeit.repeat(lambda: fn(_core), number=1, repeat=args.repeat))
        print(f"{name:<16}{t_py * 1e3:>10.2f}ms{t_c * 1e3:>10.2f}ms{t_py / t_c:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
