"""Compare the compiled and pure-Python 3-sided query kernels.

    python3 benchmarks/bench_kernels.py [--n 20000] [--queries 20000]

Both backends answer the same random queries on the same structure; the
answers must agree, and the timings are printed side by side.
"""

import argparse
import random
import time

from dyncover import kernels
from dyncover.threesided import ThreeSidedRangeMin


def build(n, rnd):
    t = ThreeSidedRangeMin()
    for i in range(n):
        t.insert(i, rnd.random(), (rnd.random(), i))
    for i in rnd.sample(range(n), n // 5):
        t.delete(i)
    return t


def replay(t, queries):
    out = []
    for x0, a, b in queries:
        out.append(t.query_keys(x0, (a,), (b, float("inf")), False))
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--n", type=int, default=20000)
    ap.add_argument("--queries", type=int, default=20000)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)
    rnd = random.Random(args.seed)
    t = build(args.n, rnd)
    queries = []
    for _ in range(args.queries):
        a, b = sorted((rnd.random(), rnd.random()))
        queries.append((rnd.random(), a, b))
    results, timings = {}, {}
    backends = ["python"]
    try:
        kernels.use_backend("compiled")
        backends.append("compiled")
    except ImportError:
        print("compiled kernel not built; timing the Python kernel only")
    for name in backends:
        kernels.use_backend(name)
        start = time.perf_counter()
        results[name] = replay(t, queries)
        timings[name] = time.perf_counter() - start
    if len(results) == 2 and results["python"] != results["compiled"]:
        raise SystemExit("backends disagree")
    for name in backends:
        print(f"{name:9s} {timings[name]:.3f}s  {1e6 * timings[name] / args.queries:.1f} us/query")
    if len(backends) == 2:
        print(f"speedup {timings['python'] / timings['compiled']:.2f}x")


if __name__ == "__main__":
    main()
