"""Command-line harness: replay traces through an engine, check them, report CSV.

    dyncover run TRACE --problem interval-sc --engine bootstrap --check-oracle
    dyncover generate --kind uniform --problem quadrant-sc --n 200 --ops 2000 -o t.txt
    dyncover scale --problem interval-sc --depth 2 --report scaling.csv

Exit codes: 0 all enabled checks passed, 1 a check failed, 2 bad input or
usage, 3 the engine raised while replaying.
"""

from __future__ import annotations

import argparse
import csv
import math
import statistics
import sys
import time
from dataclasses import dataclass, field

from . import kernels
from .boot_interval import BootIntervalSetCover
from .boot_quadrant import OS_ADD, OS_MU, OS_MULT, BootQuadrantSetCover
from .core import NO_COVER, IdError, ProblemInstance, TooLarge, UnsupportedUpdate
from .instrument import OPS
from .localmod import LocalHittingSetEngine, PartialQuadSCEngine
from .oracle import (exact_interval_opt, exact_opt_bruteforce, interval_feasible,
                     interval_is_solution, is_feasible, is_solution)
from .reductions import quadrant_hs_engine, unitsq_hs_engine, unitsq_sc_engine
from .static_solvers import NaiveIntervalHittingSet, NaiveIntervalSetCover, NaiveQuadrantSetCover
from .trace import KINDS, PROBLEMS, ParseError, Query, generate, parse_trace, serialize_trace

ENGINES = ("bootstrap", "localmod", "naive")


class EngineUnavailable(ValueError):
    pass


def _seeded(engine, points, ranges):
    for pid, p in points.items():
        engine.insert_point(pid, p)
    for rid, r in ranges.items():
        engine.insert_range(rid, r)
    return engine


def quad_factory(engine, epsilon, depth):
    """Builds the per-cell / per-class quadrant set cover engines of the reductions."""
    if engine == "bootstrap":
        return lambda pts, rngs: BootQuadrantSetCover(epsilon, depth, pts, rngs)
    if engine == "localmod":
        return lambda pts, rngs: PartialQuadSCEngine(epsilon, pts, rngs)
    return lambda pts, rngs: _seeded(NaiveQuadrantSetCover(), pts, rngs)


def make_engine(problem, engine, epsilon=0.5, depth=1, points=None, ranges=None):
    points, ranges = points or {}, ranges or {}
    if problem == "interval-sc":
        if engine == "bootstrap":
            return BootIntervalSetCover(epsilon, depth, points, ranges)
        if engine == "naive":
            return _seeded(NaiveIntervalSetCover(), points, ranges)
    elif problem == "interval-hs":
        if engine == "localmod":
            return LocalHittingSetEngine(epsilon, points, ranges)
        if engine == "naive":
            return _seeded(NaiveIntervalHittingSet(), points, ranges)
    elif problem == "quadrant-sc":
        if engine == "bootstrap":
            return BootQuadrantSetCover(epsilon, depth, points, ranges)
        if engine == "localmod":
            return PartialQuadSCEngine(epsilon, points, ranges)
        if engine == "naive":
            return _seeded(NaiveQuadrantSetCover(), points, ranges)
    elif problem in ("quadrant-hs", "unitsq-sc", "unitsq-hs"):
        fac = quad_factory(engine, epsilon, depth)
        full = engine != "localmod"
        if problem == "quadrant-hs":
            return quadrant_hs_engine(fac, points, ranges, dynamic_points=full)
        if problem == "unitsq-sc":
            return unitsq_sc_engine(fac, points, ranges, dynamic_ranges=full)
        return unitsq_hs_engine(fac, points, ranges, dynamic_points=full)
    else:
        raise EngineUnavailable(f"unknown problem {problem!r}")
    raise EngineUnavailable(f"no {engine} engine for {problem}")


def size_bound(problem, engine, epsilon, opt):
    """Largest solution size the engine may return when the optimum is opt."""
    if problem.startswith("interval"):
        return opt if engine == "naive" else (1 + epsilon) * opt
    if problem == "quadrant-sc":
        if engine == "naive":
            return OS_MULT * opt + OS_ADD
        if engine == "bootstrap":
            return (OS_MULT + epsilon) * opt + OS_ADD
        return (OS_MU + epsilon) * opt
    # each reduction loses a factor four over a multiplicative inner ratio
    inner = OS_MU if engine == "naive" else OS_MU + epsilon
    return 4 * inner * opt


def kind_of(problem):
    return "hitting" if problem.endswith("-hs") else "cover"


def is_1d(instance):
    return all(not isinstance(p, tuple) for p in instance.points.values()) and \
        all(hasattr(r, "left") for r in instance.ranges.values())


def oracle_opt(instance):
    """Exact optimum, NO_COVER, or None when the instance is too large to enumerate."""
    if is_1d(instance):
        return exact_interval_opt(instance)
    try:
        return exact_opt_bruteforce(instance)
    except TooLarge:
        return None


@dataclass
class Checkpoint:
    op_index: int
    n: int
    size: int | None
    feasible: bool
    opt: int | None = None
    ratio: float | None = None
    ok: bool = True
    seconds: float = 0.0
    elementary_ops: int = 0
    rebuilds: int = 0


@dataclass
class RunReport:
    problem: str
    engine: str
    checkpoints: list = field(default_factory=list)
    updates: int = 0
    seconds: float = 0.0
    elementary_ops: int = 0
    rebuilds: int = 0
    violations: list = field(default_factory=list)
    exponent: float | None = None

    @property
    def ok(self):
        return not self.violations

    def write_csv(self, path):
        cols = ["op_index", "n", "size", "feasible", "opt", "ratio", "ok", "seconds",
                "elementary_ops", "rebuilds"]
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(cols)
            for c in self.checkpoints:
                w.writerow(["" if getattr(c, k) is None else getattr(c, k) for k in cols])


def _rebuild_count(engine):
    return getattr(engine, "rebuilds", 0) + getattr(engine, "recomputes", 0)


def split_initial(trace):
    """Updates before the first query seed the engine's construction."""
    for i, cmd in enumerate(trace.commands):
        if isinstance(cmd, Query):
            return trace.commands[:i], trace.commands[i:]
    return trace.commands, []


def run(trace, problem, engine_name, epsilon=0.5, depth=1, check_oracle=False,
        on_query=None) -> RunReport:
    """Replay the trace; ``on_query(index, engine, view)`` sees every snapshot."""
    report = RunReport(problem, engine_name)
    instance = ProblemInstance(kind_of(problem))
    head, rest = split_initial(trace)
    for cmd in head:
        instance.apply(cmd)
    OPS.reset()
    t0 = time.perf_counter()
    engine = make_engine(problem, engine_name, epsilon, depth,
                         dict(instance.points), dict(instance.ranges))
    last_t, last_ops = t0, OPS.count
    for k, cmd in enumerate(rest, len(head)):
        if isinstance(cmd, Query):
            view = engine.solution()
            now = time.perf_counter()
            cp = Checkpoint(k, len(instance), None if view is NO_COVER else view.size(),
                            view is not NO_COVER, seconds=now - last_t,
                            elementary_ops=OPS.count - last_ops, rebuilds=_rebuild_count(engine))
            if on_query is not None:
                on_query(k, engine, view)
            if check_oracle:
                _check(cp, instance, view, problem, engine_name, epsilon, report)
            report.checkpoints.append(cp)
            last_t, last_ops = time.perf_counter(), OPS.count
            continue
        instance.apply(cmd)
        engine.apply(cmd)
        report.updates += 1
    report.seconds = time.perf_counter() - t0
    report.elementary_ops = OPS.count
    report.rebuilds = _rebuild_count(engine)
    return report


def _check(cp, instance, view, problem, engine_name, epsilon, report):
    one_d = is_1d(instance)
    feasible = interval_feasible(instance) if one_d else is_feasible(instance)
    if feasible != cp.feasible:
        cp.ok = False
        report.violations.append((cp.op_index, f"feasibility {cp.feasible} vs oracle {feasible}"))
        return
    if not feasible:
        return
    valid = interval_is_solution if one_d else is_solution
    if not valid(instance, view.counts()):
        cp.ok = False
        report.violations.append((cp.op_index, "reported solution is not feasible"))
        return
    opt = oracle_opt(instance)
    if opt is None:
        return
    cp.opt = opt
    cp.ratio = cp.size / opt if opt else (0.0 if cp.size == 0 else math.inf)
    if cp.size > size_bound(problem, engine_name, epsilon, opt) + 1e-9:
        cp.ok = False
        report.violations.append((cp.op_index, f"size {cp.size} exceeds bound at opt {opt}"))


def fit_exponent(ns, costs):
    """Least-squares slope of log(cost) against log(n)."""
    pairs = [(math.log(n), math.log(c)) for n, c in zip(ns, costs) if c > 0]
    if len(pairs) < 2:
        return None
    xs, ys = zip(*pairs)
    return statistics.linear_regression(xs, ys).slope


def scaling(problem, engine_name, epsilon, depth, exps, seed=0, ops=None):
    """Amortized elementary operations per update over sliding-window traces of size 2^e."""
    rows = []
    for e in exps:
        n = 2 ** e
        count = ops or max(2000, n // 4)
        # one query after the seeding block and one at the end, so lazy
        # solution work is charged once rather than per update
        tr = generate("sliding-window", problem, n, count, seed=seed, query_every=0)
        tr.commands.append(Query())
        rep = run(tr, problem, engine_name, epsilon, depth)
        upd = max(1, rep.updates)
        last = rep.checkpoints[-1]
        rows.append((n, upd, last.elementary_ops / upd, last.seconds / upd))
    return rows, fit_exponent([r[0] for r in rows], [r[2] for r in rows])


SCALE_TARGETS = {"interval-sc": (2, range(10, 16), 0.48), "quadrant-sc": (1, range(10, 15), 0.85)}


def _load(args):
    if args.generate:
        if not args.problem:
            raise ParseError("--generate needs --problem", 0)
        return generate(args.generate, args.problem, args.n, args.ops, args.seed)
    if args.trace is None:
        raise ParseError("give a trace file or --generate", 0)
    if args.trace == "-":
        return parse_trace(sys.stdin.read())
    with open(args.trace, encoding="utf-8") as fh:
        return parse_trace(fh.read())


def _cmd_run(args):
    try:
        trace = _load(args)
    except (ParseError, IdError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    problem = args.problem or trace.problem
    if problem is None:
        print("error: --problem is required for traces without a problem header", file=sys.stderr)
        return 2
    OPS.reset()

    def show(k, engine, view):
        if args.report_full and view is not NO_COVER:
            ids = " ".join(str(e) for e in sorted(view.report()))
            print(f"Q@{k}: {ids}")

    try:
        report = run(trace, problem, args.engine, args.epsilon, args.depth,
                     args.check_oracle, show)
    except EngineUnavailable as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (UnsupportedUpdate, IdError) as err:
        print(f"error: engine rejected an update: {err}", file=sys.stderr)
        return 3
    if args.report:
        report.write_csv(args.report)
    per = report.seconds / max(report.updates, 1)
    print(f"problem={problem} engine={args.engine} backend={kernels.BACKEND} "
          f"updates={report.updates} queries={len(report.checkpoints)} "
          f"rebuilds={report.rebuilds} sec_per_update={per:.3g}")
    if args.count_ops:
        print(f"elementary_ops={report.elementary_ops} "
              f"per_update={report.elementary_ops / max(report.updates, 1):.3g}")
    if args.check_oracle:
        for idx, msg in report.violations[:20]:
            print(f"violation at command {idx}: {msg}", file=sys.stderr)
        print(f"oracle checks: {'pass' if report.ok else 'FAIL'} "
              f"({len(report.violations)} violations)")
    return 0 if report.ok else 1


def _cmd_generate(args):
    tr = generate(args.kind, args.problem, args.n, args.ops, args.seed,
                  query_every=args.query_every, partial=args.partial)
    text = serialize_trace(tr)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


def _cmd_scale(args):
    depth, exps, limit = SCALE_TARGETS.get(args.problem, (args.depth, range(10, 14), None))
    if args.depth is not None:
        depth = args.depth
    if args.max_exp is not None:
        exps = range(exps.start, args.max_exp + 1)
    rows, slope = scaling(args.problem, "bootstrap", args.epsilon, depth, exps, args.seed)
    if args.report:
        with open(args.report, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["n", "updates", "elementary_ops_per_update", "seconds_per_update"])
            w.writerows(rows)
            w.writerow(["exponent", "", "" if slope is None else f"{slope:.4f}", ""])
    for n, upd, per, secs in rows:
        print(f"n={n} updates={upd} ops_per_update={per:.1f} sec_per_update={secs:.3g}")
    print(f"fitted exponent: {slope if slope is None else round(slope, 4)}")
    if limit is not None and slope is not None and slope > limit:
        print(f"warning: exponent {slope:.3f} above target {limit}", file=sys.stderr)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="dyncover", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    r = sub.add_parser("run", help="replay a trace file ('-' for stdin) or a generated one")
    r.add_argument("trace", nargs="?")
    r.add_argument("--generate", choices=KINDS, help="replay a generated trace instead")
    r.add_argument("--n", type=int, default=100)
    r.add_argument("--ops", type=int, default=1000)
    r.add_argument("--problem", choices=PROBLEMS)
    r.add_argument("--engine", choices=ENGINES, default="bootstrap")
    r.add_argument("--epsilon", type=float, default=0.5)
    r.add_argument("--depth", type=int, default=1)
    r.add_argument("--seed", type=int, default=0, help="generator seed with --generate")
    r.add_argument("--check-oracle", action="store_true")
    r.add_argument("--report", metavar="PATH.csv")
    r.add_argument("--report-full", action="store_true", help="print the multiset at each Q")
    r.add_argument("--count-ops", action="store_true")
    r.set_defaults(func=_cmd_run)

    g = sub.add_parser("generate", help="write a seeded trace")
    g.add_argument("--kind", choices=KINDS, default="uniform")
    g.add_argument("--problem", choices=PROBLEMS, required=True)
    g.add_argument("--n", type=int, default=100)
    g.add_argument("--ops", type=int, default=1000)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--query-every", type=int, default=1)
    g.add_argument("--partial", action="store_true",
                   help="keep ranges (set cover) or points (hitting set) fixed")
    g.add_argument("-o", "--output")
    g.set_defaults(func=_cmd_generate)

    s = sub.add_parser("scale", help="fit the amortized cost exponent")
    s.add_argument("--problem", choices=("interval-sc", "quadrant-sc"), default="interval-sc")
    s.add_argument("--epsilon", type=float, default=0.5)
    s.add_argument("--depth", type=int)
    s.add_argument("--max-exp", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--report", metavar="PATH.csv")
    s.set_defaults(func=_cmd_scale)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
