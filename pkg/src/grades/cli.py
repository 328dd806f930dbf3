"""Command-line front end: ``grades gen | rip | solve | bench``.

Exit codes: 0 success, 1 usage or validation error, 2 I/O error,
3 condition violated under ``--strict``.
"""
from __future__ import annotations

import argparse
import logging
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import io as gio
from .core import objective_value
from .errors import BudgetExceededError, GradesError
from .instances import Amplitude, gen_gaussian_matrix, gen_sparse_signal, make_instance
from .rip import (
    DEFAULT_BUDGET,
    check_convergence_condition,
    delta_from_bounds,
    exact_rip_bounds,
    reference_bound,
    sampled_rip_bounds,
)
from .solver import SolverConfig, Status, grades_solve

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_STRICT = 0, 1, 2, 3
REFERENCE_EPS = 1e-10
RECOVERY_TOL = 1e-5

log = logging.getLogger("grades")

BENCH_HEADER = [
    "seed", "provenance", "alpha", "beta", "condition_ok", "predicted_bound", "iterations",
    "bound_ok", "final_objective", "recovery_error", "wall_time_ms",
]


class UsageError(Exception):
    pass


class StrictFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _seed(text):
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _positive_float(text):
    v = float(text)
    if not v > 0 or not math.isfinite(v):
        raise argparse.ArgumentTypeError("must be a positive number")
    return v


def _build_instance(m, n, s, seed, amplitude, ensemble):
    if s > n:
        raise UsageError(f"s={s} exceeds n={n}")
    if ensemble == "identity":
        if m != n:
            raise UsageError("the identity ensemble needs m == n")
        phi = np.eye(n)
    else:
        phi = gen_gaussian_matrix(m, n, seed)
    truth = gen_sparse_signal(n, s, seed, amplitude)
    meta = {"ensemble": ensemble, "seed": seed, "amplitude": Amplitude(amplitude).value}
    return make_instance(phi, truth, s), meta


def _bounds_for(instance, level, mode, trials, seed, budget):
    if mode in ("exact", "auto"):
        try:
            return exact_rip_bounds(instance.phi, level, budget)
        except BudgetExceededError:
            if mode == "exact":
                raise
    return sampled_rip_bounds(instance.phi, level, trials, seed)


# -- gen ---------------------------------------------------------------------

def cmd_gen(args):
    instance, meta = _build_instance(args.m, args.n, args.s, args.seed, args.amplitude, args.ensemble)
    gio.write_instance(args.out, instance, meta)
    print(f"wrote {args.out}: m={instance.m} n={instance.n} s={instance.sparsity}")
    return EXIT_OK


# -- rip ---------------------------------------------------------------------

def cmd_rip(args):
    instance = gio.read_instance(args.instance)
    level = args.level
    if level is None:
        if instance.sparsity is None:
            raise UsageError("instance has no sparsity; pass --level")
        level = 2 * instance.sparsity
    if level > instance.n:
        raise UsageError(f"level {level} exceeds n={instance.n}")
    if args.mode == "exact":
        bounds = exact_rip_bounds(instance.phi, level, args.budget)
    else:
        bounds = sampled_rip_bounds(instance.phi, level, args.trials, args.seed)
    y_norm_sq = float(instance.y @ instance.y)
    ok = check_convergence_condition(bounds)
    gio.write_bounds(
        args.out,
        bounds,
        delta=delta_from_bounds(bounds),
        condition_ok=ok,
        reference_eps=args.eps_ref,
        y_norm_sq=y_norm_sq,
        predicted_iterations=reference_bound(y_norm_sq, args.eps_ref, bounds),
    )
    label = "exact" if bounds.certified else f"sampled ({args.trials} trials, inner estimate)"
    print(f"level {level} {label}: alpha={bounds.alpha:.6g} beta={bounds.beta:.6g} "
          f"delta={delta_from_bounds(bounds):.6g} condition_ok={str(ok).lower()}")
    return EXIT_OK


# -- solve -------------------------------------------------------------------

def cmd_solve(args):
    instance = gio.read_instance(args.instance)
    if instance.sparsity is None:
        raise UsageError("instance has no sparsity")
    s = instance.sparsity
    bounds = gio.read_bounds(args.bounds) if args.bounds else None
    if bounds is None and args.gamma is None:
        raise UsageError("no step parameter: run `grades rip` first and pass --bounds, or give --gamma")
    if bounds is not None and bounds.sparsity != 2 * s:
        raise UsageError(f"bounds are for level {bounds.sparsity}, this instance needs level {2 * s}")
    gamma = args.gamma if args.gamma is not None else bounds.beta
    config = SolverConfig(s, gamma, args.eps, args.max_iters, bounds)
    result = grades_solve(instance, config)

    err = None
    if instance.truth is not None:
        err = float(np.linalg.norm(result.x - instance.truth))
    if args.out:
        gio.write_result(args.out, result, gamma=gamma, eps=args.eps, recovery_error=err)
    if args.trace_out:
        gio.write_trace(args.trace_out, result.trace)

    if result.heuristic:
        mode = "heuristic (gamma not a certified beta; no guarantee)"
    elif result.status is Status.CONDITION_VIOLATED:
        mode = "certified bounds, but beta >= 2*alpha (no guarantee)"
    else:
        mode = "certified"
    print(f"status: {result.status.value}")
    print(f"mode: {mode}")
    print(f"iterations: {result.iterations}")
    if result.predicted_bound is not None:
        print(f"predicted bound: {result.predicted_bound}")
    print(f"final objective: {result.final_objective:.6e}")
    if err is not None:
        print(f"recovery error: {err:.6e}")
    if args.strict and result.status is Status.CONDITION_VIOLATED:
        raise StrictFailure("beta >= 2*alpha: convergence condition violated")
    return EXIT_OK


# -- bench -------------------------------------------------------------------

def bench_row(seed, m, n, s, eps, mode, trials, budget, ensemble, timing=True):
    """Generate, bound, solve and score one seeded instance; returns a CSV row."""
    t0 = time.perf_counter()
    instance, _ = _build_instance(m, n, s, seed, Amplitude.STANDARD_NORMAL, ensemble)
    bounds = _bounds_for(instance, 2 * s, mode, trials, seed, budget)
    result = grades_solve(instance, SolverConfig.from_bounds(bounds, eps))
    elapsed = (time.perf_counter() - t0) * 1e3
    err = float(np.linalg.norm(result.x - instance.truth))
    ok = check_convergence_condition(bounds)
    predicted = result.predicted_bound
    return [
        seed,
        "exact" if bounds.certified else "sampled",
        bounds.alpha,
        bounds.beta,
        ok,
        predicted,
        result.iterations,
        None if predicted is None else result.iterations <= predicted,
        result.final_objective,
        err,
        round(elapsed, 3) if timing else None,
    ]


def run_bench(m, n, s, seeds, eps, mode="auto", trials=2000, budget=DEFAULT_BUDGET,
              ensemble="gaussian", workers=1, timing=True):
    """Rows for every seed, sorted by seed whatever the worker count."""
    jobs = [(seed, m, n, s, eps, mode, trials, budget, ensemble, timing) for seed in seeds]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(bench_row, *zip(*jobs)))
    else:
        rows = [bench_row(*job) for job in jobs]
    return sorted(rows, key=lambda r: r[0])


def cmd_bench(args):
    if args.s > args.n:
        raise UsageError(f"s={args.s} exceeds n={args.n}")
    seeds = range(args.seed_start, args.seed_start + args.num_seeds)
    rows = run_bench(args.m, args.n, args.s, seeds, args.eps, args.mode, args.trials,
                     args.budget, args.ensemble, args.workers, not args.no_timing)
    gio.write_csv(args.out_csv, BENCH_HEADER, rows)
    col = {name: i for i, name in enumerate(BENCH_HEADER)}
    recovered = sum(r[col["recovery_error"]] <= RECOVERY_TOL for r in rows)
    certified = [r for r in rows if r[col["bound_ok"]] is not None]
    print(f"recovery rate: {recovered}/{len(rows)} = {recovered / len(rows):.3f} "
          f"(error <= {RECOVERY_TOL:g})")
    print(f"certified rows: {len(certified)}, within predicted bound: "
          f"{sum(r[col['bound_ok']] for r in certified)}")
    if any(r[col["bound_ok"]] is False for r in certified):
        print("WARNING: a certified run exceeded its predicted bound", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


# -- entry point ---------------------------------------------------------------

def build_parser():
    p = _Parser(prog="grades", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a random instance file")
    g.add_argument("--m", type=_positive_int, required=True, help="number of measurements")
    g.add_argument("--n", type=_positive_int, required=True, help="signal length")
    g.add_argument("--s", type=_positive_int, required=True, help="sparsity of the true signal")
    g.add_argument("--seed", type=_seed, default=0)
    g.add_argument("--amplitude", choices=[a.value for a in Amplitude],
                   default=Amplitude.STANDARD_NORMAL.value)
    g.add_argument("--ensemble", choices=["gaussian", "identity"], default="gaussian")
    g.add_argument("--out", required=True, help="instance JSON path")
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("rip", help="compute (alpha, beta) bounds for an instance matrix")
    r.add_argument("instance", help="instance JSON path")
    r.add_argument("--level", type=_positive_int, help="sparsity level (default 2s)")
    r.add_argument("--mode", choices=["exact", "sampled"], default="exact")
    r.add_argument("--trials", type=_positive_int, default=2000)
    r.add_argument("--seed", type=_seed, default=0)
    r.add_argument("--budget", type=_positive_int, default=DEFAULT_BUDGET,
                   help="maximum supports to enumerate in exact mode")
    r.add_argument("--eps-ref", type=_positive_float, default=REFERENCE_EPS,
                   help="target objective for the predicted iteration count")
    r.add_argument("--out", required=True, help="bounds JSON path")
    r.set_defaults(func=cmd_rip)

    v = sub.add_parser("solve", help="run GraDes on an instance")
    v.add_argument("instance", help="instance JSON path")
    v.add_argument("--bounds", help="bounds JSON from `grades rip` at level 2s")
    v.add_argument("--gamma", type=_positive_float, help="override the step parameter")
    v.add_argument("--eps", type=_positive_float, default=REFERENCE_EPS)
    v.add_argument("--max-iters", type=_positive_int)
    v.add_argument("--trace-out", help="CSV path for the objective trace")
    v.add_argument("--out", help="result JSON path")
    v.add_argument("--strict", action="store_true",
                   help="exit 3 if the bounds violate beta < 2*alpha")
    v.set_defaults(func=cmd_solve)

    b = sub.add_parser("bench", help="sweep seeds: generate, bound, solve, tabulate")
    b.add_argument("--m", type=_positive_int, required=True)
    b.add_argument("--n", type=_positive_int, required=True)
    b.add_argument("--s", type=_positive_int, required=True)
    b.add_argument("--num-seeds", type=_positive_int, default=20)
    b.add_argument("--seed-start", type=_seed, default=0)
    b.add_argument("--eps", type=_positive_float, default=REFERENCE_EPS)
    b.add_argument("--mode", choices=["auto", "exact", "sampled"], default="auto",
                   help="auto: exact when within budget, else sampled")
    b.add_argument("--trials", type=_positive_int, default=2000)
    b.add_argument("--budget", type=_positive_int, default=DEFAULT_BUDGET)
    b.add_argument("--ensemble", choices=["gaussian", "identity"], default="gaussian")
    b.add_argument("--workers", type=_positive_int, default=1)
    b.add_argument("--no-timing", action="store_true",
                   help="leave wall_time_ms empty so the CSV is byte-reproducible")
    b.add_argument("--out-csv", required=True)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except StrictFailure as exc:
        print(f"grades: {exc}", file=sys.stderr)
        return EXIT_STRICT
    except (UsageError, BudgetExceededError) as exc:
        print(f"grades {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"grades {args.command}: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except GradesError as exc:
        print(f"grades {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
