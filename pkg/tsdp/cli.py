# (C) Copyright 2024 Enthought, Inc., Austin, TX
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license. The license
# is also available online at http://www.enthought.com/licenses/BSD.txt
#
# Thanks for using Enthought open source!

"""
Command-line interface: ``tsdp gen``, ``tsdp solve``, ``tsdp bench`` and
``tsdp check``.

Reports are written to standard output as JSON; log messages go to
standard error.
"""
import argparse
import json
import logging
import sys
import time

import numpy as np

from traits.api import TraitError

from tsdp.bench import (
    BenchOptions,
    check_method,
    format_table,
    make_backend,
    run_bench,
    solve_with_method,
)
from tsdp.closed_form import lower_bound_l1, ratio_bounds, upper_bound_l1
from tsdp.distribution import Distribution
from tsdp.exceptions import Infeasible, TsdpError
from tsdp.generators import gen_queue_matrix, target_from_recipe
from tsdp.lp_formulation import sparsity_bound
from tsdp.markov import StationaryOptions, stationary_distribution
from tsdp.matrix_io import read_matrix_market, read_vector
from tsdp.matrix_io import write_matrix_market
from tsdp.quality import quality_report
from tsdp.support_set import matrix_keys, support, SupportSet
from tsdp.tolerances import TOL_FEAS

logger = logging.getLogger(__name__)

# Exit codes ##################################################################

#: Success.
EXIT_OK = 0

#: A domain error, such as an invalid matrix.
EXIT_ERROR = 1

#: Invalid command-line usage.
EXIT_USAGE = 2

#: The requested problem is infeasible.
EXIT_INFEASIBLE = 3

#: ``tsdp check`` found a violated condition.
EXIT_VERIFICATION = 4

#: Tolerance on the row sums of Δ used by ``tsdp check``.
CHECK_ROWSUM_TOL = TOL_FEAS

#: Tolerance on the stationarity residual used by ``tsdp check``.
CHECK_STATIONARITY_TOL = 1e-9

#: Tolerance on negative entries of G + Δ used by ``tsdp check``.
CHECK_NEGATIVE_TOL = TOL_FEAS


class UsageError(Exception):
    """
    Raised for invalid flag values that argparse can't detect.
    """


def cmd_gen(args):
    """
    Generate a queue-like matrix and write it in Matrix Market format.
    """
    G = gen_queue_matrix(args.n, args.k, args.seed)
    write_matrix_market(
        args.out, G.tocsr(), comment=f"queue matrix n={args.n} k={args.k}"
    )
    _emit(
        {
            "n": G.n,
            "k": args.k,
            "seed": args.seed,
            "nnz": G.nnz,
            "out": args.out,
            "args": _flags(args),
        }
    )
    return EXIT_OK


def cmd_solve(args):
    """
    Solve a target stationary distribution problem with one method.
    """
    G = read_matrix_market(args.g, stochastic=True)
    mu_hat = _target(args.mu_hat, G)
    omega = _omega(args.omega, G)
    label = _method_label(args)
    backend = make_backend(args.backend)

    start = time.perf_counter()
    delta, details = solve_with_method(
        label, G, mu_hat, backend=backend, omega=omega
    )
    elapsed = 1000.0 * (time.perf_counter() - start)

    trace = details.get("trace")
    report = quality_report(
        G,
        delta,
        mu_hat,
        method=label,
        time_ms=elapsed,
        rounds=None if trace is None else trace.num_rounds,
    ).to_dict()
    warnings = []
    if "diagnostics" in details:
        diagnostics = details["diagnostics"]
        report["reversibility_residual"] = diagnostics.reversibility_residual
        if not diagnostics.irreducible:
            warnings.append("reducible")
            logger.warning(
                "the perturbed matrix is reducible: the target is "
                "stationary but not the unique stationary distribution"
            )
    if trace is not None:
        report["trace"] = trace.to_dict()
    report["warnings"] = warnings
    report["args"] = _flags(args)

    if args.out:
        write_matrix_market(
            args.out, delta.tocsr(), comment=f"perturbation by {label}"
        )
    _emit(report)
    return EXIT_OK


def cmd_bench(args):
    """
    Run the benchmark grid and print a table of averages.
    """
    options = BenchOptions(
        n=args.n,
        k_list=_int_list(args.k_list),
        trials=args.trials,
        methods=_str_list(args.methods),
        target=args.target,
        seed=args.seed,
        graph=args.graph or "",
        weighted=args.weighted,
        symmetrize=args.symmetrize,
        largest_scc=args.largest_scc,
        epsilons=_float_list(args.epsilon),
        backend=args.backend,
        parallelism="process" if args.processes else "thread",
        workers=args.workers,
    )
    for label in options.methods:
        try:
            check_method(label)
        except ValueError as exception:
            raise UsageError(str(exception)) from None

    result = run_bench(options)
    print(format_table(result))
    if args.json:
        record = result.to_dict()
        record["args"] = _flags(args)
        with open(args.json, "w", encoding="utf-8") as stream:
            json.dump(record, stream, indent=2)
    return EXIT_OK


def cmd_check(args):
    """
    Verify a perturbation against a matrix and a target.
    """
    G = read_matrix_market(args.g, stochastic=True)
    mu_hat = _target(args.mu_hat, G)
    delta = read_matrix_market(args.delta_file)
    delta.eliminate_zeros()
    omega = _omega(args.omega, G)
    report = quality_report(G, delta, mu_hat, method="check").to_dict()

    bound = sparsity_bound(G, omega)
    inside = omega.contains_keys(matrix_keys(delta))
    checks = {
        "rowsum": report["residual_rowsum"] <= CHECK_ROWSUM_TOL,
        "stationarity": (
            report["residual_stationarity"] <= CHECK_STATIONARITY_TOL
        ),
        "nonnegative": report["min_entry"] >= -CHECK_NEGATIVE_TOL,
        "support": bool(np.all(inside)),
        "sparsity_bound": delta.nnz <= bound,
        "lower_bound": (
            report["delta_l1"]
            >= report["lower_bound"] - 1e-9 * max(1.0, report["lower_bound"])
        ),
    }
    report["sparsity_bound"] = bound
    try:
        mu = stationary_distribution(G, StationaryOptions(fallback="direct"))
    except TsdpError as exception:
        logger.warning(f"no upper bound: {exception}")
        report["upper_bound"] = None
    else:
        report["upper_bound"] = upper_bound_l1(G, ratio_bounds(mu, mu_hat))
    report["checks"] = checks
    report["passed"] = all(checks.values())
    report["args"] = _flags(args)
    _emit(report)
    for name, passed in checks.items():
        if not passed:
            logger.error(f"check failed: {name}")
    return EXIT_OK if report["passed"] else EXIT_VERIFICATION


def build_parser():
    """
    Create the argument parser for the ``tsdp`` command.
    """
    parser = argparse.ArgumentParser(
        prog="tsdp",
        description=(
            "Perturb a stochastic matrix so that it has a given "
            "stationary distribution."
        ),
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="log progress; repeat for debugging output",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("gen", help="generate a queue-like matrix")
    gen.add_argument("--n", type=int, required=True, help="dimension")
    gen.add_argument(
        "--k", type=int, required=True, help="neighbours on each side"
    )
    gen.add_argument("--seed", type=int, default=0, help="random seed")
    gen.add_argument("--out", required=True, help="output .mtx file")
    gen.set_defaults(func=cmd_gen)

    solve = commands.add_parser("solve", help="solve one problem")
    solve.add_argument("--g", required=True, help="matrix .mtx file")
    _add_target_argument(solve)
    solve.add_argument(
        "--method",
        required=True,
        choices=["mh", "diag", "lp", "cg", "lp-gplusi", "lp-full"],
    )
    solve.add_argument(
        "--omega",
        default="full",
        help="support set: gplusi, full, or file:PATH (default: full)",
    )
    solve.add_argument(
        "--delta",
        type=float,
        default=1e-4,
        help="relative accuracy for cg (default: 1e-4)",
    )
    solve.add_argument("--out", help="output .mtx file for Δ")
    _add_backend_argument(solve)
    solve.set_defaults(func=cmd_solve)

    bench = commands.add_parser("bench", help="run a benchmark grid")
    bench.add_argument("--n", type=int, default=200)
    bench.add_argument("--k-list", default="2", help="e.g. 1,2,5")
    bench.add_argument("--trials", type=int, default=10)
    bench.add_argument(
        "--methods",
        default=",".join(["mh", "diag", "lp-gplusi", "cg:1e-4"]),
        help="comma-separated labels: mh, diag, lp-gplusi, lp-full, cg:δ",
    )
    bench.add_argument(
        "--target",
        default="power-step",
        help="target recipe for generated matrices (default: power-step)",
    )
    bench.add_argument(
        "--epsilon",
        default="0.01,0.1,0.5",
        help="mixing weights for --graph runs",
    )
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--graph", help="edge-list file to use instead")
    bench.add_argument("--weighted", action="store_true")
    bench.add_argument("--symmetrize", action="store_true")
    bench.add_argument("--largest-scc", action="store_true")
    bench.add_argument(
        "--workers", type=int, default=0, help="number of workers"
    )
    bench.add_argument(
        "--processes",
        action="store_true",
        help="run trials in processes rather than threads",
    )
    bench.add_argument("--json", help="also write the report to this file")
    _add_backend_argument(bench)
    bench.set_defaults(func=cmd_bench)

    check = commands.add_parser("check", help="verify a perturbation")
    check.add_argument("--g", required=True, help="matrix .mtx file")
    check.add_argument("--delta-file", required=True, help="Δ .mtx file")
    _add_target_argument(check)
    check.add_argument(
        "--omega",
        default="full",
        help="support set Δ should respect (default: full)",
    )
    check.set_defaults(func=cmd_check)
    return parser


def main(argv=None):
    """
    Entry point of the ``tsdp`` command.

    Returns
    -------
    status : int
        Process exit code.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(
        args.verbose, logging.DEBUG
    )
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (UsageError, TraitError) as exception:
        parser.print_usage(sys.stderr)
        print(f"tsdp: error: {exception}", file=sys.stderr)
        return EXIT_USAGE
    except Infeasible as exception:
        _emit(
            {
                "error": "Infeasible",
                "certificate": "phase-one infeasibility",
                "message": str(exception),
                "args": _flags(args),
            }
        )
        logger.error(f"infeasible: {exception}")
        return EXIT_INFEASIBLE
    except (TsdpError, OSError) as exception:
        logger.error(f"{type(exception).__name__}: {exception}")
        return EXIT_ERROR


# Private functions ###########################################################


def _add_target_argument(parser):
    parser.add_argument(
        "--mu-hat",
        required=True,
        help=(
            "target: a vector file, or a recipe power-step, mix:EPS or "
            "rankone:J,LAMBDA"
        ),
    )


def _add_backend_argument(parser):
    parser.add_argument(
        "--backend",
        choices=["simplex", "highs"],
        default="simplex",
        help="LP solver (default: simplex)",
    )


def _target(text, G):
    """
    Target distribution from a recipe or a vector file.
    """
    name = text.partition(":")[0]
    if name in {"power-step", "mix", "rankone"}:
        try:
            return target_from_recipe(text, G)
        except ValueError as exception:
            raise UsageError(str(exception)) from None
    return Distribution(read_vector(text))


def _omega(text, G):
    """
    Support set from "gplusi", "full" or "file:PATH". A file gives the
    support set as the pattern of a Matrix Market matrix.
    """
    if text == "full":
        return SupportSet.full(G.n)
    if text == "gplusi":
        return support(G, include_diagonal=True)
    if text.startswith("file:"):
        pattern = read_matrix_market(text[len("file:") :])
        if pattern.shape != (G.n, G.n):
            raise UsageError(
                f"support file has shape {pattern.shape}, "
                f"expected ({G.n}, {G.n})"
            )
        return SupportSet(G.n, keys=matrix_keys(pattern))
    raise UsageError(
        f"unrecognized support set {text!r}; expected gplusi, full or "
        "file:PATH"
    )


def _method_label(args):
    if args.method == "cg":
        if not 0.0 <= args.delta < 1.0:
            raise UsageError(f"--delta must lie in [0, 1), got {args.delta}")
        return f"cg:{args.delta!r}"
    if args.method == "lp":
        if args.omega == "gplusi":
            return "lp-gplusi"
        if args.omega.startswith("file:"):
            return "lp-file"
        return "lp-full"
    return args.method


def _flags(args):
    return {
        name: value for name, value in vars(args).items() if name != "func"
    }


def _emit(record):
    json.dump(record, sys.stdout, indent=2, default=_to_json)
    sys.stdout.write("\n")


def _to_json(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"can't serialize {type(value).__name__}")


def _int_list(text):
    try:
        return [int(item) for item in _str_list(text)]
    except ValueError:
        message = f"expected a list of integers, got {text!r}"
        raise UsageError(message) from None


def _float_list(text):
    try:
        return [float(item) for item in _str_list(text)]
    except ValueError:
        raise UsageError(f"expected a list of numbers, got {text!r}") from None


def _str_list(text):
    return [item.strip() for item in text.split(",") if item.strip()]
