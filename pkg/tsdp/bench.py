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
Benchmark harness: runs every method on a grid of random queue-like
matrices (or on one graph), averages the quality measures per cell, and
audits the expected ordering of objectives.
"""
import logging
import math
import time

from traits.api import (
    Bool,
    Dict,
    Enum,
    Float,
    HasStrictTraits,
    Instance,
    Int,
    List,
    Property,
    Range,
    Str,
)

from tsdp.closed_form import diagonal_solution
from tsdp.colgen import ColGenOptions, column_generate
from tsdp.exception_handling import failure_record, marshal_exception
from tsdp.exceptions import TsdpError
from tsdp.generators import gen_queue_matrix, target_from_recipe
from tsdp.highs_backend import HighsBackend
from tsdp.lp_formulation import solve_tsdp_lp
from tsdp.markov import StationaryOptions, stationary_distribution
from tsdp.matrix_io import read_edge_list
from tsdp.metropolis import metropolis_hastings
from tsdp.parallel_context import (
    MultiprocessingContext,
    MultithreadingContext,
)
from tsdp.quality import quality_report
from tsdp.revised_simplex import RevisedSimplexBackend
from tsdp.support_set import support, SupportSet
from tsdp.trial_executor import TrialExecutor
from tsdp.trial_states import COMPLETED

logger = logging.getLogger(__name__)

#: Methods run by default.
DEFAULT_METHODS = ["mh", "diag", "lp-gplusi", "cg:1e-4"]

#: Relative slack allowed when auditing the ordering of objectives.
CHAIN_TOL = 1e-9

#: Expected range of the mean sparsity of Metropolis-Hastings on queue
#: matrices.
MH_SPARSITY_RANGE = (0.5, 0.65)

#: Rounds column generation with δ = 1e-2 is expected to stay within.
COLGEN_ROUNDS_AT_1E2 = 3


def make_backend(name):
    """
    LP backend for a short backend name: "simplex" or "highs".
    """
    if name == "simplex":
        return RevisedSimplexBackend()
    if name == "highs":
        return HighsBackend()
    raise ValueError(f"unknown backend {name!r}")


def check_method(label, with_omega=False):
    """
    Validate a method label, raising ValueError if it is unknown.

    Valid labels are "mh", "diag", "lp-gplusi", "lp-full" and "cg:DELTA".
    "lp-file", the LP on a support set read from a file, is valid only
    when ``with_omega`` is true.
    """
    if label in {"mh", "diag", "lp-gplusi", "lp-full"}:
        return label
    if label == "lp-file":
        if not with_omega:
            raise ValueError("lp-file needs an explicit support set")
        return label
    if label.startswith("cg:"):
        delta = float(label[3:])
        if not 0.0 <= delta < 1.0:
            raise ValueError(f"cg accuracy must lie in [0, 1), got {delta}")
        return label
    raise ValueError(
        f"unknown method {label!r}; expected mh, diag, lp-gplusi, "
        "lp-full or cg:DELTA"
    )


def solve_with_method(label, G, mu_hat, backend=None, omega=None):
    """
    Run one named method.

    Parameters
    ----------
    label : str
        One of "mh", "diag", "lp-gplusi", "lp-full", "lp-file" or
        "cg:DELTA".
    G : SparseStochasticMatrix
    mu_hat : Distribution
    backend : ILpBackend, optional
        LP solver for the LP-based methods.
    omega : SupportSet, optional
        Support set for column generation, and for "lp-full" in place of
        the full set. Defaults to all positions. Required for "lp-file".

    Returns
    -------
    delta : Perturbation
    details : dict
        Method-specific extras: "trace" (column generation),
        "diagnostics" (Metropolis-Hastings) or "pivots" (plain LP).
    """
    check_method(label, with_omega=omega is not None)
    if backend is None:
        backend = RevisedSimplexBackend()
    if omega is None:
        omega = SupportSet.full(G.n)

    if label == "mh":
        delta, diagnostics = metropolis_hastings(G, mu_hat)
        return delta, {"diagnostics": diagnostics}
    if label == "diag":
        mu = stationary_distribution(G, StationaryOptions(fallback="direct"))
        return diagonal_solution(G, mu, mu_hat), {}
    if label.startswith("cg:"):
        options = ColGenOptions(delta=float(label[3:]))
        delta, trace = column_generate(
            G, mu_hat, omega, options=options, backend=backend
        )
        return delta, {"trace": trace}
    if label == "lp-gplusi":
        omega = support(G, include_diagonal=True)
    delta, solution = solve_tsdp_lp(G, mu_hat, omega, backend=backend)
    return delta, {"pivots": solution.pivots}


def audit_chain(objectives):
    """
    Check the expected ordering of objectives within one trial.

    Metropolis-Hastings and the diagonal solution are feasible for the
    LP on supp(G + I), and column generation starts from that LP, so
    mh ≥ lp-gplusi, diag ≥ lp-gplusi and lp-gplusi ≥ cg:δ for every δ.
    Column generation with a smaller δ runs the same rounds for longer,
    so cg:δ ≥ cg:δ' for δ > δ'. Nothing beats the LP on all positions,
    and cg:0 reaches it.

    Parameters
    ----------
    objectives : dict
        Map from method label to ‖Δ‖₁ for the methods that succeeded.

    Returns
    -------
    violations : list of str
        One description per violated inequality.
    """
    pairs = [("mh", "lp-gplusi"), ("diag", "lp-gplusi")]
    colgen = sorted(
        (label for label in objectives if label.startswith("cg:")),
        key=lambda label: float(label[3:]),
        reverse=True,
    )
    pairs += [("lp-gplusi", label) for label in colgen]
    pairs += list(zip(colgen, colgen[1:]))
    pairs += [(label, "lp-full") for label in objectives if label != "lp-full"]
    pairs += [("lp-full", label) for label in colgen if float(label[3:]) == 0]
    violations = []
    for larger, smaller in pairs:
        if larger not in objectives or smaller not in objectives:
            continue
        high, low = objectives[larger], objectives[smaller]
        if high < low - CHAIN_TOL * max(1.0, abs(low)):
            violations.append(
                f"{larger} ({high:.12g}) < {smaller} ({low:.12g})"
            )
    return violations


def run_trial(G, mu_hat, methods, backend_name):
    """
    Run every method on one instance.

    Returns
    -------
    outcome : dict
        "results" maps each method label to either a quality report
        dictionary or a failure record; "violations" lists ordering
        violations.
    """
    backend = make_backend(backend_name)
    results = {}
    objectives = {}
    for label in methods:
        start = time.perf_counter()
        try:
            delta, details = solve_with_method(label, G, mu_hat, backend)
        except TsdpError as exception:
            results[label] = failure_record(marshal_exception(exception))
            logger.info(f"{label} failed: {exception}")
            continue
        elapsed = 1000.0 * (time.perf_counter() - start)
        trace = details.get("trace")
        report = quality_report(
            G,
            delta,
            mu_hat,
            method=label,
            time_ms=elapsed,
            rounds=None if trace is None else trace.num_rounds,
        )
        results[label] = report.to_dict()
        objectives[label] = report.delta_l1
    violations = audit_chain(objectives)
    for violation in violations:
        logger.warning(f"objective ordering violated: {violation}")
    return {"results": results, "violations": violations}


def queue_trial(n, k, seed, target, methods, backend_name):
    """
    Generate a queue-like instance and run :func:`run_trial` on it.
    """
    G = gen_queue_matrix(n, k, seed)
    mu_hat = target_from_recipe(target, G)
    return run_trial(G, mu_hat, methods, backend_name)


def graph_trial(G, target, methods, backend_name):
    """
    Run :func:`run_trial` on a fixed matrix.
    """
    mu_hat = target_from_recipe(target, G)
    return run_trial(G, mu_hat, methods, backend_name)


class BenchOptions(HasStrictTraits):
    """
    Parameters of a benchmark run.
    """

    #: Dimension of the generated matrices.
    n = Range(low=2, value=200)

    #: Neighbourhood sizes, one group of cells each.
    k_list = List(Int(), [2])

    #: Number of random instances per group.
    trials = Range(low=0, value=10)

    #: Method labels to run.
    methods = List(Str(), DEFAULT_METHODS)

    #: Target recipe for generated matrices; see
    #: :func:`~.target_from_recipe`.
    target = Str("power-step")

    #: Seed of the first instance; trial t uses seed + t.
    seed = Int(0)

    #: Edge-list file to use instead of generated matrices.
    graph = Str()

    #: Read the third edge-list column as a weight.
    weighted = Bool(False)

    #: Symmetrize the graph.
    symmetrize = Bool(False)

    #: Keep only the largest strongly connected component of the graph.
    largest_scc = Bool(False)

    #: Mixing weights ε, one group of cells each, for graph runs.
    epsilons = List(Float(), [0.01, 0.1, 0.5])

    #: LP backend name.
    backend = Enum("simplex", "highs")

    #: Kind of parallelism for running trials.
    parallelism = Enum("thread", "process")

    #: Number of workers; zero lets the worker pool decide.
    workers = Range(low=0, value=0)

    def to_dict(self):
        """
        The options as a plain dictionary, for reports.
        """
        names = self.copyable_trait_names()
        return {name: getattr(self, name) for name in names}


class BenchCell(HasStrictTraits):
    """
    Averages of one method over the trials of one group.
    """

    #: Method label.
    method = Str()

    #: Group label, such as "k=2" or "eps=0.1".
    group = Str()

    #: Reports of the successful trials.
    reports = List(Dict())

    #: Failure records of the unsuccessful trials.
    failures = List(Dict())

    #: Mean relative objective, NaN if no trial succeeded.
    obj = Property(Float())

    #: Mean relative sparsity.
    spars = Property(Float())

    #: Mean solve time, in milliseconds.
    time_ms = Property(Float())

    def to_dict(self):
        return {
            "method": self.method,
            "group": self.group,
            "trials": len(self.reports),
            "obj": self.obj,
            "spars": self.spars,
            "time_ms": self.time_ms,
            "failures": [
                {key: record[key] for key in ("error", "message")}
                for record in self.failures
            ],
        }

    # Private methods #########################################################

    def _mean(self, key):
        if not self.reports:
            return math.nan
        return math.fsum(report[key] for report in self.reports) / len(
            self.reports
        )

    # Traits property getters #################################################

    def _get_obj(self):
        return self._mean("obj")

    def _get_spars(self):
        return self._mean("spars")

    def _get_time_ms(self):
        return self._mean("time_ms")


class BenchResult(HasStrictTraits):
    """
    Outcome of a benchmark run.
    """

    #: The options the run used.
    options = Instance(BenchOptions)

    #: One cell per (method, group), methods varying fastest.
    cells = List(Instance(BenchCell))

    #: Descriptions of objective-ordering violations, over all trials.
    violations = List(Str())

    #: Descriptions of expected trends across groups that don't hold.
    trend_warnings = List(Str())

    def to_dict(self):
        return {
            "options": self.options.to_dict(),
            "cells": [cell.to_dict() for cell in self.cells],
            "chain_violations": len(self.violations),
            "violations": list(self.violations),
            "trend_warnings": list(self.trend_warnings),
        }


def audit_trends(result):
    """
    Check the tendencies expected across the groups of a queue benchmark.

    The mean relative objective of "diag" and the mean sparsity of
    "lp-full" and "cg:0" should fall as k grows, the mean sparsity of
    "mh" should lie within :data:`MH_SPARSITY_RANGE`, and column
    generation with δ = 1e-2 should stop within
    :data:`COLGEN_ROUNDS_AT_1E2` rounds. These are observations rather
    than theorems, so violations are reported and never raised.

    Parameters
    ----------
    result : BenchResult

    Returns
    -------
    warnings : list of str
        One description per trend that doesn't hold.
    """
    by_group = {}
    for cell in result.cells:
        if cell.group.startswith("k=") and cell.reports:
            by_group.setdefault(int(cell.group[2:]), {})[cell.method] = cell
    ks = sorted(by_group)

    warnings = []
    for method, measure in [
        ("diag", "obj"),
        ("lp-full", "spars"),
        ("cg:0", "spars"),
    ]:
        series = [
            (k, getattr(by_group[k][method], measure))
            for k in ks
            if method in by_group[k]
        ]
        for (k0, before), (k1, after) in zip(series, series[1:]):
            if after > before:
                warnings.append(
                    f"{measure} of {method} rises from {before:.4g} at "
                    f"k={k0} to {after:.4g} at k={k1}"
                )

    low, high = MH_SPARSITY_RANGE
    for k in ks:
        cell = by_group[k].get("mh")
        if cell is not None and not low <= cell.spars <= high:
            warnings.append(
                f"spars of mh is {cell.spars:.4g} at k={k}, outside "
                f"[{low}, {high}]"
            )
        for method, cell in by_group[k].items():
            if not method.startswith("cg:") or float(method[3:]) != 1e-2:
                continue
            rounds = max(report["rounds"] for report in cell.reports)
            if rounds > COLGEN_ROUNDS_AT_1E2:
                warnings.append(
                    f"{method} took {rounds} rounds at k={k}, more than "
                    f"{COLGEN_ROUNDS_AT_1E2}"
                )
    return warnings


def run_bench(options, executor=None):
    """
    Run a benchmark.

    Parameters
    ----------
    options : BenchOptions
    executor : TrialExecutor, optional
        Executor to run trials on. If not given, one is created from the
        options and shut down afterwards.

    Returns
    -------
    result : BenchResult
    """
    for label in options.methods:
        check_method(label)

    own_executor = executor is None
    if own_executor:
        context = (
            MultiprocessingContext()
            if options.parallelism == "process"
            else MultithreadingContext()
        )
        executor = TrialExecutor(
            context=context, max_workers=options.workers or None
        )
        logger.info(f"running bench trials on {context.name} workers")

    submitted = []
    try:
        if options.graph:
            G = read_edge_list(
                options.graph,
                weighted=options.weighted,
                symmetrize=options.symmetrize,
                largest_scc=options.largest_scc,
            )
            for epsilon in options.epsilons:
                for _ in range(options.trials):
                    future = executor.submit(
                        graph_trial,
                        G,
                        f"mix:{epsilon!r}",
                        list(options.methods),
                        options.backend,
                    )
                    submitted.append((f"eps={epsilon!r}", future))
        else:
            for k in options.k_list:
                for trial in range(options.trials):
                    future = executor.submit(
                        queue_trial,
                        options.n,
                        k,
                        options.seed + trial,
                        options.target,
                        list(options.methods),
                        options.backend,
                    )
                    submitted.append((f"k={k}", future))
        executor.wait()
    finally:
        if own_executor:
            executor.shutdown()
            context.close()

    cells = {}
    for group, _ in submitted:
        for label in options.methods:
            if (label, group) not in cells:
                cells[label, group] = BenchCell(method=label, group=group)
    violations = []
    for group, future in submitted:
        if future.state == COMPLETED:
            outcome = future.result
            for label, record in outcome["results"].items():
                cell = cells[label, group]
                if "error" in record:
                    cell.failures.append(record)
                else:
                    cell.reports.append(record)
            violations.extend(outcome["violations"])
        else:
            record = failure_record(future.exception)
            logger.warning(f"trial in {group} failed: {record['message']}")
            for label in options.methods:
                cells[label, group].failures.append(record)

    result = BenchResult(
        options=options, cells=list(cells.values()), violations=violations
    )
    if not options.graph:
        result.trend_warnings = audit_trends(result)
        for warning in result.trend_warnings:
            logger.warning(f"benchmark trend not observed: {warning}")
    logger.info(
        f"bench finished: {len(submitted)} trials, "
        f"{len(violations)} ordering violations"
    )
    return result


def format_table(result):
    """
    Aligned text table of a benchmark result: one row per method and, for
    each group, columns for the mean objective (in percent), sparsity (in
    percent) and time (in milliseconds).
    """
    groups = []
    methods = []
    for cell in result.cells:
        if cell.group not in groups:
            groups.append(cell.group)
        if cell.method not in methods:
            methods.append(cell.method)
    lookup = {(cell.method, cell.group): cell for cell in result.cells}

    width = max([len("method")] + [len(method) for method in methods])
    header = "method".ljust(width)
    subheader = " " * width
    for group in groups:
        header += " | " + group.center(26)
        subheader += " | " + f"{'obj%':>8}{'spars%':>9}{'ms':>9}"
    lines = [header, subheader, "-" * len(subheader)]
    for method in methods:
        line = method.ljust(width)
        for group in groups:
            cell = lookup[method, group]
            line += " | " + (
                f"{100 * cell.obj:8.2f}{100 * cell.spars:9.2f}"
                f"{cell.time_ms:9.1f}"
            )
        lines.append(line)
    return "\n".join(lines)
