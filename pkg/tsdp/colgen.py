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
Column generation for the target stationary distribution problem.

The LP is first solved on Ω¹ = supp(G + I) ∩ Ω. After each solve the
duals price every remaining position of Ω through the rank-two reduced
cost matrix R = y⁰1ᵀ + μ̂(yμ)ᵀ − 1, the best |Ω¹| strictly positive
entries are added to the support, and the LP is solved again from the
previous basis. R is never materialized.
"""
import logging
import time

import numpy as np

from traits.api import (
    Float,
    HasStrictTraits,
    Instance,
    Int,
    List,
    Property,
    Range,
)

from tsdp.closed_form import diagonal_objective
from tsdp.colgen_status import (
    CANCELLED,
    ColGenStatus,
    CONVERGED,
    HEURISTIC_OPTIMAL,
    MAX_ROUNDS,
    TOLERANCE,
    TRIVIAL,
)
from tsdp.distribution import as_vector
from tsdp.exceptions import SolveCancelled
from tsdp.lp_formulation import solve_tsdp_lp
from tsdp.markov import solve_stationary, StationaryOptions
from tsdp.perturbation import Perturbation
from tsdp.revised_simplex import RevisedSimplexBackend
from tsdp.stochastic_matrix import l1_norm
from tsdp.support_set import support, SupportSet
from tsdp.tolerances import TOL_FEAS

logger = logging.getLogger(__name__)

#: Reduced-cost entries must exceed this to count as strictly positive.
PRICING_TOL = 1e-9


class ColGenOptions(HasStrictTraits):
    """
    Options for :func:`column_generate`.
    """

    #: Relative accuracy: stop once a round decreases the objective by at
    #: most delta·‖G‖₁. With zero, iterate until pricing finds nothing.
    delta = Range(low=0.0, high=1.0, value=1e-4, exclude_high=True)

    #: Size m of the row and column subsets scanned by the large-n pricing
    #: heuristic.
    m = Range(low=1, value=200)

    #: Matrices larger than this are priced with the heuristic.
    heuristic_threshold = Range(low=0, value=200)

    #: Maximum number of LP solves.
    max_rounds = Range(low=1, value=100)

    #: When the heuristic finds nothing and delta is zero, an exhaustive
    #: scan confirms optimality for matrices up to this size.
    exhaustive_limit = Range(low=0, value=10000)

    #: Number of rows of a full support set priced at a time.
    block_rows = Range(low=1, value=256)


class ColGenRound(HasStrictTraits):
    """
    Record of one round of column generation.
    """

    #: Round number, starting at 1.
    index = Int()

    #: Size of the support set the LP was solved on.
    support_size = Int()

    #: Optimal objective of the round's LP.
    objective = Float()

    #: Number of positions added to the support by pricing.
    added = Int()

    #: Simplex iterations used by the round's solve.
    pivots = Int()

    #: Wall-clock duration of the round, in seconds.
    wall_time = Float()

    def to_dict(self):
        """
        Plain-dictionary form, for JSON reports.
        """
        return {
            "round": self.index,
            "support_size": self.support_size,
            "objective": self.objective,
            "added": self.added,
            "pivots": self.pivots,
            "wall_time": self.wall_time,
        }


class ColGenTrace(HasStrictTraits):
    """
    History of a column-generation run.
    """

    #: Objective ‖Δ(α*)‖₁ of the closed-form starting point.
    initial_objective = Float()

    #: One record per LP solve.
    rounds = List(Instance(ColGenRound))

    #: Why the run stopped.
    status = ColGenStatus

    #: Support set of the final LP.
    final_support = Instance(SupportSet)

    #: Number of LP solves.
    num_rounds = Property(Int())

    #: Final objective; the initial objective if no LP was solved.
    objective = Property(Float())

    def objectives(self):
        """
        Objective of every round, in order.
        """
        return [record.objective for record in self.rounds]

    def to_dict(self):
        """
        Plain-dictionary form, for JSON reports.
        """
        return {
            "status": self.status,
            "initial_objective": self.initial_objective,
            "rounds": [record.to_dict() for record in self.rounds],
        }

    # Traits property getters #################################################

    def _get_num_rounds(self):
        return len(self.rounds)

    def _get_objective(self):
        if self.rounds:
            return self.rounds[-1].objective
        return self.initial_objective


def price_entries(
    y0, y_mu, mu_hat, omega, current, count, options=None, exhaustive=None
):
    """
    Select the positions of Ω ∖ Ωⁱ with the largest positive reduced-cost
    entries Rᵢⱼ = y⁰ᵢ + μ̂ᵢ·yμⱼ − 1.

    Parameters
    ----------
    y0, y_mu : numpy.ndarray
        Duals of the row-sum and stationarity constraints.
    mu_hat : Distribution
        Target distribution.
    omega : SupportSet
        The full support set Ω.
    current : SupportSet
        The support set Ωⁱ of the last LP. Its positions are skipped.
    count : int
        Maximum number of positions to return.
    options : ColGenOptions, optional
    exhaustive : bool, optional
        Force (True) or forbid (False) the exhaustive scan. By default the
        scan is exhaustive when n is at most ``options.heuristic_threshold``.

    Returns
    -------
    chosen : SupportSet
        Up to ``count`` positions, all with Rᵢⱼ > :data:`PRICING_TOL`. An
        empty set means that no improving position was found.
    """
    if options is None:
        options = ColGenOptions()
    n = omega.n
    if exhaustive is None:
        exhaustive = n <= options.heuristic_threshold
    values = as_vector(mu_hat)
    y0 = np.asarray(y0, dtype=float)
    y_mu = np.asarray(y_mu, dtype=float)

    if exhaustive:
        blocks = omega.iter_key_blocks(options.block_rows)
    else:
        blocks = [_heuristic_candidates(y0, y_mu, values, omega, options)]

    best_keys = np.empty(0, dtype=np.int64)
    best_costs = np.empty(0)
    for keys in blocks:
        keys = keys[~current.contains_keys(keys)]
        rows, cols = keys // n, keys % n
        costs = y0[rows] + values[rows] * y_mu[cols] - 1.0
        positive = costs > PRICING_TOL
        best_keys, best_costs = _top_entries(
            np.concatenate([best_keys, keys[positive]]),
            np.concatenate([best_costs, costs[positive]]),
            count,
        )
    return SupportSet(n, keys=best_keys)


def column_generate(
    G, mu_hat, omega=None, options=None, backend=None, progress=None
):
    """
    Solve the TSDP on Ω by batch column generation.

    Parameters
    ----------
    G : SparseStochasticMatrix
        The matrix to perturb. Must be irreducible.
    mu_hat : Distribution
        The target distribution.
    omega : SupportSet, optional
        Positions where Δ may be non-zero. Defaults to all positions.
    options : ColGenOptions, optional
    backend : ILpBackend, optional
        LP solver. Defaults to a :class:`~.RevisedSimplexBackend`.
    progress : callable, optional
        Called with each :class:`ColGenRound` once it is recorded. It may
        raise :exc:`~.SolveCancelled` to stop the run early.

    Returns
    -------
    delta : Perturbation
        The final perturbation.
    trace : ColGenTrace
        Per-round history and termination status.

    Raises
    ------
    Infeasible
        If the LP on supp(G + I) ∩ Ω is infeasible.
    NotIrreducible
        If ``G`` is reducible.
    """
    if options is None:
        options = ColGenOptions()
    if backend is None:
        backend = RevisedSimplexBackend()
    n = G.n
    if omega is None:
        omega = SupportSet.full(n)

    mu = solve_stationary(G, StationaryOptions(fallback="direct")).distribution
    trace = ColGenTrace(initial_objective=diagonal_objective(G, mu, mu_hat))
    if trace.initial_objective <= TOL_FEAS:
        logger.info("target is already stationary; nothing to solve")
        trace.status = TRIVIAL
        trace.final_support = SupportSet(n)
        return Perturbation.zero(n), trace

    threshold = options.delta * l1_norm(G.tocsr())
    current = support(G, include_diagonal=True).intersection(omega)
    count = len(current)
    use_heuristic = n > options.heuristic_threshold
    previous_objective = trace.initial_objective
    warm = None
    delta = None
    while True:
        index = trace.num_rounds + 1
        start = time.perf_counter()
        delta, solution = solve_tsdp_lp(
            G, mu_hat, current, backend=backend, warm=warm
        )
        warm = solution.basis
        objective = solution.objective
        decrease = previous_objective - objective
        previous_objective = objective

        added = SupportSet(n)
        if options.delta > 0.0 and decrease <= threshold:
            status = TOLERANCE
        else:
            added = price_entries(
                solution.y0,
                solution.y_mu,
                mu_hat,
                omega,
                current,
                count,
                options,
                exhaustive=not use_heuristic,
            )
            status = None
            if len(added) == 0 and not use_heuristic:
                status = CONVERGED
            elif len(added) == 0:
                if options.delta == 0.0 and n <= options.exhaustive_limit:
                    logger.debug(
                        "heuristic pricing found nothing; "
                        "scanning exhaustively"
                    )
                    added = price_entries(
                        solution.y0,
                        solution.y_mu,
                        mu_hat,
                        omega,
                        current,
                        count,
                        options,
                        exhaustive=True,
                    )
                    status = None if len(added) else CONVERGED
                else:
                    status = HEURISTIC_OPTIMAL

        record = ColGenRound(
            index=index,
            support_size=len(current),
            objective=objective,
            added=len(added),
            pivots=solution.pivots,
            wall_time=time.perf_counter() - start,
        )
        trace.rounds.append(record)
        logger.info(
            f"round {index}: objective {objective:.10g} on "
            f"{record.support_size} positions, {record.added} added, "
            f"{record.pivots} pivots"
        )
        trace.final_support = current

        if progress is not None:
            try:
                progress(record)
            except SolveCancelled:
                logger.info(
                    f"column generation cancelled after round {index}"
                )
                trace.status = CANCELLED
                break
        if status is not None:
            trace.status = status
            break
        if index >= options.max_rounds:
            trace.status = MAX_ROUNDS
            break
        current = current.add_keys(added.keys)

    logger.debug(f"column generation stopped: {trace.status}")
    return delta, trace


def _heuristic_candidates(y0, y_mu, mu_hat, omega, options):
    """
    Keys of I x J ∩ Ω, where I holds the rows with the m largest y⁰ᵢ or
    μ̂ᵢ and J the columns with the 2m largest yμⱼ.
    """
    n = omega.n
    rows = np.union1d(
        _largest(y0, options.m), _largest(mu_hat, options.m)
    )
    cols = np.sort(_largest(y_mu, 2 * options.m))
    keys = (rows[:, np.newaxis] * n + cols[np.newaxis, :]).ravel()
    return keys[omega.contains_keys(keys)]


def _largest(values, count):
    """
    Indices of the ``count`` largest entries of ``values``.
    """
    if count >= values.size:
        return np.arange(values.size, dtype=np.int64)
    return np.argpartition(-values, count - 1)[:count].astype(np.int64)


def _top_entries(keys, costs, count):
    """
    Restrict parallel key and cost arrays to the ``count`` largest costs,
    returned in key order.
    """
    if keys.size > count:
        keep = np.argpartition(-costs, count - 1)[:count]
        keys, costs = keys[keep], costs[keep]
    order = np.argsort(keys)
    return keys[order], costs[order]
