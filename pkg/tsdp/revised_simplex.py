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
Bounded-variable revised simplex method for TSDP linear programs.

The solver works on the problem in the form A x = b, 0 ≤ x ≤ u, with one
artificial variable per row. Phase one minimizes the sum of the
artificial variables from the all-artificial basis; phase two fixes them
at zero and minimizes the original objective. A basis from an earlier
solve can replace phase one when it is still primal feasible.

A cold start replaces the artificial variable of every row-sum constraint
by a structural column of that row, which keeps the initial basis
triangular and feasible. Pricing is partial: the columns are split into
blocks, and the entering variable is the one with the largest reduced
cost in the first block holding an improving column. After a long run of
degenerate pivots Bland's rule takes over. The basis is held as a sparse
LU factorization plus eta updates, refactorized at a fixed interval.
"""
import logging

import numpy as np
import scipy.sparse

from traits.api import Bool, Float, HasStrictTraits, Range

from tsdp.basis_factorization import BasisFactorization
from tsdp.basis_status import AT_LOWER, AT_UPPER, BASIC, STATUS_CODES
from tsdp.exceptions import (
    BackendFailure,
    Infeasible,
    PivotLimit,
    Unbounded,
)
from tsdp.i_lp_backend import ILpBackend
from tsdp.lp_solution import artificial_key, Basis, LpSolution

logger = logging.getLogger(__name__)

_LOWER = STATUS_CODES[AT_LOWER]
_UPPER = STATUS_CODES[AT_UPPER]
_BASIC = STATUS_CODES[BASIC]

#: Steps at or below this length count as degenerate.
DEGENERATE_STEP = 1e-12

#: Ratios within this distance of the minimum are ties in the ratio test.
RATIO_TIE = 1e-12


class BackendOptions(HasStrictTraits):
    """
    Options for :class:`RevisedSimplexBackend`.
    """

    #: Primal feasibility tolerance.
    feas_tol = Float(1e-9)

    #: Optimality tolerance on reduced costs.
    opt_tol = Float(1e-9)

    #: Entries of a transformed column smaller than this in absolute value
    #: are never chosen as pivots.
    pivot_tol = Float(1e-11)

    #: Maximum number of simplex iterations over both phases. Zero means
    #: 50·n + 10000 for an n x n matrix.
    max_pivots = Range(low=0, value=0)

    #: Number of eta updates after which the basis is refactorized.
    refactor_interval = Range(low=1, value=100)

    #: Bland's rule is used after more than this many multiples of n
    #: consecutive degenerate pivots.
    degenerate_factor = Range(low=1, value=10)

    #: Number of blocks the columns are split into for partial pricing.
    #: Each iteration prices blocks in turn, starting with the block that
    #: supplied the previous entering variable, and stops at the first
    #: block with an improving column. One means full pricing.
    pricing_blocks = Range(low=1, value=8)

    #: Whether a cold start puts one structural column per row-sum
    #: constraint into the initial basis in place of its artificial.
    crash = Bool(True)


class RevisedSimplexBackend(ILpBackend):
    """
    Sparse bounded-variable revised simplex solver.

    Parameters
    ----------
    options : BackendOptions, optional
        Solver options. Defaults are used if not given.
    """

    def __init__(self, options=None):
        if options is None:
            options = BackendOptions()
        self.options = options

    @property
    def name(self):
        return "simplex"

    def solve(self, problem, warm=None):
        run = _SimplexRun(problem, self.options)
        return run.run(warm)


class _SimplexRun:
    """
    State of a single simplex solve.
    """

    def __init__(self, problem, options):
        self.problem = problem
        self.options = options

        m, p = problem.num_rows, problem.num_variables
        self.num_rows = m
        self.num_structural = p
        self.rhs = problem.rhs
        signs = np.where(problem.rhs >= 0.0, 1.0, -1.0)
        artificial = scipy.sparse.csc_matrix(
            (signs, (np.arange(m), np.arange(m))), shape=(m, m)
        )
        self.matrix = scipy.sparse.hstack(
            [problem.constraint_matrix(), artificial], format="csc"
        )
        self.upper = np.concatenate([problem.upper, np.full(m, np.inf)])
        self.cost = np.zeros(p + m)

        self.x = np.zeros(p + m)
        self.status = np.full(p + m, _LOWER, dtype=np.int8)
        self.head = np.arange(p, p + m)
        self.factor = None
        self.duals = np.zeros(m)
        self.reduced_costs = np.zeros(p + m)

        self.pivots = 0
        self.max_pivots = options.max_pivots or 50 * problem.n + 10000
        self.degenerate_limit = options.degenerate_factor * problem.n

        columns_t = self.matrix.T.tocsr()
        bounds = np.unique(
            np.linspace(0, p + m, options.pricing_blocks + 1).astype(int)
        )
        self.blocks = [
            (start, stop, columns_t[start:stop])
            for start, stop in zip(bounds[:-1], bounds[1:])
        ]
        self.current_block = 0

    def run(self, warm):
        if warm is None or not self._warm_start(warm):
            self._cold_start()
            self._phase_one()
        self._phase_two()
        return self._solution()

    # Private methods #########################################################

    def _cold_start(self):
        m, p = self.num_rows, self.num_structural
        self.upper[p:] = np.inf
        self.head = np.arange(p, p + m)
        if self.options.crash:
            rows, columns = self._crash_columns()
            self.head[rows] = columns
            self.upper[p + rows] = 0.0
            logger.debug(f"crash basis holds {rows.size} structural columns")
        self.status[:] = _LOWER
        self.status[self.head] = _BASIC
        self.x[:] = 0.0
        # Row-sum constraints have a zero right-hand side, so crashed
        # columns start at zero.
        self.x[p:] = np.abs(self.rhs)
        self.factor = BasisFactorization(self.matrix[:, self.head])

    def _crash_columns(self):
        """
        Pick a structural column for each row-sum constraint.

        The diagonal position of the row is preferred, then a column
        with a positive coefficient. Each chosen column has its only
        other entry in the stationarity block, so together with the
        stationarity artificials the basis is block triangular.

        Returns
        -------
        rows : numpy.ndarray of int
            Constraint rows that receive a structural column.
        columns : numpy.ndarray of int
            The chosen column for each of those rows.
        """
        problem = self.problem
        n, p = problem.n, self.num_structural
        if p == 0:
            empty = np.empty(0, dtype=np.int64)
            return empty, empty
        coefficients = np.asarray(self.matrix[:n, :p].sum(axis=0)).ravel()
        rows = problem.rows
        rank = 2 * (rows != problem.cols) + (coefficients < 0.0)
        order = np.lexsort((rank, rows))
        first = np.ones(p, dtype=bool)
        first[1:] = rows[order][1:] != rows[order][:-1]
        columns = order[first]
        return rows[columns], columns

    def _warm_start(self, warm):
        """
        Install a basis from an earlier solve. Return True on success.
        """
        m, p = self.num_rows, self.num_structural
        keys = self.problem.variable_keys
        basic = warm.basic_keys
        if basic.shape[0] != m:
            logger.debug("warm basis has the wrong size; starting cold")
            return False

        structural = basic >= 0
        positions, known = _lookup(keys, basic[structural])
        if not known.all():
            logger.debug("warm basis has unknown variables; starting cold")
            return False
        head = np.empty(m, dtype=np.int64)
        head[structural] = positions
        head[~structural] = p - basic[~structural] - 1
        if np.unique(head).size != m or np.any(head >= p + m):
            logger.debug("warm basis is malformed; starting cold")
            return False

        self.upper[p:] = 0.0
        self.status[:] = _LOWER
        positions, known = _lookup(keys, warm.keys[warm.statuses == _UPPER])
        positions = positions[known]
        self.status[positions[np.isfinite(self.upper[positions])]] = _UPPER
        self.status[head] = _BASIC
        self.head = head
        self.x[:] = 0.0
        self.x[self.status == _UPPER] = self.upper[self.status == _UPPER]

        try:
            self.factor = BasisFactorization(self.matrix[:, head])
        except BackendFailure:
            logger.debug("warm basis is singular; starting cold")
            return False
        self._recompute_basic_values()

        values = self.x[head]
        tol = self.options.feas_tol
        if np.any(values < -tol) or np.any(values > self.upper[head] + tol):
            logger.debug("warm basis is primal infeasible; starting cold")
            return False
        logger.debug("starting from warm basis")
        return True

    def _phase_one(self):
        p = self.num_structural
        self.cost[:p] = 0.0
        self.cost[p:] = 1.0
        self._iterate()
        infeasibility = float(self.x[p:].sum())
        logger.debug(
            f"phase one ended after {self.pivots} pivots with "
            f"infeasibility {infeasibility!r}"
        )
        if infeasibility > self.options.feas_tol:
            raise Infeasible(
                "no perturbation on the support set makes the target "
                f"stationary (phase one residual {infeasibility!r})"
            )

    def _phase_two(self):
        p = self.num_structural
        self.upper[p:] = 0.0
        self.cost[:p] = self.problem.cost
        self.cost[p:] = 0.0
        self._iterate()
        logger.debug(f"phase two ended after {self.pivots} pivots")

    def _iterate(self):
        """
        Run simplex iterations with the current costs until optimal.
        """
        options = self.options
        degenerate = 0
        while True:
            y = self.factor.solve_transpose(self.cost[self.head])
            bland = degenerate > self.degenerate_limit
            entering = self._price(y, bland)
            if entering < 0:
                self.duals = y
                return

            direction = 1.0 if self.status[entering] == _LOWER else -1.0
            column = self.factor.solve(self._column(entering))
            change = -direction * column

            step, leaving, to_upper = self._ratio_test(change, bland)
            flip = self.upper[entering]
            if flip <= step:
                step, leaving = flip, -1
            if np.isinf(step):
                raise Unbounded("the objective is unbounded below")

            self.x[self.head] += step * change
            if leaving < 0:
                if direction > 0:
                    self.status[entering] = _UPPER
                    self.x[entering] = self.upper[entering]
                else:
                    self.status[entering] = _LOWER
                    self.x[entering] = 0.0
            else:
                self.x[entering] += direction * step
                leaving_variable = self.head[leaving]
                if to_upper:
                    self.status[leaving_variable] = _UPPER
                    self.x[leaving_variable] = self.upper[leaving_variable]
                else:
                    self.status[leaving_variable] = _LOWER
                    self.x[leaving_variable] = 0.0
                self.head[leaving] = entering
                self.status[entering] = _BASIC
                self.factor.update(leaving, column)

            self.pivots += 1
            if self.pivots > self.max_pivots:
                raise PivotLimit(
                    f"no optimal basis after {self.max_pivots} pivots"
                )
            degenerate = degenerate + 1 if step <= DEGENERATE_STEP else 0
            if self.factor.num_updates >= options.refactor_interval:
                self._refactor()

    def _price(self, y, bland):
        """
        Choose the entering variable for the duals y.

        Under Bland's rule the blocks are scanned in order and the
        improving column of lowest index is taken. Returns -1 when no
        column improves, in which case every reduced cost is up to date.
        """
        tol = self.options.opt_tol
        count = len(self.blocks)
        if bland:
            order = range(count)
        else:
            order = [(self.current_block + s) % count for s in range(count)]
        for index in order:
            start, stop, block = self.blocks[index]
            d = self.cost[start:stop] - block @ y
            status = self.status[start:stop]
            upper = self.upper[start:stop]
            improving = ((status == _LOWER) & (d < -tol) & (upper > 0.0)) | (
                (status == _UPPER) & (d > tol)
            )
            candidates = np.flatnonzero(improving)
            if candidates.size:
                self.current_block = index
                if bland:
                    return start + int(candidates[0])
                best = candidates[np.argmax(np.abs(d[candidates]))]
                return start + int(best)
            self.reduced_costs[start:stop] = d
        return -1

    def _ratio_test(self, change, bland):
        """
        Find the basic variable that first reaches a bound.

        Returns
        -------
        step : float
            Step length, infinite if no basic variable limits the step.
        leaving : int
            Basis position of the leaving variable, or -1.
        to_upper : bool
            Whether the leaving variable leaves at its upper bound.
        """
        tol = self.options.pivot_tol
        values = self.x[self.head]
        upper = self.upper[self.head]
        ratios = np.full(self.num_rows, np.inf)
        falling = change < -tol
        ratios[falling] = values[falling] / -change[falling]
        rising = (change > tol) & np.isfinite(upper)
        ratios[rising] = (upper[rising] - values[rising]) / change[rising]

        if ratios.size == 0 or not np.isfinite(ratios.min()):
            return np.inf, -1, False
        ties = np.flatnonzero(ratios <= ratios.min() + RATIO_TIE)
        if bland:
            leaving = ties[np.argmin(self.head[ties])]
        else:
            leaving = ties[np.argmax(np.abs(change[ties]))]
        return max(ratios[leaving], 0.0), int(leaving), bool(rising[leaving])

    def _column(self, index):
        start, stop = self.matrix.indptr[index], self.matrix.indptr[index + 1]
        column = np.zeros(self.num_rows)
        column[self.matrix.indices[start:stop]] = self.matrix.data[start:stop]
        return column

    def _refactor(self):
        self.factor = BasisFactorization(self.matrix[:, self.head])
        self._recompute_basic_values()

    def _recompute_basic_values(self):
        self.x[self.head] = 0.0
        residual = self.rhs - self.matrix @ self.x
        self.x[self.head] = self.factor.solve(residual)

    def _solution(self):
        p = self.num_structural
        self._refactor()
        self.duals = self.factor.solve_transpose(self.cost[self.head])
        self.reduced_costs = self.cost - self.matrix.T @ self.duals

        primal = np.clip(self.x[:p], 0.0, self.problem.upper)
        residual = self.matrix[:, :p] @ primal - self.rhs
        worst = float(np.abs(residual).max()) if residual.size else 0.0
        if worst > 100 * self.options.feas_tol:
            raise BackendFailure(
                f"final solution violates the constraints by {worst!r}"
            )

        keys = self.problem.variable_keys
        structural = self.head < p
        basic_keys = np.empty(self.num_rows, dtype=np.int64)
        basic_keys[structural] = keys[self.head[structural]]
        basic_keys[~structural] = artificial_key(self.head[~structural] - p)
        statuses = self.status[:p].copy()
        basis = Basis(basic_keys=basic_keys, keys=keys, statuses=statuses)
        return LpSolution(
            primal=primal,
            duals=self.duals,
            reduced_costs=self.reduced_costs[:p],
            statuses=statuses,
            objective=float(self.problem.cost @ primal),
            pivots=self.pivots,
            basis=basis,
        )


def _lookup(keys, wanted):
    """
    Positions of ``wanted`` in the sorted array ``keys``.

    Returns
    -------
    positions : numpy.ndarray of int
        Positions, only meaningful where ``found`` is true.
    found : numpy.ndarray of bool
    """
    positions = np.searchsorted(keys, wanted)
    positions = np.minimum(positions, max(keys.size - 1, 0))
    if keys.size == 0:
        return positions, np.zeros(wanted.shape, dtype=bool)
    return positions, keys[positions] == wanted
