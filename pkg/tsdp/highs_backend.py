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
LP backend delegating to the HiGHS solvers shipped with scipy.
"""
import logging

import numpy as np
import scipy.optimize

from traits.api import Enum, Float, HasStrictTraits

from tsdp.basis_status import AT_LOWER, AT_UPPER, BASIC, STATUS_CODES
from tsdp.exceptions import (
    BackendFailure,
    Infeasible,
    PivotLimit,
    Unbounded,
)
from tsdp.i_lp_backend import ILpBackend
from tsdp.lp_solution import LpSolution

logger = logging.getLogger(__name__)

#: Map from linprog status codes to the exceptions they raise.
_FAILURES = {
    1: PivotLimit,
    2: Infeasible,
    3: Unbounded,
    4: BackendFailure,
}


class HighsOptions(HasStrictTraits):
    """
    Options for :class:`HighsBackend`.
    """

    #: Which HiGHS algorithm to use.
    method = Enum("highs-ds", "highs", "highs-ipm")

    #: Values within this distance of a bound count as at the bound when
    #: classifying variables.
    bound_tol = Float(1e-9)


class HighsBackend(ILpBackend):
    """
    Backend calling :func:`scipy.optimize.linprog` with a HiGHS method.

    HiGHS doesn't expose its final basis through linprog, so warm starts
    are ignored and solutions carry no basis. Variable statuses are
    inferred from the primal values.

    Parameters
    ----------
    options : HighsOptions, optional
    """

    def __init__(self, options=None):
        if options is None:
            options = HighsOptions()
        self.options = options

    @property
    def name(self):
        return "highs"

    def solve(self, problem, warm=None):
        matrix = problem.constraint_matrix()
        bounds = np.column_stack(
            [np.zeros(problem.num_variables), problem.upper]
        )
        result = scipy.optimize.linprog(
            problem.cost,
            A_eq=matrix,
            b_eq=problem.rhs,
            bounds=bounds,
            method=self.options.method,
        )
        if result.status != 0:
            error = _FAILURES.get(result.status, BackendFailure)
            raise error(f"HiGHS failed: {result.message}")
        logger.debug(
            f"HiGHS solved {problem.num_variables} variables in "
            f"{result.nit} iterations"
        )

        primal = np.clip(result.x, 0.0, problem.upper)
        duals = np.asarray(result.eqlin.marginals, dtype=float)
        reduced_costs = problem.cost - matrix.T @ duals

        tol = self.options.bound_tol
        statuses = np.full(
            problem.num_variables, STATUS_CODES[BASIC], dtype=np.int8
        )
        statuses[primal <= tol] = STATUS_CODES[AT_LOWER]
        at_upper = np.isfinite(problem.upper) & (
            primal >= problem.upper - tol
        )
        statuses[at_upper & (problem.upper > tol)] = STATUS_CODES[AT_UPPER]
        return LpSolution(
            primal=primal,
            duals=duals,
            reduced_costs=reduced_costs,
            statuses=statuses,
            objective=float(problem.cost @ primal),
            pivots=int(result.nit),
        )
