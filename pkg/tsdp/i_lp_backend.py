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
Interface for linear-programming backends.
"""

import abc


class ILpBackend(abc.ABC):
    """
    Interface for solvers of TSDP linear programs.

    A backend object holds configuration only. Each call to ``solve``
    works on private state, so one backend object may be shared by
    concurrent solves.
    """

    @abc.abstractmethod
    def solve(self, problem, warm=None):
        """
        Solve a TSDP linear program to optimality.

        Parameters
        ----------
        problem : LpProblem
            The problem to solve.
        warm : Basis, optional
            Basis of a previous solve of a related problem. Backends that
            can't use it ignore it.

        Returns
        -------
        solution : LpSolution

        Raises
        ------
        Infeasible
            If the problem has no feasible point.
        PivotLimit
            If the backend gives up after too many iterations.
        """

    @property
    @abc.abstractmethod
    def name(self):
        """
        Short name of the backend, used in reports.
        """
