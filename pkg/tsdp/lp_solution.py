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
Solutions of TSDP linear programs, and the simplex bases they come from.
"""
import numpy as np

from traits.api import Array, Float, HasStrictTraits, Instance, Int, Property

from tsdp.basis_status import BASIC, STATUS_CODES, STATUS_NAMES


def artificial_key(row):
    """
    Identifier used in a Basis for the artificial variable of ``row``.

    Structural variables have nonnegative identifiers (see
    :attr:`~.LpProblem.variable_keys`); artificial ones are negative.
    """
    return -(row + 1)


class Basis(HasStrictTraits):
    """
    A simplex basis, stored by variable identifier so that it can seed the
    solve of a related problem with more variables.
    """

    #: Identifiers of the basic variables, one per constraint row, in
    #: basis order. Artificial variables use :func:`artificial_key`.
    basic_keys = Array(dtype=np.int64, shape=(None,))

    #: Identifiers of the structural variables known to this basis.
    keys = Array(dtype=np.int64, shape=(None,))

    #: Status code of each structural variable, aligned with ``keys``.
    #: See :data:`~.STATUS_CODES`.
    statuses = Array(dtype=np.int8, shape=(None,))

    #: Number of basic variables.
    size = Property(Int())

    def status_of(self, key):
        """
        Status name of the structural variable with identifier ``key``.
        """
        position = np.searchsorted(self.keys, key)
        if position == self.keys.size or self.keys[position] != key:
            raise KeyError(key)
        return STATUS_NAMES[int(self.statuses[position])]

    def _get_size(self):
        return self.basic_keys.shape[0]


class LpSolution(HasStrictTraits):
    """
    An optimal basic solution of a TSDP linear program.
    """

    #: Value of each structural variable.
    primal = Array(dtype=float, shape=(None,))

    #: Dual values, row-sum block first, then the stationarity block.
    duals = Array(dtype=float, shape=(None,))

    #: Reduced cost of each structural variable.
    reduced_costs = Array(dtype=float, shape=(None,))

    #: Status code of each structural variable. See :data:`~.STATUS_CODES`.
    statuses = Array(dtype=np.int8, shape=(None,))

    #: Objective value.
    objective = Float()

    #: Number of simplex iterations performed.
    pivots = Int()

    #: Final basis, usable as a warm start.
    basis = Instance(Basis)

    #: Duals of the row-sum constraints.
    y0 = Property(Array())

    #: Duals of the stationarity constraints.
    y_mu = Property(Array())

    def status_of(self, index):
        """
        Status name of the structural variable at position ``index``.
        """
        return STATUS_NAMES[int(self.statuses[index])]

    @property
    def num_basic(self):
        """
        Number of basic structural variables.
        """
        return int(np.count_nonzero(self.statuses == STATUS_CODES[BASIC]))

    def _get_y0(self):
        return self.duals[: self.duals.shape[0] // 2]

    def _get_y_mu(self):
        return self.duals[self.duals.shape[0] // 2 :]


def extract_duals(solution):
    """
    Split the duals of a solution by constraint block.

    Parameters
    ----------
    solution : LpSolution

    Returns
    -------
    y0 : numpy.ndarray
        Duals of the row-sum constraints, in row order.
    y_mu : numpy.ndarray
        Duals of the stationarity constraints, in column order.
    """
    return solution.y0, solution.y_mu
