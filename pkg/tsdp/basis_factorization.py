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
LU factorization of a simplex basis matrix, kept current across pivots
with a product-form file of eta vectors.
"""
import numpy as np
import scipy.sparse
import scipy.sparse.linalg

from tsdp.exceptions import BackendFailure


class BasisFactorization:
    """
    Factorization of a square basis matrix B.

    The matrix is factorized once with a sparse LU decomposition. Each
    later replacement of one column of B appends an eta vector instead of
    refactorizing, so that solves with the current basis apply the LU
    factors and then the etas.

    Parameters
    ----------
    matrix : scipy.sparse matrix
        The initial basis matrix.

    Raises
    ------
    BackendFailure
        If the matrix is numerically singular.
    """

    def __init__(self, matrix):
        matrix = scipy.sparse.csc_matrix(matrix)
        self._size = matrix.shape[0]
        try:
            self._lu = scipy.sparse.linalg.splu(matrix)
        except RuntimeError as exc:
            raise BackendFailure(f"singular basis matrix: {exc}") from exc
        # Each eta is (position, indices, values, pivot value).
        self._etas = []

    @property
    def num_updates(self):
        """
        Number of column replacements since the last factorization.
        """
        return len(self._etas)

    def solve(self, rhs):
        """
        Solve B x = rhs for the current basis.
        """
        x = self._lu.solve(np.asarray(rhs, dtype=float))
        for position, indices, values, pivot in self._etas:
            x_r = x[position] / pivot
            x[indices] -= values * x_r
            x[position] = x_r
        return x

    def solve_transpose(self, rhs):
        """
        Solve Bᵀ y = rhs for the current basis.
        """
        y = np.array(rhs, dtype=float)
        for position, indices, values, pivot in reversed(self._etas):
            others = values @ y[indices] - pivot * y[position]
            y[position] = (y[position] - others) / pivot
        return self._lu.solve(y, trans="T")

    def update(self, position, column):
        """
        Replace the basis column at ``position``.

        Parameters
        ----------
        position : int
            Index of the leaving column within the basis.
        column : numpy.ndarray
            B⁻¹a for the entering column a, computed with the basis before
            the replacement.

        Raises
        ------
        BackendFailure
            If the pivot element is zero.
        """
        pivot = column[position]
        if pivot == 0.0:
            raise BackendFailure(
                f"zero pivot when replacing basis column {position}"
            )
        indices = np.flatnonzero(column)
        self._etas.append((position, indices, column[indices], pivot))
