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
Sparse row-stochastic matrices, and diagnostics for candidate matrices.
"""
import numpy as np
import scipy.sparse

from traits.api import (
    Bool,
    Float,
    HasStrictTraits,
    Instance,
    Int,
    List,
    Property,
    Tuple,
)

from tsdp.exceptions import DimensionMismatch, NegativeEntry, RowSumViolation
from tsdp.tolerances import TOL_STOCH


def as_csr(matrix):
    """
    Return a canonical CSR copy of a matrix-like object.

    The result has sorted column indices and no duplicate entries. Explicit
    zeros are kept, so that callers can diagnose them.

    Parameters
    ----------
    matrix : object
        A scipy sparse matrix, a dense array-like, or any object with a
        ``tocsr`` method (for example :class:`SparseStochasticMatrix` or
        :class:`~.Perturbation`).

    Returns
    -------
    csr : scipy.sparse.csr_matrix
    """
    if hasattr(matrix, "tocsr"):
        csr = scipy.sparse.csr_matrix(matrix.tocsr(), dtype=float, copy=True)
    else:
        csr = scipy.sparse.csr_matrix(np.asarray(matrix, dtype=float))
    csr.sum_duplicates()
    csr.sort_indices()
    return csr


def row_indices(csr):
    """
    Row index of every stored entry of a CSR matrix, in storage order.
    """
    return np.repeat(
        np.arange(csr.shape[0], dtype=np.int64), np.diff(csr.indptr)
    )


def row_sums(csr):
    """
    Row sums of a CSR matrix as a flat float array.
    """
    return np.asarray(csr.sum(axis=1), dtype=float).ravel()


def l1_norm(matrix):
    """
    Component-wise l1 norm: the sum of absolute values of all entries.

    Parameters
    ----------
    matrix : object
        Anything accepted by :func:`as_csr`.

    Returns
    -------
    norm : float
    """
    return float(np.abs(as_csr(matrix).data).sum())


class ValidationReport(HasStrictTraits):
    """
    Outcome of checking a matrix against the stochastic-matrix invariants.
    """

    #: Number of rows of the checked matrix.
    n = Int()

    #: Whether the matrix is square.
    square = Bool(True)

    #: Rows whose sum deviates from 1 by more than the tolerance, as
    #: (0-based row, signed deviation) pairs.
    row_deviations = List(Tuple(Int(), Float()))

    #: Negative entries, as (row, column, value) triples.
    negative_entries = List(Tuple(Int(), Int(), Float()))

    #: Positions of explicitly stored zeros, as (row, column) pairs.
    explicit_zeros = List(Tuple(Int(), Int()))

    #: Largest absolute row-sum deviation over all rows.
    max_row_deviation = Float(0.0)

    #: True if every invariant holds.
    passed = Property(Bool())

    def _get_passed(self):
        return (
            self.square
            and not self.row_deviations
            and not self.negative_entries
            and not self.explicit_zeros
        )


def validate_stochastic(matrix, tol=TOL_STOCH):
    """
    Check a candidate matrix against the stochastic-matrix invariants.

    This is a diagnostic operation: it never raises for invalid input.

    Parameters
    ----------
    matrix : object
        Anything accepted by :func:`as_csr`.
    tol : float, optional
        Row-sum tolerance. Defaults to :data:`~.TOL_STOCH`.

    Returns
    -------
    report : ValidationReport
    """
    csr = as_csr(matrix)
    n_rows, n_cols = csr.shape
    report = ValidationReport(n=n_rows, square=(n_rows == n_cols))

    rows = row_indices(csr)
    negative = np.flatnonzero(csr.data < 0.0)
    report.negative_entries = [
        (int(rows[k]), int(csr.indices[k]), float(csr.data[k]))
        for k in negative
    ]
    zeros = np.flatnonzero(csr.data == 0.0)
    report.explicit_zeros = [
        (int(rows[k]), int(csr.indices[k])) for k in zeros
    ]

    deviations = row_sums(csr) - 1.0
    if deviations.size:
        report.max_row_deviation = float(np.max(np.abs(deviations)))
    bad_rows = np.flatnonzero(np.abs(deviations) > tol)
    report.row_deviations = [
        (int(i), float(deviations[i])) for i in bad_rows
    ]
    return report


class SparseStochasticMatrix(HasStrictTraits):
    """
    A sparse, square, row-stochastic matrix.

    Storage is canonical CSR: column indices sorted within each row, no
    duplicates, and no explicitly stored zeros, so that the stored pattern
    is exactly the mathematical support.

    Parameters
    ----------
    matrix : object
        Anything accepted by :func:`as_csr`. The input is copied.

    Raises
    ------
    DimensionMismatch
        If the matrix is not square.
    NegativeEntry
        If some entry is negative.
    RowSumViolation
        If some row doesn't sum to 1 within :data:`~.TOL_STOCH`.
    """

    #: Canonical CSR storage. Treat as read-only.
    matrix = Instance(scipy.sparse.csr_matrix)

    #: Dimension of the matrix.
    n = Property(Int())

    #: Number of stored (strictly positive) entries.
    nnz = Property(Int())

    #: CSR storage of the transpose, computed on first use.
    _transposed = Instance(scipy.sparse.csr_matrix)

    def __init__(self, matrix, **traits):
        csr = as_csr(matrix)
        csr.eliminate_zeros()
        n_rows, n_cols = csr.shape
        if n_rows != n_cols:
            raise DimensionMismatch(
                f"a stochastic matrix must be square, got shape {csr.shape}"
            )
        if csr.nnz and csr.data.min() < 0.0:
            k = int(np.argmin(csr.data))
            i = int(row_indices(csr)[k])
            raise NegativeEntry(
                f"entry ({i + 1}, {csr.indices[k] + 1}) is {csr.data[k]!r}"
            )
        deviations = np.abs(row_sums(csr) - 1.0)
        if deviations.size and deviations.max() > TOL_STOCH:
            i = int(np.argmax(deviations))
            raise RowSumViolation(
                f"row {i + 1} sums to {row_sums(csr)[i]!r}, not 1"
            )
        super().__init__(matrix=csr, **traits)

    def tocsr(self):
        """
        Return the underlying CSR storage.
        """
        return self.matrix

    def transpose(self):
        """
        CSR storage of the transposed matrix.

        The transpose is computed once and cached.
        """
        if self._transposed is None:
            transposed = self.matrix.transpose().tocsr()
            transposed.sort_indices()
            self._transposed = transposed
        return self._transposed

    def toarray(self):
        """
        Return a dense copy. Intended for small matrices and tests.
        """
        return self.matrix.toarray()

    def row(self, i):
        """
        Column indices and values of the stored entries of row ``i``.

        Returns
        -------
        columns : numpy.ndarray
        values : numpy.ndarray
        """
        start, stop = self.matrix.indptr[i], self.matrix.indptr[i + 1]
        return (
            self.matrix.indices[start:stop],
            self.matrix.data[start:stop],
        )

    def __repr__(self):
        return f"<{type(self).__name__} n={self.n} nnz={self.nnz}>"

    # Traits property getters #################################################

    def _get_n(self):
        return self.matrix.shape[0]

    def _get_nnz(self):
        return self.matrix.nnz

