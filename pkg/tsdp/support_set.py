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
Sets of matrix positions, used to constrain where a perturbation may be
non-zero.

Positions are stored as sorted linear keys ``i * n + j``. The full set of
all ``n * n`` positions is represented symbolically and is only ever
iterated lazily.
"""
import numpy as np

from traits.api import Array, Bool, Enum, HasStrictTraits, Int, Property

from tsdp.exceptions import DimensionMismatch, OutOfRange
from tsdp.stochastic_matrix import as_csr, row_indices

# Support kinds ###############################################################

#: Every position of an n x n matrix.
FULL = "full"

#: The support of G + I for some matrix G.
G_PLUS_I = "g_plus_i"

#: An explicitly listed set of positions.
EXPLICIT = "explicit"

#: Trait type representing a support kind.
SupportKind = Enum(EXPLICIT, G_PLUS_I, FULL)

#: Number of rows of a full support set produced per block when iterating.
FULL_BLOCK_ROWS = 256


def matrix_keys(csr):
    """
    Linear keys ``i * n + j`` of the stored entries of a CSR matrix.

    For a canonical CSR matrix the keys are sorted and unique.
    """
    n_cols = csr.shape[1]
    return row_indices(csr) * n_cols + csr.indices.astype(np.int64)


class SupportSet(HasStrictTraits):
    """
    A set of (row, column) positions of an n x n matrix.

    Parameters
    ----------
    n : int
        Matrix dimension.
    keys : array_like of int, optional
        Linear keys ``i * n + j`` of the positions. Ignored for ``FULL``.
    kind : str, optional
        One of ``EXPLICIT`` (the default), ``G_PLUS_I`` or ``FULL``.
    """

    #: Matrix dimension.
    n = Int()

    #: What this set represents.
    kind = SupportKind

    #: Sorted, unique linear keys. Empty for a full set.
    keys = Array(dtype=np.int64, shape=(None,))

    #: True for the symbolic set of all positions.
    is_full = Property(Bool())

    def __init__(self, n, keys=None, kind=EXPLICIT, **traits):
        if kind == FULL or keys is None:
            keys = np.empty(0, dtype=np.int64)
        else:
            keys = np.unique(np.asarray(keys, dtype=np.int64))
            if keys.size and (keys[0] < 0 or keys[-1] >= n * n):
                raise OutOfRange(
                    f"support positions must lie in [0, {n}) x [0, {n})"
                )
        super().__init__(n=n, keys=keys, kind=kind, **traits)

    @classmethod
    def full(cls, n):
        """
        The set of all ``n * n`` positions.
        """
        return cls(n, kind=FULL)

    @classmethod
    def from_pairs(cls, n, rows, cols, kind=EXPLICIT):
        """
        Build a support set from parallel arrays of 0-based indices.
        """
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        if rows.shape != cols.shape:
            raise DimensionMismatch("row and column arrays differ in shape")
        if rows.size and (
            min(rows.min(), cols.min()) < 0 or max(rows.max(), cols.max()) >= n
        ):
            raise OutOfRange(
                f"support positions must lie in [0, {n}) x [0, {n})"
            )
        return cls(n, keys=rows * n + cols, kind=kind)

    def __len__(self):
        if self.is_full:
            return self.n * self.n
        return int(self.keys.size)

    def __contains__(self, pair):
        i, j = pair
        if not (0 <= i < self.n and 0 <= j < self.n):
            return False
        if self.is_full:
            return True
        key = i * self.n + j
        position = np.searchsorted(self.keys, key)
        return bool(
            position < self.keys.size and self.keys[position] == key
        )

    def __iter__(self):
        for block in self.iter_key_blocks():
            for key in block.tolist():
                yield divmod(key, self.n)

    def contains_keys(self, keys):
        """
        Vectorized membership test for linear keys.

        Parameters
        ----------
        keys : numpy.ndarray of int64

        Returns
        -------
        mask : numpy.ndarray of bool
        """
        keys = np.asarray(keys, dtype=np.int64)
        if self.is_full:
            return (keys >= 0) & (keys < self.n * self.n)
        if self.keys.size == 0:
            return np.zeros(keys.shape, dtype=bool)
        positions = np.searchsorted(self.keys, keys)
        positions = np.minimum(positions, self.keys.size - 1)
        return self.keys[positions] == keys

    def iter_key_blocks(self, block_rows=FULL_BLOCK_ROWS):
        """
        Iterate over the linear keys in increasing order, block by block.

        A full set produces ``block_rows`` rows' worth of keys at a time, so
        that it is never materialized as a whole.
        """
        if not self.is_full:
            if self.keys.size:
                yield self.keys
            return
        n = self.n
        for start in range(0, n, block_rows):
            stop = min(start + block_rows, n)
            yield np.arange(start * n, stop * n, dtype=np.int64)

    def materialized_keys(self):
        """
        All linear keys as one array. For a full set this costs O(n²).
        """
        if self.is_full:
            return np.arange(self.n * self.n, dtype=np.int64)
        return self.keys

    def pairs(self):
        """
        Row and column index arrays of all positions, in key order.
        """
        keys = self.materialized_keys()
        return keys // self.n, keys % self.n

    def intersection(self, other):
        """
        Positions in both this set and ``other``.
        """
        self._check_compatible(other)
        if self.is_full:
            return other
        if other.is_full:
            return self
        keys = np.intersect1d(self.keys, other.keys, assume_unique=True)
        return SupportSet(self.n, keys=keys)

    def union(self, other):
        """
        Positions in this set or in ``other``.
        """
        self._check_compatible(other)
        if self.is_full:
            return self
        if other.is_full:
            return other
        return SupportSet(self.n, keys=np.union1d(self.keys, other.keys))

    def add_keys(self, keys):
        """
        Return a new explicit set with extra positions added.
        """
        if self.is_full:
            return self
        return SupportSet(
            self.n, keys=np.union1d(self.keys, np.asarray(keys, np.int64))
        )

    def __repr__(self):
        return (
            f"<{type(self).__name__} n={self.n} kind={self.kind} "
            f"size={len(self)}>"
        )

    # Private methods #########################################################

    def _check_compatible(self, other):
        if other.n != self.n:
            raise DimensionMismatch(
                f"support sets have dimensions {self.n} and {other.n}"
            )

    # Traits property getters #################################################

    def _get_is_full(self):
        return self.kind == FULL


def support(matrix, include_diagonal=False):
    """
    Support (set of non-zero positions) of a square matrix.

    Parameters
    ----------
    matrix : object
        Anything accepted by :func:`~.as_csr`.
    include_diagonal : bool, optional
        If true, return the support of ``matrix + I``: the diagonal
        positions are added even where the matrix is zero.

    Returns
    -------
    omega : SupportSet
        Kind ``G_PLUS_I`` when ``include_diagonal`` is true, otherwise
        ``EXPLICIT``.
    """
    csr = as_csr(matrix)
    csr.eliminate_zeros()
    n_rows, n_cols = csr.shape
    if n_rows != n_cols:
        raise DimensionMismatch(
            f"support requires a square matrix, got shape {csr.shape}"
        )
    keys = matrix_keys(csr)
    if include_diagonal:
        diagonal = np.arange(n_rows, dtype=np.int64) * (n_rows + 1)
        return SupportSet(
            n_rows, keys=np.union1d(keys, diagonal), kind=G_PLUS_I
        )
    return SupportSet(n_rows, keys=keys)
