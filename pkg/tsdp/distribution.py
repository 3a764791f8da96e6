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
Probability vectors with strictly positive entries.
"""
import math

import numpy as np

from traits.api import Array, HasStrictTraits, Int, Property

from tsdp.exceptions import DimensionMismatch, OutOfRange, RowSumViolation
from tsdp.tolerances import TOL_STOCH


class Distribution(HasStrictTraits):
    """
    A strictly positive probability vector.

    Used both for the stationary distribution of a chain and for the
    target distribution of a perturbation problem.

    Parameters
    ----------
    values : array_like
        One-dimensional sequence of probabilities. Every entry must be
        strictly positive, and the entries must sum to 1 within
        :data:`~.TOL_STOCH`.

    Raises
    ------
    DimensionMismatch
        If ``values`` is not one-dimensional or is empty.
    OutOfRange
        If some entry is not strictly positive.
    RowSumViolation
        If the entries don't sum to 1.
    """

    #: The probabilities. The array is read-only.
    values = Array(dtype=float, shape=(None,))

    #: Number of states.
    n = Property(Int())

    def __init__(self, values, **traits):
        values = np.array(values, dtype=float)
        if values.ndim != 1 or values.size == 0:
            raise DimensionMismatch(
                "a distribution must be a non-empty one-dimensional vector, "
                f"got shape {values.shape}"
            )
        if not np.all(values > 0.0):
            index = int(np.argmin(values > 0.0))
            raise OutOfRange(
                f"entry {index + 1} of the distribution is {values[index]}; "
                "all entries must be strictly positive"
            )
        total = math.fsum(values)
        if abs(total - 1.0) > TOL_STOCH:
            raise RowSumViolation(
                f"distribution entries sum to {total!r}, not 1"
            )
        values.setflags(write=False)
        super().__init__(values=values, **traits)

    @classmethod
    def uniform(cls, n):
        """
        Uniform distribution on ``n`` states.
        """
        return cls(np.full(n, 1.0 / n))

    @classmethod
    def from_weights(cls, weights):
        """
        Distribution proportional to a vector of positive weights.

        Parameters
        ----------
        weights : array_like
            Strictly positive weights.

        Returns
        -------
        distribution : Distribution
        """
        weights = np.asarray(weights, dtype=float)
        return cls(weights / math.fsum(weights))

    def __len__(self):
        return self.values.shape[0]

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.values
        return self.values.astype(dtype)

    # Traits property getters #################################################

    def _get_n(self):
        return self.values.shape[0]


def as_vector(distribution):
    """
    Return the entries of a distribution or vector as a float array.

    Parameters
    ----------
    distribution : Distribution or array_like

    Returns
    -------
    values : numpy.ndarray
    """
    if isinstance(distribution, Distribution):
        return distribution.values
    return np.asarray(distribution, dtype=float)
