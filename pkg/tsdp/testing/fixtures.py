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
Small matrices and targets with known answers, shared by the test suite.
"""
import numpy as np

from tsdp.distribution import Distribution
from tsdp.stochastic_matrix import SparseStochasticMatrix


def ring_matrix():
    """
    Lazy random walk on a 4-cycle. Its stationary distribution is uniform.
    """
    return SparseStochasticMatrix(
        np.array(
            [
                [1 / 2, 1 / 4, 0.0, 1 / 4],
                [1 / 4, 1 / 2, 1 / 4, 0.0],
                [0.0, 1 / 4, 1 / 2, 1 / 4],
                [1 / 4, 0.0, 1 / 4, 1 / 2],
            ]
        )
    )


def skewed_ring_matrix():
    """
    The ring with its first row changed to (3/4, 1/8, 0, 1/8).

    Its stationary distribution is (2/5, 1/5, 1/5, 1/5).
    """
    dense = ring_matrix().toarray()
    dense[0] = [3 / 4, 1 / 8, 0.0, 1 / 8]
    return SparseStochasticMatrix(dense)


def cycle_matrix():
    """
    Deterministic 3-cycle. Periodic, irreducible, stationary distribution
    uniform.
    """
    return SparseStochasticMatrix(
        np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]])
    )


#: Uniform distribution on four states.
RING_MU = Distribution([1 / 4, 1 / 4, 1 / 4, 1 / 4])

#: Target for the ring whose diagonal solution isn't optimal.
RING_TARGET = Distribution([1 / 8, 1 / 8, 1 / 4, 1 / 2])

#: Stationary distribution of the skewed ring.
SKEWED_MU = Distribution([2 / 5, 1 / 5, 1 / 5, 1 / 5])

#: Rank-one update of SKEWED_MU at state 1 with weight 1/10.
SKEWED_TARGET = Distribution([4 / 11, 3 / 11, 2 / 11, 2 / 11])

#: Target for the 3-cycle.
CYCLE_TARGET = Distribution([1 / 2, 1 / 4, 1 / 4])

#: Queue matrix of size 5 and arity 2 written with full precision, in
#: Matrix Market format.
QUEUE_MATRIX_MARKET = """\
%%MatrixMarket matrix coordinate real general
% queue n=5 k=2
5 5 14
1 2 0.6
1 3 0.4
2 1 0.25
2 3 0.5
2 4 0.25
3 1 0.125
3 2 0.25
3 4 0.375
3 5 0.25
4 2 0.5
4 3 0.25
4 5 0.25
5 3 0.5
5 4 0.5
"""
