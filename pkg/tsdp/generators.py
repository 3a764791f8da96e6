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
Synthetic test instances: queue-like band matrices and target
distributions built from them.
"""
import logging

import numpy as np
import scipy.sparse

from tsdp.closed_form import rank_one_target
from tsdp.distribution import as_vector, Distribution
from tsdp.exceptions import BadArity, NonPositiveTarget, OutOfRange
from tsdp.markov import StationaryOptions, stationary_distribution
from tsdp.stochastic_matrix import SparseStochasticMatrix

logger = logging.getLogger(__name__)


def queue_generator(seed):
    """
    The pseudo-random generator used for synthetic instances.

    A PCG64 bit generator seeded with ``seed``, so that a given seed
    produces the same stream on every platform.
    """
    return np.random.Generator(np.random.PCG64(seed))


def gen_queue_matrix(n, k, seed=0):
    """
    Random queue-like stochastic matrix.

    Row i has non-zero entries in columns i − k, ..., i + k other than i,
    clipped to the matrix: the first and last k rows have fewer
    neighbours. Entries are drawn uniformly from (0, 1) in row-major order
    and each row is then normalized.

    Parameters
    ----------
    n : int
        Matrix dimension, at least 2.
    k : int
        Number of neighbours on each side, between 1 and n − 1.
    seed : int, optional
        Seed for :func:`queue_generator`.

    Returns
    -------
    G : SparseStochasticMatrix
        An irreducible matrix with zero diagonal and 2nk − k(k + 1)
        non-zero entries.

    Raises
    ------
    BadArity
        If ``k`` is outside [1, n − 1].
    """
    if not 1 <= k <= n - 1:
        raise BadArity(f"k must lie in [1, {n - 1}] for n = {n}, got {k}")
    offsets = np.concatenate([np.arange(-k, 0), np.arange(1, k + 1)])
    rows = np.repeat(np.arange(n), offsets.size)
    cols = rows + np.tile(offsets, n)
    inside = (cols >= 0) & (cols < n)
    rows, cols = rows[inside], cols[inside]

    rng = queue_generator(seed)
    values = rng.random(rows.size)
    zeros = values == 0.0
    while zeros.any():
        values[zeros] = rng.random(int(zeros.sum()))
        zeros = values == 0.0

    totals = np.bincount(rows, weights=values, minlength=n)
    matrix = scipy.sparse.csr_matrix(
        (values / totals[rows], (rows, cols)), shape=(n, n)
    )
    logger.debug(f"generated queue matrix n={n} k={k} nnz={matrix.nnz}")
    return SparseStochasticMatrix(matrix)


def target_power_step(G):
    """
    Target obtained by one power-iteration step from the uniform vector.

    Parameters
    ----------
    G : SparseStochasticMatrix

    Returns
    -------
    mu_hat : Distribution
        Gᵀ1/n, renormalized to sum to 1.

    Raises
    ------
    NonPositiveTarget
        If some column of G is entirely zero.
    """
    weights = G.transpose() @ np.full(G.n, 1.0 / G.n)
    if not np.all(weights > 0.0):
        j = int(np.argmin(weights))
        raise NonPositiveTarget(f"column {j + 1} of the matrix is zero")
    return Distribution.from_weights(weights)


def target_mix(mu, epsilon):
    """
    Mix a distribution with the uniform distribution.

    Parameters
    ----------
    mu : Distribution
    epsilon : float
        Weight of the uniform distribution, in [0, 1].

    Returns
    -------
    mu_hat : Distribution
        (1 − ε)μ + ε1/n.

    Raises
    ------
    OutOfRange
        If ``epsilon`` is outside [0, 1].
    """
    if not 0.0 <= epsilon <= 1.0:
        raise OutOfRange(f"mixing weight must lie in [0, 1], got {epsilon}")
    values = as_vector(mu)
    mixed = (1.0 - epsilon) * values + epsilon / values.size
    return Distribution.from_weights(mixed)


def target_from_recipe(recipe, G):
    """
    Build a target distribution for ``G`` from a short text recipe.

    Recognized recipes are ``power-step`` (see :func:`target_power_step`),
    ``mix:EPS`` (the stationary distribution of ``G`` mixed with the
    uniform one, see :func:`target_mix`) and ``rankone:J,LAMBDA`` (see
    :func:`~.rank_one_target`; ``J`` is 1-based).

    Raises
    ------
    ValueError
        If the recipe is not recognized.
    """
    name, _, argument = recipe.partition(":")
    if name == "power-step" and not argument:
        return target_power_step(G)
    if name == "mix" and argument:
        return target_mix(_accurate_stationary(G), float(argument))
    if name == "rankone" and argument:
        j, _, lam = argument.partition(",")
        return rank_one_target(_accurate_stationary(G), int(j) - 1, float(lam))
    raise ValueError(
        f"unrecognized target recipe {recipe!r}; expected power-step, "
        "mix:EPS or rankone:J,LAMBDA"
    )


def _accurate_stationary(G):
    options = StationaryOptions(fallback="direct")
    return stationary_distribution(G, options)
