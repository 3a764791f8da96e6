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
Stationary distributions, irreducibility and stationarity residuals.
"""
import logging
import warnings

import numpy as np
import scipy.sparse
import scipy.sparse.csgraph
import scipy.sparse.linalg

from traits.api import (
    Bool,
    Enum,
    Float,
    HasStrictTraits,
    Instance,
    Int,
    Range,
)

from tsdp.distribution import as_vector, Distribution
from tsdp.exceptions import (
    ConvergenceWarning,
    DimensionMismatch,
    NotIrreducible,
)
from tsdp.stochastic_matrix import as_csr

logger = logging.getLogger(__name__)


class StationaryOptions(HasStrictTraits):
    """
    Options for the power iteration used to compute stationary
    distributions.
    """

    #: Maximum number of power iterations before falling back.
    max_iters = Range(low=1, value=10000)

    #: Target l1 residual ‖μᵀG − μᵀ‖₁.
    tol = Range(low=0.0, value=1e-13, exclude_low=True)

    #: Number of extra iterations performed after ``max_iters`` when the
    #: tolerance has not been reached.
    fallback_iters = Range(low=0, value=100)

    #: What to do when the tolerance has not been reached: "power" runs
    #: ``fallback_iters`` more iterations and flags the result as not
    #: converged; "direct" solves the stationarity equations with a sparse
    #: LU factorization instead.
    fallback = Enum("power", "direct")


class StationaryReport(HasStrictTraits):
    """
    Result of a stationary-distribution computation.
    """

    #: The computed distribution.
    distribution = Instance(Distribution)

    #: Number of power iterations performed.
    iterations = Int()

    #: Residual ‖μᵀG − μᵀ‖₁ of the returned distribution.
    residual = Float()

    #: False if the tolerance was not reached and the fallback iterate
    #: was returned.
    converged = Bool()


def strongly_connected_components(matrix):
    """
    Strongly connected components of the directed graph of a matrix.

    Parameters
    ----------
    matrix : object
        Anything accepted by :func:`~.as_csr`. Only the sparsity pattern
        is used.

    Returns
    -------
    count : int
        Number of components.
    labels : numpy.ndarray of int
        Component label of each node.
    """
    csr = as_csr(matrix)
    csr.eliminate_zeros()
    return scipy.sparse.csgraph.connected_components(
        csr, directed=True, connection="strong"
    )


def is_irreducible(G):
    """
    Test whether the graph of ``G`` is strongly connected.

    The test is structural: only the zero pattern matters.

    Parameters
    ----------
    G : SparseStochasticMatrix or matrix-like

    Returns
    -------
    irreducible : bool
    """
    count, _ = strongly_connected_components(G)
    return count == 1


def verify_stationary(G, mu):
    """
    Stationarity residual ‖μᵀG − μᵀ‖₁.

    Parameters
    ----------
    G : SparseStochasticMatrix or matrix-like
    mu : Distribution or array_like

    Returns
    -------
    residual : float

    Raises
    ------
    DimensionMismatch
        If the dimensions of ``G`` and ``mu`` differ.
    """
    csr = G.tocsr() if hasattr(G, "tocsr") else as_csr(G)
    values = as_vector(mu)
    if csr.shape != (values.shape[0], values.shape[0]):
        raise DimensionMismatch(
            f"matrix of shape {csr.shape} and vector of length "
            f"{values.shape[0]}"
        )
    return float(np.abs(csr.T @ values - values).sum())


def solve_stationary(G, options=None):
    """
    Compute the stationary distribution of an irreducible matrix.

    Runs power iteration on Gᵀ from the uniform vector, normalizing each
    iterate in the 1-norm. If the residual doesn't drop to ``options.tol``
    within ``options.max_iters`` iterations, the fallback named by
    ``options.fallback`` takes over: either ``options.fallback_iters``
    further iterations, returned with ``converged`` set to False, or a
    sparse direct solve (see :func:`direct_stationary`).

    Parameters
    ----------
    G : SparseStochasticMatrix
    options : StationaryOptions, optional

    Returns
    -------
    report : StationaryReport

    Raises
    ------
    NotIrreducible
        If ``G`` is reducible.
    """
    if options is None:
        options = StationaryOptions()
    if not is_irreducible(G):
        raise NotIrreducible("the matrix is reducible")

    transposed = G.transpose()
    n = G.n
    mu = np.full(n, 1.0 / n)
    iterations = 0
    converged = False
    while iterations < options.max_iters:
        step = transposed @ mu
        residual = np.abs(step - mu).sum()
        if residual <= options.tol:
            converged = True
            break
        mu = step / step.sum()
        iterations += 1
        if __debug__:
            assert np.all(mu > 0.0), "power iterate lost positivity"

    if not converged and options.fallback == "direct":
        logger.info(
            f"power iteration stalled after {iterations} iterations "
            f"(residual {residual:.3g}); solving directly"
        )
        mu = direct_stationary(G)
        residual = np.abs(transposed @ mu - mu).sum()
        converged = bool(residual <= options.tol)
    elif not converged:
        logger.warning(
            f"power iteration stalled after {iterations} iterations "
            f"(residual {residual:.3g}); running {options.fallback_iters} "
            "fallback iterations"
        )
        for _ in range(options.fallback_iters):
            step = transposed @ mu
            mu = step / step.sum()
            iterations += 1
        residual = np.abs(transposed @ mu - mu).sum()

    logger.debug(
        f"stationary distribution: n={n}, iterations={iterations}, "
        f"residual={residual:.3g}, converged={converged}"
    )
    return StationaryReport(
        distribution=Distribution.from_weights(mu),
        iterations=iterations,
        residual=float(residual),
        converged=converged,
    )


def stationary_distribution(G, options=None):
    """
    Stationary distribution of an irreducible stochastic matrix.

    Issues a :class:`~.ConvergenceWarning` when power iteration doesn't
    reach the tolerance; see :func:`solve_stationary` for details.

    Parameters
    ----------
    G : SparseStochasticMatrix
    options : StationaryOptions, optional

    Returns
    -------
    mu : Distribution

    Raises
    ------
    NotIrreducible
        If ``G`` is reducible.
    """
    report = solve_stationary(G, options)
    if not report.converged:
        warnings.warn(
            (
                "power iteration did not reach its tolerance; residual "
                f"of the returned distribution is {report.residual:.3g}"
            ),
            category=ConvergenceWarning,
            stacklevel=2,
        )
    return report.distribution


def direct_stationary(G):
    """
    Stationary distribution from a sparse direct solve.

    Solves (I − G)ᵀμ = 0 with the last equation replaced by Σμᵢ = 1. The
    modified system is nonsingular when ``G`` is irreducible.

    Parameters
    ----------
    G : SparseStochasticMatrix

    Returns
    -------
    mu : numpy.ndarray
        The stationary vector, normalized to sum to 1.
    """
    n = G.n
    system = scipy.sparse.identity(n, format="csr") - G.transpose()
    system = scipy.sparse.vstack(
        [system[: n - 1], np.ones((1, n))], format="csc"
    )
    rhs = np.zeros(n)
    rhs[-1] = 1.0
    mu = scipy.sparse.linalg.spsolve(system, rhs)
    mu = np.clip(mu, np.finfo(float).tiny, None)
    return mu / mu.sum()
