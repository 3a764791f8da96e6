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
Closed-form perturbations and bounds.

The family G(α) = G + D(α)(I − G) mixes each row of G with the
corresponding row of the identity. For the right choice of α it has any
given positive target as its stationary distribution, and the member of
minimum norm, Δ(α*), is available in closed form. This module also holds
the lower and upper bounds on the optimal perturbation norm, the rank-one
special case, and the unconstrained rank-one solution attaining the lower
bound.
"""
import logging

import numpy as np
import scipy.sparse

from traits.api import Array, Bool, Float, HasStrictTraits, Instance, Int

from tsdp.distribution import as_vector, Distribution
from tsdp.exceptions import DimensionMismatch, NotStationary, OutOfRange
from tsdp.markov import verify_stationary
from tsdp.perturbation import Perturbation
from tsdp.stochastic_matrix import l1_norm
from tsdp.tolerances import STATIONARITY_CHECK, TOL_FEAS

logger = logging.getLogger(__name__)


class RatioBounds(HasStrictTraits):
    """
    The ratio vector r = μ./μ̂ and its extrema.
    """

    #: Componentwise ratios μᵢ / μ̂ᵢ.
    r = Array(dtype=float, shape=(None,))

    #: Smallest ratio.
    r_lo = Float()

    #: Largest ratio.
    r_hi = Float()

    #: Largest admissible mixing parameter, 1 / r_hi.
    c_star = Float()


class AlphaVector(HasStrictTraits):
    """
    Per-row mixing weights α, with 0 ≤ αᵢ < 1.
    """

    #: The weights.
    alpha = Array(dtype=float, shape=(None,))

    def __init__(self, alpha, **traits):
        alpha = np.asarray(alpha, dtype=float)
        if alpha.size and (alpha.min() < 0.0 or alpha.max() >= 1.0):
            raise OutOfRange("mixing weights must lie in [0, 1)")
        super().__init__(alpha=alpha, **traits)


class RankOneSolution(HasStrictTraits):
    """
    The closed-form perturbation for a rank-one target change.
    """

    #: The perturbation αⱼ eⱼ eⱼᵀ (I − G).
    perturbation = Instance(Perturbation)

    #: Whether the perturbation is certified globally optimal.
    certified = Bool()

    #: The single non-zero mixing weight.
    alpha_j = Float()


class UnconstrainedRankOne(HasStrictTraits):
    """
    Minimum-norm rank-one perturbation without the nonnegativity constraint.
    """

    #: The perturbation; G + Δ may have negative entries.
    perturbation = Instance(Perturbation)

    #: Index of the perturbed row.
    row = Int()

    #: Whether G + Δ is nonnegative (within :data:`~.TOL_FEAS`).
    feasible = Bool()


def ratio_bounds(mu, mu_hat):
    """
    Ratios μ./μ̂ with their minimum, maximum and c* = 1/max.

    Parameters
    ----------
    mu, mu_hat : Distribution

    Returns
    -------
    bounds : RatioBounds
    """
    mu, mu_hat = _check_pair(mu, mu_hat)
    r = mu / mu_hat
    r_hi = float(r.max())
    return RatioBounds(
        r=r, r_lo=float(r.min()), r_hi=r_hi, c_star=1.0 / r_hi
    )


def alpha_of_c(bounds, c):
    """
    Mixing weights α(c) = 1 − c·r.

    Parameters
    ----------
    bounds : RatioBounds
    c : float
        Mixing parameter, with 0 < c ≤ c*.

    Returns
    -------
    alpha : AlphaVector

    Raises
    ------
    OutOfRange
        If ``c`` is not in (0, c*].
    """
    if not 0.0 < c <= bounds.c_star:
        raise OutOfRange(
            f"mixing parameter must lie in (0, {bounds.c_star!r}], got {c!r}"
        )
    if c == bounds.c_star:
        # 1 - r / r_hi is exactly 0 at the maximizing rows.
        alpha = 1.0 - bounds.r / bounds.r_hi
    else:
        alpha = 1.0 - c * bounds.r
    return AlphaVector(np.clip(alpha, 0.0, None))


def diagonal_family(G, mu, mu_hat, c):
    """
    The perturbation Δ(α(c)) = D(α(c))(I − G) for an admissible ``c``.

    Parameters
    ----------
    G : SparseStochasticMatrix
    mu : Distribution
        Stationary distribution of ``G``.
    mu_hat : Distribution
        Target distribution.
    c : float
        Mixing parameter in (0, c*].

    Returns
    -------
    delta : Perturbation
    """
    _check_dimensions(G, mu, mu_hat)
    alpha = alpha_of_c(ratio_bounds(mu, mu_hat), c)
    return _diagonal_perturbation(G, alpha.alpha)


def diagonal_solution(G, mu, mu_hat):
    """
    Minimum-norm member Δ(α*) of the diagonal-scaling family.

    Parameters
    ----------
    G : SparseStochasticMatrix
    mu : Distribution
        Stationary distribution of ``G``.
    mu_hat : Distribution
        Target distribution.

    Returns
    -------
    delta : Perturbation
        Rows with the largest ratio μᵢ/μ̂ᵢ are zero; every other row has
        the support of the corresponding row of G + I.

    Raises
    ------
    DimensionMismatch
        If the dimensions disagree.
    NotStationary
        If ``mu`` is not stationary for ``G``.
    """
    _check_dimensions(G, mu, mu_hat)
    residual = verify_stationary(G, mu)
    if residual > STATIONARITY_CHECK:
        raise NotStationary(
            f"supplied distribution has stationarity residual {residual:.3g}"
        )
    bounds = ratio_bounds(mu, mu_hat)
    alpha = alpha_of_c(bounds, bounds.c_star)
    return _diagonal_perturbation(G, alpha.alpha)


def diagonal_objective(G, mu, mu_hat):
    """
    ‖Δ(α*)‖₁ without building Δ(α*) or checking stationarity of ``mu``.

    Used as the starting objective of column generation, where ``mu`` may
    be an approximation.
    """
    bounds = ratio_bounds(mu, mu_hat)
    alpha = np.clip(1.0 - bounds.r / bounds.r_hi, 0.0, None)
    csr = G.tocsr()
    diagonal = csr.diagonal()
    off_diagonal = (
        np.asarray(np.abs(csr).sum(axis=1)).ravel() - np.abs(diagonal)
    )
    row_norms = np.abs(1.0 - diagonal) + off_diagonal
    return float(alpha @ row_norms)


def lower_bound_l1(G, mu_hat):
    """
    Lower bound ‖μ̂ᵀ(I − G)‖₁ / ‖μ̂‖∞ on the norm of any feasible Δ.

    Parameters
    ----------
    G : SparseStochasticMatrix
    mu_hat : Distribution

    Returns
    -------
    bound : float
    """
    values = as_vector(mu_hat)
    z = stationarity_rhs(G, values)
    return float(np.abs(z).sum() / values.max())


def upper_bound_l1(G, bounds):
    """
    Upper bound ((r_hi − r_lo) / r_hi)·‖I − G‖₁ on ‖Δ(α*)‖₁.

    Parameters
    ----------
    G : SparseStochasticMatrix
    bounds : RatioBounds

    Returns
    -------
    bound : float
    """
    identity = scipy.sparse.identity(G.n, format="csr")
    factor = (bounds.r_hi - bounds.r_lo) / bounds.r_hi
    return factor * l1_norm(identity - G.tocsr())


def stationarity_rhs(G, mu_hat):
    """
    The vector z = μ̂ᵀ(I − G), computed with a transposed product.
    """
    values = as_vector(mu_hat)
    return values - G.transpose() @ values


def rank_one_target(mu, j, lam):
    """
    Target (μ + λeⱼ)/(1 + λ) that moves weight towards state ``j``.

    Parameters
    ----------
    mu : Distribution
    j : int
        0-based index of the favoured state.
    lam : float
        Strictly positive amount of weight to add.

    Returns
    -------
    mu_hat : Distribution

    Raises
    ------
    OutOfRange
        If ``lam`` is not positive or ``j`` is out of range.
    """
    values = as_vector(mu)
    _check_rank_one_arguments(values.shape[0], j, lam)
    shifted = values.copy()
    shifted[j] += lam
    return Distribution.from_weights(shifted / (1.0 + lam))


def rank_one_solution(G, mu, j, lam):
    """
    Closed-form perturbation for the target ``rank_one_target(mu, j, lam)``.

    The perturbation αⱼ eⱼ eⱼᵀ(I − G) with αⱼ = λ/(μⱼ + λ) is always
    feasible. It is certified globally optimal when λ ≥ maxᵢ μᵢ − μⱼ,
    that is, when state ``j`` carries the largest target weight.

    Parameters
    ----------
    G : SparseStochasticMatrix
    mu : Distribution
        Stationary distribution of ``G``.
    j : int
        0-based index of the favoured state.
    lam : float
        Strictly positive amount of weight added to state ``j``.

    Returns
    -------
    solution : RankOneSolution
    """
    values = as_vector(mu)
    _check_rank_one_arguments(values.shape[0], j, lam)
    if values.shape[0] != G.n:
        raise DimensionMismatch(
            f"matrix dimension {G.n} and distribution length "
            f"{values.shape[0]} differ"
        )
    alpha = np.zeros(G.n)
    alpha[j] = lam / (values[j] + lam)
    certified = bool(lam >= values.max() - values[j])
    logger.debug(
        f"rank-one solution for state {j}: alpha_j={alpha[j]!r}, "
        f"certified={certified}"
    )
    return RankOneSolution(
        perturbation=_diagonal_perturbation(G, alpha),
        certified=certified,
        alpha_j=float(alpha[j]),
    )


def unconstrained_rank_one_l1(G, mu_hat):
    """
    Minimum-norm perturbation when nonnegativity of G + Δ is dropped.

    Returns Δ* = (1/μ̂ᵢ) eᵢ μ̂ᵀ(I − G) for the first index ``i`` of
    largest target weight. Its norm equals :func:`lower_bound_l1`.

    Parameters
    ----------
    G : SparseStochasticMatrix
    mu_hat : Distribution

    Returns
    -------
    solution : UnconstrainedRankOne
    """
    values = as_vector(mu_hat)
    if values.shape[0] != G.n:
        raise DimensionMismatch(
            f"matrix dimension {G.n} and distribution length "
            f"{values.shape[0]} differ"
        )
    i = int(np.argmax(values))
    z = stationarity_rhs(G, values)
    row = z / values.max()
    columns = np.flatnonzero(row)
    entries = scipy.sparse.csr_matrix(
        (row[columns], (np.full(columns.size, i), columns)),
        shape=(G.n, G.n),
    )
    perturbed_row = _dense_row(G, i)
    feasible = bool(np.all(perturbed_row + row >= -TOL_FEAS))
    return UnconstrainedRankOne(
        perturbation=Perturbation.from_matrix(entries, G),
        row=i,
        feasible=feasible,
    )


def coherent_interval_check(mu, mu_hat):
    """
    Ratio intervals for the given pairing and for the sorted pairing.

    Parameters
    ----------
    mu, mu_hat : Distribution

    Returns
    -------
    original : tuple of float
        (min, max) of μᵢ/μ̂ᵢ.
    sorted_pairing : tuple of float
        (min, max) of the ratios after sorting both vectors in
        non-decreasing order. This interval is contained in ``original``.
    """
    mu, mu_hat = _check_pair(mu, mu_hat)
    r = mu / mu_hat
    r_sorted = np.sort(mu) / np.sort(mu_hat)
    return (
        (float(r.min()), float(r.max())),
        (float(r_sorted.min()), float(r_sorted.max())),
    )


# Private functions ###########################################################


def _diagonal_perturbation(G, alpha):
    """
    D(α)(I − G) as a Perturbation of G.
    """
    identity = scipy.sparse.identity(G.n, format="csr")
    entries = scipy.sparse.diags(alpha) @ (identity - G.tocsr())
    return Perturbation.from_matrix(entries, G)


def _dense_row(G, i):
    columns, values = G.row(i)
    row = np.zeros(G.n)
    row[columns] = values
    return row


def _check_pair(mu, mu_hat):
    mu, mu_hat = as_vector(mu), as_vector(mu_hat)
    if mu.shape != mu_hat.shape:
        raise DimensionMismatch(
            f"distributions have lengths {mu.shape[0]} and {mu_hat.shape[0]}"
        )
    return mu, mu_hat


def _check_dimensions(G, mu, mu_hat):
    _check_pair(mu, mu_hat)
    if as_vector(mu).shape[0] != G.n:
        raise DimensionMismatch(
            f"matrix dimension {G.n} and distribution length "
            f"{as_vector(mu).shape[0]} differ"
        )


def _check_rank_one_arguments(n, j, lam):
    if not lam > 0.0:
        raise OutOfRange(f"lambda must be strictly positive, got {lam!r}")
    if not 0 <= j < n:
        raise OutOfRange(f"state index {j} out of range for n={n}")
