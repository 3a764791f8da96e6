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
The Metropolis-Hastings construction, used as a baseline solution.
"""
import logging
import math

import numpy as np
import scipy.sparse

from traits.api import Bool, Float, HasStrictTraits, Instance

from tsdp.distribution import as_vector
from tsdp.exceptions import DimensionMismatch
from tsdp.markov import is_irreducible
from tsdp.perturbation import Perturbation
from tsdp.stochastic_matrix import as_csr, row_indices, SparseStochasticMatrix
from tsdp.support_set import matrix_keys, SupportSet

logger = logging.getLogger(__name__)


class MetropolisDiagnostics(HasStrictTraits):
    """
    Feasibility diagnostics for a Metropolis-Hastings perturbation.
    """

    #: The perturbed matrix Ĝ = G + Δ.
    perturbed = Instance(SparseStochasticMatrix)

    #: Largest detailed-balance violation |μ̂ᵢĜᵢⱼ − μ̂ⱼĜⱼᵢ|.
    reversibility_residual = Float()

    #: Whether Ĝ is irreducible. When it isn't, μ̂ is a stationary
    #: distribution of Ĝ but not the unique one.
    irreducible = Bool()

    #: Whether the off-diagonal support of Ĝ lies in supp(G) ∩ supp(Gᵀ).
    support_contained = Bool()


def metropolis_hastings(G, mu_hat):
    """
    Metropolis-Hastings perturbation of ``G`` towards ``mu_hat``.

    Off-diagonal entries become Ĝᵢⱼ = min(Gᵢⱼ, (μ̂ⱼ/μ̂ᵢ)Gⱼᵢ) and the
    diagonal absorbs the removed mass. The result is μ̂-reversible, but it
    is reducible whenever the surviving support is not strongly connected;
    this is reported in the diagnostics rather than raised.

    Parameters
    ----------
    G : SparseStochasticMatrix
    mu_hat : Distribution

    Returns
    -------
    delta : Perturbation
        The perturbation Ĝ − G.
    diagnostics : MetropolisDiagnostics
    """
    values = as_vector(mu_hat)
    n = G.n
    if values.shape[0] != n:
        raise DimensionMismatch(
            f"matrix dimension {n} and distribution length "
            f"{values.shape[0]} differ"
        )
    csr = G.tocsr()
    transposed = G.transpose()

    # Restrict G and Gᵀ to supp(G) ∩ supp(Gᵀ); both then share one
    # canonical pattern, so their data arrays line up.
    forward = as_csr(csr.multiply(_pattern(transposed)))
    backward = as_csr(transposed.multiply(_pattern(csr)))
    rows = row_indices(forward)
    cols = forward.indices
    proposal = (values[cols] / values[rows]) * backward.data
    accepted = np.minimum(forward.data, proposal)
    off_diagonal = rows != cols
    rows, cols = rows[off_diagonal], cols[off_diagonal]
    accepted = accepted[off_diagonal]

    starts = np.searchsorted(rows, np.arange(n + 1))
    diagonal = np.array(
        [
            1.0 - math.fsum(accepted[starts[i] : starts[i + 1]])
            for i in range(n)
        ]
    )
    diagonal[np.abs(diagonal) <= 8 * np.finfo(float).eps] = 0.0

    perturbed_csr = scipy.sparse.csr_matrix(
        (
            np.concatenate([accepted, diagonal]),
            (
                np.concatenate([rows, np.arange(n)]),
                np.concatenate([cols, np.arange(n)]),
            ),
        ),
        shape=(n, n),
    )
    perturbed = SparseStochasticMatrix(perturbed_csr)
    delta = Perturbation.from_matrix(perturbed.matrix - csr, G)

    flux = scipy.sparse.diags(values) @ perturbed.matrix
    imbalance = abs(flux - flux.T)
    residual = float(imbalance.max()) if imbalance.nnz else 0.0

    hat = perturbed.matrix
    hat_rows = row_indices(hat)
    hat_keys = matrix_keys(hat)[hat_rows != hat.indices]
    allowed = SupportSet(n, keys=matrix_keys(forward))
    support_contained = bool(np.all(allowed.contains_keys(hat_keys)))

    irreducible = is_irreducible(perturbed)
    if not irreducible:
        logger.warning(
            "Metropolis-Hastings result is reducible; the target is not its "
            "unique stationary distribution"
        )
    logger.debug(
        f"Metropolis-Hastings: n={n}, |Δ|₁={delta.l1_norm():.6g}, "
        f"reversibility residual={residual:.3g}"
    )
    return delta, MetropolisDiagnostics(
        perturbed=perturbed,
        reversibility_residual=residual,
        irreducible=irreducible,
        support_contained=support_contained,
    )


def _pattern(csr):
    """
    Copy of a CSR matrix with every stored value replaced by 1.
    """
    pattern = csr.copy()
    pattern.data = np.ones_like(pattern.data)
    return pattern
