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
Perturbations of stochastic matrices.
"""
import numpy as np
import scipy.sparse

from traits.api import Bool, HasStrictTraits, Instance, Int, Property

from tsdp.exceptions import (
    DimensionMismatch,
    NegativeEntry,
    RowSumViolation,
)
from tsdp.stochastic_matrix import (
    as_csr,
    l1_norm,
    row_indices,
    row_sums,
    SparseStochasticMatrix,
)
from tsdp.support_set import matrix_keys, SupportSet
from tsdp.tolerances import TOL_FEAS, TOL_STOCH


class Perturbation(HasStrictTraits):
    """
    A sparse signed matrix Δ with zero row sums.

    Optionally carries the split Δ = Δ⁰ + Δ⁺ − Δ⁻ used by the LP
    formulation: Δ⁰ lives outside the support of G, while Δ⁺ and Δ⁻ live
    inside it.

    Parameters
    ----------
    entries : object
        The signed matrix, in any form accepted by :func:`~.as_csr`.
        Explicit zeros are stripped.
    zero_part, plus_part, minus_part : scipy.sparse matrix, optional
        Nonnegative matrices forming the split. Either all three or none
        must be given.
    omega : SupportSet, optional
        The support set the perturbation was computed for.

    Raises
    ------
    DimensionMismatch
        If the matrix is not square, or a split part has the wrong shape.
    RowSumViolation
        If some row sum differs from 0 by more than :data:`~.TOL_FEAS`.
    """

    #: Canonical CSR storage of Δ.
    entries = Instance(scipy.sparse.csr_matrix)

    #: Entries of Δ⁰, or None.
    zero_part = Instance(scipy.sparse.csr_matrix)

    #: Entries of Δ⁺, or None.
    plus_part = Instance(scipy.sparse.csr_matrix)

    #: Entries of Δ⁻, or None.
    minus_part = Instance(scipy.sparse.csr_matrix)

    #: Support set the perturbation was constrained to, if known.
    omega = Instance(SupportSet)

    #: Dimension.
    n = Property(Int())

    #: Number of non-zero entries.
    nnz = Property(Int())

    #: Whether the (Δ⁰, Δ⁺, Δ⁻) split is available.
    has_decomposition = Property(Bool())

    def __init__(
        self,
        entries,
        *,
        zero_part=None,
        plus_part=None,
        minus_part=None,
        omega=None,
        **traits,
    ):
        csr = as_csr(entries)
        csr.eliminate_zeros()
        if csr.shape[0] != csr.shape[1]:
            raise DimensionMismatch(
                f"a perturbation must be square, got shape {csr.shape}"
            )
        sums = row_sums(csr)
        if sums.size and np.max(np.abs(sums)) > TOL_FEAS:
            i = int(np.argmax(np.abs(sums)))
            raise RowSumViolation(
                f"row {i + 1} of the perturbation sums to {sums[i]!r}"
            )

        parts = (zero_part, plus_part, minus_part)
        given = [part is not None for part in parts]
        if any(given) and not all(given):
            raise TypeError(
                "either all or none of 'zero_part', 'plus_part' and "
                "'minus_part' should be supplied"
            )
        if all(given):
            parts = [as_csr(part) for part in parts]
            for part in parts:
                part.eliminate_zeros()
                if part.shape != csr.shape:
                    raise DimensionMismatch(
                        f"split part has shape {part.shape}, "
                        f"expected {csr.shape}"
                    )
            zero_part, plus_part, minus_part = parts

        super().__init__(
            entries=csr,
            zero_part=zero_part,
            plus_part=plus_part,
            minus_part=minus_part,
            omega=omega,
            **traits,
        )

    @classmethod
    def zero(cls, n):
        """
        The zero perturbation of an n x n matrix.
        """
        empty = scipy.sparse.csr_matrix((n, n), dtype=float)
        return cls(
            empty,
            zero_part=empty,
            plus_part=empty,
            minus_part=empty,
        )

    @classmethod
    def from_matrix(cls, entries, G, omega=None):
        """
        Build a perturbation of ``G`` with its split computed from Δ.

        Positive entries outside supp(G) go to Δ⁰, positive entries inside
        supp(G) to Δ⁺, and negative entries to Δ⁻.

        Parameters
        ----------
        entries : object
            The signed matrix Δ.
        G : SparseStochasticMatrix
            The matrix being perturbed.
        omega : SupportSet, optional
            The support set to record.
        """
        csr = as_csr(entries)
        csr.eliminate_zeros()
        g_csr = G.tocsr()
        if csr.shape != g_csr.shape:
            raise DimensionMismatch(
                f"perturbation shape {csr.shape} doesn't match "
                f"matrix shape {g_csr.shape}"
            )
        keys = matrix_keys(csr)
        in_g = SupportSet(g_csr.shape[0], keys=matrix_keys(g_csr))
        inside = in_g.contains_keys(keys)
        positive = csr.data > 0.0

        def part(mask, sign):
            return scipy.sparse.csr_matrix(
                (
                    sign * csr.data[mask],
                    (row_indices(csr)[mask], csr.indices[mask]),
                ),
                shape=csr.shape,
            )

        return cls(
            csr,
            zero_part=part(positive & ~inside, 1.0),
            plus_part=part(positive & inside, 1.0),
            minus_part=part(~positive, -1.0),
            omega=omega,
        )

    def tocsr(self):
        """
        Return the underlying CSR storage of Δ.
        """
        return self.entries

    def toarray(self):
        """
        Dense copy of Δ. Intended for small matrices and tests.
        """
        return self.entries.toarray()

    def l1_norm(self):
        """
        Component-wise l1 norm of Δ.
        """
        return l1_norm(self.entries)

    def support(self):
        """
        The set of positions where Δ is non-zero.
        """
        return SupportSet(self.n, keys=matrix_keys(self.entries))

    def __repr__(self):
        return f"<{type(self).__name__} n={self.n} nnz={self.nnz}>"

    # Traits property getters #################################################

    def _get_n(self):
        return self.entries.shape[0]

    def _get_nnz(self):
        return self.entries.nnz

    def _get_has_decomposition(self):
        return self.zero_part is not None


def apply_perturbation(G, delta):
    """
    Form the perturbed matrix G + Δ.

    Negative entries of G + Δ within :data:`~.TOL_FEAS` of zero are set
    to zero. Every other entry is exactly the sum of the two inputs; rows
    are never rescaled.

    Parameters
    ----------
    G : SparseStochasticMatrix
        Matrix to perturb.
    delta : Perturbation
        The perturbation.

    Returns
    -------
    G_hat : SparseStochasticMatrix

    Raises
    ------
    DimensionMismatch
        If the shapes differ.
    NegativeEntry
        If some entry of G + Δ is below ``-TOL_FEAS``.
    RowSumViolation
        If, after clearing tiny negative entries, some row of G + Δ
        deviates from 1 by more than :data:`~.TOL_STOCH`.
    """
    g_csr = G.tocsr()
    d_csr = delta.tocsr()
    if g_csr.shape != d_csr.shape:
        raise DimensionMismatch(
            f"perturbation shape {d_csr.shape} doesn't match "
            f"matrix shape {g_csr.shape}"
        )
    perturbed = as_csr(g_csr + d_csr)
    if perturbed.nnz and perturbed.data.min() < -TOL_FEAS:
        k = int(np.argmin(perturbed.data))
        i = int(row_indices(perturbed)[k])
        raise NegativeEntry(
            f"entry ({i + 1}, {perturbed.indices[k] + 1}) of G + Δ is "
            f"{perturbed.data[k]!r}"
        )
    perturbed.data[perturbed.data < 0.0] = 0.0
    perturbed.eliminate_zeros()

    sums = row_sums(perturbed)
    deviations = np.abs(sums - 1.0)
    if deviations.size and deviations.max() > TOL_STOCH:
        i = int(np.argmax(deviations))
        raise RowSumViolation(f"row {i + 1} of G + Δ sums to {sums[i]!r}")
    return SparseStochasticMatrix(perturbed)
