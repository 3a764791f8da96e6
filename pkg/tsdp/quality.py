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
Quality measures of a perturbation, as reported by the command line tool
and the benchmark harness.
"""
import numpy as np

from traits.api import Any, Bool, Float, HasStrictTraits, Int, Str

from tsdp.closed_form import lower_bound_l1
from tsdp.distribution import as_vector
from tsdp.exceptions import DimensionMismatch
from tsdp.markov import is_irreducible
from tsdp.stochastic_matrix import as_csr, l1_norm, row_sums
from tsdp.support_set import support
from tsdp.tolerances import TOL_FEAS


class QualityReport(HasStrictTraits):
    """
    Quality of a perturbation Δ of a stochastic matrix G.
    """

    #: Dimension of G.
    n = Int()

    #: Number of non-zeros of G.
    nnz_g = Int()

    #: Label of the method that produced Δ.
    method = Str()

    #: Relative objective ‖Δ‖₁ / ‖G‖₁.
    obj = Float()

    #: Relative sparsity |supp(Δ)| / |supp(G + I)|.
    spars = Float()

    #: ‖Δ‖₁.
    delta_l1 = Float()

    #: Number of non-zeros of Δ.
    nnz_delta = Int()

    #: Largest absolute row sum of Δ.
    residual_rowsum = Float()

    #: ‖μ̂ᵀ(G + Δ) − μ̂ᵀ‖∞, or None if no target was given.
    residual_stationarity = Any()

    #: Smallest stored entry of G + Δ.
    min_entry = Float()

    #: Whether G + Δ is irreducible, ignoring entries within
    #: :data:`~.TOL_FEAS` of zero.
    irreducible = Bool()

    #: Lower bound on ‖Δ‖₁ for the target, or None if no target was given.
    lower_bound = Any()

    #: Solve time in milliseconds, if measured.
    time_ms = Any()

    #: Number of column-generation rounds, if applicable.
    rounds = Any()

    def to_dict(self):
        """
        Plain-dictionary form, for JSON reports. Unset optional fields
        are omitted.
        """
        record = {
            "n": self.n,
            "nnz_g": self.nnz_g,
            "method": self.method,
            "obj": self.obj,
            "spars": self.spars,
            "delta_l1": self.delta_l1,
            "nnz_delta": self.nnz_delta,
            "residual_rowsum": self.residual_rowsum,
            "residual_stationarity": self.residual_stationarity,
            "min_entry": self.min_entry,
            "irreducible": self.irreducible,
            "lower_bound": self.lower_bound,
            "time_ms": self.time_ms,
        }
        if self.rounds is not None:
            record["rounds"] = self.rounds
        return record


def quality_report(
    G, delta, mu_hat=None, method="", time_ms=None, rounds=None
):
    """
    Measure a perturbation.

    Parameters
    ----------
    G : SparseStochasticMatrix
    delta : Perturbation or matrix-like
        The perturbation. Any matrix accepted by :func:`~.as_csr` will do,
        so that matrices violating the row-sum condition can be measured.
    mu_hat : Distribution, optional
        Target distribution. Needed for the stationarity residual and the
        lower bound.
    method : str, optional
        Label recorded in the report.
    time_ms : float, optional
    rounds : int, optional

    Returns
    -------
    report : QualityReport
    """
    g_csr = G.tocsr()
    d_csr = as_csr(delta)
    d_csr.eliminate_zeros()
    if g_csr.shape != d_csr.shape:
        raise DimensionMismatch(
            f"perturbation shape {d_csr.shape} doesn't match "
            f"matrix shape {g_csr.shape}"
        )
    n = G.n
    g_norm = l1_norm(g_csr)
    assert abs(g_norm - n) <= 1e-9 * n, "a stochastic matrix has norm n"

    perturbed = as_csr(g_csr + d_csr)
    min_entry = float(perturbed.data.min()) if perturbed.nnz else 0.0
    cleaned = perturbed.copy()
    cleaned.data[np.abs(cleaned.data) <= TOL_FEAS] = 0.0
    cleaned.eliminate_zeros()

    residual_stationarity = lower_bound = None
    if mu_hat is not None:
        values = as_vector(mu_hat)
        drift = perturbed.transpose() @ values - values
        residual_stationarity = float(np.abs(drift).max())
        lower_bound = lower_bound_l1(G, mu_hat)

    delta_l1 = l1_norm(d_csr)
    sums = row_sums(d_csr)
    return QualityReport(
        n=n,
        nnz_g=G.nnz,
        method=method,
        obj=delta_l1 / g_norm,
        spars=d_csr.nnz / len(support(G, include_diagonal=True)),
        delta_l1=delta_l1,
        nnz_delta=d_csr.nnz,
        residual_rowsum=float(np.abs(sums).max()) if sums.size else 0.0,
        residual_stationarity=residual_stationarity,
        min_entry=min_entry,
        irreducible=is_irreducible(cleaned),
        lower_bound=lower_bound,
        time_ms=time_ms,
        rounds=rounds,
    )
