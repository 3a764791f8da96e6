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
Linear-programming formulation of the target stationary distribution
problem on a support set Ω.

The perturbation is split as Δ = Δ⁰ + Δ⁺ − Δ⁻. Δ⁰ has one nonnegative
variable per position of Ω outside supp(G); Δ⁺ and Δ⁻ have one variable
each per position of Ω inside supp(G), with Δ⁻ bounded above by the
corresponding entry of G. The constraints are

* zero row sums: Σⱼ Δᵢⱼ = 0 for every row i, and
* stationarity: Σᵢ μ̂ᵢ Δᵢⱼ = zⱼ for every column j, with z = μ̂ᵀ(I − G),

and the objective is the sum of all variables, which equals ‖Δ‖₁ at any
vertex.
"""
import logging

import numpy as np
import scipy.sparse

from traits.api import (
    Array,
    Float,
    HasStrictTraits,
    Int,
    List,
    Property,
    Tuple,
)

from tsdp.closed_form import stationarity_rhs
from tsdp.distribution import as_vector
from tsdp.exceptions import BackendFailure, DimensionMismatch, EmptySupport
from tsdp.perturbation import Perturbation
from tsdp.revised_simplex import RevisedSimplexBackend
from tsdp.stochastic_matrix import row_indices
from tsdp.support_set import matrix_keys, SupportSet
from tsdp.tolerances import STRUCTURAL_ZERO
from tsdp.variable_kinds import KIND_SIGN, MINUS, PLUS, VariableKind, ZERO

logger = logging.getLogger(__name__)

#: Integer code of each variable kind, as stored in LpProblem.kinds. The
#: codes order the variable blocks.
KIND_CODES = {ZERO: 0, PLUS: 1, MINUS: 2}

#: Variable kind for each integer code.
KIND_NAMES = {code: kind for kind, code in KIND_CODES.items()}

#: Sign of each variable kind's contribution to Δ, indexed by code.
_SIGNS = np.array([KIND_SIGN[KIND_NAMES[code]] for code in range(3)])


class VariableDescriptor(HasStrictTraits):
    """
    Description of a single LP variable.
    """

    #: Which block of the split the variable belongs to.
    kind = VariableKind

    #: 0-based (row, column) position of the variable in Δ.
    position = Tuple(Int(), Int())

    #: Lower bound. Always zero.
    lower = Float(0.0)

    #: Upper bound: infinite, or G[i, j] for the Δ⁻ block.
    upper = Float(np.inf)


class LpProblem(HasStrictTraits):
    """
    The TSDP linear program for a matrix, a target and a support set.

    Variables are stored column-wise in parallel arrays, ordered by kind
    (Δ⁰, then Δ⁺, then Δ⁻) and by position within each kind. Use
    :func:`build_lp` to create instances.
    """

    #: Matrix dimension.
    n = Int()

    #: Target distribution, as a vector.
    mu_hat = Array(dtype=float, shape=(None,))

    #: Kind code of each variable. See :data:`KIND_CODES`.
    kinds = Array(dtype=np.int8, shape=(None,))

    #: Row of Δ of each variable.
    rows = Array(dtype=np.int64, shape=(None,))

    #: Column of Δ of each variable.
    cols = Array(dtype=np.int64, shape=(None,))

    #: Upper bound of each variable.
    upper = Array(dtype=float, shape=(None,))

    #: Right-hand side: n zeros followed by z = μ̂ᵀ(I − G).
    rhs = Array(dtype=float, shape=(None,))

    #: Number of constraint rows, 2n.
    num_rows = Property(Int())

    #: Number of variables.
    num_variables = Property(Int())

    #: Objective coefficients. All ones.
    cost = Property(Array())

    #: Identifier of each variable, stable across support sets:
    #: kind_code·n² + i·n + j. Sorted ascending.
    variable_keys = Property(Array())

    #: Descriptor objects for the variables. Built on demand; intended for
    #: inspection of small problems.
    variables = Property(List(VariableDescriptor))

    def constraint_matrix(self):
        """
        The 2n x p constraint matrix, in CSC format.

        Column k has coefficient ±1 in row ``rows[k]`` (row-sum block) and
        ±μ̂ᵢ in row ``n + cols[k]`` (stationarity block), with sign −1 for
        Δ⁻ variables.
        """
        p = self.num_variables
        signs = _SIGNS[self.kinds]
        data = np.empty(2 * p)
        data[0::2] = signs
        data[1::2] = signs * self.mu_hat[self.rows]
        indices = np.empty(2 * p, dtype=np.int64)
        indices[0::2] = self.rows
        indices[1::2] = self.n + self.cols
        indptr = np.arange(0, 2 * p + 1, 2, dtype=np.int64)
        return scipy.sparse.csc_matrix(
            (data, indices, indptr), shape=(self.num_rows, p)
        )

    def kind_slice(self, kind):
        """
        Index range of the variables of the given kind.
        """
        code = KIND_CODES[kind]
        start, stop = np.searchsorted(self.kinds, [code, code + 1])
        return slice(int(start), int(stop))

    # Traits property getters #################################################

    def _get_num_rows(self):
        return 2 * self.n

    def _get_num_variables(self):
        return self.kinds.shape[0]

    def _get_cost(self):
        return np.ones(self.num_variables)

    def _get_variable_keys(self):
        n = self.n
        kind_offsets = self.kinds.astype(np.int64) * (n * n)
        return kind_offsets + self.rows * n + self.cols

    def _get_variables(self):
        return [
            VariableDescriptor(
                kind=KIND_NAMES[int(code)],
                position=(int(i), int(j)),
                upper=float(upper),
            )
            for code, i, j, upper in zip(
                self.kinds, self.rows, self.cols, self.upper
            )
        ]


def partition_support(omega, G):
    """
    Split a support set into the parts outside and inside supp(G).

    Parameters
    ----------
    omega : SupportSet
    G : SparseStochasticMatrix

    Returns
    -------
    outside : SupportSet
        Ω ∖ supp(G), carrying the Δ⁰ variables.
    inside : SupportSet
        Ω ∩ supp(G), carrying the Δ⁺ and Δ⁻ variables.
    """
    if omega.n != G.n:
        raise DimensionMismatch(
            f"support set has dimension {omega.n}, matrix has {G.n}"
        )
    g_keys = matrix_keys(G.tocsr())
    g_support = SupportSet(G.n, keys=g_keys)
    outside = [
        block[~g_support.contains_keys(block)]
        for block in omega.iter_key_blocks()
    ]
    outside = (
        np.concatenate(outside) if outside else np.empty(0, dtype=np.int64)
    )
    inside = g_support.intersection(omega)
    return SupportSet(G.n, keys=outside), SupportSet(G.n, keys=inside.keys)


def build_lp(G, mu_hat, omega):
    """
    Build the TSDP linear program on the support set Ω.

    Parameters
    ----------
    G : SparseStochasticMatrix
        The matrix to perturb.
    mu_hat : Distribution
        The target stationary distribution.
    omega : SupportSet
        Positions where Δ may be non-zero.

    Returns
    -------
    problem : LpProblem

    Raises
    ------
    EmptySupport
        If Ω is empty.
    DimensionMismatch
        If the dimensions of G, μ̂ and Ω disagree.
    """
    n = G.n
    values = as_vector(mu_hat)
    if values.shape != (n,):
        raise DimensionMismatch(
            f"target has shape {values.shape}, matrix has dimension {n}"
        )
    if len(omega) == 0:
        raise EmptySupport("the support set is empty")

    outside, inside = partition_support(omega, G)
    g_csr = G.tocsr()
    g_keys = matrix_keys(g_csr)
    inside_values = g_csr.data[np.searchsorted(g_keys, inside.keys)]

    zero_keys, pm_keys = outside.keys, inside.keys
    keys = np.concatenate([zero_keys, pm_keys, pm_keys])
    kinds = np.concatenate(
        [
            np.full(zero_keys.size, KIND_CODES[ZERO], dtype=np.int8),
            np.full(pm_keys.size, KIND_CODES[PLUS], dtype=np.int8),
            np.full(pm_keys.size, KIND_CODES[MINUS], dtype=np.int8),
        ]
    )
    upper = np.concatenate(
        [np.full(zero_keys.size + pm_keys.size, np.inf), inside_values]
    )
    rhs = np.concatenate([np.zeros(n), stationarity_rhs(G, values)])

    logger.debug(
        f"built LP with {n} x {n} matrix: {zero_keys.size} Δ⁰ and "
        f"{2 * pm_keys.size} Δ± variables"
    )
    return LpProblem(
        n=n,
        mu_hat=values,
        kinds=kinds,
        rows=keys // n,
        cols=keys % n,
        upper=upper,
        rhs=rhs,
    )


def _rebalance_rows(problem, primal):
    """
    Shrink values so that every row of the assembled Δ sums to zero.

    The residual of a row with positive sum is taken from its Δ⁰ and Δ⁺
    values, and that of a row with negative sum from its Δ⁻ values,
    largest first. Values only decrease, so the bounds stay satisfied.
    """
    signs = _SIGNS[problem.kinds]
    residuals = np.bincount(
        problem.rows, weights=signs * primal, minlength=problem.n
    )
    unbalanced = np.flatnonzero(residuals)
    if not unbalanced.size:
        return primal

    primal = primal.copy()
    order = np.lexsort((-primal, problem.rows))
    starts = np.searchsorted(problem.rows[order], np.arange(problem.n + 1))
    for i in unbalanced:
        sign = 1 if residuals[i] > 0.0 else -1
        remaining = abs(residuals[i])
        for k in order[starts[i]:starts[i + 1]]:
            if remaining <= 0.0:
                break
            if signs[k] != sign or primal[k] <= 0.0:
                continue
            taken = min(primal[k], remaining)
            primal[k] -= taken
            remaining -= taken
    logger.debug(f"rebalanced {unbalanced.size} rows of the perturbation")
    return primal


def perturbation_from_solution(problem, solution, omega=None):
    """
    Assemble Δ = Δ⁰ + Δ⁺ − Δ⁻ from an LP solution.

    Variable values at or below :data:`~.STRUCTURAL_ZERO` are treated as
    zero. The mass they carried, together with any rounding left by the
    solver, is then removed from the largest remaining entries of the
    same sign in each row, so that every row of Δ sums to zero.

    Parameters
    ----------
    problem : LpProblem
    solution : LpSolution
    omega : SupportSet, optional
        Support set to record on the perturbation.

    Returns
    -------
    delta : Perturbation

    Raises
    ------
    BackendFailure
        If some position has both its Δ⁺ and its Δ⁻ variable non-zero.
    """
    n = problem.n
    primal = np.where(
        solution.primal > STRUCTURAL_ZERO, solution.primal, 0.0
    )
    primal = _rebalance_rows(problem, primal)

    def part(kind):
        where = problem.kind_slice(kind)
        values = primal[where]
        keep = values != 0.0
        return scipy.sparse.csr_matrix(
            (
                values[keep],
                (problem.rows[where][keep], problem.cols[where][keep]),
            ),
            shape=(n, n),
        )

    zero_part, plus_part, minus_part = part(ZERO), part(PLUS), part(MINUS)
    overlap = plus_part.multiply(minus_part)
    if overlap.nnz:
        overlap = overlap.tocsr()
        k = int(np.argmax(overlap.data))
        i, j = int(row_indices(overlap)[k]), int(overlap.indices[k])
        raise BackendFailure(
            f"position ({i + 1}, {j + 1}) is both increased and decreased"
        )
    return Perturbation(
        zero_part + plus_part - minus_part,
        zero_part=zero_part,
        plus_part=plus_part,
        minus_part=minus_part,
        omega=omega,
    )


def solve_tsdp_lp(G, mu_hat, omega, backend=None, warm=None):
    """
    Solve the TSDP linear program on the support set Ω.

    Parameters
    ----------
    G : SparseStochasticMatrix
        The matrix to perturb.
    mu_hat : Distribution
        The target stationary distribution.
    omega : SupportSet
        Positions where Δ may be non-zero.
    backend : ILpBackend, optional
        The solver to use. Defaults to a :class:`~.RevisedSimplexBackend`
        with default options.
    warm : Basis, optional
        Basis of a previous solve, passed on to the backend.

    Returns
    -------
    delta : Perturbation
        The optimal perturbation, with its split.
    solution : LpSolution
        The raw LP solution, including duals and the final basis.

    Raises
    ------
    Infeasible
        If no perturbation supported on Ω makes μ̂ stationary.
    EmptySupport
        If Ω is empty.
    """
    if backend is None:
        backend = RevisedSimplexBackend()

    problem = build_lp(G, mu_hat, omega)
    solution = backend.solve(problem, warm=warm)
    delta = perturbation_from_solution(problem, solution, omega=omega)

    norm = delta.l1_norm()
    if abs(norm - solution.objective) > 1e-9 * max(1.0, norm):
        logger.warning(
            f"LP objective {solution.objective!r} differs from the norm "
            f"{norm!r} of the assembled perturbation"
        )
    return delta, solution


def sparsity_bound(G, omega):
    """
    Upper bound on the number of non-zeros of a vertex solution.

    A basic solution has at most 2n − 1 basic variables; the other
    non-zero entries are Δ⁻ variables at their upper bound, which lie in
    supp(G) ∩ Ω.

    Returns
    -------
    bound : int
        min(|Ω|, |supp(G) ∩ Ω| + 2n).
    """
    _, inside = partition_support(omega, G)
    return min(len(omega), len(inside) + 2 * G.n)
