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
Core API for the tsdp package.

This module represents the public API of the library. No stability guarantees
are made for imports from other modules or subpackages.

This module re-exports the following constants, functions and classes:

Matrices, distributions and supports
------------------------------------

- :class:`~.SparseStochasticMatrix`
- :func:`~.validate_stochastic`
- :class:`~.Distribution`
- :class:`~.SupportSet`
- :func:`~.support`
- :class:`~.Perturbation`
- :func:`~.apply_perturbation`

Markov-chain utilities
----------------------

- :class:`~.StationaryOptions`
- :func:`~.stationary_distribution`
- :func:`~.solve_stationary`
- :func:`~.verify_stationary`
- :func:`~.is_irreducible`
- :func:`~.strongly_connected_components`

Closed-form results and bounds
------------------------------

- :func:`~.ratio_bounds`
- :func:`~.diagonal_solution`
- :func:`~.lower_bound_l1`
- :func:`~.upper_bound_l1`
- :func:`~.rank_one_target`
- :func:`~.rank_one_solution`
- :func:`~.unconstrained_rank_one_l1`
- :func:`~.metropolis_hastings`

Linear programming
------------------

- :func:`~.build_lp`
- :func:`~.solve_tsdp_lp`
- :func:`~.sparsity_bound`
- :class:`~.ILpBackend`
- :class:`~.RevisedSimplexBackend`
- :class:`~.HighsBackend`
- :class:`~.BackendOptions`

Column generation
-----------------

- :func:`~.column_generate`
- :class:`~.ColGenOptions`
- :class:`~.ColGenTrace`
- :attr:`~.ColGenStatus`

Data and quality
----------------

- :func:`~.gen_queue_matrix`
- :func:`~.target_from_recipe`
- :func:`~.read_matrix_market`
- :func:`~.write_matrix_market`
- :func:`~.read_vector`
- :func:`~.write_vector`
- :func:`~.read_edge_list`
- :func:`~.quality_report`
- :class:`~.QualityReport`

Benchmarks
----------

- :func:`~.run_bench`
- :class:`~.BenchOptions`
- :class:`~.TrialExecutor`
- :class:`~.IParallelContext`
- :class:`~.MultiprocessingContext`
- :class:`~.MultithreadingContext`

Exceptions
----------

- :exc:`~.TsdpError` and its subclasses

"""
from tsdp.bench import BenchOptions, run_bench
from tsdp.closed_form import (
    diagonal_solution,
    lower_bound_l1,
    rank_one_solution,
    rank_one_target,
    ratio_bounds,
    unconstrained_rank_one_l1,
    upper_bound_l1,
)
from tsdp.colgen import ColGenOptions, ColGenTrace, column_generate
from tsdp.colgen_status import ColGenStatus
from tsdp.distribution import Distribution
from tsdp.exceptions import (
    BackendFailure,
    BadArity,
    DimensionMismatch,
    EmptyRow,
    EmptySupport,
    Infeasible,
    NegativeEntry,
    NonPositiveTarget,
    NotIrreducible,
    NotStationary,
    OutOfRange,
    ParseError,
    PivotLimit,
    Reducible,
    RowSumViolation,
    SolveCancelled,
    TsdpError,
    Unbounded,
)
from tsdp.generators import gen_queue_matrix, target_from_recipe
from tsdp.highs_backend import HighsBackend
from tsdp.i_lp_backend import ILpBackend
from tsdp.lp_formulation import build_lp, solve_tsdp_lp, sparsity_bound
from tsdp.markov import (
    is_irreducible,
    solve_stationary,
    stationary_distribution,
    StationaryOptions,
    strongly_connected_components,
    verify_stationary,
)
from tsdp.matrix_io import (
    read_edge_list,
    read_matrix_market,
    read_vector,
    write_matrix_market,
    write_vector,
)
from tsdp.metropolis import metropolis_hastings
from tsdp.parallel_context import (
    IParallelContext,
    MultiprocessingContext,
    MultithreadingContext,
)
from tsdp.perturbation import apply_perturbation, Perturbation
from tsdp.quality import quality_report, QualityReport
from tsdp.revised_simplex import BackendOptions, RevisedSimplexBackend
from tsdp.stochastic_matrix import SparseStochasticMatrix, validate_stochastic
from tsdp.support_set import support, SupportSet
from tsdp.trial_executor import TrialExecutor

__all__ = [
    # Matrices, distributions and supports
    "SparseStochasticMatrix",
    "validate_stochastic",
    "Distribution",
    "SupportSet",
    "support",
    "Perturbation",
    "apply_perturbation",
    # Markov-chain utilities
    "StationaryOptions",
    "stationary_distribution",
    "solve_stationary",
    "verify_stationary",
    "is_irreducible",
    "strongly_connected_components",
    # Closed-form results and bounds
    "ratio_bounds",
    "diagonal_solution",
    "lower_bound_l1",
    "upper_bound_l1",
    "rank_one_target",
    "rank_one_solution",
    "unconstrained_rank_one_l1",
    "metropolis_hastings",
    # Linear programming
    "build_lp",
    "solve_tsdp_lp",
    "sparsity_bound",
    "ILpBackend",
    "RevisedSimplexBackend",
    "HighsBackend",
    "BackendOptions",
    # Column generation
    "column_generate",
    "ColGenOptions",
    "ColGenTrace",
    "ColGenStatus",
    # Data and quality
    "gen_queue_matrix",
    "target_from_recipe",
    "read_matrix_market",
    "write_matrix_market",
    "read_vector",
    "write_vector",
    "read_edge_list",
    "quality_report",
    "QualityReport",
    # Benchmarks
    "run_bench",
    "BenchOptions",
    "TrialExecutor",
    "IParallelContext",
    "MultiprocessingContext",
    "MultithreadingContext",
    # Exceptions
    "TsdpError",
    "BackendFailure",
    "BadArity",
    "DimensionMismatch",
    "EmptyRow",
    "EmptySupport",
    "Infeasible",
    "NegativeEntry",
    "NonPositiveTarget",
    "NotIrreducible",
    "NotStationary",
    "OutOfRange",
    "ParseError",
    "PivotLimit",
    "Reducible",
    "RowSumViolation",
    "SolveCancelled",
    "Unbounded",
]
