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
Exceptions raised by the tsdp package.
"""


class TsdpError(Exception):
    """
    Base class for all domain errors raised by this package.
    """


class NegativeEntry(TsdpError):
    """
    Raised when a matrix that must be nonnegative has a negative entry.
    """


class RowSumViolation(TsdpError):
    """
    Raised when a row sum deviates from its required value beyond tolerance.
    """


class NotIrreducible(TsdpError):
    """
    Raised when an operation requires an irreducible matrix.
    """


class Reducible(NotIrreducible):
    """
    Raised when a graph read from disk is not strongly connected.
    """


class DimensionMismatch(TsdpError, ValueError):
    """
    Raised when operands have incompatible dimensions.
    """


class NotStationary(TsdpError):
    """
    Raised when a supplied distribution is not stationary for a matrix.
    """


class OutOfRange(TsdpError, ValueError):
    """
    Raised when a scalar parameter lies outside its admissible range.
    """


class BadArity(TsdpError, ValueError):
    """
    Raised when a generator is asked for an impossible neighbourhood size.
    """


class NonPositiveTarget(TsdpError):
    """
    Raised when a constructed target distribution has a nonpositive entry.
    """


class EmptySupport(TsdpError):
    """
    Raised when an LP is requested over an empty support set.
    """


class Infeasible(TsdpError):
    """
    Raised when a linear program has no feasible point.
    """


class Unbounded(TsdpError):
    """
    Raised when a linear program is unbounded below.

    For well-formed TSDP problems this never happens, so seeing it
    indicates an internal error.
    """


class PivotLimit(TsdpError):
    """
    Raised when the simplex method exceeds its pivot budget.
    """


class BackendFailure(TsdpError):
    """
    Raised when an LP backend returns a result that fails a consistency
    check.
    """


class SolveCancelled(TsdpError):
    """
    Raised by a progress callback to stop a column-generation run.
    """


class ParseError(TsdpError, ValueError):
    """
    Raised when an input file cannot be parsed.

    Parameters
    ----------
    message : str
        Description of the problem.
    line : int, optional
        1-based line number at which the problem was found.
    """

    def __init__(self, message, line=None):
        self._message = message
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line

    def __reduce__(self):
        return type(self), (self._message, self.line)


class EmptyRow(TsdpError):
    """
    Raised when a graph has a node without outgoing edges.

    Parameters
    ----------
    row : int
        0-based index of the empty row.
    """

    def __init__(self, row):
        super().__init__(f"row {row + 1} has no outgoing edges")
        self.row = row

    def __reduce__(self):
        return type(self), (self.row,)


class ConvergenceWarning(UserWarning):
    """
    Warning issued when an iterative method stops before reaching its
    tolerance.
    """
