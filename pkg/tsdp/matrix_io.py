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
Reading and writing matrices, vectors and edge lists.

Matrix Market files are read by a small parser that reports the line of
any error; writing goes through :func:`scipy.io.mmwrite` with enough
digits for values to survive a round trip exactly.
"""
import itertools
import logging

import numpy as np
import scipy.io
import scipy.sparse

from tsdp.exceptions import EmptyRow, ParseError, Reducible
from tsdp.markov import strongly_connected_components
from tsdp.stochastic_matrix import as_csr, SparseStochasticMatrix

logger = logging.getLogger(__name__)

#: First token of every Matrix Market header.
MM_BANNER = "%%MatrixMarket"

#: Number of significant digits written for floating-point values.
MM_PRECISION = 17

#: Accepted value fields.
_MM_FIELDS = {"real", "integer", "double"}


def read_matrix_market(path, stochastic=False):
    """
    Read a coordinate-format Matrix Market file.

    Parameters
    ----------
    path : str or os.PathLike
    stochastic : bool, optional
        If true, validate the matrix and return it as a
        :class:`~.SparseStochasticMatrix`.

    Returns
    -------
    matrix : scipy.sparse.csr_matrix or SparseStochasticMatrix
        Indices are converted to 0-based; duplicate entries are summed.

    Raises
    ------
    ParseError
        If the file is malformed. The error carries the line number.
    DimensionMismatch, NegativeEntry, RowSumViolation
        If ``stochastic`` is true and validation fails.
    """
    with open(path, encoding="utf-8") as stream:
        lines = _numbered_lines(stream)
        number, header = next(lines, (1, ""))
        _check_header(header, number, "coordinate")

        number, tokens = _next_data_line(lines, "size line")
        shape_and_count = _parse_ints(tokens, 3, number, "size line")
        n_rows, n_cols, count = shape_and_count
        rows = np.empty(count, dtype=np.int64)
        cols = np.empty(count, dtype=np.int64)
        values = np.empty(count)
        for position in range(count):
            number, tokens = _next_data_line(
                lines, f"entry {position + 1} of {count}"
            )
            if len(tokens) != 3:
                raise ParseError(
                    f"expected 'row column value', got {len(tokens)} "
                    "fields",
                    line=number,
                )
            i, j = _parse_ints(tokens[:2], 2, number, "entry")
            if not (1 <= i <= n_rows and 1 <= j <= n_cols):
                raise ParseError(
                    f"entry ({i}, {j}) is outside the declared "
                    f"{n_rows} x {n_cols} shape",
                    line=number,
                )
            rows[position], cols[position] = i - 1, j - 1
            values[position] = _parse_float(tokens[2], number)
        for number, text in lines:
            if text and not text.startswith("%"):
                raise ParseError(
                    f"more than the declared {count} entries", line=number
                )

    matrix = as_csr(
        scipy.sparse.coo_matrix(
            (values, (rows, cols)), shape=(n_rows, n_cols)
        )
    )
    logger.debug(f"read {n_rows} x {n_cols} matrix with {count} entries")
    if stochastic:
        return SparseStochasticMatrix(matrix)
    return matrix


def write_matrix_market(path, matrix, comment=""):
    """
    Write a sparse matrix in coordinate Matrix Market format.

    Parameters
    ----------
    path : str or os.PathLike
    matrix : object
        Anything accepted by :func:`~.as_csr`.
    comment : str, optional
        Text written as a comment after the header.
    """
    coo = as_csr(matrix).tocoo()
    with open(path, "wb") as stream:
        scipy.io.mmwrite(
            stream,
            coo,
            comment=comment,
            field="real",
            precision=MM_PRECISION,
            symmetry="general",
        )


def read_vector(path):
    """
    Read a vector from a file.

    Two layouts are accepted: a Matrix Market array file with a single
    column, or plain whitespace-separated numbers with '%' comment lines.

    Parameters
    ----------
    path : str or os.PathLike

    Returns
    -------
    values : numpy.ndarray

    Raises
    ------
    ParseError
        If the file is malformed.
    """
    with open(path, encoding="utf-8") as stream:
        lines = _numbered_lines(stream)
        first = next(lines, None)
        if first is None:
            raise ParseError("the file is empty", line=1)
        number, text = first
        if text.startswith(MM_BANNER):
            _check_header(text, number, "array")
            number, tokens = _next_data_line(lines, "size line")
            length, width = _parse_ints(tokens, 2, number, "size line")
            if width != 1:
                raise ParseError(
                    f"expected a single column, got {width}", line=number
                )
            values = []
            for number, text in lines:
                if text and not text.startswith("%"):
                    values.extend(
                        _parse_float(token, number) for token in text.split()
                    )
            if len(values) != length:
                raise ParseError(
                    f"expected {length} values, found {len(values)}",
                    line=number,
                )
            return np.array(values)

        values = []
        for number, text in itertools.chain([first], lines):
            if text and not text.startswith("%"):
                values.extend(
                    _parse_float(token, number) for token in text.split()
                )
    if not values:
        raise ParseError("the file contains no values")
    return np.array(values)


def write_vector(path, values, comment=""):
    """
    Write a vector as a single-column Matrix Market array.
    """
    column = np.asarray(values, dtype=float).reshape(-1, 1)
    with open(path, "wb") as stream:
        scipy.io.mmwrite(
            stream,
            column,
            comment=comment,
            field="real",
            precision=MM_PRECISION,
        )


def read_edge_list(path, weighted=False, symmetrize=False, largest_scc=False):
    """
    Build a stochastic matrix from an edge-list file.

    Each non-comment line holds ``i j`` or ``i j w`` with 1-based node
    numbers; lines starting with '%' are comments. Repeated edges add up,
    self-loops are dropped, and each row is normalized to sum to 1.

    Parameters
    ----------
    path : str or os.PathLike
    weighted : bool, optional
        Read the third column as the edge weight. Otherwise every edge
        has weight 1 and extra columns are ignored.
    symmetrize : bool, optional
        Add the reverse of every edge.
    largest_scc : bool, optional
        Restrict the graph to its largest strongly connected component
        instead of failing when it is reducible.

    Returns
    -------
    G : SparseStochasticMatrix

    Raises
    ------
    ParseError
        If a line is malformed.
    EmptyRow
        If some node has no outgoing edge.
    Reducible
        If the graph is not strongly connected and ``largest_scc`` is
        false.
    """
    sources, targets, weights = [], [], []
    with open(path, encoding="utf-8") as stream:
        for number, text in _numbered_lines(stream):
            tokens = text.split()
            if not tokens or text.startswith("%"):
                continue
            needed = 3 if weighted else 2
            if len(tokens) < needed:
                raise ParseError(
                    f"expected at least {needed} fields, got {len(tokens)}",
                    line=number,
                )
            i, j = _parse_ints(tokens[:2], 2, number, "edge")
            if i < 1 or j < 1:
                raise ParseError("node numbers start at 1", line=number)
            weight = _parse_float(tokens[2], number) if weighted else 1.0
            if weight <= 0.0:
                raise ParseError(
                    f"edge weight must be positive, got {weight}",
                    line=number,
                )
            sources.append(i - 1)
            targets.append(j - 1)
            weights.append(weight)
    if not sources:
        raise ParseError("the file contains no edges")

    n = max(max(sources), max(targets)) + 1
    sources, targets = np.array(sources), np.array(targets)
    loops = sources == targets
    if loops.any():
        logger.debug(f"dropping {int(loops.sum())} self-loops")
    weights = np.array(weights)[~loops]
    adjacency = as_csr(
        scipy.sparse.coo_matrix(
            (weights, (sources[~loops], targets[~loops])), shape=(n, n)
        )
    )
    if symmetrize:
        adjacency = as_csr(adjacency + adjacency.T)

    if largest_scc:
        count, labels = strongly_connected_components(adjacency)
        if count > 1:
            largest = np.argmax(np.bincount(labels))
            keep = np.flatnonzero(labels == largest)
            logger.info(
                f"keeping the largest of {count} strongly connected "
                f"components: {keep.size} of {n} nodes"
            )
            adjacency = as_csr(adjacency[keep][:, keep])

    totals = np.asarray(adjacency.sum(axis=1)).ravel()
    if np.any(totals == 0.0):
        raise EmptyRow(int(np.argmin(totals)))
    count, _ = strongly_connected_components(adjacency)
    if count > 1:
        raise Reducible(
            f"the graph has {count} strongly connected components; "
            "use the largest-component option to keep only the largest"
        )
    return SparseStochasticMatrix(
        scipy.sparse.diags(1.0 / totals) @ adjacency
    )


def _numbered_lines(stream):
    """
    Yield (1-based line number, stripped text) for each line.
    """
    for number, text in enumerate(stream, start=1):
        yield number, text.strip()


def _next_data_line(lines, what):
    """
    Skip comments and blank lines; return (line number, tokens) of the
    next data line.
    """
    number = None
    for number, text in lines:
        if text and not text.startswith("%"):
            return number, text.split()
    raise ParseError(f"unexpected end of file while reading {what}", number)


def _check_header(text, number, layout):
    tokens = text.lower().split()
    if (
        len(tokens) != 5
        or tokens[0] != MM_BANNER.lower()
        or tokens[1] != "matrix"
        or tokens[2] != layout
        or tokens[3] not in _MM_FIELDS
        or tokens[4] != "general"
    ):
        raise ParseError(
            f"expected header '{MM_BANNER} matrix {layout} real general', "
            f"got {text!r}",
            line=number,
        )


def _parse_ints(tokens, count, number, what):
    if len(tokens) != count:
        raise ParseError(
            f"{what} should have {count} integer fields, got {len(tokens)}",
            line=number,
        )
    try:
        return [int(token) for token in tokens]
    except ValueError:
        raise ParseError(
            f"malformed {what}: {tokens!r}", line=number
        ) from None


def _parse_float(token, number):
    try:
        return float(token)
    except ValueError:
        raise ParseError(f"malformed number {token!r}", line=number) from None
