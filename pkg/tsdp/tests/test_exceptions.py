# (C) Copyright 2024 Enthought, Inc., Austin, TX
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license. The license
# is also available online at http://www.enthought.com/licenses/BSD.txt
#
# Thanks for using Enthought open source!

import pickle
import unittest

from tsdp.exceptions import (
    DimensionMismatch,
    EmptyRow,
    Infeasible,
    NotIrreducible,
    ParseError,
    Reducible,
    TsdpError,
)


class TestExceptions(unittest.TestCase):
    def test_hierarchy(self):
        self.assertTrue(issubclass(Reducible, NotIrreducible))
        self.assertTrue(issubclass(Infeasible, TsdpError))
        self.assertTrue(issubclass(DimensionMismatch, ValueError))
        self.assertTrue(issubclass(ParseError, ValueError))

    def test_parse_error_line(self):
        error = ParseError("bad value", line=7)
        self.assertEqual(error.line, 7)
        self.assertEqual(str(error), "line 7: bad value")
        self.assertEqual(str(ParseError("bad value")), "bad value")

    def test_parse_error_pickles(self):
        error = pickle.loads(pickle.dumps(ParseError("bad value", line=3)))
        self.assertEqual(error.line, 3)
        self.assertEqual(str(error), "line 3: bad value")

    def test_empty_row(self):
        error = pickle.loads(pickle.dumps(EmptyRow(4)))
        self.assertEqual(error.row, 4)
        self.assertIn("row 5", str(error))
