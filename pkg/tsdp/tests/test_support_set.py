# (C) Copyright 2024 Enthought, Inc., Austin, TX
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license. The license
# is also available online at http://www.enthought.com/licenses/BSD.txt
#
# Thanks for using Enthought open source!

import unittest

import numpy as np

from tsdp.exceptions import DimensionMismatch, OutOfRange
from tsdp.support_set import (
    EXPLICIT,
    FULL,
    G_PLUS_I,
    matrix_keys,
    support,
    SupportSet,
)
from tsdp.testing.fixtures import cycle_matrix, ring_matrix


class TestSupportSet(unittest.TestCase):
    def test_keys_sorted_and_unique(self):
        omega = SupportSet(3, keys=[5, 1, 5, 0])
        np.testing.assert_array_equal(omega.keys, [0, 1, 5])
        self.assertEqual(len(omega), 3)
        self.assertEqual(omega.kind, EXPLICIT)

    def test_out_of_range_keys(self):
        with self.assertRaises(OutOfRange):
            SupportSet(2, keys=[4])
        with self.assertRaises(OutOfRange):
            SupportSet(2, keys=[-1])

    def test_from_pairs(self):
        omega = SupportSet.from_pairs(3, [0, 2], [1, 2])
        self.assertIn((0, 1), omega)
        self.assertIn((2, 2), omega)
        self.assertNotIn((1, 0), omega)
        self.assertNotIn((3, 0), omega)
        with self.assertRaises(OutOfRange):
            SupportSet.from_pairs(3, [0], [3])
        with self.assertRaises(DimensionMismatch):
            SupportSet.from_pairs(3, [0, 1], [1])

    def test_iteration_order(self):
        omega = SupportSet(2, keys=[3, 0, 2])
        self.assertEqual(list(omega), [(0, 0), (1, 0), (1, 1)])

    def test_full(self):
        omega = SupportSet.full(3)
        self.assertTrue(omega.is_full)
        self.assertEqual(omega.kind, FULL)
        self.assertEqual(len(omega), 9)
        self.assertIn((2, 0), omega)
        self.assertEqual(omega.keys.size, 0)
        np.testing.assert_array_equal(
            omega.contains_keys([0, 8, 9, -1]), [True, True, False, False]
        )
        np.testing.assert_array_equal(omega.materialized_keys(), range(9))

    def test_full_iterates_in_blocks(self):
        omega = SupportSet.full(5)
        blocks = list(omega.iter_key_blocks(block_rows=2))
        self.assertEqual([block.size for block in blocks], [10, 10, 5])
        np.testing.assert_array_equal(np.concatenate(blocks), range(25))

    def test_contains_keys(self):
        omega = SupportSet(3, keys=[1, 4, 8])
        np.testing.assert_array_equal(
            omega.contains_keys([0, 1, 4, 7, 8]),
            [False, True, True, False, True],
        )
        empty = SupportSet(3)
        self.assertFalse(empty.contains_keys([0, 1]).any())

    def test_set_operations(self):
        first = SupportSet(3, keys=[0, 1, 2])
        second = SupportSet(3, keys=[2, 3])
        np.testing.assert_array_equal(first.intersection(second).keys, [2])
        np.testing.assert_array_equal(
            first.union(second).keys, [0, 1, 2, 3]
        )
        np.testing.assert_array_equal(
            first.add_keys([8, 0]).keys, [0, 1, 2, 8]
        )
        full = SupportSet.full(3)
        self.assertIs(full.intersection(second), second)
        self.assertIs(second.union(full), full)

    def test_incompatible_dimensions(self):
        with self.assertRaises(DimensionMismatch):
            SupportSet(2, keys=[0]).union(SupportSet(3, keys=[0]))

    def test_pairs(self):
        rows, cols = SupportSet(3, keys=[1, 5]).pairs()
        np.testing.assert_array_equal(rows, [0, 1])
        np.testing.assert_array_equal(cols, [1, 2])


class TestSupport(unittest.TestCase):
    def test_support_of_ring(self):
        omega = support(ring_matrix())
        self.assertEqual(len(omega), 12)
        self.assertNotIn((0, 2), omega)
        with_diagonal = support(ring_matrix(), include_diagonal=True)
        self.assertEqual(len(with_diagonal), 12)
        self.assertEqual(with_diagonal.kind, G_PLUS_I)

    def test_support_of_cycle_plus_identity(self):
        omega = support(cycle_matrix(), include_diagonal=True)
        self.assertEqual(len(omega), 6)
        for i in range(3):
            self.assertIn((i, i), omega)

    def test_matrix_keys(self):
        keys = matrix_keys(cycle_matrix().tocsr())
        np.testing.assert_array_equal(keys, [1, 5, 6])

    def test_not_square(self):
        with self.assertRaises(DimensionMismatch):
            support(np.ones((2, 3)))
