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

from tsdp.highs_backend import HighsBackend, HighsOptions
from tsdp.lp_formulation import solve_tsdp_lp
from tsdp.support_set import SupportSet
from tsdp.testing.fixtures import ring_matrix, RING_TARGET
from tsdp.tests.lp_backend_tests import LpBackendTests


class TestHighsBackend(LpBackendTests, unittest.TestCase):
    def make_backend(self):
        return HighsBackend()

    def test_no_basis(self):
        _, solution = solve_tsdp_lp(
            ring_matrix(),
            RING_TARGET,
            SupportSet.full(4),
            backend=HighsBackend(),
        )
        self.assertIsNone(solution.basis)

    def test_warm_start_ignored(self):
        G = ring_matrix()
        omega = SupportSet.full(4)
        _, cold = solve_tsdp_lp(G, RING_TARGET, omega)
        _, solution = solve_tsdp_lp(
            G, RING_TARGET, omega, backend=HighsBackend(), warm=cold.basis
        )
        self.assertAlmostEqual(solution.objective, 6 / 8, places=10)


class TestHighsBackendAutomaticMethod(LpBackendTests, unittest.TestCase):
    def make_backend(self):
        return HighsBackend(HighsOptions(method="highs"))
