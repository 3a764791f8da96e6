# (C) Copyright 2024 Enthought, Inc., Austin, TX
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license. The license
# is also available online at http://www.enthought.com/licenses/BSD.txt
#
# Thanks for using Enthought open source!

import time
import unittest

import numpy as np

from tsdp.basis_status import AT_LOWER, BASIC, STATUS_CODES
from tsdp.exceptions import PivotLimit
from tsdp.generators import gen_queue_matrix, target_power_step
from tsdp.lp_formulation import build_lp, solve_tsdp_lp
from tsdp.lp_solution import artificial_key, Basis, extract_duals
from tsdp.revised_simplex import BackendOptions, RevisedSimplexBackend
from tsdp.support_set import support, SupportSet
from tsdp.testing.fixtures import ring_matrix, RING_TARGET
from tsdp.testing.skip_markers import requires_slow_tests
from tsdp.tests.lp_backend_tests import LpBackendTests, random_instance


class TestRevisedSimplexBackend(LpBackendTests, unittest.TestCase):
    def make_backend(self):
        return RevisedSimplexBackend()

    def test_default_options(self):
        backend = RevisedSimplexBackend()
        self.assertEqual(backend.name, "simplex")
        self.assertEqual(backend.options.feas_tol, 1e-9)
        self.assertEqual(backend.options.refactor_interval, 100)

    def test_basis_statuses(self):
        G = ring_matrix()
        problem = build_lp(G, RING_TARGET, SupportSet.full(4))
        solution = RevisedSimplexBackend().solve(problem)
        basis = solution.basis
        self.assertEqual(basis.size, problem.num_rows)
        np.testing.assert_array_equal(basis.keys, problem.variable_keys)

        basic = solution.statuses == STATUS_CODES[BASIC]
        self.assertEqual(solution.num_basic, int(basic.sum()))
        self.assertLessEqual(solution.num_basic, problem.num_rows)
        np.testing.assert_allclose(
            solution.reduced_costs[basic], 0.0, atol=1e-9
        )
        at_lower = solution.statuses == STATUS_CODES[AT_LOWER]
        np.testing.assert_array_equal(solution.primal[at_lower], 0.0)
        self.assertGreaterEqual(solution.reduced_costs[at_lower].min(), -1e-9)

        key = int(problem.variable_keys[0])
        self.assertIn(basis.status_of(key), STATUS_CODES)
        self.assertEqual(solution.status_of(0), basis.status_of(key))
        with self.assertRaises(KeyError):
            basis.status_of(-5)

    def test_extract_duals(self):
        problem = build_lp(ring_matrix(), RING_TARGET, SupportSet.full(4))
        solution = RevisedSimplexBackend().solve(problem)
        y0, y_mu = extract_duals(solution)
        self.assertEqual(y0.shape, (4,))
        self.assertEqual(y_mu.shape, (4,))
        np.testing.assert_array_equal(
            np.concatenate([y0, y_mu]), solution.duals
        )

    def test_warm_start_from_optimal_basis(self):
        G = ring_matrix()
        omega = SupportSet.full(4)
        _, cold = solve_tsdp_lp(G, RING_TARGET, omega)
        _, warm = solve_tsdp_lp(G, RING_TARGET, omega, warm=cold.basis)
        self.assertEqual(warm.pivots, 0)
        self.assertAlmostEqual(warm.objective, cold.objective, places=12)

    def test_warm_start_on_larger_support(self):
        G = ring_matrix()
        small = support(G, include_diagonal=True)
        _, first = solve_tsdp_lp(G, RING_TARGET, small)
        _, cold = solve_tsdp_lp(G, RING_TARGET, SupportSet.full(4))
        _, warm = solve_tsdp_lp(
            G, RING_TARGET, SupportSet.full(4), warm=first.basis
        )
        self.assertAlmostEqual(warm.objective, cold.objective, places=10)

    def test_incompatible_warm_basis_is_ignored(self):
        G = ring_matrix()
        omega = SupportSet.full(4)
        wrong_size = Basis(
            basic_keys=np.array([artificial_key(0)], dtype=np.int64),
            keys=np.empty(0, dtype=np.int64),
            statuses=np.empty(0, dtype=np.int8),
        )
        unknown = Basis(
            basic_keys=np.arange(10**6, 10**6 + 8),
            keys=np.empty(0, dtype=np.int64),
            statuses=np.empty(0, dtype=np.int8),
        )
        for basis in [wrong_size, unknown]:
            _, solution = solve_tsdp_lp(G, RING_TARGET, omega, warm=basis)
            self.assertAlmostEqual(solution.objective, 6 / 8, places=10)

    def test_artificial_keys(self):
        self.assertEqual(artificial_key(0), -1)
        self.assertEqual(artificial_key(7), -8)

    def test_pivot_limit(self):
        backend = RevisedSimplexBackend(BackendOptions(max_pivots=1))
        with self.assertRaises(PivotLimit):
            solve_tsdp_lp(
                ring_matrix(), RING_TARGET, SupportSet.full(4), backend=backend
            )

    def test_frequent_refactorization(self):
        backend = RevisedSimplexBackend(BackendOptions(refactor_interval=1))
        rng = np.random.default_rng(99)
        for _ in range(5):
            G, mu_hat = random_instance(rng, 6)
            omega = SupportSet.full(6)
            _, reference = solve_tsdp_lp(G, mu_hat, omega)
            _, solution = solve_tsdp_lp(G, mu_hat, omega, backend=backend)
            self.assertAlmostEqual(
                solution.objective, reference.objective, delta=1e-10
            )

    def test_bland_rule(self):
        backend = RevisedSimplexBackend(BackendOptions(degenerate_factor=1))
        rng = np.random.default_rng(7)
        G, mu_hat = random_instance(rng, 6)
        omega = SupportSet.full(6)
        _, reference = solve_tsdp_lp(G, mu_hat, omega)
        _, solution = solve_tsdp_lp(G, mu_hat, omega, backend=backend)
        self.assertAlmostEqual(
            solution.objective, reference.objective, delta=1e-10
        )

    def test_pricing_blocks_agree(self):
        rng = np.random.default_rng(31)
        backends = [
            RevisedSimplexBackend(BackendOptions(pricing_blocks=blocks))
            for blocks in [1, 3, 8, 1000]
        ]
        for _ in range(5):
            G, mu_hat = random_instance(rng, 7)
            omega = SupportSet.full(7)
            objectives = [
                solve_tsdp_lp(G, mu_hat, omega, backend=backend)[1].objective
                for backend in backends
            ]
            for objective in objectives[1:]:
                self.assertAlmostEqual(objective, objectives[0], delta=1e-10)

    def test_cold_start_without_crash(self):
        backend = RevisedSimplexBackend(BackendOptions(crash=False))
        rng = np.random.default_rng(5)
        for _ in range(5):
            G, mu_hat = random_instance(rng, 6)
            omega = SupportSet.full(6)
            _, reference = solve_tsdp_lp(G, mu_hat, omega)
            _, solution = solve_tsdp_lp(G, mu_hat, omega, backend=backend)
            self.assertAlmostEqual(
                solution.objective, reference.objective, delta=1e-10
            )
        G = gen_queue_matrix(30, 2, seed=3)
        mu_hat = target_power_step(G)
        omega = support(G, include_diagonal=True)
        _, reference = solve_tsdp_lp(G, mu_hat, omega)
        _, solution = solve_tsdp_lp(G, mu_hat, omega, backend=backend)
        self.assertAlmostEqual(
            solution.objective, reference.objective, delta=1e-9
        )

    @requires_slow_tests
    def test_large_queue_on_g_plus_i(self):
        G = gen_queue_matrix(10**4, 2, seed=0)
        mu_hat = target_power_step(G)
        omega = support(G, include_diagonal=True)

        start = time.perf_counter()
        delta, solution = solve_tsdp_lp(G, mu_hat, omega)
        elapsed = time.perf_counter() - start

        self.assertLess(elapsed, 60.0)
        self.assertAlmostEqual(
            delta.l1_norm(), solution.objective, delta=1e-6
        )
        problem = build_lp(G, mu_hat, omega)
        residual = problem.constraint_matrix() @ solution.primal - problem.rhs
        self.assertLess(np.abs(residual).max(), 1e-7)
