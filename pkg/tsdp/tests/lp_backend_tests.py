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
Tests shared by every LP backend.
"""
import numpy as np

from tsdp.basis_status import AT_UPPER, STATUS_CODES
from tsdp.distribution import Distribution
from tsdp.exceptions import Infeasible
from tsdp.lp_formulation import build_lp, solve_tsdp_lp, sparsity_bound
from tsdp.markov import verify_stationary
from tsdp.perturbation import apply_perturbation
from tsdp.stochastic_matrix import SparseStochasticMatrix
from tsdp.support_set import support, SupportSet
from tsdp.testing.dense_oracle import dense_oracle
from tsdp.testing.fixtures import (
    cycle_matrix,
    CYCLE_TARGET,
    ring_matrix,
    RING_TARGET,
    skewed_ring_matrix,
    SKEWED_TARGET,
)


def random_instance(rng, n, density=0.6):
    """
    Random stochastic matrix with a positive diagonal, and a random target.
    """
    pattern = (rng.uniform(size=(n, n)) < density) | np.eye(n, dtype=bool)
    weights = np.where(pattern, rng.uniform(0.05, 1.0, (n, n)), 0.0)
    G = SparseStochasticMatrix(weights / weights.sum(axis=1)[:, np.newaxis])
    mu_hat = Distribution.from_weights(rng.uniform(0.05, 1.0, n))
    return G, mu_hat


class LpBackendTests:
    """
    Mixin for testing an LP backend.

    Test classes using this mixin should also derive from
    unittest.TestCase and provide a ``make_backend`` method.
    """

    def solve(self, G, mu_hat, omega):
        return solve_tsdp_lp(G, mu_hat, omega, backend=self.make_backend())

    def assert_feasible(self, G, mu_hat, delta):
        G_hat = apply_perturbation(G, delta)
        self.assertLessEqual(verify_stationary(G_hat, mu_hat), 1e-9)

    def test_name(self):
        self.assertIsInstance(self.make_backend().name, str)

    def test_ring_on_full_support(self):
        G = ring_matrix()
        delta, solution = self.solve(G, RING_TARGET, SupportSet.full(4))
        self.assertAlmostEqual(solution.objective, 6 / 8, places=10)
        self.assertAlmostEqual(delta.l1_norm(), 6 / 8, places=10)
        self.assert_feasible(G, RING_TARGET, delta)

    def test_ring_on_g_plus_i(self):
        G = ring_matrix()
        delta, solution = self.solve(
            G, RING_TARGET, support(G, include_diagonal=True)
        )
        # Bracketed by the full-support optimum and the Metropolis-Hastings
        # solution, which lies in supp(G + I).
        self.assertGreaterEqual(solution.objective, 6 / 8 - 1e-10)
        self.assertLessEqual(solution.objective, 7 / 8 + 1e-10)
        self.assertTrue(
            support(G, include_diagonal=True)
            .contains_keys(delta.support().keys)
            .all()
        )
        self.assert_feasible(G, RING_TARGET, delta)

    def test_rank_one_target(self):
        G = skewed_ring_matrix()
        delta, solution = self.solve(G, SKEWED_TARGET, SupportSet.full(4))
        self.assertAlmostEqual(solution.objective, 7 / 24, places=10)
        self.assert_feasible(G, SKEWED_TARGET, delta)

    def test_cycle(self):
        G = cycle_matrix()
        for omega in [SupportSet.full(3), support(G, include_diagonal=True)]:
            delta, solution = self.solve(G, CYCLE_TARGET, omega)
            self.assertAlmostEqual(solution.objective, 1.0, places=10)
            self.assert_feasible(G, CYCLE_TARGET, delta)

    def test_infeasible_support(self):
        G = cycle_matrix()
        with self.assertRaises(Infeasible):
            self.solve(G, CYCLE_TARGET, support(G))

    def test_duals_price_out_every_position(self):
        G = ring_matrix()
        omega = SupportSet.full(4)
        problem = build_lp(G, RING_TARGET, omega)
        solution = self.make_backend().solve(problem)
        y0, y_mu = solution.y0, solution.y_mu
        rows, cols = omega.pairs()
        reduced = 1.0 - y0[rows] - RING_TARGET.values[rows] * y_mu[cols]
        self.assertGreaterEqual(reduced.min(), -1e-8)
        self.assertEqual(solution.reduced_costs.shape, (28,))

    def test_matches_dense_oracle(self):
        rng = np.random.default_rng(12345)
        for _ in range(100):
            n = int(rng.integers(2, 7))
            G, mu_hat = random_instance(rng, n)
            omega = SupportSet.full(n)
            delta, solution = self.solve(G, mu_hat, omega)
            expected, _ = dense_oracle(G, mu_hat)
            self.assertAlmostEqual(solution.objective, expected, delta=1e-8)
            self.assertLessEqual(delta.nnz, sparsity_bound(G, omega))
            self.assert_feasible(G, mu_hat, delta)

    def test_sparser_than_bound(self):
        rng = np.random.default_rng(777)
        num_instances, num_strict = 50, 0
        for _ in range(num_instances):
            n = int(rng.integers(4, 9))
            G, mu_hat = random_instance(rng, n, density=0.3)
            omega = SupportSet.full(n)
            delta, _ = self.solve(G, mu_hat, omega)
            bound = sparsity_bound(G, omega)
            self.assertLessEqual(delta.nnz, bound)
            num_strict += delta.nnz < bound
        self.assertGreaterEqual(num_strict, 0.9 * num_instances)

    def test_strong_duality(self):
        rng = np.random.default_rng(2468)
        backend = self.make_backend()
        for _ in range(20):
            n = int(rng.integers(2, 7))
            G, mu_hat = random_instance(rng, n)
            problem = build_lp(G, mu_hat, SupportSet.full(n))
            solution = backend.solve(problem)
            at_upper = solution.statuses == STATUS_CODES[AT_UPPER]
            dual_objective = (
                problem.rhs @ solution.duals
                + problem.upper[at_upper] @ solution.reduced_costs[at_upper]
            )
            self.assertAlmostEqual(
                solution.objective,
                dual_objective,
                delta=1e-8 * max(1.0, solution.objective),
            )

    def test_deterministic(self):
        rng = np.random.default_rng(1357)
        for _ in range(5):
            n = int(rng.integers(3, 7))
            G, mu_hat = random_instance(rng, n)
            problem = build_lp(G, mu_hat, SupportSet.full(n))
            first = self.make_backend().solve(problem)
            second = self.make_backend().solve(problem)
            np.testing.assert_array_equal(first.primal, second.primal)
            np.testing.assert_array_equal(first.statuses, second.statuses)
            np.testing.assert_array_equal(first.duals, second.duals)
            if first.basis is not None:
                np.testing.assert_array_equal(
                    first.basis.basic_keys, second.basis.basic_keys
                )

    def test_restricted_support_matches_dense_oracle(self):
        rng = np.random.default_rng(54321)
        for _ in range(10):
            n = int(rng.integers(3, 7))
            G, mu_hat = random_instance(rng, n, density=0.4)
            omega = support(G, include_diagonal=True)
            _, solution = self.solve(G, mu_hat, omega)
            expected, _ = dense_oracle(G, mu_hat, allowed=G.toarray() > 0)
            self.assertAlmostEqual(solution.objective, expected, delta=1e-8)
