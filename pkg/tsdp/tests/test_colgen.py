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

from tsdp.colgen import (
    ColGenOptions,
    ColGenRound,
    ColGenTrace,
    column_generate,
    price_entries,
    PRICING_TOL,
)
from tsdp.colgen_status import (
    CANCELLED,
    CONVERGED,
    HEURISTIC_OPTIMAL,
    MAX_ROUNDS,
    TOLERANCE,
    TRIVIAL,
)
from tsdp.distribution import Distribution
from tsdp.exceptions import SolveCancelled
from tsdp.generators import gen_queue_matrix, target_power_step
from tsdp.highs_backend import HighsBackend
from tsdp.lp_formulation import solve_tsdp_lp
from tsdp.markov import is_irreducible
from tsdp.stochastic_matrix import SparseStochasticMatrix
from tsdp.support_set import support, SupportSet
from tsdp.testing.fixtures import (
    cycle_matrix,
    CYCLE_TARGET,
    ring_matrix,
    RING_TARGET,
)
from tsdp.testing.skip_markers import requires_slow_tests
from tsdp.tests.lp_backend_tests import random_instance


def shortcut_instance():
    """
    A chain whose optimal perturbation needs a position outside
    supp(G + I).

    Mass has to move from column 1 to column 2. On supp(G + I) it must
    travel through column 3 via rows 3 and 2; with row 3 allowed to write
    to (3, 2) a single move suffices.
    """
    G = SparseStochasticMatrix(
        np.array(
            [
                [0.0, 1.0, 0.0, 0.0],
                [0.0, 0.0, 1.0, 0.0],
                [0.0, 0.0, 0.0, 1.0],
                [0.5, 0.5, 0.0, 0.0],
            ]
        )
    )
    mu_hat = Distribution([3 / 20, 5 / 20, 6 / 20, 6 / 20])
    return G, mu_hat


def irreducible_instance(rng, n):
    while True:
        G, mu_hat = random_instance(rng, n, density=0.5)
        if is_irreducible(G):
            return G, mu_hat


def reduced_costs(solution, mu_hat, positions):
    """
    Entries Rᵢⱼ = y⁰ᵢ + μ̂ᵢ·yμⱼ − 1 at the given positions.
    """
    rows, cols = positions.pairs()
    return (
        solution.y0[rows]
        + mu_hat.values[rows] * solution.y_mu[cols]
        - 1.0
    )


class TestPriceEntries(unittest.TestCase):
    def test_positive_entries_only(self):
        omega = SupportSet.full(2)
        chosen = price_entries(
            y0=[0.5, 0.0],
            y_mu=[0.0, 2.0],
            mu_hat=Distribution([0.5, 0.5]),
            omega=omega,
            current=SupportSet(2),
            count=5,
        )
        # Rᵢⱼ = y⁰ᵢ + μ̂ᵢyμⱼ − 1 is positive only at (0, 1).
        np.testing.assert_array_equal(chosen.keys, [1])

    def test_current_support_skipped(self):
        chosen = price_entries(
            y0=[0.5, 0.0],
            y_mu=[0.0, 2.0],
            mu_hat=Distribution([0.5, 0.5]),
            omega=SupportSet.full(2),
            current=SupportSet(2, keys=[1]),
            count=5,
        )
        self.assertEqual(len(chosen), 0)

    def test_count_keeps_largest(self):
        chosen = price_entries(
            y0=[1.0, 0.5],
            y_mu=[1.0, 3.0],
            mu_hat=Distribution([0.5, 0.5]),
            omega=SupportSet.full(2),
            current=SupportSet(2),
            count=1,
        )
        # R = [[0.5, 1.5], [0.0, 1.0]]
        np.testing.assert_array_equal(chosen.keys, [1])

    def test_against_full_scan(self):
        G = ring_matrix()
        current = support(G, include_diagonal=True)
        _, solution = solve_tsdp_lp(G, RING_TARGET, current)
        omega = SupportSet.full(4)
        chosen = price_entries(
            solution.y0,
            solution.y_mu,
            RING_TARGET,
            omega,
            current,
            count=len(current),
        )
        rows, cols = omega.pairs()
        costs = (
            solution.y0[rows]
            + RING_TARGET.values[rows] * solution.y_mu[cols]
            - 1.0
        )
        outside = ~current.contains_keys(omega.materialized_keys())
        expected = omega.materialized_keys()[
            outside & (costs > PRICING_TOL)
        ]
        np.testing.assert_array_equal(chosen.keys, expected)

    def test_heuristic_restricted_to_candidates(self):
        options = ColGenOptions(m=1)
        chosen = price_entries(
            y0=[0.0, 0.0, 2.0],
            y_mu=[0.0, 0.0, 3.0],
            mu_hat=Distribution([0.25, 0.25, 0.5]),
            omega=SupportSet.full(3),
            current=SupportSet(3),
            count=10,
            options=options,
            exhaustive=False,
        )
        # Row 2 has the largest y⁰ and the largest target weight, so it is
        # the only candidate row.
        rows, _ = chosen.pairs()
        self.assertTrue(np.all(rows == 2))
        self.assertIn((2, 2), chosen)

    @requires_slow_tests
    def test_heuristic_agrees_with_full_scan(self):
        # A round agrees when the best heuristic pick ranks among the
        # positions the full scan would add.
        rounds = agreeing = 0
        for seed in range(4):
            G = gen_queue_matrix(2000, 2, seed)
            mu_hat = target_power_step(G)
            omega = SupportSet.full(G.n)
            current = support(G, include_diagonal=True)
            count = len(current)
            for _ in range(3):
                _, solution = solve_tsdp_lp(
                    G, mu_hat, current, backend=HighsBackend()
                )
                full_scan, heuristic = [
                    price_entries(
                        solution.y0,
                        solution.y_mu,
                        mu_hat,
                        omega,
                        current,
                        count,
                        exhaustive=exhaustive,
                    )
                    for exhaustive in [True, False]
                ]
                if len(full_scan) == 0:
                    break
                rounds += 1
                threshold = reduced_costs(solution, mu_hat, full_scan).min()
                if len(heuristic) > 0:
                    best = reduced_costs(solution, mu_hat, heuristic).max()
                    agreeing += best >= threshold
                current = current.union(full_scan)
        self.assertGreaterEqual(agreeing, 0.95 * rounds)


class TestColumnGenerate(unittest.TestCase):
    def test_exact_run_reaches_full_optimum(self):
        G = ring_matrix()
        delta, trace = column_generate(
            G, RING_TARGET, options=ColGenOptions(delta=0.0)
        )
        self.assertEqual(trace.status, CONVERGED)
        self.assertAlmostEqual(trace.objective, 6 / 8, places=10)
        self.assertAlmostEqual(delta.l1_norm(), 6 / 8, places=10)
        self.assertAlmostEqual(trace.initial_objective, 10 / 8, places=12)
        objectives = trace.objectives()
        for before, after in zip(objectives, objectives[1:]):
            self.assertLessEqual(after, before + 1e-12)
        self.assertEqual(trace.rounds[0].support_size, 12)
        self.assertEqual(trace.num_rounds, len(objectives))

    def test_cycle(self):
        delta, trace = column_generate(
            cycle_matrix(), CYCLE_TARGET, options=ColGenOptions(delta=0.0)
        )
        self.assertEqual(trace.status, CONVERGED)
        self.assertAlmostEqual(trace.objective, 1.0, places=10)

    def test_trivial(self):
        delta, trace = column_generate(ring_matrix(), Distribution.uniform(4))
        self.assertEqual(trace.status, TRIVIAL)
        self.assertEqual(trace.num_rounds, 0)
        self.assertEqual(delta.nnz, 0)
        self.assertEqual(trace.objective, trace.initial_objective)

    def test_tolerance_stop(self):
        _, trace = column_generate(
            ring_matrix(), RING_TARGET, options=ColGenOptions(delta=0.5)
        )
        self.assertEqual(trace.status, TOLERANCE)
        self.assertEqual(trace.num_rounds, 1)
        self.assertEqual(trace.rounds[0].added, 0)

    def test_max_rounds(self):
        _, trace = column_generate(
            *shortcut_instance(),
            options=ColGenOptions(delta=0.0, max_rounds=1),
        )
        # The restricted optimum 2/3 on supp(G + I) is above the full
        # optimum 1/3, so pricing finds columns and the limit is hit.
        self.assertEqual(trace.status, MAX_ROUNDS)
        self.assertEqual(trace.num_rounds, 1)
        self.assertGreater(trace.rounds[0].added, 0)
        self.assertAlmostEqual(trace.objective, 2 / 3, places=10)

    def test_shortcut_found_in_second_round(self):
        delta, trace = column_generate(
            *shortcut_instance(), options=ColGenOptions(delta=0.0)
        )
        self.assertEqual(trace.status, CONVERGED)
        self.assertAlmostEqual(trace.rounds[0].objective, 2 / 3, places=10)
        self.assertAlmostEqual(trace.objective, 1 / 3, places=10)
        self.assertGreaterEqual(trace.num_rounds, 2)
        # The shortcut moves mass from (3, 1) to (3, 2).
        self.assertAlmostEqual(delta.toarray()[3, 2], 1 / 6, places=10)

    def test_cancelled_by_progress(self):
        records = []

        def progress(record):
            records.append(record)
            raise SolveCancelled("stop")

        delta, trace = column_generate(
            ring_matrix(),
            RING_TARGET,
            options=ColGenOptions(delta=0.0),
            progress=progress,
        )
        self.assertEqual(trace.status, CANCELLED)
        self.assertEqual(trace.num_rounds, 1)
        self.assertEqual(records, trace.rounds)
        self.assertIsNotNone(delta)

    def test_restricted_omega(self):
        G = ring_matrix()
        omega = support(G, include_diagonal=True)
        delta, trace = column_generate(
            G, RING_TARGET, omega=omega, options=ColGenOptions(delta=0.0)
        )
        _, direct = solve_tsdp_lp(G, RING_TARGET, omega)
        self.assertEqual(trace.status, CONVERGED)
        self.assertEqual(trace.num_rounds, 1)
        self.assertAlmostEqual(trace.objective, direct.objective, places=10)

    def test_matches_full_lp(self):
        rng = np.random.default_rng(2024)
        for _ in range(10):
            n = int(rng.integers(3, 8))
            G, mu_hat = irreducible_instance(rng, n)
            omega = SupportSet.full(n)
            _, trace = column_generate(
                G, mu_hat, options=ColGenOptions(delta=0.0)
            )
            _, full = solve_tsdp_lp(G, mu_hat, omega)
            self.assertEqual(trace.status, CONVERGED)
            self.assertAlmostEqual(
                trace.objective, full.objective, delta=1e-8
            )

    def test_heuristic_with_exhaustive_confirmation(self):
        options = ColGenOptions(delta=0.0, heuristic_threshold=0, m=1)
        _, trace = column_generate(ring_matrix(), RING_TARGET, options=options)
        self.assertEqual(trace.status, CONVERGED)
        self.assertAlmostEqual(trace.objective, 6 / 8, places=10)

    def test_heuristic_optimal(self):
        options = ColGenOptions(
            delta=0.0, heuristic_threshold=0, exhaustive_limit=0, m=1
        )
        _, trace = column_generate(ring_matrix(), RING_TARGET, options=options)
        self.assertEqual(trace.status, HEURISTIC_OPTIMAL)
        self.assertGreaterEqual(trace.objective, 6 / 8 - 1e-10)

    def test_highs_backend(self):
        _, trace = column_generate(
            ring_matrix(),
            RING_TARGET,
            options=ColGenOptions(delta=0.0),
            backend=HighsBackend(),
        )
        self.assertAlmostEqual(trace.objective, 6 / 8, places=8)


class TestColGenTrace(unittest.TestCase):
    def test_to_dict(self):
        trace = ColGenTrace(initial_objective=2.0, status=CONVERGED)
        trace.rounds.append(
            ColGenRound(index=1, support_size=10, objective=1.5, added=3)
        )
        record = trace.to_dict()
        self.assertEqual(record["status"], CONVERGED)
        self.assertEqual(record["initial_objective"], 2.0)
        self.assertEqual(len(record["rounds"]), 1)
        self.assertEqual(record["rounds"][0]["round"], 1)
        self.assertEqual(record["rounds"][0]["added"], 3)
        self.assertEqual(trace.objective, 1.5)
