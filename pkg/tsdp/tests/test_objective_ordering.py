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
End-to-end checks of the ordering of objectives across methods on
generated queue-like matrices.
"""
import unittest

from tsdp.bench import solve_with_method
from tsdp.closed_form import lower_bound_l1, ratio_bounds, upper_bound_l1
from tsdp.generators import gen_queue_matrix, target_from_recipe
from tsdp.highs_backend import HighsBackend
from tsdp.lp_formulation import sparsity_bound
from tsdp.markov import StationaryOptions, stationary_distribution
from tsdp.quality import quality_report
from tsdp.support_set import SupportSet
from tsdp.testing.skip_markers import requires_slow_tests

#: Methods compared on every instance.
METHODS = [
    "mh",
    "diag",
    "lp-gplusi",
    "cg:1e-2",
    "cg:1e-4",
    "cg:0",
    "lp-full",
]

#: Methods whose Ĝ is irreducible whenever G has a symmetric support.
ALWAYS_IRREDUCIBLE = ["mh", "diag"]

#: Relative slack on objective comparisons and residuals. HiGHS only
#: meets its constraints to within its own feasibility tolerance.
SLACK = 1e-7


class TestObjectiveOrdering(unittest.TestCase):
    def check_instance(self, n, k, seed, target="power-step", backend=None):
        G = gen_queue_matrix(n, k, seed)
        mu_hat = target_from_recipe(target, G)
        mu = stationary_distribution(G, StationaryOptions(fallback="direct"))

        objectives = {}
        for label in METHODS:
            delta, _ = solve_with_method(label, G, mu_hat, backend=backend)
            report = quality_report(G, delta, mu_hat, method=label)
            self.assertLess(report.residual_rowsum, SLACK, label)
            self.assertLess(report.residual_stationarity, SLACK, label)
            self.assertGreater(report.min_entry, -SLACK, label)
            if label in ALWAYS_IRREDUCIBLE or (
                k >= 2 and not target.startswith("rankone")
            ):
                self.assertTrue(report.irreducible, label)
            objectives[label] = report.delta_l1
            if label.startswith("lp"):
                omega = SupportSet.full(n)
                self.assertLessEqual(
                    report.nnz_delta, sparsity_bound(G, omega), label
                )

        lower = lower_bound_l1(G, mu_hat)
        upper = upper_bound_l1(G, ratio_bounds(mu, mu_hat))
        tolerance = SLACK * max(1.0, upper)
        self.assertLessEqual(lower, objectives["lp-full"] + tolerance)
        self.assertAlmostEqual(
            objectives["cg:0"], objectives["lp-full"], delta=tolerance
        )
        chain = ["cg:0", "cg:1e-4", "cg:1e-2", "lp-gplusi", "diag"]
        for smaller, larger in zip(chain, chain[1:]):
            self.assertLessEqual(
                objectives[smaller],
                objectives[larger] + tolerance,
                f"{smaller} > {larger}",
            )
        self.assertLessEqual(objectives["diag"], upper + tolerance)
        self.assertGreaterEqual(
            objectives["mh"] + tolerance, objectives["lp-gplusi"]
        )
        for label in METHODS:
            self.assertGreaterEqual(
                objectives[label] + tolerance, objectives["lp-full"], label
            )
        return objectives

    def test_queue_grid(self):
        for k in [1, 2, 5]:
            for seed in [0, 1]:
                with self.subTest(k=k, seed=seed):
                    self.check_instance(16, k, seed)

    def test_mixed_targets(self):
        for epsilon in ["0.01", "0.5"]:
            with self.subTest(epsilon=epsilon):
                self.check_instance(12, 2, 4, target=f"mix:{epsilon}")

    def test_rank_one_target(self):
        self.check_instance(12, 3, 7, target="rankone:5,0.2")

    def test_highs_backend(self):
        self.check_instance(16, 2, 3, backend=HighsBackend())

    @requires_slow_tests
    def test_large_grid(self):
        for k in [1, 2, 5]:
            with self.subTest(k=k):
                self.check_instance(120, k, 0, backend=HighsBackend())
