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
Tests shared by the TrialExecutor test cases for each parallel context.
"""
import concurrent.futures
import threading
from unittest import mock

from tsdp.exceptions import Infeasible
from tsdp.parallel_context import MultithreadingContext
from tsdp.trial_executor import TrialExecutor
from tsdp.trial_states import (
    CANCELLED,
    COMPLETED,
    FAILED,
    RUNNING,
    STOPPED,
    WAITING,
)

#: Timeout for blocking operations, in seconds.
TIMEOUT = 20.0


def square(value):
    return value * value


def raise_infeasible(message):
    raise Infeasible(message)


def keyword_sum(a, *, b=0, c=0):
    return a + b + c


class TrialExecutorTests:
    """
    Mixin for TrialExecutor tests. Subclasses provide ``make_context``.
    """

    def setUp(self):
        self.context = self.make_context()
        self.addCleanup(self.context.close)
        self.executor = TrialExecutor(context=self.context, max_workers=2)
        self.addCleanup(self.executor.shutdown, timeout=TIMEOUT)

    def test_results_in_submission_order(self):
        for value in range(6):
            self.executor.submit(square, value)
        futures = self.executor.wait(timeout=TIMEOUT)
        self.assertEqual([f.state for f in futures], [COMPLETED] * 6)
        self.assertEqual([f.result for f in futures], [0, 1, 4, 9, 16, 25])

    def test_keyword_arguments(self):
        future = self.executor.submit(keyword_sum, 1, c=5)
        self.executor.wait(timeout=TIMEOUT)
        self.assertEqual(future.result, 6)

    def test_failed_trial(self):
        future = self.executor.submit(raise_infeasible, "nothing fits")
        self.executor.wait(timeout=TIMEOUT)

        self.assertEqual(future.state, FAILED)
        self.assertTrue(future.done)
        exception_type, message, formatted = future.exception
        self.assertEqual(exception_type, "tsdp.exceptions.Infeasible")
        self.assertEqual(message, "nothing fits")
        self.assertIn("raise_infeasible", formatted)
        with self.assertRaises(AttributeError):
            future.result

    def test_failure_doesnt_affect_other_trials(self):
        bad = self.executor.submit(raise_infeasible, "no")
        good = self.executor.submit(square, 3)
        self.executor.wait(timeout=TIMEOUT)
        self.assertEqual(bad.state, FAILED)
        self.assertEqual(good.result, 9)
        with self.assertRaises(AttributeError):
            good.exception

    def test_shutdown(self):
        future = self.executor.submit(square, 2)
        self.assertTrue(self.executor.running)

        self.executor.shutdown(timeout=TIMEOUT)

        self.assertTrue(self.executor.stopped)
        self.assertEqual(self.executor.state, STOPPED)
        self.assertTrue(future.done)
        with self.assertRaises(RuntimeError):
            self.executor.submit(square, 3)

    def test_shutdown_twice(self):
        self.executor.shutdown(timeout=TIMEOUT)
        self.executor.shutdown(timeout=TIMEOUT)
        self.assertTrue(self.executor.stopped)

    def test_external_context_stays_open(self):
        self.executor.shutdown(timeout=TIMEOUT)
        self.assertFalse(self.context.closed)


class TrialExecutorOwnershipTests:
    """
    Context-independent behaviour of the TrialExecutor.
    """

    def test_owned_context(self):
        executor = TrialExecutor()
        self.assertEqual(executor.state, RUNNING)
        context = executor._context
        executor.shutdown(timeout=TIMEOUT)
        self.assertTrue(context.closed)

    def test_context_manager(self):
        with TrialExecutor(max_workers=1) as executor:
            future = executor.submit(square, 7)
        self.assertTrue(executor.stopped)
        self.assertEqual(future.result, 49)

    def test_worker_pool_and_max_workers(self):
        with concurrent.futures.ThreadPoolExecutor() as worker_pool:
            with self.assertRaises(TypeError):
                TrialExecutor(worker_pool=worker_pool, max_workers=2)

    def test_external_worker_pool_stays_open(self):
        with concurrent.futures.ThreadPoolExecutor(1) as worker_pool:
            executor = TrialExecutor(worker_pool=worker_pool)
            executor.submit(square, 2)
            executor.shutdown(timeout=TIMEOUT)
            self.assertEqual(worker_pool.submit(square, 5).result(), 25)

    def test_external_worker_pool_needs_no_context(self):
        with mock.patch(
            "tsdp.trial_executor.MultithreadingContext"
        ) as context_class:
            with concurrent.futures.ThreadPoolExecutor(1) as worker_pool:
                executor = TrialExecutor(worker_pool=worker_pool)
                future = executor.submit(square, 3)
                executor.shutdown(timeout=TIMEOUT)
        context_class.assert_not_called()
        self.assertEqual(future.result, 9)
        self.assertIsNone(executor._context)
        self.assertTrue(executor.stopped)

    def test_supplied_context_unused_with_external_pool(self):
        context = MultithreadingContext()
        self.addCleanup(context.close)
        with concurrent.futures.ThreadPoolExecutor(1) as worker_pool:
            executor = TrialExecutor(worker_pool=worker_pool, context=context)
            executor.shutdown(timeout=TIMEOUT)
        self.assertFalse(context.closed)

    def test_cancel_waiting_trial(self):
        release = threading.Event()
        with concurrent.futures.ThreadPoolExecutor(1) as worker_pool:
            executor = TrialExecutor(worker_pool=worker_pool)
            blocker = executor.submit(release.wait, TIMEOUT)
            queued = executor.submit(square, 4)

            self.assertEqual(queued.state, WAITING)
            self.assertTrue(queued.cancel())
            self.assertEqual(queued.state, CANCELLED)
            self.assertTrue(queued.done)
            self.assertFalse(queued.cancel())

            release.set()
            executor.shutdown(timeout=TIMEOUT)
        self.assertEqual(blocker.state, COMPLETED)
        self.assertEqual(queued.state, CANCELLED)
        with self.assertRaises(AttributeError):
            queued.result

    def test_wait_timeout(self):
        release = threading.Event()
        self.addCleanup(release.set)
        with concurrent.futures.ThreadPoolExecutor(1) as worker_pool:
            executor = TrialExecutor(worker_pool=worker_pool)
            future = executor.submit(release.wait, TIMEOUT)
            with self.assertRaises(RuntimeError):
                executor.wait(timeout=0.05)
            self.assertEqual(future.state, WAITING)
            release.set()
            executor.shutdown(timeout=TIMEOUT)
        self.assertEqual(future.state, COMPLETED)
