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

from tsdp.parallel_context import (
    MultiprocessingContext,
    MultithreadingContext,
)
from tsdp.tests.trial_executor_tests import (
    TrialExecutorOwnershipTests,
    TrialExecutorTests,
)


class TestTrialExecutorWithThreads(TrialExecutorTests, unittest.TestCase):
    def make_context(self):
        return MultithreadingContext()


class TestTrialExecutorWithProcesses(TrialExecutorTests, unittest.TestCase):
    def make_context(self):
        return MultiprocessingContext()


class TestTrialExecutorOwnership(
    TrialExecutorOwnershipTests, unittest.TestCase
):
    pass
