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
States of bench trials and of the executor that runs them.
"""
from traits.api import Enum

# Trial states ################################################################

#: Trial submitted, no result collected yet.
WAITING = "waiting"

#: Trial completed without error.
COMPLETED = "completed"

#: Trial raised an exception.
FAILED = "failed"

#: Trial was cancelled before it started.
CANCELLED = "cancelled"

#: Final states. A future in one of these states never changes again.
DONE_STATES = COMPLETED, FAILED, CANCELLED

#: Trait type representing a trial state.
TrialState = Enum(WAITING, COMPLETED, FAILED, CANCELLED)

# Executor states #############################################################

#: Executor accepting new trials.
RUNNING = "running"

#: Executor shutting down, waiting for running trials to finish.
STOPPING = "stopping"

#: Executor stopped; its worker pool has been released.
STOPPED = "stopped"

#: Trait type representing an executor state.
ExecutorState = Enum(RUNNING, STOPPING, STOPPED)
