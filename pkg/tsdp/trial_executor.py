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
Executor running independent bench trials on a worker pool.
"""
import concurrent.futures
import logging

from traits.api import (
    Any,
    Bool,
    HasStrictTraits,
    Instance,
    List,
    Property,
    Tuple,
)

from tsdp.exception_handling import marshal_exception
from tsdp.parallel_context import IParallelContext, MultithreadingContext
from tsdp.trial_states import (
    CANCELLED,
    COMPLETED,
    DONE_STATES,
    ExecutorState,
    FAILED,
    RUNNING,
    STOPPED,
    STOPPING,
    TrialState,
    WAITING,
)

logger = logging.getLogger(__name__)


def run_trial(callable, args, kwargs):
    """
    Run a trial in a worker, capturing any exception as plain data.

    Returns
    -------
    state : str
        COMPLETED or FAILED.
    payload : object
        The callable's result, or the marshalled exception.
    """
    try:
        result = callable(*args, **kwargs)
    except BaseException as exception:
        return FAILED, marshal_exception(exception)
    return COMPLETED, result


class TrialFuture(HasStrictTraits):
    """
    Foreground view of a submitted trial.

    The future is updated only by :meth:`TrialExecutor.wait`, from the
    thread that calls it.
    """

    #: Current state of the trial.
    state = TrialState

    #: True once the trial has completed, failed or been cancelled.
    done = Property(Bool())

    #: Result of a completed trial. Raises on access otherwise.
    result = Property(Any())

    #: Marshalled exception (type, message, traceback) of a failed
    #: trial. Raises on access otherwise.
    exception = Property(Tuple())

    def cancel(self):
        """
        Cancel the trial if it hasn't started yet.

        Returns
        -------
        cancelled : bool
            True if the trial will not run.
        """
        if self.state != WAITING:
            return False
        if self._future.cancel():
            self.state = CANCELLED
            return True
        return False

    # Private methods #########################################################

    def _collect(self):
        """
        Copy the outcome of the underlying future, if it has one.
        """
        if self.done or not self._future.done():
            return
        if self._future.cancelled():
            self.state = CANCELLED
            return
        state, payload = self._future.result()
        self._payload = payload
        self.state = state

    # Traits property getters #################################################

    def _get_done(self):
        return self.state in DONE_STATES

    def _get_result(self):
        if self.state != COMPLETED:
            raise AttributeError(
                f"no result available for a trial in state {self.state}"
            )
        return self._payload

    def _get_exception(self):
        if self.state != FAILED:
            raise AttributeError(
                f"no exception available for a trial in state {self.state}"
            )
        return self._payload

    # Private traits ##########################################################

    #: Future returned by the worker pool.
    _future = Instance(concurrent.futures.Future)

    #: Result or marshalled exception.
    _payload = Any()


class TrialExecutor(HasStrictTraits):
    """
    Executor to run bench trials and collect their outcomes.

    Parameters
    ----------
    worker_pool : concurrent.futures.Executor, optional
        If supplied, the worker pool to use. The creator of the
        TrialExecutor is then responsible for shutting it down. If not
        supplied, a private worker pool is created, and :meth:`shutdown`
        shuts it down.
    max_workers : int or None, optional
        Maximum number of workers for the private worker pool. Mutually
        exclusive with ``worker_pool``.
    context : IParallelContext, optional
        Parallelism context providing the private worker pool. Defaults to
        a :class:`~.MultithreadingContext`, owned by this executor. No
        context is created when ``worker_pool`` is supplied.
    """

    #: Current state of this executor.
    state = ExecutorState

    #: True if this executor accepts new trials.
    running = Property(Bool())

    #: True if this executor has released its resources.
    stopped = Property(Bool())

    def __init__(
        self, *, worker_pool=None, max_workers=None, context=None, **traits
    ):
        super().__init__(**traits)

        own_worker_pool = worker_pool is None
        if own_worker_pool:
            if context is None:
                context = MultithreadingContext()
                self._own_context = True
            logger.debug(f"{self} creating worker pool")
            worker_pool = context.worker_pool(max_workers=max_workers)
        elif max_workers is not None:
            raise TypeError(
                "at most one of 'worker_pool' and 'max_workers' "
                "should be supplied"
            )
        self._context = context
        self._worker_pool = worker_pool
        self._own_worker_pool = own_worker_pool
        logger.debug(f"{self} running")

    def submit(self, callable, *args, **kwargs):
        """
        Submit a trial.

        Parameters
        ----------
        callable
            Function to run in a worker. With a multiprocessing context it
            must be picklable, as must its arguments.
        *args
            Positional arguments for the function.
        **kwargs
            Named arguments for the function.

        Returns
        -------
        future : TrialFuture
        """
        if not self.running:
            raise RuntimeError("Can't submit a trial unless running.")
        future = TrialFuture(
            _future=self._worker_pool.submit(
                run_trial, callable, args, kwargs
            )
        )
        self._futures.append(future)
        logger.debug(f"{self} created future {future}")
        return future

    def wait(self, timeout=None):
        """
        Wait for all submitted trials and update their futures.

        Parameters
        ----------
        timeout : float, optional
            Maximum time to wait, in seconds.

        Returns
        -------
        futures : list of TrialFuture
            All futures submitted so far, in submission order.

        Raises
        ------
        RuntimeError
            If the timeout expires before every trial is done.
        """
        pending = [future._future for future in self._futures]
        _, not_done = concurrent.futures.wait(pending, timeout=timeout)
        for future in self._futures:
            future._collect()
        if not_done:
            raise RuntimeError(
                f"wait timed out; {len(not_done)} trials still running"
            )
        return list(self._futures)

    def shutdown(self, *, timeout=None):
        """
        Cancel trials that haven't started, wait for the others, and
        release the worker pool.

        Calling this on a stopped executor does nothing.
        """
        if self.stopped:
            return
        self.state = STOPPING
        cancelled = sum(future.cancel() for future in self._futures)
        logger.debug(f"{self} cancelled {cancelled} trials")
        self.wait(timeout=timeout)

        if self._own_worker_pool:
            logger.debug(f"{self} shutting down owned worker pool")
            self._worker_pool.shutdown()
        self._worker_pool = None
        if self._own_context:
            logger.debug(f"{self} closing owned context")
            self._context.close()
        self._context = None
        self.state = STOPPED
        logger.debug(f"{self} stopped")

    def __enter__(self):
        return self

    def __exit__(self, *exc_info):
        self.shutdown()

    # Traits property getters #################################################

    def _get_running(self):
        return self.state == RUNNING

    def _get_stopped(self):
        return self.state == STOPPED

    # Private traits ##########################################################

    #: Futures of all submitted trials.
    _futures = List(Instance(TrialFuture))

    #: Parallelism context.
    _context = Instance(IParallelContext)

    #: True if we own the context, else False.
    _own_context = Bool(False)

    #: Worker pool running the trials.
    _worker_pool = Instance(concurrent.futures.Executor)

    #: True if we own the worker pool, else False.
    _own_worker_pool = Bool()
