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
Parallelism contexts: where bench trials run.
"""
import abc
import concurrent.futures
import multiprocessing

#: Prefix of the names of bench worker threads.
THREAD_NAME_PREFIX = "tsdp-trial"


class IParallelContext(abc.ABC):
    """
    Source of worker pools for the TrialExecutor.

    A context stands for one form of parallelism, for example threads of
    the current process or separate worker processes.
    """

    @property
    @abc.abstractmethod
    def name(self):
        """
        Short name of the form of parallelism, used in logs and reports.
        """

    @abc.abstractmethod
    def worker_pool(self, *, max_workers=None):
        """
        Create a new worker pool for bench trials.

        Parameters
        ----------
        max_workers : int, optional
            Maximum number of workers. If not given, the choice is left to
            the pool.

        Returns
        -------
        executor : concurrent.futures.Executor

        Raises
        ------
        RuntimeError
            If the context has been closed.
        """

    @abc.abstractmethod
    def close(self):
        """
        Release any resources held by the context. Worker pools already
        created are unaffected.
        """

    @property
    @abc.abstractmethod
    def closed(self):
        """
        True if this context is closed, else False.
        """


class MultithreadingContext(IParallelContext):
    """
    Context running trials on named threads of the current process.

    Trials spend most of their time in NumPy and SciPy routines, so
    threads give real speed-ups only for the larger instances.
    """

    def __init__(self):
        self._is_closed = False

    @property
    def name(self):
        return "thread"

    def worker_pool(self, *, max_workers=None):
        _check_open(self)
        return concurrent.futures.ThreadPoolExecutor(
            max_workers=max_workers, thread_name_prefix=THREAD_NAME_PREFIX
        )

    def close(self):
        self._is_closed = True

    @property
    def closed(self):
        return self._is_closed


class MultiprocessingContext(IParallelContext):
    """
    Context running trials in separate processes.

    Trial functions and their arguments must be picklable.

    Parameters
    ----------
    start_method : str, optional
        Process start method: "spawn", "fork" or "forkserver". If not
        given, the platform default is used.
    """

    def __init__(self, start_method=None):
        self._mp_context = multiprocessing.get_context(start_method)
        self._is_closed = False

    @property
    def name(self):
        return f"process ({self._mp_context.get_start_method()})"

    def worker_pool(self, *, max_workers=None):
        _check_open(self)
        return concurrent.futures.ProcessPoolExecutor(
            max_workers=max_workers, mp_context=self._mp_context
        )

    def close(self):
        self._is_closed = True

    @property
    def closed(self):
        return self._is_closed


def _check_open(context):
    if context.closed:
        raise RuntimeError(
            f"can't create a worker pool: the {context.name} context is "
            "closed"
        )
