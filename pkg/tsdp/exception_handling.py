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
Conversion of exceptions raised in bench workers into plain data.
"""
import traceback


def exception_type_name(exception_type):
    """
    Name of an exception class, qualified by its module unless it is a
    builtin.

    Returns strings such as "ValueError" or "tsdp.exceptions.Infeasible".
    """
    module = getattr(exception_type, "__module__", "<unknown>")
    name = getattr(exception_type, "__qualname__", "<unknown>")
    if module == "builtins":
        return name
    return f"{module}.{name}"


def marshal_exception(exception):
    """
    Turn an exception into strings that can cross thread and process
    boundaries.

    Parameters
    ----------
    exception : BaseException

    Returns
    -------
    exception_type, exception_value, exception_traceback : str
        Qualified type name, message, and formatted traceback.
    """
    return (
        exception_type_name(type(exception)),
        str(exception),
        "".join(
            traceback.format_exception(
                type(exception), exception, exception.__traceback__
            )
        ),
    )


def failure_record(marshalled):
    """
    JSON-ready description of a failed bench trial.

    Parameters
    ----------
    marshalled : tuple of str
        Output of :func:`marshal_exception`.

    Returns
    -------
    record : dict
        With keys "error" (short type name), "type", "message" and
        "traceback".
    """
    exception_type, message, formatted = marshalled
    return {
        "error": exception_type.rsplit(".", 1)[-1],
        "type": exception_type,
        "message": message,
        "traceback": formatted,
    }
