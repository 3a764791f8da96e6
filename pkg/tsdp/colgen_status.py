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
Termination statuses of a column-generation run.
"""
from traits.api import Enum

#: Pricing found no improving entry: the final perturbation is optimal
#: over the whole support set.
CONVERGED = "converged"

#: The objective decrease over the last round fell below the relative
#: accuracy threshold.
TOLERANCE = "tolerance"

#: The round limit was reached.
MAX_ROUNDS = "max-rounds"

#: The large-n pricing heuristic found no improving entry and the
#: exhaustive fallback scan was not run.
HEURISTIC_OPTIMAL = "heuristic-optimal"

#: The closed-form start was already exact; no LP was solved.
TRIVIAL = "trivial"

#: A progress callback requested that the run stop.
CANCELLED = "cancelled"

#: Statuses under which the returned perturbation is a certified optimum
#: over the support set.
OPTIMAL_STATUSES = CONVERGED, TRIVIAL

#: Trait type representing a column-generation status.
ColGenStatus = Enum(
    CONVERGED, TOLERANCE, MAX_ROUNDS, HEURISTIC_OPTIMAL, TRIVIAL, CANCELLED
)
