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
Statuses of variables with respect to a simplex basis.
"""
from traits.api import Enum

#: Nonbasic, sitting at its lower bound.
AT_LOWER = "at_lower"

#: Nonbasic, sitting at its (finite) upper bound.
AT_UPPER = "at_upper"

#: Member of the basis.
BASIC = "basic"

#: Integer codes used in status arrays. The codes are stable and may be
#: stored alongside a basis.
STATUS_CODES = {AT_LOWER: 0, AT_UPPER: 1, BASIC: 2}

#: Inverse of STATUS_CODES.
STATUS_NAMES = {code: name for name, code in STATUS_CODES.items()}

#: Trait type representing a basis status.
BasisStatus = Enum(AT_LOWER, AT_UPPER, BASIC)
