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
Kinds of LP variable, one per block of the split perturbation.
"""
from traits.api import Enum

#: Entry of Δ⁰: a position outside the support of G. Bounded below by 0.
ZERO = "zero"

#: Entry of Δ⁺: an increase at a position inside the support of G.
PLUS = "plus"

#: Entry of Δ⁻: a decrease at a position inside the support of G, bounded
#: above by the corresponding entry of G.
MINUS = "minus"

#: Kinds in the order in which their variables appear in an LpProblem.
VARIABLE_KINDS = ZERO, PLUS, MINUS

#: Sign with which each kind of variable contributes to Δ.
KIND_SIGN = {ZERO: 1.0, PLUS: 1.0, MINUS: -1.0}

#: Trait type representing a variable kind.
VariableKind = Enum(ZERO, PLUS, MINUS)
