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
Numerical tolerances shared by the solvers.

All tolerances are absolute.
"""

#: Maximum deviation of a row sum (or of a distribution's total) from 1.
TOL_STOCH = 1e-12

#: Feasibility tolerance for perturbations: row sums of a perturbation and
#: negative entries of a perturbed matrix up to this size are accepted.
TOL_FEAS = 1e-10

#: Primal values at or below this size are read back as structural zeros.
STRUCTURAL_ZERO = 1e-9

#: Largest stationarity residual accepted for a supplied stationary
#: distribution.
STATIONARITY_CHECK = 1e-8
