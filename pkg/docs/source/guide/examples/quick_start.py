# (C) Copyright 2024 Enthought, Inc., Austin, TX
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license. The license
# is also available online at http://www.enthought.com/licenses/BSD.txt
#
# Thanks for using Enthought open source!

import numpy as np

from tsdp.api import (
    column_generate,
    Distribution,
    lower_bound_l1,
    quality_report,
    SparseStochasticMatrix,
)

# A lazy random walk on a ring of four states: its stationary
# distribution is uniform.
G = SparseStochasticMatrix(
    np.array(
        [
            [0.5, 0.25, 0.0, 0.25],
            [0.25, 0.5, 0.25, 0.0],
            [0.0, 0.25, 0.5, 0.25],
            [0.25, 0.0, 0.25, 0.5],
        ]
    )
)
mu_hat = Distribution([1 / 8, 1 / 8, 1 / 4, 1 / 2])

delta, trace = column_generate(G, mu_hat)
print(f"status: {trace.status}, ‖Δ‖₁ = {delta.l1_norm():.4f}")
print(f"lower bound: {lower_bound_l1(G, mu_hat):.4f}")
print(quality_report(G, delta, mu_hat, method="cg").to_dict())
