"""
Anisotropy and the XX point
===========================

For gamma = 0 the dressed Hamiltonians commute with the initial state and
|F(t)| stays at 1. Any anisotropy lets the chain dephase the qubits.
"""

import numpy as np

from spinchain_echo import ChainParams, sweep, time_grid

params = ChainParams(n_sites=101, gamma=1.0, lam=1.0, g=0.05)
gammas = np.round(time_grid(1.0, 0.1), 12)
grid = sweep(params, (1, 2), "gamma", gammas, time_grid(30.0, 0.05))

for gamma, row in zip(grid.axis1, grid.values):
    print(f"gamma={gamma:3.1f}  min|F|={row.min():.3e}  |F(30)|={row[-1]:.3e}")
