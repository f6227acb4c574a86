"""
Checking the product formula mode by mode
=========================================

The oracle builds each (k, -k) fermion pair Hamiltonian from creation and
annihilation matrices and propagates it exactly. Started from the empty pair
it reproduces the product formula to machine precision; started from the
ground state of the bare chain it does not, because the formula carries no
dependence on the bare-field Bogoliubov angle.
"""

import numpy as np

from spinchain_echo import ChainParams, coherence_curve
from spinchain_echo.oracle import oracle_curve

times = np.linspace(0.0, 100.0, 201)
for n in (5, 11, 21):
    p = ChainParams(n_sites=n, gamma=1.0, lam=1.0, g=0.05)
    closed = coherence_curve(p, (1, 2), times)
    for reference in ("polarized", "ground"):
        diff = np.abs(closed - oracle_curve(p, (1, 2), times, reference)).max()
        print(f"N={n:3d}  oracle reference={reference:9s}  max diff={diff:.2e}")
    ground_closed = coherence_curve(p, (1, 2), times, reference="ground")
    diff = np.abs(ground_closed - oracle_curve(p, (1, 2), times, "ground")).max()
    print(f"        ground closed form vs ground oracle: {diff:.2e}")
