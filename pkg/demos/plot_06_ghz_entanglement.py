"""
GHZ entanglement under the chain
================================

The GHZ state only feels the (1, 2) coherence factor, so its negativity
follows |F(t)| point for point while its two-qubit marginals stay separable.
"""

import numpy as np

from spinchain_echo import ChainParams
from spinchain_echo.qstate import (
    coherence_matrix,
    concurrence,
    evolve_reduced,
    fidelity_with_pure,
    npt_negativity,
    partial_trace,
    preset_state,
    von_neumann_entropy,
)

params = ChainParams(n_sites=101, gamma=1.0, lam=1.0, g=0.05)
ghz = preset_state("ghz")

print("   t   |F12|     negativity  fidelity  entropy  C(AB)")
for t in np.linspace(0, 20, 11):
    f = coherence_matrix(params, t)
    rho = evolve_reduced(ghz, f)
    print(
        f"{t:5.1f}  {f[0, 1]:.3e}  {npt_negativity(rho, 'A'):.3e}   "
        f"{fidelity_with_pure(rho, ghz):.4f}    {von_neumann_entropy(rho):.4f}   "
        f"{concurrence(partial_trace(rho, 'AB')):.1e}"
    )
