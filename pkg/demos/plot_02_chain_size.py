"""
Chain length at the critical point
==================================

At lambda = 1 the coherence factor collapses faster as the chain grows.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from spinchain_echo import ChainParams, curve_minimum, size_scan, time_grid

base = ChainParams(n_sites=101, gamma=1.0, lam=1.0, g=0.05)
times = time_grid(100.0, 0.05)

fig, ax = plt.subplots(figsize=(7, 4))
for series in size_scan(base, (1, 2), [5, 11, 21, 41, 101], times):
    ax.plot(series.times, series.values, lw=1, label=f"N={series.params.n_sites}")
    _, lowest = curve_minimum(series.params, (1, 2), 100.0)
    print(f"N={series.params.n_sites:4d}  min|F| = {lowest:.3e}")
ax.set_xlabel("t")
ax.set_ylabel("|F(t)|")
ax.set_ylim(0, 1)
ax.legend()
fig.savefig("chain_size.png", dpi=120)
