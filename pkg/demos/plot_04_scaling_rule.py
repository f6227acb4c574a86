"""
The scaling transformation
==========================

Compare |F(t)| for a near-critical base set with the curve obtained after
t -> m t, delta -> delta / m, g -> g / m and N -> m N (or gamma -> gamma / m).
The residual is reported for the product formula and for the echo started
from the chain ground state.
"""

from spinchain_echo import ChainParams, ScalingRule, apply_scaling, scaling_residual, time_grid

base = ChainParams(n_sites=101, gamma=1.0, lam=0.95, g=0.02)
times = time_grid(25.0, 0.01)

for m, mode in [(4.0, "scale-N"), (2.0, "scale-gamma"), (4.0, "scale-gamma")]:
    rule = ScalingRule(m, mode)
    scaled, _ = apply_scaling(base, 0.0, rule)
    print(f"m={m:g} {mode:12s} -> N={scaled.n_sites}, gamma={scaled.gamma:g}, "
          f"lambda={scaled.lam:.4f}, g={scaled.g:g}")
    for reference in ("polarized", "ground"):
        r = scaling_residual(base, (1, 2), rule, times, reference=reference)
        print(f"    {reference:9s} residual = {r:.4f}")

###############################################################################
# Convergence in N for the scale-N reading.
for n in (51, 101, 201, 401):
    p = base.replace(n_sites=n)
    row = [scaling_residual(p, (1, 2), ScalingRule(4.0), times, reference=ref) for ref in ("polarized", "ground")]
    print(f"N={n:4d}  polarized={row[0]:.4f}  ground={row[1]:.4f}")
