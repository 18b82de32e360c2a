"""
Embedding capacity of noncoding DNA
===================================

A noncoding host can be overwritten freely, so its embedding capacity is
that of the quaternary symmetric channel: 2 bits/base without mutations,
decaying toward zero as mutation stages accumulate.  This script prints
the capacity curves that are usually plotted against the stage count m,
shows the gamma bounds, and locates the rule-of-thumb cut-off.
"""

import numpy as np

from dnacap import (
    ChannelParams,
    bounds_check,
    capacity_nc,
    capacity_nc_gamma0,
    cutoff_estimate,
)

q = 1e-2
gammas = (1.0, 0.1, 0.01, 0.0)
stages = [1, 10, 100, 1_000, 10_000, 100_000, 1_000_000]

print(f"capacity (bits/base) at q = {q}:")
header = "        m | " + " | ".join(f"gamma={g:<5}" for g in gammas)
print(header)
for m in stages:
    row = [capacity_nc(ChannelParams(q, g, m)).value for g in gammas]
    print(f"{m:>9} | " + " | ".join(f"{v:>9.5f}" for v in row))

# Two regimes are visible: for gamma > 0 capacity dies out completely,
# while gamma = 0 levels off at 1 bit/base -- with transversions
# impossible, a base never forgets its purine/pyrimidine category, and
# that one bit survives any number of stages.
print("\ngamma=0 capacity at m = 1e6:", capacity_nc_gamma0(q, 10**6))

# For fixed (q, m) the capacity is sandwiched between its gamma=1 and
# gamma=0 values:
lower, value, upper = bounds_check(ChannelParams(q, 0.3, 500))
print(f"\nbounds at gamma=0.3, m=500: {lower:.5f} <= {value:.5f} <= {upper:.5f}")

# The practical "capacity is gone" depth scales like 6/(5*gamma*q).
for gamma in (1.0, 0.1):
    m_cut = cutoff_estimate(q, gamma)
    at_cut = capacity_nc(ChannelParams(q, gamma, int(np.ceil(m_cut)))).value
    print(f"cut-off estimate at gamma={gamma}: m ~ {m_cut:.0f}"
          f"   capacity there: {at_cut:.4f} bits/base")
