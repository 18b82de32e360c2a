"""
The substitution channel and its cascades
=========================================

A DNA base sequence under point mutations behaves like a quaternary
symbol stream through a noisy channel.  This script builds the
two-parameter substitution matrix, cascades it in closed form, and
cross-checks the accumulated mutation probability with a Monte Carlo
simulation.
"""

import numpy as np

from dnacap import (
    ChannelParams,
    accumulated_rate,
    base_matrix_power,
    build_base_matrix,
    codon_matrix,
    eigenvalues,
    gamma_from_ti_tv,
    simulate_chain,
)

np.set_printoptions(precision=5, suppress=True)

# A single mutation stage: q is the probability that a base substitutes at
# all, gamma shifts mass between within-category substitutions (A<->G,
# C<->T, "transitions") and cross-category ones ("transversions").
params = ChannelParams(q=0.05, gamma=0.5, m=1)
print("single-stage matrix (A, C, T, G):")
print(build_base_matrix(params))

# gamma = 1 spreads substitution mass evenly; real organisms favour
# transitions, e.g. a transition/transversion ratio of 4 means:
print("\ngamma for ti/tv ratio 4:", gamma_from_ti_tv(4.0))

# Cascading m stages is a matrix power, but the closed form makes any
# depth O(1).  Compare m = 12 against naive repeated multiplication:
deep = ChannelParams(q=0.05, gamma=0.5, m=12)
naive = np.linalg.matrix_power(build_base_matrix(params), 12)
print("\nclosed-form power minus naive power (m=12), max abs:",
      np.abs(base_matrix_power(deep) - naive).max())

# The two non-unit eigenvalues control how fast structure washes out.
print("eigenvalues (lam, mu):", eigenvalues(params))

# The accumulated substitution probability rises from q toward 3/4 (the
# uniform limit) as stages accumulate -- or toward 1/2 when gamma = 0,
# because then a base can never leave its chemical category.
print("\naccumulated rate by depth:")
for m in (1, 10, 100, 1000, 10**6):
    row = [accumulated_rate(ChannelParams(q=0.05, gamma=g, m=m)) for g in (1.0, 0.5, 0.0)]
    print(f"  m={m:>7}: gamma=1 {row[0]:.5f}   gamma=0.5 {row[1]:.5f}   gamma=0 {row[2]:.5f}")

# Monte Carlo agreement: mutate 50k bases for 10 stages and count how many
# ended up different.
mc_params = ChannelParams(q=0.05, gamma=0.5, m=10)
sequence = "ACTG" * 12_500
mutated = simulate_chain(mc_params, sequence, seed=7)
empirical = sum(a != b for a, b in zip(sequence, mutated)) / len(sequence)
print(f"\nMonte Carlo mismatch fraction: {empirical:.5f}"
      f"   closed form: {accumulated_rate(mc_params):.5f}")

# Codons see three independent base channels, i.e. the Kronecker cube.
from dnacap.genetic_code import codon_index

big = codon_matrix(base_matrix_power(ChannelParams(q=0.01, gamma=1.0, m=1)))
atg = codon_index("ATG")
print("\ncodon channel: shape", big.shape, " P(ATG stays ATG) =", big[atg, atg])
