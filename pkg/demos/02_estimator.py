# How many leaves will a split produce?  The estimator walks two greedy paths
# instead of building the tree, and brackets the count.

from math import comb

from splitreduc.estimate import estimate
from splitreduc.ramsey import RamseySpec, chain_polynomial, hamiltonian
from splitreduc.split import CostConfig, count_leaves

no_aux = CostConfig(128, 2, allow_aux=False)
for m in (4, 6, 8, 12, 16):
    rep = estimate(chain_polynomial(m), no_aux)
    # the chain L - sum(a) + prod(a) splits into C(m,2) - 1 leaves
    print(m, rep.s, rep.l, rep.estimate_eq9, comb(m, 2) - 1)

# In[ ]:

# Ramsey R(4,3) Hamiltonians against a 50-qubit budget
cfg = CostConfig(50)
for N in (6, 7, 8):
    H = hamiltonian(RamseySpec(4, 3, N))
    rep = estimate(H, cfg)
    print(f"N={N}  2^s={rep.lower_2s}  2^l={rep.upper_2l}  estimate={rep.estimate_eq9}  actual={count_leaves(H, cfg)}")
