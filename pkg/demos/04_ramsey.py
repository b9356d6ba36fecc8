# Ramsey numbers as ground-state questions.  H(m,n,N) counts m-cliques plus
# independent n-sets in a graph on N vertices; R(m,n) is the first N where it cannot be 0.

from splitreduc.ramsey import RamseySpec, count_oracle, determine_ramsey, hamiltonian
from splitreduc.solver import SolvePlan
from splitreduc.split import CostConfig

H = hamiltonian(RamseySpec(3, 3, 6))
print(H.num_terms, "terms, degree", H.degree)

# the all-red K6 has C(6,3) triangles
print(count_oracle(RamseySpec(3, 3, 6), [1] * 15))

res = determine_ramsey(3, 3, 7, SolvePlan(mode="exhaustive"))
print("R(3,3) =", res.number, {N: e["min_energy"] for N, e in res.evidence.items()})

# In[ ]:

# R(m,2) through the split pipeline: every leaf bottoms out at 1 when N = m
plan = SolvePlan(mode="split", cfg=CostConfig(128, 2, False))
for m in range(4, 9):
    res = determine_ramsey(m, 2, m, plan, N_start=m - 1)
    print(f"R({m},2) = {res.number}   leaves at N={m}: {res.evidence[m]['leaves']}")
