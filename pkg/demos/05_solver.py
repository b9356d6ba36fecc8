# Exhaustive Gray-code minimisation, split across worker threads.

import time

from splitreduc.ramsey import RamseySpec, count_oracle, hamiltonian
from splitreduc.solver import parallel_min

H = hamiltonian(RamseySpec(4, 3, 7))   # 21 edges, 2^21 colourings
t0 = time.perf_counter()
r = parallel_min(H, workers=4, count_minima=True)
print(r.min_energy, r.num_minima, r.evaluations, f"{time.perf_counter() - t0:.2f}s")

# witness is a triangle-free graph on 7 vertices without an independent 4-set
g = [r.witness[k] for k in range(21)]
print(count_oracle(RamseySpec(4, 3, 7), g))

# In[ ]:

# stopping as soon as a zero-energy colouring turns up
fast = parallel_min(hamiltonian(RamseySpec(4, 3, 8)), workers=4, early_exit_zero=True)
print(fast.early_exit, fast.evaluations, "of", 2**28)
