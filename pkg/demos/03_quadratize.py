# Reduce a quartic to a quadratic with a penalty gadget per auxiliary qubit.

import numpy as np

from splitreduc.exprio import parse, serialize
from splitreduc.poly import truth_table
from splitreduc.quadratize import quadratize

H, names = parse("3*a*b*c*d - 2*a*b*c + b*d - c")
r = quadratize(H, target_order=2)
for d in r.aux_defs:
    names.add(f"aux{d.aux}")
print("lambda:", r.lam, " aux:", [(names.name(d.aux), names.name(d.pair[0]), names.name(d.pair[1])) for d in r.aux_defs])
print(serialize(r.reduced, names))

# In[ ]:

# Same minimum, and every minimiser of the reduced form projects to one of H
n = len(H.support)
orig = truth_table(H, list(range(n)))
red = truth_table(r.reduced, list(range(n)) + [d.aux for d in r.aux_defs])
print(orig.min(), red.min())
proj = np.unique(np.flatnonzero(red == red.min()) & ((1 << n) - 1))
print(proj, np.flatnonzero(orig == orig.min()))
