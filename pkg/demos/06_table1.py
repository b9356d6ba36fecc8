# Leaf counts and estimates for R(4,3) Hamiltonians at several qubit budgets,
# next to the reference figures.  N = 9 rows take minutes; they are left out here.

from splitreduc.table1 import HEADER, format_row, reproduce

print(HEADER)
for row in reproduce(Ns=(6, 7, 8), Qs=(128, 50, 30)):
    print(format_row(row))
