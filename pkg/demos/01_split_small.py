# Splitting a small cubic Hamiltonian until each piece fits an 8-qubit budget.

from splitreduc.exprio import SymbolTable, parse, serialize
from splitreduc.split import CostConfig, build_split_tree, hamiltonian_cost, variable_costs

names = SymbolTable(f"x{i}" for i in range(1, 9))
H, names = parse("1 + x1*x2*x5 + x1*x6*x7*x8 + x3*x4*x8 - x1*x3*x4", names)
cfg = CostConfig(qubits=8, target_order=2, allow_aux=True)

# 8 logical vars plus 5 aux qubits to quadratize: too big for 8
print("cost of H:", hamiltonian_cost(H, cfg))

# per-variable scores; x1 touches the most high-order terms
scores = variable_costs(H, cfg.target_order)
print({names.name(v): s for v, s in sorted(scores.items())})

tree = build_split_tree(H, cfg)
print("split on:", [names.name(v) for v in tree.split_variables()])

# In[ ]:

for leaf in tree.leaves():
    fixed = ", ".join(f"{names.name(v)}={b}" for v, b in leaf.prefix.items())
    print(f"  [{fixed}]  {serialize(leaf.hamiltonian, names)}  cost={hamiltonian_cost(leaf.hamiltonian, cfg)}")
