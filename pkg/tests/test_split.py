import random
from math import comb

import numpy as np
import pytest

from splitreduc.exprio import parse
from splitreduc.poly import Polynomial, substitute
from splitreduc.ramsey import chain_polynomial
from splitreduc.split import (
    CostConfig,
    EmptySupport,
    LimitExceeded,
    build_split_tree,
    count_leaves,
    hamiltonian_cost,
    is_desirable,
    iter_leaves,
    leaves,
    ramp,
    select_split_variable,
    term_aux_cost,
    variable_cost,
)

from conftest import energies_on, random_poly

Q8 = CostConfig(8, 2, True)


def sub(P, t, text):
    return parse(text, t.copy())[0]


def test_ramp():
    assert (ramp(3), ramp(0), ramp(-2)) == (3, 0, 0)


def test_term_aux_cost():
    assert term_aux_cost(tuple(range(5)), 2) == 3
    assert term_aux_cost((0, 1), 2) == 0
    assert term_aux_cost(tuple(range(6)), 2) == 4


def test_hamiltonian_cost(golden):
    H, t = golden
    H1 = substitute(H, t["x1"], 1)
    H0 = substitute(H, t["x1"], 0)
    assert hamiltonian_cost(H1, Q8) == 9
    assert hamiltonian_cost(H0, Q8) == 4
    assert hamiltonian_cost(Polynomial.constant(7), Q8) == 0


def test_is_desirable(golden):
    H, t = golden
    assert not is_desirable(substitute(H, t["x1"], 1), Q8)
    assert is_desirable(substitute(H, t["x1"], 0), Q8)
    leaf, _ = parse("2 - a27 - a28 + a27*a28")
    assert is_desirable(leaf, CostConfig(128, 2, False))


def test_aux_off_ignores_aux_cost():
    P, _ = parse("x1*x2*x3")
    assert not is_desirable(P, CostConfig(100, 2, False))
    assert is_desirable(P, CostConfig(100, 3, False))
    assert not is_desirable(P, CostConfig(2, 3, False))


def test_variable_cost(golden):
    H, t = golden
    assert variable_cost(H, t["x1"]) == 7
    assert variable_cost(H, t["x8"]) == 5
    H1 = substitute(H, t["x1"], 1)
    scores = {v: variable_cost(H1, v) for v in H1.support}
    assert scores[t["x8"]] == 4 == max(scores.values())
    # quadratic terms score ramp(2 - 2 + 1) = 1
    assert scores[t["x2"]] == 1


def test_select_split_variable(golden):
    H, t = golden
    assert select_split_variable(H, Q8) == t["x1"]
    assert select_split_variable(substitute(H, t["x1"], 1), Q8) == t["x8"]
    assert select_split_variable(chain_polynomial(8), CostConfig(128, 2, False)) == 0
    with pytest.raises(EmptySupport):
        select_split_variable(Polynomial.constant(3), Q8)


def test_seeded_ties_are_reproducible():
    H = chain_polynomial(6)
    cfg = CostConfig(128, 2, False)
    a = [select_split_variable(H, cfg, random.Random(5)) for _ in range(3)]
    assert len(set(a)) == 1
    picks = {select_split_variable(H, cfg, random.Random(s)) for s in range(20)}
    assert len(picks) > 1


def test_golden_tree(golden):
    H, t = golden
    tree = build_split_tree(H, Q8)
    got = [(l.prefix, l.hamiltonian) for l in leaves(tree)]
    # x8 = 0 kills x6*x7*x8 and x3*x4*x8; x8 = 1 cancels the x3*x4 pair
    assert got == [
        ({t["x1"]: 0}, sub(H, t, "1 + x3*x4*x8")),
        ({t["x1"]: 1, t["x8"]: 0}, sub(H, t, "1 + x2*x5 - x3*x4")),
        ({t["x1"]: 1, t["x8"]: 1}, sub(H, t, "1 + x2*x5 + x6*x7")),
    ]
    assert tree.split_variables() == [t["x1"], t["x8"]]
    assert tree.root.children[1].split_var == t["x8"]
    assert [(l.prefix, l.hamiltonian) for l in iter_leaves(H, Q8)] == got


def test_already_desirable_single_leaf():
    P, _ = parse("1 + x*y")
    tree = build_split_tree(P, Q8)
    assert len(tree) == 1 and tree.leaves()[0].prefix == {} and tree.root.is_leaf
    c = build_split_tree(Polynomial.constant(4), Q8)
    assert len(c) == 1


@pytest.mark.parametrize("m", range(4, 10))
def test_chain_leaf_count(m):
    cfg = CostConfig(max(128, comb(m, 2)), 2, False)
    assert count_leaves(chain_polynomial(m), cfg) == comb(m, 2) - 1


def test_limits():
    H = chain_polynomial(6)
    cfg = CostConfig(128, 2, False)
    with pytest.raises(LimitExceeded) as e:
        build_split_tree(H, cfg, max_leaves=5)
    assert e.value.kind == "max_leaves"
    assert not e.value.partial.complete
    with pytest.raises(LimitExceeded) as e:
        build_split_tree(H, cfg, max_depth=3)
    assert e.value.kind == "max_depth"
    with pytest.raises(LimitExceeded):
        list(iter_leaves(H, cfg, max_leaves=2))


def test_tree_invariants_random():
    rng = random.Random(11)
    for _ in range(30):
        P = random_poly(rng, 10, 8, 5)
        cfg = CostConfig(rng.randint(3, 8), rng.choice([2, 3]), rng.random() < 0.5)
        tree = build_split_tree(P, cfg)
        stack = [tree.root]
        while stack:
            node = stack.pop()
            if node.is_leaf:
                assert node.hamiltonian.is_constant() or is_desirable(node.hamiltonian, cfg)
                continue
            v = node.split_var
            assert node.children[0].hamiltonian == substitute(node.hamiltonian, v, 0)
            assert node.children[1].hamiltonian == substitute(node.hamiltonian, v, 1)
            stack.extend(node.children)
        for leaf in tree.leaves():
            assert len(set(leaf.prefix)) == len(leaf.prefix)
            R = P
            for v, b in leaf.prefix.items():
                R = substitute(R, v, b)
            assert R == leaf.hamiltonian


def check_partition(P, leaf_list):
    """Every assignment of the root support lands in exactly one leaf, same energy."""
    vars_ = sorted(P.support)
    pos = {v: i for i, v in enumerate(vars_)}
    idx = np.arange(1 << len(vars_), dtype=np.int64)
    root = energies_on(P, idx, pos)
    hits = np.zeros(idx.shape[0], dtype=np.int64)
    leaf_min = None
    for leaf in leaf_list:
        mask = np.ones(idx.shape[0], dtype=bool)
        for v, b in leaf.prefix.items():
            mask &= ((idx >> pos[v]) & 1) == b
        sel = idx[mask]
        e = energies_on(leaf.hamiltonian, sel, pos)
        assert np.array_equal(e, root[mask])
        hits[mask] += 1
        lm = e.min()
        leaf_min = lm if leaf_min is None else min(leaf_min, lm)
    assert np.all(hits == 1)
    assert leaf_min == root.min()


def test_partition_small_random():
    rng = random.Random(3)
    for _ in range(40):
        P = random_poly(rng, rng.randint(1, 12), rng.randint(1, 10), 5)
        cfg = CostConfig(rng.randint(2, 10), rng.choice([1, 2, 3]), rng.random() < 0.5)
        check_partition(P, list(iter_leaves(P, cfg)))
