import random
from math import comb

import pytest

from splitreduc.estimate import (
    EmptySequence,
    compute_R,
    estimate,
    estimate_eq8,
    estimate_eq9,
    longest_path_one,
    shortest_path_zero,
)
from splitreduc.exprio import SymbolTable, parse
from splitreduc.ramsey import RamseySpec, chain_polynomial, hamiltonian
from splitreduc.split import CostConfig, count_leaves

from conftest import random_poly

Q8 = CostConfig(8, 2, True)
NOAUX = CostConfig(128, 2, False)


def test_paths_golden(golden):
    H, _ = golden
    assert shortest_path_zero(H, Q8) == 1
    assert longest_path_one(H, Q8) == (2, [1, 1, 0])


def test_paths_chain():
    H = chain_polynomial(8)
    assert shortest_path_zero(H, NOAUX) == 1
    l, d = longest_path_one(H, NOAUX)
    assert l == 26 and d == [1] * 26 + [0]


def test_paths_desirable():
    P, _ = parse("x*y + 3")
    assert shortest_path_zero(P, Q8) == 0
    assert longest_path_one(P, Q8) == (0, [0])


def test_compute_R():
    assert compute_R([1, 1, 0], 1) == {1: 2}
    assert compute_R([1] * 26 + [0], 1) == {1: 26}
    # value 1 skipped: fall back to the last entry larger than 1
    assert compute_R([2, 0], 2) == {1: 1, 2: 1}
    with pytest.raises(EmptySequence):
        compute_R([], 1)


def test_skip_rule_instance_against_tree():
    # constructed so the all-ones walk drops straight from 2 to 0
    P, _ = parse("2*x1*x5 - x0*x1*x4 - x2*x3*x5 + x1*x2*x3*x5", SymbolTable.default(6))
    rep = estimate(P, NOAUX)
    assert rep.d_sequence == [2, 0]
    assert rep.R == {1: 1, 2: 1}
    assert rep.estimate_eq9 == 3
    assert count_leaves(P, NOAUX) == 3


def test_eq8():
    assert estimate_eq8(2, 1) == 3
    assert estimate_eq8(26, 1) == 27
    assert estimate_eq8(5, 0) == 1


def test_eq9():
    assert estimate_eq9({1: 2}, 1) == 3
    assert estimate_eq9({1: 26}, 1) == 27
    assert estimate_eq9({}, 0) == 1


def test_big_integers_exact():
    assert estimate_eq8(4000, 2000) == sum(comb(4000, k) for k in range(2001))
    R = {i: 4000 - i for i in range(1, 51)}
    assert estimate_eq9(R, 50) == 1 + sum(comb(R[50 - k + 1] - 1 + k, k) for k in range(1, 51))


def test_estimate_golden(golden):
    H, _ = golden
    r = estimate(H, Q8)
    assert (r.s, r.l, r.d_sequence, r.R) == (1, 2, [1, 1, 0], {1: 2})
    assert (r.lower_2s, r.upper_2l, r.estimate_eq8, r.estimate_eq9) == (2, 4, 3, 3)
    assert r.estimate_eq9 == count_leaves(H, Q8)


def test_estimate_chain_m8():
    r = estimate(chain_polynomial(8), NOAUX)
    assert (r.s, r.l, r.estimate_eq9) == (1, 26, 27)


def test_estimate_r43_n7():
    assert estimate(hamiltonian(RamseySpec(4, 3, 7)), CostConfig(128)).estimate_eq9 == 9


@pytest.mark.parametrize("m", range(4, 10))
def test_chain_family_exact(m):
    H = chain_polynomial(m)
    r = estimate(H, NOAUX)
    assert r.estimate_eq9 == comb(m, 2) - 1 == count_leaves(H, NOAUX)
    assert r.l == comb(m, 2) - 2


def test_desirable_report():
    P, _ = parse("1 + a")
    r = estimate(P, Q8)
    assert (r.s, r.l, r.d_sequence, r.estimate_eq8, r.estimate_eq9, r.lower_2s, r.upper_2l) == (0, 0, [0], 1, 1, 1, 1)


def test_invariants_random():
    rng = random.Random(8)
    for _ in range(60):
        P = random_poly(rng, 12, 10, 6)
        cfg = CostConfig(rng.randint(3, 12), 2, rng.random() < 0.5)
        r = estimate(P, cfg)
        n = len(P.support)
        assert len(r.d_sequence) == r.l + 1 and r.d_sequence[-1] == 0
        assert r.lower_2s == 2**r.s and r.upper_2l == 2**r.l
        if r.l:
            assert r.s >= 1
        # O(n^2) substitutions
        assert r.substitutions <= (n + 1) ** 2


def test_quadratic_substitution_count_on_ramsey():
    H = hamiltonian(RamseySpec(4, 3, 9))
    r = estimate(H, CostConfig(30))
    assert r.substitutions <= 36**2
