import itertools
import random

import numpy as np
import pytest

from splitreduc.exprio import parse
from splitreduc.poly import Polynomial, canonicalize, evaluate, truth_table
from splitreduc.quadratize import (
    AuxBudgetExceeded,
    NonFreshAux,
    best_pair,
    choose_lambda,
    penalty,
    quadratize,
    reduce_once,
)
from splitreduc.split import aux_bound

from conftest import random_poly


def test_penalty_values():
    P = penalty(0, 1, 2)
    assert evaluate(P, [1, 1, 1]) == 0
    assert evaluate(P, [1, 1, 0]) == 1
    assert evaluate(P, [0, 0, 1]) == 3
    for a1, a2, b in itertools.product((0, 1), repeat=3):
        e = evaluate(P, [a1, a2, b])
        assert e >= 0
        assert (e == 0) == (b == a1 * a2)
    with pytest.raises(ValueError):
        penalty(0, 0, 1)


def test_reduce_once_cubic():
    H = canonicalize([(1, [1, 2, 3])])
    got = reduce_once(H, (1, 2), 9, 2)
    expected = canonicalize([(1, [9, 3])]) + penalty(1, 2, 9).scale(2)
    assert got == expected


def test_reduce_once_vacuous():
    H = canonicalize([(1, [1, 3]), (4, [])])
    assert reduce_once(H, (1, 2), 9, 3) == H + penalty(1, 2, 9).scale(3)


def test_reduce_once_shared_pair():
    H = canonicalize([(1, [1, 2]), (1, [1, 2, 3])])
    lam = 5
    got = reduce_once(H, (1, 2), 9, lam)
    assert got == canonicalize([(1, [9]), (1, [9, 3])]) + penalty(1, 2, 9).scale(lam)
    # min preserved
    assert truth_table(got, [1, 2, 3, 9]).min() == truth_table(H, [1, 2, 3, 9]).min()


def test_reduce_once_rejects_stale_aux():
    H = canonicalize([(1, [1, 2, 3])])
    with pytest.raises(NonFreshAux):
        reduce_once(H, (1, 2), 3, 2)


def test_quadratize_quartic_product():
    H = canonicalize([(1, [0, 1, 2, 3])])
    r = quadratize(H, 2)
    assert r.num_aux <= 2
    assert r.reduced.degree <= 2


def test_quadratize_quadratic_unchanged():
    H, _ = parse("3 + x*y - 2*y*z + z")
    r = quadratize(H)
    assert r.num_aux == 0 and r.reduced == H


def test_quadratize_golden_h0():
    H, _ = parse("1 + x3*x4*x8")
    r = quadratize(H, 2)
    assert r.num_aux == 1
    assert r.aux_defs[0].aux == 3


def test_choose_lambda(golden):
    H, _ = golden
    assert choose_lambda(H) == 6
    assert choose_lambda(Polynomial.constant(5)) == 6
    assert choose_lambda(Polynomial()) == 1


def test_reduced_decomposition():
    rng = random.Random(4)
    for _ in range(30):
        H = random_poly(rng, 8, 6, 6)
        r = quadratize(H)
        total = r.objective
        for d in r.aux_defs:
            total = total + penalty(*d.pair, d.aux).scale(r.lam)
        assert total == r.reduced
        auxes = [d.aux for d in r.aux_defs]
        assert len(set(auxes)) == len(auxes)
        assert not set(auxes) & H.support


def test_best_pair_prefers_shared_pairs():
    H = canonicalize([(1, [0, 1, 2]), (1, [1, 2, 3]), (1, [0, 3, 4])])
    assert best_pair(H, 2) == (1, 2)


def test_aux_budget():
    H = canonicalize([(1, list(range(6)))])
    with pytest.raises(AuxBudgetExceeded) as e:
        quadratize(H, 2, max_aux=2)
    assert e.value.partial.num_aux == 2


def test_fixed_lambda_and_target3():
    H = canonicalize([(2, list(range(6))), (-1, [0, 1, 2, 3])])
    r = quadratize(H, 3, lam=50)
    assert r.lam == 50 and r.reduced.degree <= 3
    assert r.num_aux <= aux_bound(H, 3)


def test_min_and_minimisers_small():
    rng = random.Random(21)
    for _ in range(40):
        H = random_poly(rng, 6, 5, 5)
        r = quadratize(H)
        n = max(H.support, default=-1) + 1
        orig = truth_table(H, list(range(n)))
        red = truth_table(r.reduced, list(range(n)) + [d.aux for d in r.aux_defs])
        assert red.min() == orig.min()
        proj = {k & ((1 << n) - 1) for k in np.flatnonzero(red == red.min())}
        assert proj == set(np.flatnonzero(orig == orig.min()).tolist())
        # b := a1*a2 extends each minimiser to a minimiser
        for k in np.flatnonzero(orig == orig.min())[:4]:
            a = r.extend({v: (int(k) >> v) & 1 for v in range(n)})
            assert evaluate(r.reduced, a) == orig.min()
