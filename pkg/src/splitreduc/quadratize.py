"""Order reduction with the penalty gadget ``b := a1*a2``.

``P(a1, a2; b) = a1*a2 - 2*a1*b - 2*a2*b + 3*b`` is 0 when b = a1*a2 and at
least 1 otherwise.  Replacing the pair by b in the objective and adding
``lam * P`` lowers orders by one per application without moving the minimum,
provided ``lam`` exceeds the largest possible gain from a wrong b.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Optional, Union

from .poly import Polynomial, _checked, canonicalize
from .split import aux_bound


class NonFreshAux(ValueError):
    pass


class AuxBudgetExceeded(RuntimeError):
    def __init__(self, limit: int, partial=None):
        super().__init__(f"auxiliary budget of {limit} exhausted")
        self.limit = limit
        self.partial = partial


@dataclass
class AuxDef:
    aux: int
    pair: tuple


@dataclass
class QuadratizationResult:
    reduced: Polynomial
    objective: Polynomial  # the pair-substituted objective without penalties
    aux_defs: list = field(default_factory=list)
    lam: int = 1
    target_order: int = 2

    @property
    def num_aux(self) -> int:
        return len(self.aux_defs)

    def extend(self, assignment: dict) -> dict:
        """Fill in aux values (b = a1*a2, in application order)."""
        a = dict(assignment)
        for d in self.aux_defs:
            a[d.aux] = a[d.pair[0]] & a[d.pair[1]]
        return a

    def project(self, assignment: dict) -> dict:
        auxes = {d.aux for d in self.aux_defs}
        return {v: b for v, b in assignment.items() if v not in auxes}

    def to_dict(self, table=None) -> dict:
        from .exprio import to_dict

        def name(v):
            return table.name(v) if table is not None else v

        return {
            "reduced": to_dict(self.reduced, table),
            "aux": [{"aux": name(d.aux), "pair": [name(d.pair[0]), name(d.pair[1])]} for d in self.aux_defs],
            "lambda": self.lam,
            "target_order": self.target_order,
        }

    def to_json(self, table=None, **kw) -> str:
        return json.dumps(self.to_dict(table), **kw)


def penalty(a1: int, a2: int, b: int) -> Polynomial:
    if len({a1, a2, b}) != 3:
        raise ValueError("penalty needs three distinct variables")
    return canonicalize([(1, (a1, a2)), (-2, (a1, b)), (-2, (a2, b)), (3, (b,))])


def _substitute_pair(H: Polynomial, a1: int, a2: int, b: int) -> Polynomial:
    out: dict = {}
    for m, c in H.terms.items():
        if a1 in m and a2 in m:
            m = tuple(sorted([v for v in m if v != a1 and v != a2] + [b]))
        v = _checked(out.get(m, 0) + c)
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return Polynomial(out, _trusted=True)


def reduce_once(H: Polynomial, pair: tuple, b: int, lam: int) -> Polynomial:
    """Replace ``pair`` by ``b`` in every monomial holding both, add ``lam * P``."""
    a1, a2 = pair
    if a1 == a2:
        raise ValueError("pair must hold two distinct variables")
    if b in H.support or b in pair:
        raise NonFreshAux(f"auxiliary variable {b} already occurs in the polynomial")
    if lam < 1:
        raise ValueError("penalty weight must be at least 1")
    return _substitute_pair(H, a1, a2, b) + penalty(a1, a2, b).scale(lam)


def choose_lambda(H: Polynomial) -> int:
    """1 + sum of |coefficients|: any wrong aux costs more than it can save."""
    return _checked(1 + sum(abs(c) for c in H.terms.values()))


def best_pair(H: Polynomial, target_order: int) -> Optional[tuple]:
    """Pair occurring in the most monomials above ``target_order``; lexicographic ties."""
    counts: Counter = Counter()
    for m in H.terms:
        if len(m) > target_order:
            counts.update(combinations(m, 2))
    if not counts:
        return None
    top = max(counts.values())
    return min(p for p, c in counts.items() if c == top)


def quadratize(
    H: Polynomial,
    target_order: int = 2,
    lam: Union[int, Callable[[Polynomial], int], None] = None,
    first_aux: Optional[int] = None,
    max_aux: Optional[int] = None,
) -> QuadratizationResult:
    """Apply :func:`reduce_once` until the degree is at most ``target_order``.

    ``lam`` is a fixed weight or a policy callable on H (default
    :func:`choose_lambda`); the same weight is used for every penalty.  New
    variables are numbered from ``first_aux`` (default: one past the largest
    id in H).
    """
    if target_order < 2:
        raise ValueError("target order must be at least 2")
    if lam is None:
        lam = choose_lambda(H)
    elif callable(lam):
        lam = lam(H)
    if lam < 1:
        raise ValueError("penalty weight must be at least 1")
    next_id = max(H.support, default=-1) + 1 if first_aux is None else first_aux
    if any(v >= next_id for v in H.support):
        raise NonFreshAux(f"first auxiliary id {next_id} collides with the input support")
    objective = H
    penalties = Polynomial()
    defs = []
    while objective.degree > target_order:
        if max_aux is not None and len(defs) >= max_aux:
            partial = QuadratizationResult(objective + penalties, objective, defs, lam, target_order)
            raise AuxBudgetExceeded(max_aux, partial)
        a1, a2 = best_pair(objective, target_order)
        b = next_id
        next_id += 1
        objective = _substitute_pair(objective, a1, a2, b)
        penalties = penalties + penalty(a1, a2, b).scale(lam)
        defs.append(AuxDef(b, (a1, a2)))
    assert len(defs) <= aux_bound(H, target_order)
    return QuadratizationResult(objective + penalties, objective, defs, lam, target_order)
