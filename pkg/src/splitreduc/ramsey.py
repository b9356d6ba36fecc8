"""Ramsey-number Hamiltonians over edge variables.

``H(m, n, N)`` takes one binary variable per edge of the complete graph on
N vertices (1 = edge present) and counts the m-cliques plus the n-vertex
independent sets of the graph it encodes.  Its minimum is 0 exactly when
some graph on N vertices has neither, so the Ramsey number R(m, n) is the
first N at which the minimum becomes positive.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional

from .exprio import SymbolTable
from .poly import Polynomial, _checked
from .solver import SolvePlan, solve

DEFAULT_MAX_RAW_TERMS = 10**7


class ExpansionTooLarge(OverflowError):
    pass


@dataclass(frozen=True)
class RamseySpec:
    m: int
    n: int
    N: int

    def __post_init__(self):
        if self.m < 2 or self.n < 2 or self.N < 2:
            raise ValueError("m, n and N must all be at least 2")


class EdgeIndexer:
    """Row-major bijection (i, j), i < j  <->  0 .. C(N,2)-1."""

    def __init__(self, N: int):
        self.N = N
        self.pairs = list(itertools.combinations(range(N), 2))
        self._index = {p: k for k, p in enumerate(self.pairs)}

    def __len__(self):
        return len(self.pairs)

    def index(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        return self._index[(i, j)]

    def pair(self, k: int) -> tuple:
        return self.pairs[k]

    def symbols(self) -> SymbolTable:
        return SymbolTable(f"e{i}_{j}" for i, j in self.pairs)


def hamiltonian(spec: RamseySpec, max_raw_terms: int = DEFAULT_MAX_RAW_TERMS) -> Polynomial:
    """Expanded multilinear H(m, n, N)."""
    m, n, N = spec.m, spec.n, spec.N
    edges = EdgeIndexer(N)
    raw = math.comb(N, m) + math.comb(N, n) * 2 ** math.comb(n, 2)
    if raw > max_raw_terms:
        raise ExpansionTooLarge(f"H{(m, n, N)} expands to {raw} raw terms (cap {max_raw_terms})")
    terms: dict = {}
    for S in itertools.combinations(range(N), m):
        mono = tuple(sorted(edges.index(i, j) for i, j in itertools.combinations(S, 2)))
        terms[mono] = terms.get(mono, 0) + 1
    for T in itertools.combinations(range(N), n):
        es = sorted(edges.index(i, j) for i, j in itertools.combinations(T, 2))
        # prod (1 - e) = sum over subsets U of (-1)^|U| prod U
        for r in range(len(es) + 1):
            sign = -1 if r % 2 else 1
            for U in itertools.combinations(es, r):
                terms[U] = _checked(terms.get(U, 0) + sign)
    return Polynomial({k: c for k, c in terms.items() if c}, _trusted=True)


def count_oracle(spec: RamseySpec, graph) -> int:
    """Direct count of m-cliques and n-independent sets.

    ``graph`` maps edge index (row-major) to bit; sequences work too.
    """
    edges = EdgeIndexer(spec.N)

    def e(i, j):
        return graph[edges.index(i, j)]

    count = 0
    for S in itertools.combinations(range(spec.N), spec.m):
        if all(e(i, j) for i, j in itertools.combinations(S, 2)):
            count += 1
    for T in itertools.combinations(range(spec.N), spec.n):
        if not any(e(i, j) for i, j in itertools.combinations(T, 2)):
            count += 1
    return count


def complement(graph) -> list:
    return [1 - b for b in graph]


def chain_polynomial(m: int) -> Polynomial:
    """sum_k (1 - a_k) + prod_k a_k over L = C(m, 2) variables a_0..a_{L-1}."""
    L = math.comb(m, 2)
    terms = {(): L}
    for k in range(L):
        terms[(k,)] = -1
    terms[tuple(range(L))] = terms.get(tuple(range(L)), 0) + 1
    return Polynomial({k: c for k, c in terms.items() if c}, _trusted=True)


@dataclass
class RamseyResult:
    m: int
    n: int
    number: Optional[int]  # None when undetermined up to N_max
    evidence: dict = field(default_factory=dict)  # N -> record

    @property
    def determined(self) -> bool:
        return self.number is not None

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "R": self.number,
            "determined": self.determined,
            "evidence": {str(N): rec for N, rec in sorted(self.evidence.items())},
        }


def solve_instance(spec: RamseySpec, plan: SolvePlan) -> dict:
    H = hamiltonian(spec)
    table = EdgeIndexer(spec.N).symbols()
    res = solve(H, plan)
    return {
        "min_energy": res.min_energy,
        "leaves": res.leaves,
        "witness": {table.name(v): b for v, b in sorted(res.witness.items())},
        "early_exit": res.early_exit,
    }


def determine_ramsey(m: int, n: int, N_max: int, plan: Optional[SolvePlan] = None,
                     N_start: Optional[int] = None, report_only: bool = False) -> RamseyResult:
    """First N in [N_start, N_max] whose H(m, n, N) has a positive minimum.

    With ``report_only`` every N in range is solved even after the answer is
    found.  If no N qualifies the result has ``number=None``.
    """
    if plan is None:
        plan = SolvePlan(early_exit_zero=True)
    if N_start is None:
        N_start = max(m, n)
    if N_start > N_max:
        raise ValueError("N_start must not exceed N_max")
    result = RamseyResult(m, n, None)
    for N in range(max(N_start, 2), N_max + 1):
        rec = solve_instance(RamseySpec(m, n, N), plan)
        result.evidence[N] = rec
        if rec["min_energy"] > 0 and result.number is None:
            result.number = N
            if not report_only:
                break
    return result
