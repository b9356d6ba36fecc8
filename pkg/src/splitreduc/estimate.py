"""A-priori estimates of the number of leaves split-reduc will produce.

Two greedy walks down the split tree drive everything here: always taking
the 0-branch (length ``s``) and always taking the 1-branch (length ``l``).
Along the all-ones walk we record how many 0-moves would still be needed at
each node (the d-sequence), and from it the positions ``R_i`` that feed the
combinatorial estimate.
"""
from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from math import comb
from typing import Optional

from .poly import Polynomial, substitute
from .split import CostConfig, is_desirable, select_split_variable


class EmptySequence(ValueError):
    pass


class _Counter:
    def __init__(self):
        self.substitutions = 0


def shortest_path_zero(H: Polynomial, cfg: CostConfig, rng: Optional[random.Random] = None,
                       _counter: Optional[_Counter] = None) -> int:
    """Number of greedy 0-fixings until H becomes desirable."""
    s = 0
    while not is_desirable(H, cfg):
        H = substitute(H, select_split_variable(H, cfg, rng), 0)
        if _counter is not None:
            _counter.substitutions += 1
        s += 1
    return s


def longest_path_one(H: Polynomial, cfg: CostConfig, rng: Optional[random.Random] = None,
                     _counter: Optional[_Counter] = None) -> tuple[int, list]:
    """Greedy 1-fixings until desirable, with the d-sequence along the way.

    ``d[j]`` is :func:`shortest_path_zero` of the node reached after j
    1-fixings, so ``len(d) == l + 1`` and ``d[-1] == 0``.
    """
    d = [shortest_path_zero(H, cfg, rng, _counter)]
    while not is_desirable(H, cfg):
        H = substitute(H, select_split_variable(H, cfg, rng), 1)
        if _counter is not None:
            _counter.substitutions += 1
        d.append(shortest_path_zero(H, cfg, rng, _counter))
    return len(d) - 1, d


def compute_R(d_sequence, s: int) -> dict:
    """1-based position of the last ``s - i + 1`` in the d-sequence, i = 1..s.

    When that value is skipped, fall back to the last entry larger than it.
    """
    d = list(d_sequence)
    if not d:
        raise EmptySequence("d-sequence is empty")
    R = {}
    for i in range(1, s + 1):
        target = s - i + 1
        hits = [j for j, x in enumerate(d) if x == target]
        if not hits:
            hits = [j for j, x in enumerate(d) if x > target]
        if not hits:
            raise ValueError(f"d-sequence {d} never reaches {target}")
        R[i] = 1 + max(hits)
    return R


def estimate_eq8(l: int, s: int) -> int:
    """sum_{k=0}^{s} C(l, k): 0-moves only ever help."""
    if s < 0 or l < 0:
        raise ValueError("path lengths must be nonnegative")
    return sum(comb(l, k) for k in range(s + 1))


def estimate_eq9(R: dict, s: int) -> int:
    """1 + sum_{k=1}^{s} C(R_{s-k+1} - 1 + k, k): 1-moves also help."""
    return 1 + sum(comb(R[s - k + 1] - 1 + k, k) for k in range(1, s + 1))


@dataclass
class EstimateReport:
    s: int
    l: int
    d_sequence: list
    R: dict
    lower_2s: int
    upper_2l: int
    estimate_eq8: int
    estimate_eq9: int
    substitutions: int = field(default=0, compare=False)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["R"] = {str(k): v for k, v in self.R.items()}
        return d


def estimate(H: Polynomial, cfg: CostConfig, rng: Optional[random.Random] = None) -> EstimateReport:
    counter = _Counter()
    s = shortest_path_zero(H, cfg, rng, counter)
    l, d = longest_path_one(H, cfg, rng, counter)
    # with random ties the two walks may disagree on s; the d-sequence owns it
    s = d[0]
    R = compute_R(d, s)
    return EstimateReport(
        s=s,
        l=l,
        d_sequence=d,
        R=R,
        lower_2s=2**s,
        upper_2l=2**l,
        estimate_eq8=estimate_eq8(l, s),
        estimate_eq9=estimate_eq9(R, s),
        substitutions=counter.substitutions,
    )
