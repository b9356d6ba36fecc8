"""Exact minimisation by exhaustive Gray-code enumeration.

The walk visits assignments in reflected-binary Gray order starting from
all zeros, so consecutive assignments differ in one bit.  Each monomial keeps
a count of its variables that are currently 0; a flip touches only the
monomials containing the flipped variable, and a monomial contributes its
coefficient exactly when its zero count is 0.

Parallel runs fix the highest variable ids to select a sub-cube per task.
Because the reflected Gray order restricted to a sub-cube is itself a
(possibly reversed) Gray walk of the low bits, every sub-cube can report the
global enumeration rank of its best assignment, and the merged witness is the
same one the single-threaded walk would find.
"""
from __future__ import annotations

import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numba
import numpy as np

from .poly import Polynomial, substitute_many
from .split import CostConfig, DEFAULT_MAX_LEAVES, iter_leaves

MAX_VARIABLES = 40
DEFAULT_LEAF_CAP = 30

_CHECK_MASK = (1 << 10) - 1
_POLL_MASK = (1 << 16) - 1


class TooManyVariables(ValueError):
    pass


class IncrementalMismatch(AssertionError):
    pass


@dataclass
class SolveResult:
    min_energy: int
    witness: dict  # var -> bit over the polynomial's support
    num_minima: Optional[int] = None
    evaluations: int = 0
    leaves: int = 1
    early_exit: bool = False

    def to_dict(self, table=None) -> dict:
        if table is None:
            w = {str(v): b for v, b in sorted(self.witness.items())}
        else:
            w = {table.name(v): b for v, b in sorted(self.witness.items())}
        d = {"min_energy": self.min_energy, "witness": w, "evaluations": self.evaluations,
             "leaves": self.leaves}
        if self.num_minima is not None:
            d["num_minima"] = self.num_minima
        if self.early_exit:
            d["early_exit"] = True
        return d


@dataclass
class SolvePlan:
    mode: str = "exhaustive"  # or "split"
    workers: int = 1
    leaf_cap: int = DEFAULT_LEAF_CAP
    cfg: Optional[CostConfig] = None
    count_minima: bool = False
    early_exit_zero: bool = False
    max_leaves: int = DEFAULT_MAX_LEAVES
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.mode not in ("exhaustive", "split"):
            raise ValueError(f"unknown solve mode {self.mode!r}")
        if self.mode == "split" and self.cfg is None:
            raise ValueError("split mode needs a CostConfig")
        if self.workers < 1:
            raise ValueError("worker count must be positive")


# --------------------------------------------------------------------------
# kernel

@numba.njit(cache=True, nogil=True)
def _gray_walk(n, const, coef, size, var_ptr, var_mono, stop_at, use_stop, stop_flag, check, out_state):
    """Walk all 2**n assignments; return (best, first_j, last_j, count, steps, status).

    status: 0 finished, 1 stopped at ``stop_at``, 2 interrupted via
    ``stop_flag``, 3 incremental/full energy mismatch.
    """
    n_mono = coef.shape[0]
    zeros = size.copy()
    x = np.zeros(n, dtype=np.uint8)
    energy = const
    for t in range(n_mono):
        if zeros[t] == 0:
            energy += coef[t]
    best = energy
    first = 0
    last = 0
    count = 1
    if use_stop and energy <= stop_at:
        out_state[:] = x
        return best, 0, 0, 1, 1, 1
    total = 1 << n
    for i in range(1, total):
        j = i
        v = 0
        while (j & 1) == 0:
            j >>= 1
            v += 1
        if x[v] == 0:
            x[v] = 1
            for p in range(var_ptr[v], var_ptr[v + 1]):
                t = var_mono[p]
                zeros[t] -= 1
                if zeros[t] == 0:
                    energy += coef[t]
        else:
            x[v] = 0
            for p in range(var_ptr[v], var_ptr[v + 1]):
                t = var_mono[p]
                if zeros[t] == 0:
                    energy -= coef[t]
                zeros[t] += 1
        if check and (i & 1023) == 0:
            full = const
            for t in range(n_mono):
                if zeros[t] == 0:
                    full += coef[t]
            if full != energy:
                return best, first, last, count, i + 1, 3
        if energy < best:
            best = energy
            first = i
            last = i
            count = 1
            out_state[:] = x
            if use_stop and energy <= stop_at:
                return best, first, last, count, i + 1, 1
        elif energy == best:
            last = i
            count += 1
        if (i & 65535) == 0 and stop_flag[0] != 0:
            return best, first, last, count, i + 1, 2
    if first == 0:
        out_state[:] = 0
    return best, first, last, count, total, 0


def _compile(P: Polynomial, local_vars: list):
    """CSR arrays for the kernel; ``local_vars`` must cover P's support."""
    pos = {v: i for i, v in enumerate(local_vars)}
    monos = [(m, c) for m, c in P.terms.items() if m]
    n = len(local_vars)
    coef = np.array([c for _, c in monos], dtype=np.int64)
    size = np.array([len(m) for m, _ in monos], dtype=np.int64)
    occ = [[] for _ in range(n)]
    for t, (m, _) in enumerate(monos):
        for v in m:
            occ[pos[v]].append(t)
    var_ptr = np.zeros(n + 1, dtype=np.int64)
    var_ptr[1:] = np.cumsum([len(o) for o in occ]) if n else []
    var_mono = np.array([t for o in occ for t in o], dtype=np.int64)
    return np.int64(P.const), coef, size, var_ptr, var_mono


def _gray(k: int) -> int:
    return k ^ (k >> 1)


def _gray_inverse(g: int) -> int:
    k = 0
    while g:
        k ^= g
        g >>= 1
    return k


def _state_at(j: int, L: int) -> list:
    g = _gray(j)
    return [(g >> i) & 1 for i in range(L)]


def _walk_subcube(P, low, high, hp, stop_at, stop_flag, check):
    """Minimise P with ``high`` vars fixed to bit pattern ``hp``."""
    fixed = {v: (hp >> i) & 1 for i, v in enumerate(high)}
    Pk = substitute_many(P, fixed)
    L = len(low)
    arrays = _compile(Pk, low)
    out_state = np.zeros(L, dtype=np.uint8)
    use_stop = stop_at is not None
    best, first, last, count, steps, status = _gray_walk(
        L, *arrays, np.int64(stop_at if use_stop else 0), use_stop, stop_flag, check, out_state)
    if status == 3:
        raise IncrementalMismatch("incremental energy diverged from full evaluation")
    k = _gray_inverse(hp)
    if status == 0:
        # reflected Gray order runs odd blocks backwards
        j = first if k % 2 == 0 else last
        rank = (k << L) + (j if k % 2 == 0 else (1 << L) - 1 - j)
        bits = _state_at(j, L)
    else:
        rank = (k << L) + (first if k % 2 == 0 else (1 << L) - 1 - first)
        bits = [int(b) for b in out_state]
    witness = dict(fixed)
    witness.update({v: bits[i] for i, v in enumerate(low)})
    return int(best), rank, int(count), int(steps), status, witness


def _prepare(P: Polynomial):
    sup = sorted(P.support)
    if len(sup) > MAX_VARIABLES:
        raise TooManyVariables(f"{len(sup)} variables exceeds the exhaustive limit of {MAX_VARIABLES}")
    return sup


def parallel_min(P: Polynomial, workers: int = 1, *, early_exit_zero: bool = False,
                 stop_at: Optional[int] = None, count_minima: bool = False,
                 check: bool = False) -> SolveResult:
    """Exhaustive minimum using ``workers`` threads over disjoint sub-cubes.

    Without early exit the result (energy, witness, count) does not depend
    on ``workers``.  ``early_exit_zero`` stops everything once an energy
    <= 0 is seen; only sound for nonnegative objectives.
    """
    sup = _prepare(P)
    if early_exit_zero:
        stop_at = 0 if stop_at is None else min(stop_at, 0)
    h = 0 if workers <= 1 else min(math.ceil(math.log2(workers)), len(sup))
    low, high = sup[: len(sup) - h], sup[len(sup) - h:]
    stop_flag = np.zeros(1, dtype=np.int64)
    lock = threading.Lock()

    def task(hp):
        r = _walk_subcube(P, low, high, hp, stop_at, stop_flag, check)
        if r[4] == 1:
            with lock:
                stop_flag[0] = 1
        return r

    patterns = list(range(1 << h))
    if workers <= 1 or len(patterns) == 1:
        results = []
        for hp in patterns:
            results.append(task(hp))
            if stop_flag[0]:
                break
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(task, patterns))

    stopped = [r for r in results if r[4] == 1]
    evaluations = sum(r[3] for r in results)
    if stopped:
        best = min(stopped, key=lambda r: (r[0], r[1]))
        return SolveResult(best[0], best[5], None, evaluations, early_exit=True)
    best = min(results, key=lambda r: (r[0], r[1]))
    n_min = sum(r[2] for r in results if r[0] == best[0])
    return SolveResult(best[0], best[5], n_min if count_minima else None, evaluations)


def exhaustive_min(P: Polynomial, *, count_minima: bool = False, early_exit_zero: bool = False,
                   stop_at: Optional[int] = None, check: bool = False) -> SolveResult:
    """Single Gray walk over the whole support.

    The witness is the first minimiser in enumeration order.
    """
    return parallel_min(P, 1, count_minima=count_minima, early_exit_zero=early_exit_zero,
                        stop_at=stop_at, check=check)


def linear_min(P: Polynomial) -> SolveResult:
    """Closed-form minimum of a polynomial of degree <= 1."""
    if P.degree > 1:
        raise ValueError("linear_min needs degree <= 1")
    witness = {}
    e = P.const
    for m, c in P.terms.items():
        if m:
            witness[m[0]] = 1 if c < 0 else 0
            if c < 0:
                e += c
    return SolveResult(e, witness, 1, 1)


def solve_leaf(P: Polynomial, *, workers: int = 1, leaf_cap: int = DEFAULT_LEAF_CAP,
               count_minima: bool = False, stop_at: Optional[int] = None) -> SolveResult:
    if P.degree <= 1:
        return linear_min(P)
    if len(P.support) > leaf_cap:
        raise TooManyVariables(f"leaf has {len(P.support)} free variables, cap is {leaf_cap}")
    return parallel_min(P, workers, count_minima=count_minima, stop_at=stop_at)


def solve_via_split(P: Polynomial, cfg: CostConfig, workers: int = 1, *,
                    leaf_cap: int = DEFAULT_LEAF_CAP, count_minima: bool = False,
                    early_exit_zero: bool = False, max_leaves: int = DEFAULT_MAX_LEAVES) -> SolveResult:
    """Split P under ``cfg`` and return the best leaf minimum.

    Root variables that neither got fixed nor survive in a leaf are free; the
    witness sets them to 0 and the minimiser count multiplies by 2 per free
    variable.  Ties across leaves resolve to the earliest leaf.
    """
    root = P.support
    best: Optional[SolveResult] = None
    n_min = 0
    evaluations = 0
    n_leaves = 0
    for leaf in iter_leaves(P, cfg, max_leaves=max_leaves):
        n_leaves += 1
        r = solve_leaf(leaf.hamiltonian, workers=workers, leaf_cap=leaf_cap,
                       count_minima=count_minima, stop_at=0 if early_exit_zero else None)
        evaluations += r.evaluations
        if best is None or r.min_energy < best.min_energy:
            witness = dict.fromkeys(root, 0)
            witness.update(leaf.prefix)
            witness.update(r.witness)
            best = SolveResult(r.min_energy, witness, None, 0, early_exit=r.early_exit)
            n_min = 0
        if count_minima and r.min_energy == best.min_energy and not r.early_exit:
            free = len(root) - len(leaf.prefix) - len(leaf.hamiltonian.support)
            n_min += r.num_minima << free
        if early_exit_zero and best.min_energy <= 0:
            best.early_exit = True
            break
    best.evaluations = evaluations
    best.leaves = n_leaves
    if count_minima and not best.early_exit:
        best.num_minima = n_min
    return best


def solve(P: Polynomial, plan: SolvePlan) -> SolveResult:
    if plan.mode == "split":
        return solve_via_split(P, plan.cfg, plan.workers, leaf_cap=plan.leaf_cap,
                               count_minima=plan.count_minima,
                               early_exit_zero=plan.early_exit_zero, max_leaves=plan.max_leaves)
    return parallel_min(P, plan.workers, count_minima=plan.count_minima,
                        early_exit_zero=plan.early_exit_zero)
