"""Split-reduc: branch on variables until every piece fits the device.

A Hamiltonian is *desirable* when it satisfies the hardware model in
:class:`CostConfig`.  Undesirable Hamiltonians are split on the variable with
the highest score from :func:`variable_cost`, 0-branch first, giving a binary
tree whose leaves together cover every assignment exactly once.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .poly import Polynomial, substitute

DEFAULT_MAX_LEAVES = 10**7


class EmptySupport(ValueError):
    pass


class LimitExceeded(RuntimeError):
    """Raised when a split exceeds ``max_leaves`` or ``max_depth``.

    ``partial`` holds whatever was produced before the limit hit: a
    :class:`SplitTree` from :func:`build_split_tree`, or the list of leaves
    yielded so far from :func:`iter_leaves`.
    """

    def __init__(self, kind: str, limit: int, partial=None):
        super().__init__(f"{kind} limit of {limit} exceeded")
        self.kind = kind
        self.limit = limit
        self.partial = partial


@dataclass(frozen=True)
class CostConfig:
    qubits: int
    target_order: int = 2
    allow_aux: bool = True

    def __post_init__(self):
        if self.qubits < 1:
            raise ValueError("qubit budget must be positive")
        if self.target_order < 1:
            raise ValueError("target order must be at least 1")


def ramp(k: int) -> int:
    return k if k > 0 else 0


def term_aux_cost(t, target_order: int = 2) -> int:
    """Upper bound on auxiliaries needed to bring monomial ``t`` to ``target_order``."""
    return ramp(len(t) - target_order)


def aux_bound(H: Polynomial, target_order: int = 2) -> int:
    return sum(ramp(len(t) - target_order) for t in H.terms)


def hamiltonian_cost(H: Polynomial, cfg: CostConfig) -> int:
    """Live qubits plus the worst-case auxiliary count."""
    return len(H.support) + aux_bound(H, cfg.target_order)


def is_desirable(H: Polynomial, cfg: CostConfig) -> bool:
    if cfg.allow_aux:
        return hamiltonian_cost(H, cfg) <= cfg.qubits
    return H.degree <= cfg.target_order and len(H.support) <= cfg.qubits


def variable_cost(H: Polynomial, v: int, target_order: int = 2) -> int:
    # NB: ramp(order - target + 1), not ramp(order - target) + 1
    return sum(ramp(len(t) - target_order + 1) for t in H.terms if v in t)


def variable_costs(H: Polynomial, target_order: int = 2) -> dict:
    """Scores of every variable in the support (zero scores included)."""
    scores = dict.fromkeys(H.support, 0)
    for t in H.terms:
        w = len(t) - target_order + 1
        if w > 0:
            for v in t:
                scores[v] += w
    return scores


def select_split_variable(H: Polynomial, cfg: CostConfig, rng: Optional[random.Random] = None) -> int:
    """Highest-scoring variable; ties go to the smallest id unless ``rng`` is given."""
    if not H.support:
        raise EmptySupport("cannot split a constant Hamiltonian")
    scores = variable_costs(H, cfg.target_order)
    best = max(scores.values())
    tied = [v for v, s in scores.items() if s == best]
    if rng is None or len(tied) == 1:
        return min(tied)
    return rng.choice(sorted(tied))


def max_variable_score(H: Polynomial, cfg: CostConfig) -> int:
    return max(variable_costs(H, cfg.target_order).values(), default=0)


# --------------------------------------------------------------------------
# trees

@dataclass
class SplitNode:
    hamiltonian: Polynomial
    fixed: Optional[tuple] = None  # (var, bit) on the edge from the parent
    split_var: Optional[int] = None
    children: tuple = ()
    depth: int = 0

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass
class Leaf:
    prefix: dict  # var -> bit, in fixing order
    hamiltonian: Polynomial

    def cost(self, cfg: CostConfig) -> int:
        return hamiltonian_cost(self.hamiltonian, cfg)


@dataclass
class SplitTree:
    root: SplitNode
    cfg: CostConfig
    complete: bool = True
    _leaves: list = field(default=None, repr=False)

    def leaves(self) -> list:
        if self._leaves is None:
            self._leaves = list(_walk_leaves(self.root, {}))
        return self._leaves

    def __len__(self):
        return len(self.leaves())

    @property
    def depth(self) -> int:
        return max((len(l.prefix) for l in self.leaves()), default=0)

    def split_variables(self) -> list:
        """Split variables in depth-first (pre-order) order."""
        out = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.children:
                out.append(node.split_var)
                stack.extend(reversed(node.children))
        return out


def _walk_leaves(node: SplitNode, prefix: dict) -> Iterator[Leaf]:
    stack = [(node, prefix)]
    while stack:
        node, prefix = stack.pop()
        if node.fixed is not None:
            prefix = {**prefix, node.fixed[0]: node.fixed[1]}
        if node.is_leaf:
            yield Leaf(prefix, node.hamiltonian)
        else:
            stack.append((node.children[1], prefix))
            stack.append((node.children[0], prefix))


def leaves(tree: SplitTree) -> list:
    return tree.leaves()


def build_split_tree(
    H: Polynomial,
    cfg: CostConfig,
    max_leaves: int = DEFAULT_MAX_LEAVES,
    max_depth: Optional[int] = None,
    rng: Optional[random.Random] = None,
) -> SplitTree:
    """Materialise the full split tree (keeps every node in memory)."""
    if max_depth is None:
        max_depth = len(H.support)
    root = SplitNode(H)
    tree = SplitTree(root, cfg)
    n_leaves = 0
    stack = [root]
    while stack:
        node = stack.pop()
        P = node.hamiltonian
        if P.is_constant() or is_desirable(P, cfg):
            n_leaves += 1
            if n_leaves > max_leaves:
                tree.complete = False
                raise LimitExceeded("max_leaves", max_leaves, tree)
            continue
        if node.depth >= max_depth:
            tree.complete = False
            raise LimitExceeded("max_depth", max_depth, tree)
        v = select_split_variable(P, cfg, rng)
        node.split_var = v
        d = node.depth + 1
        node.children = (
            SplitNode(substitute(P, v, 0), (v, 0), depth=d),
            SplitNode(substitute(P, v, 1), (v, 1), depth=d),
        )
        stack.append(node.children[1])
        stack.append(node.children[0])
    return tree


def iter_leaves(
    H: Polynomial,
    cfg: CostConfig,
    max_leaves: int = DEFAULT_MAX_LEAVES,
    max_depth: Optional[int] = None,
    rng: Optional[random.Random] = None,
) -> Iterator[Leaf]:
    """Stream leaves in the same order as ``build_split_tree(...).leaves()``.

    Only the current root-to-leaf frontier is held in memory, so this is the
    way to count leaves for large instances.  On a limit violation the
    exception's ``partial`` is None (the leaves were already yielded).
    """
    if max_depth is None:
        max_depth = len(H.support)
    n_leaves = 0
    stack = [(H, ())]
    while stack:
        P, path = stack.pop()
        if P.is_constant() or is_desirable(P, cfg):
            n_leaves += 1
            if n_leaves > max_leaves:
                raise LimitExceeded("max_leaves", max_leaves)
            yield Leaf(dict(path), P)
            continue
        if len(path) >= max_depth:
            raise LimitExceeded("max_depth", max_depth)
        v = select_split_variable(P, cfg, rng)
        stack.append((substitute(P, v, 1), path + ((v, 1),)))
        stack.append((substitute(P, v, 0), path + ((v, 0),)))


def count_leaves(H: Polynomial, cfg: CostConfig, **kw) -> int:
    n = 0
    for _ in iter_leaves(H, cfg, **kw):
        n += 1
    return n


def split_summary(leaf_iter, cfg: CostConfig) -> dict:
    """Consume leaves and report count, depth and the largest leaf cost."""
    count = depth = max_cost = max_vars = 0
    for leaf in leaf_iter:
        count += 1
        depth = max(depth, len(leaf.prefix))
        max_cost = max(max_cost, hamiltonian_cost(leaf.hamiltonian, cfg))
        max_vars = max(max_vars, len(leaf.hamiltonian.support))
    return {"leaf_count": count, "depth": depth, "max_leaf_cost": max_cost, "max_leaf_vars": max_vars}
