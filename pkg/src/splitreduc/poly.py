"""Multilinear pseudo-Boolean polynomials with exact integer coefficients.

A monomial is a strictly increasing tuple of variable indices; the empty
tuple is the constant term.  Because variables are binary, ``x*x == x`` is
applied whenever monomials are formed.
"""
from __future__ import annotations

from typing import Iterable, Mapping, Sequence

import numpy as np

INT64_MAX = 2**63 - 1
INT64_MIN = -(2**63)

Monomial = tuple


class CoefficientOverflow(OverflowError):
    pass


class UnboundVariable(KeyError):
    pass


def _checked(c: int) -> int:
    if c > INT64_MAX or c < INT64_MIN:
        raise CoefficientOverflow(f"coefficient {c} does not fit in a signed 64-bit integer")
    return c


def monomial(vars: Iterable[int]) -> Monomial:
    """Collapse repeated indices and sort."""
    return tuple(sorted(set(vars)))


def grlex_key(m: Monomial):
    return (len(m), m)


class Polynomial:
    """Immutable canonical multilinear polynomial.

    ``terms`` maps monomial tuples to nonzero ints.  Build instances with
    :func:`canonicalize` or the arithmetic operators; the constructor trusts
    its input to already be canonical.
    """

    __slots__ = ("_terms", "_support", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None, *, _trusted: bool = False):
        if terms is None:
            terms = {}
        elif not _trusted:
            terms = canonicalize((c, m) for m, c in terms.items())._terms
        self._terms = dict(terms)
        self._support = None
        self._hash = None

    @classmethod
    def constant(cls, c: int) -> "Polynomial":
        return cls({(): _checked(int(c))} if c else {}, _trusted=True)

    @classmethod
    def var(cls, i: int, coeff: int = 1) -> "Polynomial":
        return cls({(int(i),): _checked(coeff)} if coeff else {}, _trusted=True)

    @property
    def terms(self) -> dict:
        return self._terms

    @property
    def support(self) -> frozenset:
        if self._support is None:
            s = set()
            for m in self._terms:
                s.update(m)
            self._support = frozenset(s)
        return self._support

    @property
    def degree(self) -> int:
        return max((len(m) for m in self._terms), default=0)

    @property
    def num_terms(self) -> int:
        return len(self._terms)

    @property
    def const(self) -> int:
        return self._terms.get((), 0)

    def is_constant(self) -> bool:
        return not self.support

    def is_zero(self) -> bool:
        return not self._terms

    def sorted_terms(self) -> list:
        """(monomial, coeff) pairs in graded-lexicographic order."""
        return sorted(self._terms.items(), key=lambda mc: grlex_key(mc[0]))

    def coeff(self, m: Iterable[int]) -> int:
        return self._terms.get(monomial(m), 0)

    # algebra
    def __add__(self, other):
        other = _coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = _checked(out.get(m, 0) + c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = _coerce(other)
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 if m1 == m2 else monomial(m1 + m2)
                v = _checked(out.get(m, 0) + _checked(c1 * c2))
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Polynomial(out, _trusted=True)

    def __rmul__(self, other):
        return self * other

    def scale(self, c: int) -> "Polynomial":
        if c == 0:
            return Polynomial()
        return Polynomial({m: _checked(v * c) for m, v in self._terms.items()}, _trusted=True)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        from .exprio import serialize

        return f"Polynomial({serialize(self)!r})"

    # evaluation
    def __call__(self, assignment) -> int:
        return evaluate(self, assignment)

    def substitute(self, v: int, b: int) -> "Polynomial":
        return substitute(self, v, b)


def _coerce(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, int):
        return Polynomial.constant(x)
    raise TypeError(f"cannot combine Polynomial with {type(x).__name__}")


def canonicalize(raw_terms: Iterable[tuple[int, Iterable[int]]]) -> Polynomial:
    """Build a Polynomial from ``(coefficient, variables)`` pairs.

    Variables may repeat inside a pair (``x*x``) and pairs may repeat; both
    collapse.  Zero coefficients are dropped.
    """
    out: dict = {}
    for c, vars in raw_terms:
        c = _checked(int(c))
        m = monomial(vars)
        v = _checked(out.get(m, 0) + c)
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return Polynomial(out, _trusted=True)


def _bit(a, v):
    try:
        b = a[v]
    except (KeyError, IndexError):
        raise UnboundVariable(v) from None
    if b not in (0, 1, True, False):
        raise ValueError(f"variable {v} bound to non-bit value {b!r}")
    return b


def evaluate(P: Polynomial, a) -> int:
    """Energy of P at assignment ``a`` (mapping or sequence index -> bit)."""
    total = 0
    for m, c in P._terms.items():
        for v in m:
            if not _bit(a, v):
                break
        else:
            total += c
    return _checked(total)


def substitute(P: Polynomial, v: int, b: int) -> Polynomial:
    """Fix variable ``v`` to bit ``b``."""
    if v not in P.support:
        return P
    terms = P._terms
    if not b:
        return Polynomial({m: c for m, c in terms.items() if v not in m}, _trusted=True)
    out: dict = {}
    for m, c in terms.items():
        if v in m:
            m = tuple(u for u in m if u != v)
            nc = out.get(m, 0) + c
            if nc:
                out[m] = _checked(nc)
            else:
                del out[m]
        elif m in out:
            nc = out[m] + c
            if nc:
                out[m] = _checked(nc)
            else:
                del out[m]
        else:
            out[m] = c
    return Polynomial(out, _trusted=True)


def substitute_many(P: Polynomial, fixed: Mapping[int, int]) -> Polynomial:
    for v, b in fixed.items():
        P = substitute(P, v, b)
    return P


def add(P: Polynomial, Q: Polynomial) -> Polynomial:
    return P + Q


def scale(P: Polynomial, c: int) -> Polynomial:
    return P.scale(c)


def multiply(P: Polynomial, Q: Polynomial) -> Polynomial:
    return P * Q


def degree(P: Polynomial) -> int:
    return P.degree


def support(P: Polynomial) -> frozenset:
    return P.support


def num_terms(P: Polynomial) -> int:
    return P.num_terms


def product(factors: Iterable[Polynomial]) -> Polynomial:
    out = Polynomial.constant(1)
    for f in factors:
        out = out * f
    return out


def truth_table(P: Polynomial, variables: Sequence[int] | None = None) -> np.ndarray:
    """Energies of P on every assignment of ``variables``.

    Entry ``k`` corresponds to ``variables[i] = (k >> i) & 1``.  Intended for
    exhaustive checks on small supports (int64, vectorised with numpy).
    """
    if variables is None:
        variables = sorted(P.support)
    variables = list(variables)
    missing = P.support - set(variables)
    if missing:
        raise UnboundVariable(min(missing))
    n = len(variables)
    if n > 26:
        raise ValueError(f"truth table over {n} variables is too large")
    pos = {v: i for i, v in enumerate(variables)}
    idx = np.arange(1 << n, dtype=np.int64)
    bits = [((idx >> i) & 1).astype(bool) for i in range(n)]
    out = np.zeros(1 << n, dtype=np.int64)
    for m, c in P._terms.items():
        if not m:
            out += c
            continue
        mask = bits[pos[m[0]]].copy()
        for u in m[1:]:
            mask &= bits[pos[u]]
        out[mask] += c
    return out
