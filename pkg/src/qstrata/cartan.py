"""Finite-type Cartan data, root systems and the symmetric bilinear form.

Conventions: simple roots and letters of words are labelled 1..n; root
lattice vectors are integer tuples whose entry ``i - 1`` is the coefficient of
alpha_i.  ``cartan_matrix[i-1][j-1]`` is <h_i, alpha_j>.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from math import lcm
from typing import Sequence

from .errors import DomainError, RankOutOfRange, UnknownType

RootVec = tuple  # tuple[int, ...] on simple roots

_RANKS = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (4, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}

SIMPLY_LACED = frozenset("ADE")


def _edges(label: str, n: int) -> list[tuple[int, int]]:
    """Dynkin diagram edges, 1-based, Bourbaki numbering."""
    if label in "ABCF" or label == "G":
        return [(k, k + 1) for k in range(1, n)]
    if label == "D":
        return [(k, k + 1) for k in range(1, n - 1)] + [(n - 2, n)]
    if label == "E":
        return [(1, 3), (3, 4), (4, 5), (2, 4)] + [(k, k + 1) for k in range(5, n)]
    raise UnknownType(label)


def _cartan_matrix(label: str, n: int) -> tuple[tuple[int, ...], ...]:
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in _edges(label, n):
        a[i - 1][j - 1] = a[j - 1][i - 1] = -1
    # multiple bonds: entry <h_i, alpha_j> = -2/-3 where alpha_i is short
    if label == "B":
        a[n - 1][n - 2] = -2
    elif label == "C":
        a[n - 2][n - 1] = -2
    elif label == "F":
        a[2][1] = -2
    elif label == "G":
        a[0][1] = -3
    return tuple(tuple(row) for row in a)


def _symmetrizer(a: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Smallest positive integers d with d_i a_ij = d_j a_ji (connected diagrams)."""
    from fractions import Fraction

    n = len(a)
    d: list = [None] * n
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and a[i][j] and d[j] is None:
                d[j] = d[i] * a[i][j] / a[j][i]
                stack.append(j)
    m = lcm(*(x.denominator for x in d))
    return tuple(int(x * m) for x in d)


@dataclass(frozen=True)
class CartanDatum:
    type_label: str
    rank: int
    cartan_matrix: tuple = field(repr=False)
    diag: tuple = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.type_label}{self.rank}"

    @property
    def index_set(self) -> range:
        return range(1, self.rank + 1)

    @property
    def simply_laced(self) -> bool:
        return self.type_label in SIMPLY_LACED

    def simple_root(self, i: int) -> RootVec:
        return tuple(1 if k == i - 1 else 0 for k in range(self.rank))

    def zero(self) -> RootVec:
        return (0,) * self.rank

    def pairing(self, i: int, beta: RootVec) -> int:
        """<h_i, beta> for beta in the root lattice."""
        row = self.cartan_matrix[i - 1]
        return sum(row[j] * beta[j] for j in range(self.rank))

    def reflect(self, i: int, beta: RootVec) -> RootVec:
        """s_i(beta) = beta - <h_i, beta> alpha_i."""
        c = self.pairing(i, beta)
        if not c:
            return beta
        out = list(beta)
        out[i - 1] -= c
        return tuple(out)

    @cached_property
    def positive_roots(self) -> tuple:
        return tuple(_generate_positive_roots(self))

    @cached_property
    def _positive_root_set(self) -> frozenset:
        return frozenset(self.positive_roots)

    def is_root(self, beta: RootVec) -> bool:
        return beta in self._positive_root_set or neg(beta) in self._positive_root_set

    def is_positive_root(self, beta: RootVec) -> bool:
        return beta in self._positive_root_set

    def __str__(self):
        return self.name


def build_cartan(type_label: str, rank: int) -> CartanDatum:
    type_label = type_label.upper()
    if type_label not in _RANKS:
        raise UnknownType(f"unknown Cartan type {type_label!r}")
    lo, hi = _RANKS[type_label]
    if rank < lo or (hi is not None and rank > hi):
        raise RankOutOfRange(f"type {type_label} does not exist in rank {rank}")
    a = _cartan_matrix(type_label, rank)
    return CartanDatum(type_label, rank, a, _symmetrizer(a))


def parse_cartan(text: str) -> CartanDatum:
    """Parse strings such as ``"A2"`` or ``"d4"``."""
    m = re.fullmatch(r"\s*([A-Za-z])\s*(\d+)\s*", text)
    if not m:
        raise UnknownType(f"cannot parse Cartan type {text!r}")
    return build_cartan(m.group(1), int(m.group(2)))


def _generate_positive_roots(datum: CartanDatum) -> list:
    seen = {datum.simple_root(i) for i in datum.index_set}
    frontier = list(seen)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in datum.index_set:
                gamma = datum.reflect(i, beta)
                if gamma not in seen and all(c >= 0 for c in gamma):
                    seen.add(gamma)
                    nxt.append(gamma)
        frontier = nxt
    return sorted(seen, key=lambda b: (height(b), tuple(-c for c in b)))


def positive_roots(datum: CartanDatum) -> list:
    return list(datum.positive_roots)


# -- root lattice vectors ---------------------------------------------------

def add(x: RootVec, y: RootVec) -> RootVec:
    return tuple(a + b for a, b in zip(x, y))


def sub(x: RootVec, y: RootVec) -> RootVec:
    return tuple(a - b for a, b in zip(x, y))


def neg(x: RootVec) -> RootVec:
    return tuple(-a for a in x)


def scale(c: int, x: RootVec) -> RootVec:
    return tuple(c * a for a in x)


def height(beta: RootVec) -> int:
    return sum(beta)


def is_nonneg(beta: RootVec) -> bool:
    return all(c >= 0 for c in beta)


def is_nonpos(beta: RootVec) -> bool:
    return all(c <= 0 for c in beta)


def support(beta: RootVec) -> frozenset:
    return frozenset(i + 1 for i, c in enumerate(beta) if c)


def root_form(datum: CartanDatum, beta: RootVec, gamma: RootVec) -> int:
    """(beta, gamma) on the root lattice: (alpha_i, alpha_j) = d_i a_ij."""
    total = 0
    for i in range(datum.rank):
        if beta[i]:
            row = datum.cartan_matrix[i]
            s = sum(row[j] * gamma[j] for j in range(datum.rank))
            total += beta[i] * datum.diag[i] * s
    return total


# -- weights ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Weight:
    """sum_i fund[i] Lambda_{i+1} + sum_i root[i] alpha_{i+1}.

    Equality compares the coroot pairings, which determine a weight in finite
    type, so different splittings of the same weight compare equal.
    """

    datum: CartanDatum = field(repr=False)
    fund: tuple
    root: tuple

    @classmethod
    def fundamental(cls, datum: CartanDatum, coeffs: Sequence[int]) -> "Weight":
        if len(coeffs) != datum.rank:
            raise DomainError(f"weight needs {datum.rank} coefficients, got {len(coeffs)}")
        return cls(datum, tuple(int(c) for c in coeffs), datum.zero())

    @classmethod
    def from_root(cls, datum: CartanDatum, beta: RootVec) -> "Weight":
        return cls(datum, datum.zero(), tuple(beta))

    def pairing(self, i: int) -> int:
        """<h_i, self>."""
        return self.fund[i - 1] + self.datum.pairing(i, self.root)

    def pairings(self) -> tuple:
        return tuple(self.pairing(i) for i in self.datum.index_set)

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.pairings())

    def is_in_root_lattice(self) -> bool:
        return not any(self.fund)

    def reflect(self, i: int) -> "Weight":
        c = self.pairing(i)
        if not c:
            return self
        root = list(self.root)
        root[i - 1] -= c
        return Weight(self.datum, self.fund, tuple(root))

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(self.datum, add(self.fund, other.fund), add(self.root, other.root))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(self.datum, sub(self.fund, other.fund), sub(self.root, other.root))

    def __neg__(self) -> "Weight":
        return Weight(self.datum, neg(self.fund), neg(self.root))

    def __eq__(self, other):
        if not isinstance(other, Weight):
            return NotImplemented
        return self.datum == other.datum and self.pairings() == other.pairings()

    def __hash__(self):
        return hash((self.datum.name, self.pairings()))

    def __str__(self):
        terms = [f"{c}*L{i + 1}" for i, c in enumerate(self.fund) if c]
        terms += [f"{c}*a{i + 1}" for i, c in enumerate(self.root) if c]
        return " + ".join(terms) if terms else "0"


def form(datum: CartanDatum, lam, beta) -> int:
    """(lam, beta) with lam a Weight or root vector and beta in the root lattice."""
    if isinstance(beta, Weight):
        if not beta.is_in_root_lattice():
            raise DomainError("second argument of form must lie in the root lattice")
        beta = beta.root
    if isinstance(lam, Weight):
        # (lam, alpha_i) = d_i <h_i, lam>
        return sum(beta[i - 1] * datum.diag[i - 1] * lam.pairing(i) for i in datum.index_set if beta[i - 1])
    return root_form(datum, lam, beta)
