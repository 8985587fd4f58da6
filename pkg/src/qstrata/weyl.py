"""Weyl group arithmetic: elements, reduced words, Bruhat order, inversion
sequences and the v_{<=k} chain attached to a reduced word of w."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .cartan import CartanDatum, RootVec, Weight, is_nonneg, neg
from .errors import DomainError, NotBruhatComparable, NotReduced, TooLong

Word = tuple  # tuple[int, ...], letters in 1..n


def _identity(n: int) -> tuple:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _matmul(a, b) -> tuple:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n) if a[i][k]) for j in range(n))
        for i in range(n)
    )


@lru_cache(maxsize=None)
def _simple_matrix(datum: CartanDatum, i: int) -> tuple:
    # column j is s_i(alpha_j) = alpha_j - a_ij alpha_i
    n = datum.rank
    m = [list(r) for r in _identity(n)]
    for j in range(n):
        m[i - 1][j] -= datum.cartan_matrix[i - 1][j]
    return tuple(tuple(r) for r in m)


@dataclass(frozen=True, eq=False)
class WeylElement:
    """An element of W, stored as its matrix on the root lattice (and inverse).

    Equality and hashing use the matrix; the canonical word is the
    lexicographically least reduced word.
    """

    datum: CartanDatum = field(repr=False)
    matrix: tuple = field(repr=False)
    inverse_matrix: tuple = field(repr=False)

    @classmethod
    def identity(cls, datum: CartanDatum) -> "WeylElement":
        e = _identity(datum.rank)
        return cls(datum, e, e)

    @classmethod
    def simple(cls, datum: CartanDatum, i: int) -> "WeylElement":
        if i not in datum.index_set:
            raise DomainError(f"no simple reflection s_{i} in {datum}")
        m = _simple_matrix(datum, i)
        return cls(datum, m, m)

    @classmethod
    def from_word(cls, datum: CartanDatum, word: Iterable[int]) -> "WeylElement":
        w = cls.identity(datum)
        for i in word:
            w = w.rmul_simple(i)
        return w

    # -- group operations ----------------------------------------------

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(
            self.datum,
            _matmul(self.matrix, other.matrix),
            _matmul(other.inverse_matrix, self.inverse_matrix),
        )

    def rmul_simple(self, i: int) -> "WeylElement":
        return self * WeylElement.simple(self.datum, i)

    def lmul_simple(self, i: int) -> "WeylElement":
        return WeylElement.simple(self.datum, i) * self

    def inverse(self) -> "WeylElement":
        return WeylElement(self.datum, self.inverse_matrix, self.matrix)

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    # -- action ----------------------------------------------------------

    def apply_root(self, beta: RootVec) -> RootVec:
        m = self.matrix
        n = len(beta)
        return tuple(sum(m[i][j] * beta[j] for j in range(n)) for i in range(n))

    def apply_inverse_root(self, beta: RootVec) -> RootVec:
        m = self.inverse_matrix
        n = len(beta)
        return tuple(sum(m[i][j] * beta[j] for j in range(n)) for i in range(n))

    def act(self, lam: Weight) -> Weight:
        """w(lam), by composing simple reflections along the canonical word."""
        for i in reversed(self.word):
            lam = lam.reflect(i)
        return lam

    # -- descents, length, normal form --------------------------------------

    def has_left_descent(self, i: int) -> bool:
        """s_i w < w, i.e. w^{-1} alpha_i < 0."""
        col = tuple(row[i - 1] for row in self.inverse_matrix)
        return not is_nonneg(col)

    def has_right_descent(self, i: int) -> bool:
        """w s_i < w, i.e. w alpha_i < 0."""
        col = tuple(row[i - 1] for row in self.matrix)
        return not is_nonneg(col)

    @cached_property
    def word(self) -> Word:
        out = []
        w = self
        while True:
            for i in self.datum.index_set:
                if w.has_left_descent(i):
                    out.append(i)
                    w = w.lmul_simple(i)
                    break
            else:
                return tuple(out)

    @property
    def length(self) -> int:
        return len(self.word)

    def inversion_set(self) -> frozenset:
        """Delta_+ cap w Delta_-."""
        return frozenset(b for b in self.datum.positive_roots if not is_nonneg(self.apply_inverse_root(b)))

    def is_identity(self) -> bool:
        return self.matrix == _identity(self.datum.rank)

    def __str__(self):
        return word_to_str(self.word) if self.word else "e"

    def __repr__(self):
        return f"WeylElement({self.datum.name}, {self.word})"


def longest_element(datum: CartanDatum) -> WeylElement:
    w = WeylElement.identity(datum)
    while True:
        for i in datum.index_set:
            if not w.has_right_descent(i):
                w = w.rmul_simple(i)
                break
        else:
            return w


@lru_cache(maxsize=None)
def all_elements(datum: CartanDatum) -> tuple:
    """All of W, ordered by (length, canonical word)."""
    e = WeylElement.identity(datum)
    seen = {e}
    layer = [e]
    out = [e]
    while layer:
        nxt = []
        for w in layer:
            for i in datum.index_set:
                if not w.has_right_descent(i):
                    u = w.rmul_simple(i)
                    if u not in seen:
                        seen.add(u)
                        nxt.append(u)
        nxt.sort(key=lambda u: u.word)
        out.extend(nxt)
        layer = nxt
    return tuple(out)


# -- words --------------------------------------------------------------------

def parse_word(text: str) -> Word:
    """``"1,2,1"`` -> (1, 2, 1); the empty string is the empty word."""
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise DomainError(f"cannot parse word {text!r}") from None


def word_to_str(word: Sequence[int]) -> str:
    return ",".join(str(i) for i in word)


def check_letters(datum: CartanDatum, word: Sequence[int]) -> None:
    for i in word:
        if i not in datum.index_set:
            raise DomainError(f"letter {i} is not an index of {datum}")


def is_reduced(datum: CartanDatum, word: Sequence[int]) -> bool:
    check_letters(datum, word)
    w = WeylElement.identity(datum)
    for i in word:
        if w.has_right_descent(i):
            return False
        w = w.rmul_simple(i)
    return True


def reduced_words(w: WeylElement, max_count: int = 100_000) -> list:
    """All reduced words of w, sorted; raises TooLong past ``max_count``."""
    memo: dict = {}

    def rec(u: WeylElement) -> list:
        if u in memo:
            return memo[u]
        if u.is_identity():
            res = [()]
        else:
            res = []
            for i in u.datum.index_set:
                if u.has_right_descent(i):
                    res.extend(p + (i,) for p in rec(u.rmul_simple(i)))
                    if len(res) > max_count:
                        raise TooLong(f"more than {max_count} reduced words")
        memo[u] = res
        return res

    return sorted(rec(w))


def bruhat_le(v: WeylElement, w: WeylElement) -> bool:
    """v <= w via the subword property on the canonical word of w."""
    if v.length > w.length:
        return False
    return _bruhat_le_word(v, w.word)


def _bruhat_le_word(v: WeylElement, word: Word) -> bool:
    # v <= s_{i1} ... s_{il}: peel the last letter i.  If v s_i < v then
    # v <= w iff v s_i <= w s_i; otherwise v <= w iff v <= w s_i.
    for i in reversed(word):
        if v.has_right_descent(i):
            v = v.rmul_simple(i)
    return v.is_identity()


def inversion_sequence(datum: CartanDatum, word: Sequence[int]) -> list:
    """beta_k = s_{i_1} ... s_{i_{k-1}}(alpha_{i_k}) for a reduced word."""
    return list(_inversion_sequence(datum, tuple(word)))


@lru_cache(maxsize=4096)
def _inversion_sequence(datum: CartanDatum, word: Word) -> tuple:
    if not is_reduced(datum, word):
        raise NotReduced(f"word {tuple(word)} is not reduced")
    out = []
    prefix = WeylElement.identity(datum)
    for i in word:
        out.append(prefix.apply_root(datum.simple_root(i)))
        prefix = prefix.rmul_simple(i)
    return tuple(out)


@dataclass(frozen=True)
class VChain:
    word: Word
    w_le: tuple  # w_{<=0}, ..., w_{<=l}
    v_le: tuple  # v_{<=0}, ..., v_{<=l}
    v_ge: tuple  # v_{>=1}, ..., v_{>=l}
    J: tuple

    def w_at(self, k: int) -> WeylElement:
        return self.w_le[k]

    def v_at(self, k: int) -> WeylElement:
        return self.v_le[k]


def v_chain(datum: CartanDatum, word_w: Sequence[int], v: WeylElement) -> VChain:
    word_w = tuple(word_w)
    if not is_reduced(datum, word_w):
        raise NotReduced(f"word {word_w} is not reduced")
    w = WeylElement.from_word(datum, word_w)
    if not bruhat_le(v, w):
        raise NotBruhatComparable(f"{v} is not below {w} in Bruhat order")
    e = WeylElement.identity(datum)
    w_le = [e]
    v_le = [e]
    v_ge = []
    J = []
    for k, i in enumerate(word_w, start=1):
        w_le.append(w_le[-1].rmul_simple(i))
        vg = v_le[-1].inverse() * v
        v_ge.append(vg)
        if vg.has_left_descent(i):
            v_le.append(v_le[-1].rmul_simple(i))
        else:
            v_le.append(v_le[-1])
            J.append(k)
    return VChain(word_w, tuple(w_le), tuple(v_le), tuple(v_ge), tuple(J))
