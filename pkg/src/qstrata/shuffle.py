"""Word model of the unipotent quantum coordinate ring.

An element psi is stored as the map  word nu -> psi(e_{nu_1} ... e_{nu_l}).
In this model e_i (from right multiplication by e_i) deletes a trailing letter
i, e_i^* deletes a leading letter i, and the product is a q-weighted shuffle.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping

from .cartan import CartanDatum, RootVec, add, is_nonneg, root_form, sub
from .errors import DomainError, ZeroElement
from .laurent import ONE, LaurentPoly, qfact


def word_weight(datum: CartanDatum, word: Iterable[int]) -> RootVec:
    out = [0] * datum.rank
    for i in word:
        out[i - 1] += 1
    return tuple(out)


class ShuffleElement:
    """Homogeneous element: a sparse map word -> LaurentPoly on I^beta.

    ``weight`` is beta in Q_+; the element lives in degree -beta.
    """

    __slots__ = ("datum", "weight", "terms", "_hash")

    def __init__(self, datum: CartanDatum, weight: RootVec, terms: Mapping | None = None):
        self.datum = datum
        self.weight = tuple(weight)
        if not is_nonneg(self.weight):
            raise DomainError(f"weight {self.weight} is not in Q_+")
        clean = {}
        for word, c in (terms or {}).items():
            word = tuple(word)
            if not isinstance(c, LaurentPoly):
                c = LaurentPoly.const(c)
            if c:
                if word_weight(datum, word) != self.weight:
                    raise DomainError(f"word {word} does not have weight {self.weight}")
                clean[word] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, datum, weight, terms):
        obj = cls.__new__(cls)
        obj.datum = datum
        obj.weight = weight
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def unit(cls, datum: CartanDatum) -> "ShuffleElement":
        return cls._raw(datum, datum.zero(), {(): ONE})

    @classmethod
    def word(cls, datum: CartanDatum, word: Iterable[int], coeff=ONE) -> "ShuffleElement":
        word = tuple(word)
        return cls(datum, word_weight(datum, word), {word: coeff})

    @classmethod
    def zero(cls, datum: CartanDatum, weight: RootVec) -> "ShuffleElement":
        return cls._raw(datum, tuple(weight), {})

    # -- linear structure ---------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def _check_compatible(self, other):
        if self.datum != other.datum:
            raise DomainError("elements of different Cartan types")
        if self.weight != other.weight and self.terms and other.terms:
            raise DomainError("elements of different weight or type cannot be added")

    def __add__(self, other: "ShuffleElement") -> "ShuffleElement":
        self._check_compatible(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w, 0) + c
            if s:
                terms[w] = s
            else:
                terms.pop(w, None)
        return ShuffleElement._raw(self.datum, self.weight, terms)

    def __neg__(self):
        return ShuffleElement._raw(self.datum, self.weight, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "ShuffleElement":
        if isinstance(c, int):
            c = LaurentPoly.const(c)
        if not c:
            return ShuffleElement.zero(self.datum, self.weight)
        return ShuffleElement._raw(self.datum, self.weight, {w: v * c for w, v in self.terms.items()})

    def shift(self, k: int) -> "ShuffleElement":
        """Multiply by q^k."""
        return ShuffleElement._raw(self.datum, self.weight, {w: v.shift(k) for w, v in self.terms.items()})

    def divexact(self, c: LaurentPoly) -> "ShuffleElement":
        return ShuffleElement._raw(self.datum, self.weight, {w: v.divexact(c) for w, v in self.terms.items()})

    def __mul__(self, other: "ShuffleElement") -> "ShuffleElement":
        return shuffle_product(self, other)

    def __eq__(self, other):
        if not isinstance(other, ShuffleElement):
            return NotImplemented
        if self.datum != other.datum:
            return False
        if not self.terms and not other.terms:
            return True
        return self.weight == other.weight and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.datum.name, frozenset(self.terms.items())))
        return self._hash

    def words(self) -> list:
        return sorted(self.terms)

    def coeff(self, word) -> LaurentPoly:
        return self.terms.get(tuple(word), LaurentPoly())

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({self.terms[w]})<{format_word(w)}>" for w in self.words())

    __repr__ = __str__

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {format_word(w): self.terms[w].to_json() for w in self.words()}

    @classmethod
    def from_json(cls, datum: CartanDatum, data: Mapping) -> "ShuffleElement":
        terms = {parse_word_string(k, datum.rank): LaurentPoly.from_json(v) for k, v in data.items()}
        if not terms:
            raise ZeroElement("cannot infer the weight of an empty element")
        weight = word_weight(datum, next(iter(terms)))
        return cls(datum, weight, terms)


def format_word(word) -> str:
    if all(i < 10 for i in word):
        return "".join(str(i) for i in word)
    return ",".join(str(i) for i in word)


def parse_word_string(text: str, rank: int) -> tuple:
    if "," in text:
        return tuple(int(t) for t in text.split(","))
    return tuple(int(ch) for ch in text)


# -- product --------------------------------------------------------------------

@lru_cache(maxsize=1 << 16)
def _shuffle_words(datum: CartanDatum, a: tuple, b: tuple) -> tuple:
    """q-shuffle of words a (left factor) and b (right factor).

    Each letter r of b picks up q^{-(alpha_p, alpha_r)} for every letter p of a
    placed before it.  Returned as a tuple of (word, {exp: coeff}).
    """
    if not b:
        return ((a, {0: 1}),)
    if not a:
        return ((b, {0: 1}),)
    out: dict = {}
    for w, poly in _shuffle_words(datum, a[:-1], b):
        d = out.setdefault(w + (a[-1],), {})
        for e, c in poly.items():
            d[e] = d.get(e, 0) + c
    r = b[-1]
    shift = -root_form(datum, word_weight(datum, a), datum.simple_root(r))
    for w, poly in _shuffle_words(datum, a, b[:-1]):
        d = out.setdefault(w + (r,), {})
        for e, c in poly.items():
            d[e + shift] = d.get(e + shift, 0) + c
    return tuple((w, {e: c for e, c in p.items() if c}) for w, p in out.items())


def shuffle_product(x: ShuffleElement, y: ShuffleElement) -> ShuffleElement:
    datum = x.datum
    if y.datum != datum:
        raise DomainError("elements of different Cartan types")
    acc: dict = {}
    for a, ca in x.terms.items():
        for b, cb in y.terms.items():
            cab = ca * cb
            for w, poly in _shuffle_words(datum, a, b):
                term = cab * LaurentPoly(poly)
                s = acc.get(w)
                acc[w] = term if s is None else s + term
    terms = {w: c for w, c in acc.items() if c}
    return ShuffleElement._raw(datum, add(x.weight, y.weight), terms)


# -- derivations ------------------------------------------------------------------

def e_op(i: int, x: ShuffleElement) -> ShuffleElement:
    """Delete a trailing letter i (dual of right multiplication by e_i)."""
    terms = {w[:-1]: c for w, c in x.terms.items() if w and w[-1] == i}
    return ShuffleElement._raw(x.datum, _lower(x, i), terms)


def e_star_op(i: int, x: ShuffleElement) -> ShuffleElement:
    """Delete a leading letter i (dual of left multiplication by e_i)."""
    terms = {w[1:]: c for w, c in x.terms.items() if w and w[0] == i}
    return ShuffleElement._raw(x.datum, _lower(x, i), terms)


def _lower(x: ShuffleElement, i: int) -> tuple:
    # may leave Q_+ when the result is zero
    wt = list(x.weight)
    wt[i - 1] -= 1
    return tuple(wt)


def e_divided(i: int, n: int, x: ShuffleElement, star: bool = False) -> ShuffleElement:
    """e_i^{(n)} or e_i^{*(n)}; the division by [n]_i! must be exact."""
    op = e_star_op if star else e_op
    for _ in range(n):
        x = op(i, x)
    return x.divexact(qfact(n, x.datum.diag[i - 1]))


def eps(i: int, x: ShuffleElement) -> int:
    if not x:
        raise ZeroElement("eps of the zero element")
    k = 0
    while True:
        x = e_op(i, x)
        if not x:
            return k
        k += 1


def eps_star(i: int, x: ShuffleElement) -> int:
    if not x:
        raise ZeroElement("eps_star of the zero element")
    k = 0
    while True:
        x = e_star_op(i, x)
        if not x:
            return k
        k += 1


def supports(x: ShuffleElement) -> tuple:
    """(gW, sgW): weights of the trailing and of the leading subwords.

    Trailing subwords match the e_i operators, which strip letters from the end.
    """
    if not x:
        raise ZeroElement("supports of the zero element")
    datum = x.datum
    gw, sgw = set(), set()
    for w in x.terms:
        for k in range(len(w) + 1):
            gw.add(word_weight(datum, w[len(w) - k:]))
            sgw.add(word_weight(datum, w[:k]))
    return frozenset(gw), frozenset(sgw)


def weight_sumset(a: Iterable, b: Iterable) -> frozenset:
    return frozenset(add(x, y) for x in a for y in b)


def complement_weights(beta: RootVec, s: Iterable) -> frozenset:
    return frozenset(sub(beta, x) for x in s)


def check_boson(i: int, u: ShuffleElement, v: ShuffleElement) -> tuple:
    """Both Leibniz rules for e_i and e_i^* on the product u v.

    The twisting exponents use the Q_- weight, i.e. minus the stored weight.
    """
    datum = u.datum
    a = datum.simple_root(i)
    uv = shuffle_product(u, v)
    lhs = e_op(i, uv)
    rhs = shuffle_product(e_op(i, u), v) + shuffle_product(u, e_op(i, v)).shift(-root_form(datum, a, u.weight))
    lhs_star = e_star_op(i, uv)
    rhs_star = shuffle_product(u, e_star_op(i, v)) + shuffle_product(e_star_op(i, u), v).shift(-root_form(datum, a, v.weight))
    return lhs == rhs, lhs_star == rhs_star
