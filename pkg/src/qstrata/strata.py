"""Membership in the doubly invariant subalgebras, support tests, the census of
simple objects by restricted Kostant partitions, and the reflection bijection
of Richardson root sets."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from math import gcd
from typing import Sequence

from .cartan import CartanDatum, RootVec, Weight, add, is_nonneg, is_nonpos, sub
from .convex import ConvexPreorder, convex_order_for_word
from .errors import DescentViolation, NotPrefixPresentation, ZeroElement
from .minors import minor_at
from .shuffle import ShuffleElement, e_op, e_star_op, supports
from .weyl import WeylElement, inversion_sequence, is_reduced, v_chain

FAMILIES = ("a", "b", "c")


# -- operator membership ---------------------------------------------------------

def nonvanishing_weights(x: ShuffleElement, star: bool = False) -> frozenset:
    """All beta != 0 such that some composite of e_i (or e_i^*) over I^beta is nonzero on x.

    Depth-first over composites, applying one operator at a time; a zero
    intermediate result kills every extension.
    """
    if not x:
        raise ZeroElement("membership of the zero element")
    op = e_star_op if star else e_op
    datum = x.datum
    found: set = set()

    def dfs(y: ShuffleElement, beta: RootVec):
        for i in datum.index_set:
            z = op(i, y)
            if z:
                b = add(beta, datum.simple_root(i))
                found.add(b)
                dfs(z, b)

    dfs(x, datum.zero())
    return frozenset(found)


def _in_family(w: WeylElement, beta: RootVec, family: str, star: bool) -> bool:
    img = w.apply_inverse_root(beta)
    if family == "c":
        return w.datum.is_positive_root(beta) and (is_nonneg(img) != star)
    if family == "a":  # Q_+ \ w Q_-  (or Q_+ \ v Q_+)
        return not (is_nonneg(img) if star else is_nonpos(img))
    if family == "b":  # Q_+ cap w Q_+ \ 0  (or Q_+ cap v Q_- \ 0)
        return is_nonpos(img) if star else is_nonneg(img)
    raise ValueError(f"unknown test family {family!r}")


def membership_A(x: ShuffleElement, w: WeylElement, v: WeylElement, family: str = "c") -> tuple:
    """(x in A_w, x in A_{*,v}) using the chosen family of test weights."""
    hit = nonvanishing_weights(x)
    hit_star = nonvanishing_weights(x, star=True)
    in_w = not any(_in_family(w, b, family, False) for b in hit)
    in_v = not any(_in_family(v, b, family, True) for b in hit_star)
    return in_w, in_v


def membership_families_agree(x: ShuffleElement, w: WeylElement, v: WeylElement) -> bool:
    results = {membership_A(x, w, v, f) for f in FAMILIES}
    return len(results) == 1


def support_membership(x: ShuffleElement, w: WeylElement, v: WeylElement) -> tuple:
    """(gW(x) in Q_+ cap w Q_-, sgW(x) in Q_+ cap v Q_+)."""
    gw, sgw = supports(x)
    in_w = all(is_nonpos(w.apply_inverse_root(g)) for g in gw)
    in_v = all(is_nonneg(v.apply_inverse_root(g)) for g in sgw)
    return in_w, in_v


@dataclass
class FlagRow:
    k: int
    w_k: str
    v_k: str
    in_Aw: bool
    in_Astar_v: bool
    in_Cw: bool
    in_Cstar_v: bool
    families_agree: bool

    @property
    def passes(self) -> bool:
        return all((self.in_Aw, self.in_Astar_v, self.in_Cw, self.in_Cstar_v, self.families_agree))

    def to_json(self) -> dict:
        return {
            "k": self.k, "w_k": self.w_k, "v_k": self.v_k,
            "in_Aw": self.in_Aw, "in_Astar_v": self.in_Astar_v,
            "in_Cw": self.in_Cw, "in_Cstar_v": self.in_Cstar_v,
            "families_agree": self.families_agree, "passes": self.passes,
        }


def check_flag_membership(lam: Weight, word_w: Sequence[int], v: WeylElement) -> list:
    """Membership of D(w_{<=k} lam, v_{<=k} lam) in the (w, v) stratum, k = 0..l(w)."""
    datum = lam.datum
    ch = v_chain(datum, word_w, v)
    w = ch.w_le[-1]
    rows = []
    for k in range(len(ch.word) + 1):
        x = minor_at(lam, ch.w_le[k], ch.v_le[k])
        a = membership_A(x, w, v)
        s = support_membership(x, w, v)
        rows.append(FlagRow(k, str(ch.w_le[k]), str(ch.v_le[k]), a[0], a[1], s[0], s[1],
                            membership_families_agree(x, w, v)))
    return rows


# -- Richardson roots and the census ---------------------------------------------

def _check_prefix(datum: CartanDatum, word_w: Sequence[int], word_v: Sequence[int]) -> None:
    word_w, word_v = tuple(word_w), tuple(word_v)
    if not is_reduced(datum, word_w):
        raise NotPrefixPresentation(f"{word_w} is not reduced")
    if word_w[: len(word_v)] != word_v:
        raise NotPrefixPresentation(f"{word_v} is not a prefix of {word_w}")


def richardson_roots(datum: CartanDatum, word_w: Sequence[int], word_v: Sequence[int]) -> list:
    """beta_{l(v)+1}, ..., beta_{l(w)}; checked against Delta_+ cap w Delta_- cap v Delta_+."""
    _check_prefix(datum, word_w, word_v)
    betas = inversion_sequence(datum, word_w)[len(word_v):]
    w = WeylElement.from_word(datum, word_w)
    v = WeylElement.from_word(datum, word_v)
    brute = {
        b for b in datum.positive_roots
        if not is_nonneg(w.apply_inverse_root(b)) and is_nonneg(v.apply_inverse_root(b))
    }
    if set(betas) != brute:  # pragma: no cover - would falsify the prefix presentation
        raise AssertionError(f"Richardson roots {betas} differ from brute force {sorted(brute)}")
    return betas


def _ray(datum: CartanDatum, beta: RootVec) -> tuple:
    """(primitive positive root, multiple) for beta in Z_{>0} Delta_+."""
    g = gcd(*beta)
    for n in range(g, 0, -1):
        if g % n == 0:
            base = tuple(c // n for c in beta)
            if datum.is_positive_root(base):
                return base, n
    raise ValueError(f"{beta} is not a multiple of a positive root")


class _Comparator:
    def __init__(self, order: ConvexPreorder):
        self.datum = order.datum
        self.ranks = order.ranks()

    def key(self, beta: RootVec) -> tuple:
        base, n = _ray(self.datum, beta)
        return self.ranks[base], n

    def elem(self, a: RootVec, b: RootVec) -> int:
        """-1 if a is smaller than b (earlier ray, or same ray and a smaller multiple)."""
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def elem_right(self, a: RootVec, b: RootVec) -> int:
        """As elem, but a later ray counts as smaller."""
        (ra, na), (rb, nb) = self.key(a), self.key(b)
        if ra != rb:
            return -1 if ra > rb else 1
        return (na > nb) - (na < nb)


@dataclass(frozen=True)
class KostantDatum:
    """Weakly decreasing multiset of positive roots gamma_1 >= ... >= gamma_h."""

    roots: tuple
    weight: tuple

    def grouped(self) -> tuple:
        """Sequence with runs of equal roots merged into multiples n gamma."""
        out: list = []
        for g in self.roots:
            if out and out[-1][0] == g:
                out[-1][1] += 1
            else:
                out.append([g, 1])
        return tuple(tuple(n * c for c in g) for g, n in out)

    def to_json(self) -> list:
        return [list(g) for g in self.roots]


def lex_le(order: ConvexPreorder, a: Sequence[RootVec], b: Sequence[RootVec]) -> bool:
    """Left lexicographic comparison of sequences in Z_{>0} Delta_+."""
    cmp = _Comparator(order)
    for x, y in zip(a, b):
        if x != y:
            return cmp.elem(x, y) < 0
    return True  # equal sums and equal entries force equal sequences


def rlex_le(order: ConvexPreorder, a: Sequence[RootVec], b: Sequence[RootVec]) -> bool:
    """Right lexicographic comparison: scan from the end, larger last entry is smaller."""
    cmp = _Comparator(order)
    for x, y in zip(reversed(a), reversed(b)):
        if x != y:
            return cmp.elem_right(x, y) < 0
    return True


def bi_le(order: ConvexPreorder, a: Sequence[RootVec], b: Sequence[RootVec]) -> bool:
    return lex_le(order, a, b) and rlex_le(order, a, b)


def _partitions(roots: Sequence[RootVec], beta: RootVec) -> list:
    """All multisets from ``roots`` summing to beta, as multiplicity tuples."""
    roots = list(roots)
    out: list = []

    def rec(k: int, rest: RootVec, acc: list):
        if not any(rest):
            out.append(acc + [0] * (len(roots) - k))
            return
        if k == len(roots):
            return
        r = roots[k]
        n = 0
        cur = rest
        while is_nonneg(cur):
            rec(k + 1, cur, acc + [n])
            cur = sub(cur, r)
            n += 1

    rec(0, tuple(beta), [])
    return out


def _decreasing(order: ConvexPreorder, roots: Sequence[RootVec], mults: Sequence[int]) -> tuple:
    ranks = order.ranks()
    items = [r for r, n in zip(roots, mults) for _ in range(n)]
    return tuple(sorted(items, key=lambda r: ranks[r], reverse=True))


def census(datum: CartanDatum, word_w: Sequence[int], word_v: Sequence[int], beta: RootVec) -> tuple:
    """(count, Kostant data) of simple objects of weight beta in the (w, v) stratum."""
    roots = richardson_roots(datum, word_w, word_v)
    order = convex_order_for_word(datum, word_w)
    data = [
        KostantDatum(_decreasing(order, roots, m), tuple(beta))
        for m in _partitions(roots, beta)
    ]
    data.sort(key=cmp_to_key(lambda a, b: _datum_cmp(order, a, b)))
    return len(data), data


def _datum_cmp(order: ConvexPreorder, a: KostantDatum, b: KostantDatum) -> int:
    ga, gb = a.grouped(), b.grouped()
    if ga == gb:
        return 0
    return -1 if lex_le(order, ga, gb) else 1


def census_oracle(datum: CartanDatum, word_w: Sequence[int], word_v: Sequence[int], beta: RootVec) -> int:
    """Count over all Kostant partitions, filtered by the two end conditions."""
    _check_prefix(datum, word_w, word_v)
    betas = inversion_sequence(datum, word_w)
    order = convex_order_for_word(datum, word_w)
    ranks = order.ranks()
    top = ranks[betas[-1]] if betas else None
    bottom = ranks[betas[len(word_v) - 1]] if word_v else None
    roots = list(datum.positive_roots)
    count = 0
    for m in _partitions(roots, beta):
        gam = _decreasing(order, roots, m)
        if not gam:
            count += 1
            continue
        if top is None or ranks[gam[0]] > top:
            continue
        if bottom is not None and not ranks[gam[-1]] > bottom:
            continue
        count += 1
    return count


def kostant_partition_count(datum: CartanDatum, beta: RootVec) -> int:
    return len(_partitions(datum.positive_roots, beta))


# -- reflection bijection --------------------------------------------------------

@dataclass
class ReflectionTable:
    datum: CartanDatum
    i: int
    pairs: list
    source: frozenset
    target: frozenset

    @property
    def holds(self) -> bool:
        alpha = self.datum.simple_root(self.i)
        image = frozenset(b for _, b in self.pairs)
        return image == self.target and alpha not in self.source and alpha not in self.target

    def to_json(self) -> dict:
        return {
            "i": self.i,
            "pairs": [[list(a), list(b)] for a, b in self.pairs],
            "holds": self.holds,
        }


def _richardson_set(w: WeylElement, v: WeylElement) -> frozenset:
    return frozenset(
        b for b in w.datum.positive_roots
        if not is_nonneg(w.apply_inverse_root(b)) and is_nonneg(v.apply_inverse_root(b))
    )


def reflect_roots(i: int, w: WeylElement, v: WeylElement) -> ReflectionTable:
    """s_i from Delta_+ cap s_i w Delta_- cap s_i v Delta_+ to Delta_+ cap w Delta_- cap v Delta_+."""
    if w.has_left_descent(i) or v.has_left_descent(i):
        raise DescentViolation(f"need s_{i} w > w and s_{i} v > v")
    datum = w.datum
    source = _richardson_set(w.lmul_simple(i), v.lmul_simple(i))
    target = _richardson_set(w, v)
    pairs = sorted((g, datum.reflect(i, g)) for g in source)
    return ReflectionTable(datum, i, pairs, source, target)
