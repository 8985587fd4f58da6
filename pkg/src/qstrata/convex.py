"""Convex preorders and convex orders on the positive roots.

Angles are never computed: two charge values are compared through the sign of
their integer cross product, which is exact and valid because all values lie in
an open half-plane.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from typing import Iterable, Sequence

from .cartan import CartanDatum, RootVec, add, height
from .errors import InvalidCharge, NotExtending, NotTotal
from .weyl import WeylElement, inversion_sequence, is_reduced, longest_element


# -- charges ------------------------------------------------------------------

@dataclass(frozen=True)
class Charge:
    """c = re + sqrt(-1) im, each a functional given by its values on simple roots."""

    re: tuple
    im: tuple

    def __call__(self, beta: RootVec) -> tuple:
        return (
            sum(a * b for a, b in zip(self.re, beta)),
            sum(a * b for a, b in zip(self.im, beta)),
        )


def rho_vee(datum: CartanDatum) -> tuple:
    return (1,) * datum.rank


def word_charge(datum: CartanDatum, w: WeylElement) -> Charge:
    """rho^vee + sqrt(-1) rho^vee o w^{-1}."""
    im = tuple(height(w.apply_inverse_root(datum.simple_root(i))) for i in datum.index_set)
    return Charge(rho_vee(datum), im)


def _cross(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _dot(u, v) -> int:
    return u[0] * v[0] + u[1] * v[1]


def _check_charge(values: Sequence[tuple]) -> None:
    if any(v == (0, 0) for v in values):
        raise InvalidCharge("charge vanishes on a root")
    # salient iff some value u sees every other value at an angle in [0, pi)
    for u in values:
        if all(_cross(u, x) > 0 or (_cross(u, x) == 0 and _dot(u, x) > 0) for x in values):
            return
    raise InvalidCharge("charge values do not lie in an open half-plane")


def _group_by_argument(roots: Sequence[RootVec], values: Sequence[tuple]) -> list:
    """Classes of equal argument, in increasing argument order."""
    idx = list(range(len(roots)))

    def cmp(a, b):
        c = _cross(values[a], values[b])
        return -1 if c > 0 else (1 if c < 0 else 0)

    idx.sort(key=cmp_to_key(cmp))
    classes: list = []
    for k in idx:
        if classes and _cross(values[classes[-1][0]], values[k]) == 0:
            classes[-1].append(k)
        else:
            classes.append([k])
    return [tuple(sorted((roots[k] for k in cls), key=_root_key)) for cls in classes]


def _root_key(beta):
    return (height(beta), tuple(-c for c in beta))


# -- preorders ----------------------------------------------------------------

@dataclass(frozen=True)
class ConvexPreorder:
    """Total preorder on Delta_+ given by its ordered equivalence classes.

    ``word`` records the reduced word it was built from, when there is one.
    """

    datum: CartanDatum
    classes: tuple
    word: tuple | None = None

    def __post_init__(self):
        flat = [b for cls in self.classes for b in cls]
        if sorted(flat) != sorted(self.datum.positive_roots) or len(set(flat)) != len(flat):
            raise NotTotal("classes do not partition the positive roots")

    def rank(self, beta: RootVec) -> int:
        for k, cls in enumerate(self.classes):
            if beta in cls:
                return k
        raise KeyError(beta)

    def ranks(self) -> dict:
        return {b: k for k, cls in enumerate(self.classes) for b in cls}

    def is_order(self) -> bool:
        return all(len(c) == 1 for c in self.classes)

    def order(self) -> list:
        if not self.is_order():
            raise NotTotal("preorder has non-singleton classes")
        return [c[0] for c in self.classes]

    def refines(self, coarser: "ConvexPreorder") -> bool:
        mine = self.ranks()
        theirs = coarser.ranks()
        roots = list(mine)
        return all(
            mine[x] < mine[y]
            for x in roots
            for y in roots
            if theirs[x] < theirs[y]
        )

    def face_triples(self) -> list:
        out = []
        for k, cls in enumerate(self.classes):
            below = [b for c in self.classes[:k] for b in c]
            above = [b for c in self.classes[k + 1:] for b in c]
            out.append((below, list(cls), above))
        return out


def charge_preorder(datum: CartanDatum, c: Charge, roots: Sequence[RootVec] | None = None) -> ConvexPreorder | list:
    """Preorder by argument of c.

    With ``roots`` given, returns just the ordered classes of that subset.
    """
    subset = roots is not None
    roots = list(datum.positive_roots) if roots is None else list(roots)
    values = [c(b) for b in roots]
    if roots:
        _check_charge(values)
    classes = _group_by_argument(roots, values)
    if subset:
        return classes
    return ConvexPreorder(datum, tuple(classes))


def preorder_from_word(datum: CartanDatum, word: Sequence[int]) -> ConvexPreorder:
    word = tuple(word)
    betas = inversion_sequence(datum, word)  # raises NotReduced
    w = WeylElement.from_word(datum, word)
    head = set(betas)
    tail = [b for b in datum.positive_roots if b not in head]
    classes = [(b,) for b in betas]
    if tail:
        classes += charge_preorder(datum, word_charge(datum, w), tail)
    return ConvexPreorder(datum, tuple(classes), word)


def order_from_w0_word(datum: CartanDatum, word: Sequence[int]) -> ConvexPreorder:
    betas = inversion_sequence(datum, word)
    if len(betas) != len(datum.positive_roots):
        raise NotExtending(f"word {tuple(word)} is not a reduced word of w0")
    return ConvexPreorder(datum, tuple((b,) for b in betas), tuple(word))


def refine_to_order(p: ConvexPreorder, tail_word: Sequence[int]) -> ConvexPreorder:
    """Convex order from completing p's generating word to a reduced word of w0."""
    datum = p.datum
    if p.word is None:
        raise NotExtending("preorder was not built from a reduced word")
    full = tuple(p.word) + tuple(tail_word)
    if not is_reduced(datum, full):
        raise NotExtending(f"{full} is not reduced")
    if len(full) != len(datum.positive_roots):
        raise NotExtending(f"{full} is not a reduced word of w0")
    o = order_from_w0_word(datum, full)
    if not o.refines(p):
        raise NotExtending(f"completion {tuple(tail_word)} does not refine the preorder")
    return o


def completing_tail(datum: CartanDatum, word: Sequence[int]) -> tuple:
    """A tail word whose completion's inversion order refines preorder_from_word(word).

    Depth-first search over extensions; each new inversion root must lie in the
    lowest class still unused, which is exactly the refinement condition.
    """
    p = preorder_from_word(datum, word)
    ranks = p.ranks()
    start = WeylElement.from_word(datum, word)
    remaining = {b for b in datum.positive_roots if b not in set(inversion_sequence(datum, word))}

    def dfs(u: WeylElement, remaining: set) -> tuple | None:
        if not remaining:
            return ()
        lowest = min(ranks[b] for b in remaining)
        for i in datum.index_set:
            if u.has_right_descent(i):
                continue
            beta = u.apply_root(datum.simple_root(i))
            if ranks[beta] != lowest:
                continue
            rest = dfs(u.rmul_simple(i), remaining - {beta})
            if rest is not None:
                return (i,) + rest
        return None

    tail = dfs(start, remaining)
    if tail is None:  # pragma: no cover - would contradict existence of refinements
        raise NotExtending(f"no refining completion of {tuple(word)}")
    return tail


def convex_order_for_word(datum: CartanDatum, word: Sequence[int]) -> ConvexPreorder:
    """A convex order refining preorder_from_word(word); cached per word."""
    return _convex_order_for_word(datum, tuple(word))


@lru_cache(maxsize=4096)
def _convex_order_for_word(datum: CartanDatum, word: tuple) -> ConvexPreorder:
    p = preorder_from_word(datum, word)
    return refine_to_order(p, completing_tail(datum, word))


# -- convexity tests ----------------------------------------------------------

def is_convex(datum: CartanDatum, order: Sequence[RootVec]) -> bool:
    """Betweenness: whenever a + b = c for roots, c sits strictly between a and b."""
    order = [tuple(b) for b in order]
    if sorted(order) != sorted(datum.positive_roots) or len(set(order)) != len(order):
        raise NotTotal("order must list every positive root exactly once")
    pos = {b: k for k, b in enumerate(order)}
    for a in order:
        for b in order:
            if pos[a] < pos[b]:
                c = add(a, b)
                if c in pos and not pos[a] < pos[c] < pos[b]:
                    return False
    return True


def is_convex_by_faces(datum: CartanDatum, p: ConvexPreorder | Sequence[RootVec]) -> bool:
    if not isinstance(p, ConvexPreorder):
        p = ConvexPreorder(datum, tuple((tuple(b),) for b in p))
    return all(face_check(lo, cls, hi) for lo, cls, hi in p.face_triples())


def face_check(a_minus: Iterable, a_zero: Iterable, a_plus: Iterable) -> bool:
    """Exact test of the two cone conditions defining a face."""
    a_minus = [tuple(x) for x in a_minus]
    a_zero = [tuple(x) for x in a_zero]
    a_plus = [tuple(x) for x in a_plus]
    return not _meets(a_minus, a_plus, a_zero) and not _meets(a_plus, a_minus, a_zero)


def _meets(gens: list, other: list, lin: list) -> bool:
    """Is there a nonzero x in Sp(gens) with x in Sp(other) + Span_R(lin)?"""
    if not gens:
        return False
    dim = len(gens[0])
    nl, no, nf = len(gens), len(other), len(lin)
    nvars = nl + no + nf
    base_eqs = []
    for j in range(dim):
        row = [Fraction(g[j]) for g in gens] + [Fraction(-o[j]) for o in other] + [Fraction(-f[j]) for f in lin]
        base_eqs.append((row, Fraction(0)))
    ineqs = []
    for k in range(nl + no):
        row = [Fraction(0)] * nvars
        row[k] = Fraction(1)
        ineqs.append((row, Fraction(0)))
    for j in range(dim):
        for s in (1, -1):
            row = [Fraction(s * g[j]) for g in gens] + [Fraction(0)] * (no + nf)
            if not any(row):
                continue
            if _feasible(base_eqs + [(row, Fraction(1))], ineqs, nvars):
                return True
    return False


def _feasible(eqs: list, ineqs: list, nvars: int) -> bool:
    """Feasibility of {A x = b, C x >= d} over Q by Gaussian + Fourier-Motzkin elimination."""
    eqs = [(list(a), b) for a, b in eqs]
    ineqs = [(list(a), b) for a, b in ineqs]
    alive = set(range(nvars))
    # eliminate equalities
    while eqs:
        a, b = eqs.pop()
        k = next((k for k in alive if a[k]), None)
        if k is None:
            if b:
                return False
            continue
        piv = a[k]

        def substitute(row, rhs):
            f = row[k] / piv
            if not f:
                return row, rhs
            new = [r - f * x for r, x in zip(row, a)]
            return new, rhs - f * b

        eqs = [substitute(r, c) for r, c in eqs]
        ineqs = [substitute(r, c) for r, c in ineqs]
        alive.discard(k)
    # Fourier-Motzkin on the remaining inequalities
    for k in sorted(alive):
        pos, negs, rest = [], [], []
        for row, rhs in ineqs:
            if row[k] > 0:
                pos.append((row, rhs))
            elif row[k] < 0:
                negs.append((row, rhs))
            else:
                rest.append((row, rhs))
        for rp, bp in pos:
            for rn, bn in negs:
                fp, fn = rp[k], -rn[k]
                row = [fn * x + fp * y for x, y in zip(rp, rn)]
                rest.append((row, fn * bp + fp * bn))
        ineqs = _dedupe(rest)
    return all(rhs <= 0 for _, rhs in ineqs)


def _dedupe(rows: list) -> list:
    seen = set()
    out = []
    for row, rhs in rows:
        scale = max((abs(x) for x in row), default=0)
        if scale:
            key = (tuple(x / scale for x in row), rhs / scale)
        else:
            key = ((), rhs)
        if key not in seen:
            seen.add(key)
            out.append((row, rhs))
    return out
