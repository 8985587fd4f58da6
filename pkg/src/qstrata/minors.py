"""Unipotent quantum minors D(w Lambda, v Lambda) in the word model.

The coefficient of a word nu is the matrix coefficient
(u_{v Lambda}, e_{nu_1} ... e_{nu_l} u_{w Lambda}), where the extremal vectors
are divided-power f-monomials applied to the highest weight vector.  Values
are obtained by commuting every e past every f with
[e_i, f_j] = delta_ij (t_i - t_i^{-1}) / (q_i - q_i^{-1}).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .cartan import CartanDatum, RootVec, Weight, form, is_nonneg, sub
from .errors import (
    HypothesisNotMet,
    IndexOutOfRange,
    NotBruhatComparable,
    NotDominant,
    NotPolynomial,
    NotQCommuting,
)
from .laurent import ONE, LaurentPoly, RatFunc, qfact, qnum
from .shuffle import ShuffleElement, e_divided, eps, eps_star, shuffle_product, word_weight
from .weyl import WeylElement, bruhat_le, is_reduced, v_chain
from .errors import NotReduced

# Measured q-commutation exponents satisfy  D_j * D_k = q^c D_k * D_j  with
# c = COMMUTATION_SIGN * Lambda(D_j, D_k).  Pinned on A2, word (1,2,1),
# v = id, Lambda = Lambda' = Lambda_1, j = 3, k = 1, where <12><1> = q^-1 <1><12>.
COMMUTATION_SIGN = -1


FMonomial = tuple  # ((i, m), ...) for f_{i_1}^{(m_1)} ... f_{i_l}^{(m_l)}


def extremal_exponents(datum: CartanDatum, word: Sequence[int], lam: Weight) -> list:
    """m_k = <h_{i_k}, s_{i_{k+1}} ... s_{i_l} Lambda>."""
    if not lam.is_dominant():
        raise NotDominant(f"{lam} is not dominant")
    if not is_reduced(datum, word):
        raise NotReduced(f"word {tuple(word)} is not reduced")
    out = [0] * len(word)
    mu = lam
    for k in range(len(word) - 1, -1, -1):
        i = word[k]
        out[k] = mu.pairing(i)
        mu = mu.reflect(i)
    return out


def extremal_monomial(datum: CartanDatum, word: Sequence[int], lam: Weight) -> FMonomial:
    return tuple(zip(word, extremal_exponents(datum, word, lam)))


def _expand(fm: FMonomial) -> tuple:
    return tuple(i for i, m in fm for _ in range(m))


def _factorial_weight(datum: CartanDatum, fm: FMonomial) -> LaurentPoly:
    out = ONE
    for i, m in fm:
        if m > 1:
            out = out * qfact(m, datum.diag[i - 1])
    return out


# -- straightening ----------------------------------------------------------------

@lru_cache(maxsize=None)
def _e_on_fword(datum: CartanDatum, lam: tuple, i: int, fs: tuple) -> tuple:
    """e_i f_{fs} u_lam as ((fs', coeff), ...), lam given by its coroot pairings."""
    row = datum.cartan_matrix[i - 1]
    d = datum.diag[i - 1]
    out: dict = {}
    h = lam[i - 1]  # <h_i, weight to the right of the current position>
    for k in range(len(fs) - 1, -1, -1):
        j = fs[k]
        if j == i and h:
            key = fs[:k] + fs[k + 1:]
            c = qnum(h, d)
            s = out.get(key)
            out[key] = c if s is None else s + c
        h -= row[j - 1]
    return tuple((w, c) for w, c in out.items() if c)


@lru_cache(maxsize=None)
def _pairing(datum: CartanDatum, lam: tuple, es: tuple, fs: tuple) -> LaurentPoly:
    """Coefficient of u_lam in e_{es_1} ... e_{es_r} f_{fs_1} ... f_{fs_s} u_lam."""
    if len(es) != len(fs):
        return LaurentPoly()
    if not es:
        return ONE
    total = LaurentPoly()
    for fs2, c in _e_on_fword(datum, lam, es[-1], fs):
        p = _pairing(datum, lam, es[:-1], fs2)
        if p:
            total = total + c * p
    return total


def shapovalov_pair(datum: CartanDatum, eword: Sequence[int], fm: FMonomial, lam: Weight) -> RatFunc:
    """(u_lam, e_{eword} * fm * u_lam) with fm a divided-power f-monomial."""
    eword = tuple(eword)
    fs = _expand(fm)
    if word_weight(datum, eword) != word_weight(datum, fs):
        return RatFunc(0)
    value = _pairing(datum, lam.pairings(), eword, fs)
    return RatFunc(value, _factorial_weight(datum, fm))


# -- minors -------------------------------------------------------------------------

def _minor_terms(datum: CartanDatum, lam: tuple, fm_w: FMonomial, fm_v: FMonomial) -> dict:
    fs = _expand(fm_w)
    # phi(f_{j_1}^{(n_1)} ... f_{j_r}^{(n_r)}) = e_{j_r}^{(n_r)} ... e_{j_1}^{(n_1)}
    ev = tuple(i for i, m in reversed(fm_v) for _ in range(m))
    beta = sub(word_weight(datum, fs), word_weight(datum, ev))
    if not is_nonneg(beta):
        return {}
    denom = _factorial_weight(datum, fm_w) * _factorial_weight(datum, fm_v)
    terms: dict = {}

    # depth-first over nu built from its last letter; state is e_{nu...} F_w u
    def dfs(suffix: tuple, state: dict, budget: list):
        if not any(budget):
            value = LaurentPoly()
            for f, c in state.items():
                p = _pairing(datum, lam, ev, f)
                if p:
                    value = value + c * p
            if value:
                try:
                    terms[suffix] = value.divexact(denom)
                except NotPolynomial as exc:  # integrality of minors
                    raise AssertionError(f"non-integral minor coefficient at {suffix}") from exc
            return
        for i in datum.index_set:
            if not budget[i - 1]:
                continue
            new: dict = {}
            for f, c in state.items():
                for f2, c2 in _e_on_fword(datum, lam, i, f):
                    s = new.get(f2)
                    t = c * c2
                    new[f2] = t if s is None else s + t
            new = {f: c for f, c in new.items() if c}
            if new:
                budget[i - 1] -= 1
                dfs((i,) + suffix, new, budget)
                budget[i - 1] += 1

    dfs((), {fs: ONE}, list(beta))
    return terms


def _stabilizer_reduce(w: WeylElement, lam: Weight, longest: bool = False) -> WeylElement:
    """Minimal (or maximal) element of the coset w W_lam."""
    datum = w.datum
    fixed = [i for i in datum.index_set if lam.pairing(i) == 0]
    changed = True
    while changed:
        changed = False
        for i in fixed:
            if w.has_right_descent(i) != longest:
                w = w.rmul_simple(i)
                changed = True
    return w


@lru_cache(maxsize=None)
def _minor_cached(datum: CartanDatum, fund: tuple, w_word: tuple, v_word: tuple) -> ShuffleElement:
    lam = Weight.fundamental(datum, fund)
    fm_w = extremal_monomial(datum, w_word, lam)
    fm_v = extremal_monomial(datum, v_word, lam)
    terms = _minor_terms(datum, lam.pairings(), fm_w, fm_v)
    weight = sub(word_weight(datum, _expand(fm_w)), word_weight(datum, _expand(fm_v)))
    if not is_nonneg(weight):
        return ShuffleElement.zero(datum, weight)
    return ShuffleElement(datum, weight, terms)


def _check_lambda(lam: Weight) -> None:
    if not lam.is_dominant():
        raise NotDominant(f"{lam} is not dominant")


def minor_at(lam: Weight, w: WeylElement, v: WeylElement) -> ShuffleElement:
    """D(w lam, v lam) without any order hypothesis (zero unless w lam <= v lam)."""
    _check_lambda(lam)
    fund = lam.pairings()
    w = _stabilizer_reduce(w, lam)
    v = _stabilizer_reduce(v, lam)
    return _minor_cached(lam.datum, fund, w.word, v.word)


def minor(lam: Weight, w: WeylElement, v: WeylElement) -> ShuffleElement:
    _check_lambda(lam)
    if not bruhat_le(v, w):
        raise NotBruhatComparable(f"{v} is not below {w} in Bruhat order")
    return minor_at(lam, w, v)


def minor_by_recursion(lam: Weight, w: WeylElement, v: WeylElement) -> ShuffleElement:
    """D(w lam, v lam) from D(w lam, lam) by divided powers of e_i^* along v."""
    _check_lambda(lam)
    if not bruhat_le(v, w):
        raise NotBruhatComparable(f"{v} is not below {w} in Bruhat order")
    x = minor_at(lam, w, WeylElement.identity(lam.datum))
    word = v.word
    exps = extremal_exponents(lam.datum, word, lam)
    for i, n in reversed(list(zip(word, exps))):
        x = e_divided(i, n, x, star=True)
    return x


# -- order on extremal weights -----------------------------------------------------

def weight_le(lam: Weight, x: WeylElement, y: WeylElement) -> bool:
    """x lam <= y lam in the order of the extremal weights (x lam is the lower one)."""
    return bruhat_le(_stabilizer_reduce(y, lam), _stabilizer_reduce(x, lam, longest=True))


# -- clause checks -----------------------------------------------------------------

@dataclass
class ClauseResult:
    clause: str
    applicable: bool
    holds: bool | None
    detail: dict

    def to_json(self) -> dict:
        return {"clause": self.clause, "applicable": self.applicable, "holds": self.holds, **self.detail}


def check_minor_E(lam: Weight, w: WeylElement, v: WeylElement, i: int) -> list:
    """Check the four e_i / e_i^* clauses for D(mu, zeta), mu = w lam, zeta = v lam."""
    _check_lambda(lam)
    if not weight_le(lam, w, v):
        raise HypothesisNotMet("requires w lam <= v lam")
    mu = w.act(lam)
    zeta = v.act(lam)
    D = minor_at(lam, w, v)
    out = []

    n = mu.pairing(i)
    if n >= 0:
        lhs = e_divided(i, n, minor_at(lam, w.lmul_simple(i), v))
        e0 = eps(i, D)
        out.append(ClauseResult("i", True, e0 == 0 and lhs == D, {"n": n, "eps": e0}))
    else:
        out.append(ClauseResult("i", False, None, {"n": n}))

    if n <= 0 and weight_le(lam, w.lmul_simple(i), v):
        e1 = eps(i, D)
        out.append(ClauseResult("ii", True, e1 == -n, {"eps": e1, "expected": -n}))
    else:
        out.append(ClauseResult("ii", False, None, {}))

    m = -zeta.pairing(i)
    if m >= 0:
        lhs = e_divided(i, m, minor_at(lam, w, v.lmul_simple(i)), star=True)
        e2 = eps_star(i, D)
        out.append(ClauseResult("iii", True, e2 == 0 and lhs == D, {"m": m, "eps_star": e2}))
    else:
        out.append(ClauseResult("iii", False, None, {"m": m}))

    p = zeta.pairing(i)
    if p >= 0 and weight_le(lam, w, v.lmul_simple(i)):
        e3 = eps_star(i, D)
        out.append(ClauseResult("iv", True, e3 == p, {"eps_star": e3, "expected": p}))
    else:
        out.append(ClauseResult("iv", False, None, {}))
    return out


def product_exponent(lam: Weight, lam2: Weight, w: WeylElement, v: WeylElement) -> int:
    """-(v lam, v lam' - w lam')."""
    datum = lam.datum
    return -form(datum, v.act(lam), v.act(lam2) - w.act(lam2))


def check_minor_product(lam: Weight, lam2: Weight, w: WeylElement, v: WeylElement) -> bool:
    lhs = shuffle_product(minor(lam, w, v), minor(lam2, w, v))
    rhs = minor(lam + lam2, w, v).shift(product_exponent(lam, lam2, w, v))
    return lhs == rhs


def q_commutation_exponent(x: ShuffleElement, y: ShuffleElement) -> int:
    """The c with x*y = q^c y*x; raises NotQCommuting (with a witness word) otherwise."""
    xy = shuffle_product(x, y)
    yx = shuffle_product(y, x)
    if not xy and not yx:
        return 0
    if set(xy.terms) != set(yx.terms):
        witness = sorted(set(xy.terms) ^ set(yx.terms))[0]
        raise NotQCommuting(f"supports differ at word {witness}", witness)
    c = None
    for word in sorted(xy.terms):
        a, b = xy.terms[word], yx.terms[word]
        shift = a.min_exp() - b.min_exp()
        if b.shift(shift) != a or (c is not None and shift != c):
            raise NotQCommuting(f"no single power of q at word {word}", word)
        c = shift
    return c


def lambda_formula(lam: Weight, lam2: Weight, word_w: Sequence[int], v: WeylElement, j: int, k: int) -> int:
    """(w_{<=j} lam + v_{<=j} lam, v_{<=k} lam' - w_{<=k} lam')."""
    datum = lam.datum
    if not 0 <= k <= j <= len(word_w):
        raise IndexOutOfRange(f"need 0 <= k <= j <= {len(word_w)}, got j={j}, k={k}")
    ch = v_chain(datum, word_w, v)
    first = ch.w_le[j].act(lam) + ch.v_le[j].act(lam)
    second = ch.v_le[k].act(lam2) - ch.w_le[k].act(lam2)
    return form(datum, first, second)
