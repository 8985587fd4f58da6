"""Exhaustive verification suites behind ``qstrata verify``.

Every suite is split into independent tasks described by plain tuples, so the
work can be spread over processes; results are collected in task order, which
keeps reports byte-identical for any number of jobs.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from typing import Callable

from .cartan import CartanDatum, Weight, build_cartan, height
from .convex import is_convex, is_convex_by_faces, order_from_w0_word
from .errors import DomainError, NotQCommuting, TooLong
from .minors import (
    COMMUTATION_SIGN,
    check_minor_E,
    check_minor_product,
    lambda_formula,
    minor,
    minor_at,
    minor_by_recursion,
    q_commutation_exponent,
    weight_le,
)
from .shuffle import ShuffleElement, check_boson, format_word
from .strata import census, census_oracle, check_flag_membership, reflect_roots
from .weyl import (
    WeylElement,
    all_elements,
    bruhat_le,
    longest_element,
    reduced_words,
    v_chain,
    word_to_str,
)

MAX_FAILURES_LISTED = 50
MAX_PERMUTED_ROOTS = 8


def fundamental_weights(datum: CartanDatum) -> list:
    return [Weight.fundamental(datum, [int(j == i) for j in datum.index_set]) for i in datum.index_set]


def _datum(key: tuple) -> CartanDatum:
    return build_cartan(*key)


def _elem(datum: CartanDatum, word) -> WeylElement:
    return WeylElement.from_word(datum, word)


def _lam_str(lam: Weight) -> str:
    return ",".join(str(c) for c in lam.pairings())


# -- task bodies: each returns a list of records {"case": ..., "ok": bool, ...} ----

def _task_minor_product(key, w_word, v_word):
    datum = _datum(key)
    w, v = _elem(datum, w_word), _elem(datum, v_word)
    out = []
    for lam in fundamental_weights(datum):
        for lam2 in fundamental_weights(datum):
            ok = check_minor_product(lam, lam2, w, v)
            out.append({"case": f"L={_lam_str(lam)} L'={_lam_str(lam2)} w={w} v={v}", "ok": ok})
    return out


def _task_minor_routes(key, w_word, v_word):
    datum = _datum(key)
    w, v = _elem(datum, w_word), _elem(datum, v_word)
    out = []
    for lam in fundamental_weights(datum):
        ok = minor(lam, w, v) == minor_by_recursion(lam, w, v)
        out.append({"case": f"L={_lam_str(lam)} w={w} v={v}", "ok": ok})
    return out


def _task_minor_E(key, w_word, v_word):
    datum = _datum(key)
    w, v = _elem(datum, w_word), _elem(datum, v_word)
    out = []
    for lam in fundamental_weights(datum):
        if not weight_le(lam, w, v):
            continue
        for i in datum.index_set:
            for r in check_minor_E(lam, w, v, i):
                if r.applicable:
                    out.append({"case": f"L={_lam_str(lam)} w={w} v={v} i={i} clause={r.clause}", "ok": bool(r.holds)})
    return out


def _task_degree(key, word, v_word):
    datum = _datum(key)
    v = _elem(datum, v_word)
    ch = v_chain(datum, word, v)
    lams = fundamental_weights(datum)
    out = []
    for lam in lams:
        for lam2 in lams:
            for j in range(1, len(word) + 1):
                x = minor_at(lam, ch.w_le[j], ch.v_le[j])
                for k in range(j):
                    y = minor_at(lam2, ch.w_le[k], ch.v_le[k])
                    case = f"word={word_to_str(word)} v={v} L={_lam_str(lam)} L'={_lam_str(lam2)} j={j} k={k}"
                    lam_val = lambda_formula(lam, lam2, word, v, j, k)
                    try:
                        c = q_commutation_exponent(x, y)
                    except NotQCommuting as exc:
                        out.append({"case": case, "ok": False, "error": str(exc)})
                        continue
                    out.append({"case": case, "ok": c == COMMUTATION_SIGN * lam_val, "c": c, "lambda": lam_val})
    return out


def _task_flag(key, word, v_word):
    datum = _datum(key)
    v = _elem(datum, v_word)
    out = []
    for lam in fundamental_weights(datum):
        for row in check_flag_membership(lam, word, v):
            out.append({"case": f"word={word_to_str(word)} v={v} L={_lam_str(lam)} k={row.k}", "ok": row.passes})
    return out


def _task_census(key, word, prefix_len, betas):
    datum = _datum(key)
    out = []
    for beta in betas:
        fast, _ = census(datum, word, word[:prefix_len], beta)
        slow = census_oracle(datum, word, word[:prefix_len], beta)
        out.append({
            "case": f"word={word_to_str(word)} prefix={word_to_str(word[:prefix_len])} beta={','.join(map(str, beta))}",
            "ok": fast == slow,
            "count": fast,
        })
    return out


def _task_reflection(key, i, w_word, v_word):
    datum = _datum(key)
    t = reflect_roots(i, _elem(datum, w_word), _elem(datum, v_word))
    return [{"case": f"i={i} w={_elem(datum, w_word)} v={_elem(datum, v_word)}", "ok": t.holds}]


def _task_boson(key, pairs):
    datum = _datum(key)
    out = []
    for a, b in pairs:
        u, v = ShuffleElement.word(datum, a), ShuffleElement.word(datum, b)
        for i in datum.index_set:
            left, right = check_boson(i, u, v)
            out.append({"case": f"u=<{format_word(a)}> v=<{format_word(b)}> i={i}", "ok": left and right})
    return out


# -- task lists ------------------------------------------------------------------

def _pairs_below(datum: CartanDatum, w: WeylElement | None) -> list:
    tops = [w] if w is not None else list(all_elements(datum))
    return [(t.word, v.word) for t in tops for v in all_elements(datum) if bruhat_le(v, t)]


def _words_of(datum: CartanDatum, w: WeylElement | None, default_w0: bool) -> list:
    if w is None:
        tops = [longest_element(datum)] if default_w0 else list(all_elements(datum))
    else:
        tops = [w]
    return [word for t in tops for word in reduced_words(t)]


def _tasks(suite: str, datum: CartanDatum, w: WeylElement | None, max_ht: int | None, seed: int) -> list:
    key = (datum.type_label, datum.rank)
    if suite in ("minor-product", "minor-routes"):
        fn = _task_minor_product if suite == "minor-product" else _task_minor_routes
        return [(fn, (key, a, b)) for a, b in _pairs_below(datum, w)]
    if suite == "minor-E":
        # every pair; the order w lam <= v lam is tested per weight inside the task
        tops = [w] if w is not None else list(all_elements(datum))
        return [(_task_minor_E, (key, a.word, b.word)) for a in tops for b in all_elements(datum)]
    if suite in ("degree-of-R", "membership-flag"):
        fn = _task_degree if suite == "degree-of-R" else _task_flag
        out = []
        for word in _words_of(datum, w, default_w0=suite == "degree-of-R"):
            top = _elem(datum, word)
            out += [(fn, (key, word, v.word)) for v in all_elements(datum) if bruhat_le(v, top)]
        return out
    if suite == "census-oracle":
        h = max_ht if max_ht is not None else 2 * datum.rank
        betas = [b for b in itertools.product(range(h + 1), repeat=datum.rank) if height(b) <= h]
        return [
            (_task_census, (key, word, p, betas))
            for word in _words_of(datum, w, default_w0=False)
            for p in range(len(word) + 1)
        ]
    if suite == "reflection":
        return [
            (_task_reflection, (key, i, a.word, b.word))
            for i in datum.index_set
            for a in all_elements(datum)
            for b in all_elements(datum)
            if not a.has_left_descent(i) and not b.has_left_descent(i)
        ]
    if suite == "boson":
        h = max_ht if max_ht is not None else 6
        letters = list(datum.index_set)
        words = [wd for n in range(h + 1) for wd in itertools.product(letters, repeat=n)]
        pairs = [(a, b) for a in words for b in words if len(a) + len(b) <= h]
        rng = random.Random(seed)
        for _ in range(100):
            pairs.append(tuple(tuple(rng.choice(letters) for _ in range(rng.randint(0, 4))) for _ in range(2)))
        chunk = 64
        return [(_task_boson, (key, pairs[s:s + chunk])) for s in range(0, len(pairs), chunk)]
    raise DomainError(f"unknown suite {suite!r}")


def _call(task):
    fn, args = task
    return fn(*args)


def _convex_count(datum: CartanDatum) -> dict:
    roots = list(datum.positive_roots)
    if len(roots) > MAX_PERMUTED_ROOTS:
        raise TooLong(f"{len(roots)} positive roots is too many to permute")
    passing = sum(1 for perm in itertools.permutations(roots) if is_convex(datum, perm))
    words = reduced_words(longest_element(datum))
    records = []
    for word in words:
        order = order_from_w0_word(datum, word)
        ok = is_convex(datum, order.order()) and is_convex_by_faces(datum, order)
        records.append({"case": f"word={word_to_str(word)}", "ok": ok})
    records.append({"case": "convex orders == reduced words of w0", "ok": passing == len(words),
                    "convex_orders": passing, "reduced_words": len(words)})
    return {"records": records, "summary": {"convex_orders": passing, "reduced_words_w0": len(words)}}


SUITES = (
    "boson", "minor-routes", "minor-product", "minor-E", "degree-of-R",
    "membership-flag", "census-oracle", "convex-count", "reflection",
)


def run_suite(
    suite: str,
    datum: CartanDatum,
    w: WeylElement | None = None,
    max_ht: int | None = None,
    jobs: int = 1,
    seed: int = 0,
) -> dict:
    """Run one suite and return a JSON-ready report."""
    if suite == "convex-count":
        res = _convex_count(datum)
        records, summary = res["records"], res["summary"]
    else:
        tasks = _tasks(suite, datum, w, max_ht, seed)
        if jobs > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                chunks = list(pool.map(_call, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
        else:
            chunks = [_call(t) for t in tasks]
        records = [r for chunk in chunks for r in chunk]
        summary = _summarize(suite, records)
    failures = [r for r in records if not r["ok"]]
    return {
        "suite": suite,
        "type": datum.name,
        "cases": len(records),
        "failed": len(failures),
        "passed": not failures,
        "summary": summary,
        "failures": failures[:MAX_FAILURES_LISTED],
    }


def _summarize(suite: str, records: list) -> dict:
    if suite == "degree-of-R":
        products = [r["c"] * r["lambda"] for r in records if "c" in r and r["lambda"]]
        signs = sorted({(p > 0) - (p < 0) for p in products})
        return {"sign": COMMUTATION_SIGN, "observed_signs": signs}
    if suite == "census-oracle":
        return {"total_count": sum(r["count"] for r in records)}
    return {}


def suite_runner(name: str) -> Callable:
    if name not in SUITES:
        raise DomainError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return lambda datum, **kw: run_suite(name, datum, **kw)
