"""Acceptance criteria, one test per criterion.

Each test prints a single PASS/FAIL line (visible with ``pytest -s`` or when
this file is run directly with ``python tests/test_acceptance.py``).
All comparisons are exact.
"""

from __future__ import annotations

import itertools
import random
import subprocess
import sys
import time

from qstrata import minors as minors_mod
from qstrata.cartan import Weight, build_cartan
from qstrata.convex import face_check, is_convex, order_from_w0_word
from qstrata.errors import NotQCommuting
from qstrata.minors import (
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
from qstrata.shuffle import ShuffleElement, check_boson
from qstrata.strata import (
    census,
    census_oracle,
    check_flag_membership,
    reflect_roots,
)
from qstrata.suites import SUITES
from qstrata.weyl import all_elements, bruhat_le, longest_element, reduced_words, v_chain


RESULTS: list = []


def report(n: int, name: str, ok: bool, detail: str) -> None:
    line = f"criterion {n:2d} {name}: {'PASS' if ok else 'FAIL'} ({detail})"
    RESULTS.append(line)
    print(line, flush=True)


def fundamentals(d):
    return [Weight.fundamental(d, [int(j == i) for j in d.index_set]) for i in d.index_set]


def cold_caches():
    for fn in (minors_mod._minor_cached, minors_mod._pairing, minors_mod._e_on_fword):
        fn.cache_clear()


def bruhat_pairs(d):
    return [(w, v) for w in all_elements(d) for v in all_elements(d) if bruhat_le(v, w)]


def test_criterion_01_boson_identities():
    t0 = time.perf_counter()
    a2 = build_cartan("A", 2)
    words = [w for n in range(7) for w in itertools.product((1, 2), repeat=n)]
    bad = checks = 0
    for a in words:
        for b in words:
            if len(a) + len(b) > 6:
                continue
            x, y = ShuffleElement.word(a2, a), ShuffleElement.word(a2, b)
            for i in a2.index_set:
                checks += 1
                bad += check_boson(i, x, y) != (True, True)
    a3 = build_cartan("A", 3)
    rng = random.Random(20261015)
    for _ in range(100):
        a, b = (tuple(rng.choice((1, 2, 3)) for _ in range(rng.randint(0, 4))) for _ in range(2))
        x, y = ShuffleElement.word(a3, a), ShuffleElement.word(a3, b)
        for i in a3.index_set:
            checks += 1
            bad += check_boson(i, x, y) != (True, True)
    dt = time.perf_counter() - t0
    ok = bad == 0 and dt < 30
    report(1, "boson identities", ok, f"{checks} checks, {bad} failed, {dt:.1f} s")
    assert ok


def test_criterion_02_minor_routes_agree():
    cold_caches()
    detail = []
    ok = True
    for label, rank in (("A", 2), ("A", 3)):
        t0 = time.perf_counter()
        d = build_cartan(label, rank)
        pairs = bruhat_pairs(d)
        bad = 0
        for lam in fundamentals(d):
            for w, v in pairs:
                bad += minor(lam, w, v) != minor_by_recursion(lam, w, v)
        dt = time.perf_counter() - t0
        ok &= bad == 0 and dt < 300
        detail.append(f"{d.name}: {len(pairs)} pairs x {rank} weights, {bad} failed, {dt:.1f} s")
    report(2, "minor route agreement", ok, "; ".join(detail))
    assert ok


def test_criterion_03_minor_product_formula():
    detail = []
    ok = True
    for label, rank in (("A", 2), ("A", 3)):
        d = build_cartan(label, rank)
        bad = checks = 0
        for lam in fundamentals(d):
            for lam2 in fundamentals(d):
                for w, v in bruhat_pairs(d):
                    checks += 1
                    bad += not check_minor_product(lam, lam2, w, v)
        ok &= bad == 0
        detail.append(f"{d.name}: {checks} checks, {bad} failed")
    report(3, "minor product formula", ok, "; ".join(detail))
    assert ok


def test_criterion_04_minor_E_clauses():
    detail = []
    ok = True
    for label, rank in (("A", 2), ("A", 3)):
        d = build_cartan(label, rank)
        bad = checks = 0
        for lam in fundamentals(d):
            for w in all_elements(d):
                for v in all_elements(d):
                    if not weight_le(lam, w, v):
                        continue
                    for i in d.index_set:
                        for r in check_minor_E(lam, w, v, i):
                            if r.applicable:
                                checks += 1
                                bad += not r.holds
        ok &= bad == 0
        detail.append(f"{d.name}: {checks} clause checks, {bad} failed")
    report(4, "e_i / e_i^* clauses on minors", ok, "; ".join(detail))
    assert ok


def _degree_sweep(d):
    bad = checks = non_commuting = 0
    signs = set()
    lams = fundamentals(d)
    for word in reduced_words(longest_element(d)):
        for v in all_elements(d):
            ch = v_chain(d, word, v)
            for lam in lams:
                for lam2 in lams:
                    for j in range(1, len(word) + 1):
                        x = minor_at(lam, ch.w_le[j], ch.v_le[j])
                        for k in range(j):
                            y = minor_at(lam2, ch.w_le[k], ch.v_le[k])
                            checks += 1
                            lam_val = lambda_formula(lam, lam2, word, v, j, k)
                            try:
                                c = q_commutation_exponent(x, y)
                            except NotQCommuting:
                                non_commuting += 1
                                continue
                            if lam_val:
                                signs.add((c * lam_val > 0) - (c * lam_val < 0))
                            bad += c != COMMUTATION_SIGN * lam_val
    return checks, bad, non_commuting, signs


def test_criterion_05_flag_commutation_and_degree():
    cold_caches()
    detail = []
    ok = True
    for label, rank, limit in (("A", 2, 60), ("A", 3, 1800)):
        t0 = time.perf_counter()
        d = build_cartan(label, rank)
        checks, bad, nc, signs = _degree_sweep(d)
        dt = time.perf_counter() - t0
        ok &= bad == 0 and nc == 0 and signs <= {COMMUTATION_SIGN} and dt < limit
        detail.append(f"{d.name}: {checks} pairs, {nc} not q-commuting, {bad} off-formula, "
                      f"signs {sorted(signs)}, {dt:.1f} s")
    report(5, "flag q-commutation and degree formula", ok,
           f"sign {COMMUTATION_SIGN}; " + "; ".join(detail))
    assert ok


def test_criterion_06_flag_membership():
    detail = []
    ok = True
    for label, rank, only_w0 in (("A", 2, False), ("A", 3, True)):
        d = build_cartan(label, rank)
        tops = [longest_element(d)] if only_w0 else all_elements(d)
        bad = rows = 0
        for lam in fundamentals(d):
            for w in tops:
                for word in reduced_words(w):
                    for v in all_elements(d):
                        if not bruhat_le(v, w):
                            continue
                        for r in check_flag_membership(lam, word, v):
                            rows += 1
                            bad += not r.passes
        ok &= bad == 0
        detail.append(f"{d.name}: {rows} flag minors, {bad} failed")
    report(6, "flag minor membership", ok, "; ".join(detail))
    assert ok


def test_criterion_07_census_matches_oracle():
    detail = []
    spot = census(build_cartan("A", 2), (1, 2, 1), (), (1, 1))[0]
    ok = spot == 2
    for label, rank, max_ht in (("A", 2, 4), ("A", 3, 6)):
        d = build_cartan(label, rank)
        betas = [b for b in itertools.product(range(max_ht + 1), repeat=rank) if sum(b) <= max_ht]
        bad = checks = 0
        for w in all_elements(d):
            for word in reduced_words(w):
                for p in range(len(word) + 1):
                    for beta in betas:
                        checks += 1
                        bad += census(d, word, word[:p], beta)[0] != census_oracle(d, word, word[:p], beta)
        ok &= bad == 0
        detail.append(f"{d.name}: {checks} cases, {bad} failed")
    report(7, "census against oracle", ok, f"spot value {spot}; " + "; ".join(detail))
    assert ok


def test_criterion_08_convex_order_count():
    detail = []
    ok = True
    for label, rank, expected in (("A", 2, 2), ("A", 3, 16)):
        d = build_cartan(label, rank)
        passing = sum(1 for p in itertools.permutations(d.positive_roots) if is_convex(d, p))
        words = reduced_words(longest_element(d))
        inversion_ok = True
        for word in words:
            order = order_from_w0_word(d, word).order()
            faces = all(face_check(order[:k], [order[k]], order[k + 1:]) for k in range(len(order)))
            inversion_ok &= is_convex(d, order) and faces
        ok &= passing == expected == len(words) and inversion_ok
        detail.append(f"{d.name}: {passing} convex orders, {len(words)} reduced words of w0")
    report(8, "convex order count", ok, "; ".join(detail))
    assert ok


def test_criterion_09_reflection_bijection():
    detail = []
    ok = True
    for label, rank in (("A", 2), ("A", 3)):
        d = build_cartan(label, rank)
        bad = checks = 0
        for i in d.index_set:
            for w in all_elements(d):
                for v in all_elements(d):
                    if w.has_left_descent(i) or v.has_left_descent(i):
                        continue
                    checks += 1
                    bad += not reflect_roots(i, w, v).holds
        ok &= bad == 0
        detail.append(f"{d.name}: {checks} cases, {bad} failed")
    report(9, "reflection bijection of root sets", ok, "; ".join(detail))
    assert ok


def _verify(suite: str, type_: str, jobs: int) -> bytes:
    cmd = [sys.executable, "-m", "qstrata", "verify", "--type", type_, "--suite", suite, "--jobs", str(jobs)]
    return subprocess.run(cmd, capture_output=True, check=True).stdout


def test_criterion_10_determinism():
    runs = [(s, "A2") for s in SUITES] + [("census-oracle", "A3"), ("minor-E", "A3")]
    differing = []
    for suite, type_ in runs:
        first = _verify(suite, type_, 1)
        if first != _verify(suite, type_, 1) or first != _verify(suite, type_, 3):
            differing.append(f"{suite}/{type_}")
    ok = not differing
    report(10, "deterministic verify output", ok,
           f"{len(runs)} suite runs compared across repeats and --jobs 1/3"
           + (f"; differing: {', '.join(differing)}" if differing else ""))
    assert ok


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
