from __future__ import annotations

import pytest

from qstrata.cartan import build_cartan
from qstrata.errors import DomainError, TooLong
from qstrata.suites import SUITES, run_suite
from qstrata.weyl import WeylElement


@pytest.mark.parametrize("suite", SUITES)
def test_suites_pass_on_a2(suite):
    rep = run_suite(suite, build_cartan("A", 2))
    assert rep["passed"], rep["failures"]
    assert rep["cases"] > 0


@pytest.mark.parametrize("suite", ["minor-product", "degree-of-R", "membership-flag", "census-oracle"])
def test_suites_pass_on_b2(suite):
    rep = run_suite(suite, build_cartan("B", 2))
    assert rep["passed"], rep["failures"]


def test_degree_suite_reports_one_sign():
    rep = run_suite("degree-of-R", build_cartan("A", 2))
    assert rep["summary"] == {"sign": -1, "observed_signs": [-1]}


def test_suite_restricted_to_w():
    d = build_cartan("A", 3)
    rep = run_suite("membership-flag", d, w=WeylElement.from_word(d, (1, 2, 1)))
    assert rep["passed"] and rep["cases"] > 0


def test_parallel_matches_serial():
    d = build_cartan("A", 2)
    assert run_suite("census-oracle", d, jobs=1) == run_suite("census-oracle", d, jobs=2)


def test_unknown_suite():
    with pytest.raises(DomainError):
        run_suite("nope", build_cartan("A", 2))


def test_convex_count_guard():
    with pytest.raises(TooLong):
        run_suite("convex-count", build_cartan("D", 4))
