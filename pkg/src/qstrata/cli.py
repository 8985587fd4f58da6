"""Batch command-line interface.

Exit codes: 0 success, 1 domain or usage error, 2 a verification failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .cartan import CartanDatum, Weight, parse_cartan
from .convex import completing_tail, convex_order_for_word, is_convex, preorder_from_word
from .errors import DomainError
from .minors import minor
from .shuffle import ShuffleElement, format_word
from .strata import census, check_flag_membership, membership_A, richardson_roots, support_membership
from .suites import SUITES, run_suite
from .weyl import (
    WeylElement,
    bruhat_le,
    check_letters,
    inversion_sequence,
    parse_word,
    reduced_words,
    v_chain,
    word_to_str,
)

EXIT_OK, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2


class UsageError(DomainError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class Report:
    data: dict
    rows: list | None = None
    lines: list = field(default_factory=list)
    ok: bool = True


# -- argument helpers ----------------------------------------------------------

def _ints(text: str, n: int, what: str) -> tuple:
    try:
        vals = tuple(int(t) for t in text.split(",")) if text.strip() else ()
    except ValueError:
        raise UsageError(f"{what} must be comma-separated integers, got {text!r}") from None
    if len(vals) != n:
        raise UsageError(f"{what} needs {n} entries, got {len(vals)}")
    return vals


def _word(datum: CartanDatum, text: str | None, what: str = "--w") -> tuple:
    if text is None:
        raise UsageError(f"{what} is required (comma-separated letters, \"\" for the identity)")
    word = parse_word(text)
    check_letters(datum, word)
    return word


def _elem(datum: CartanDatum, text: str | None, what: str) -> WeylElement:
    return WeylElement.from_word(datum, _word(datum, text, what))


def _weight(datum: CartanDatum, text: str | None) -> Weight:
    if text is None:
        raise UsageError("--L is required (fundamental coefficients, e.g. 1,0)")
    return Weight.fundamental(datum, _ints(text, datum.rank, "--L"))


def _roots(rs) -> list:
    return [list(r) for r in rs]


def _root_str(r) -> str:
    return ",".join(str(c) for c in r)


# -- subcommands ----------------------------------------------------------------

def cmd_roots(datum: CartanDatum, args) -> Report:
    roots = list(datum.positive_roots)
    return Report(
        {"type": datum.name, "count": len(roots), "positive_roots": _roots(roots)},
        rows=[{"root": _root_str(r), "height": sum(r)} for r in roots],
        lines=[_root_str(r) for r in roots],
    )


def cmd_weyl(datum: CartanDatum, args) -> Report:
    w = _elem(datum, args.w, "--w")
    words = reduced_words(w, args.max_words)
    data = {
        "type": datum.name,
        "w": word_to_str(w.word),
        "length": w.length,
        "reduced_words": [word_to_str(x) for x in words],
        "inversion_sequence": _roots(inversion_sequence(datum, w.word)),
    }
    lines = [f"w = {w}", f"length = {w.length}", f"reduced words = {len(words)}"]
    if args.v is not None:
        v = _elem(datum, args.v, "--v")
        le = bruhat_le(v, w)
        data["v"] = word_to_str(v.word)
        data["v_le_w"] = le
        lines.append(f"{v} <= {w}: {le}")
        if le:
            ch = v_chain(datum, w.word, v)
            data["v_chain"] = [word_to_str(x.word) for x in ch.v_le]
            data["J"] = list(ch.J)
    return Report(data, rows=[{"reduced_word": word_to_str(x)} for x in words], lines=lines)


def cmd_convex(datum: CartanDatum, args) -> Report:
    word = _word(datum, args.w)
    pre = preorder_from_word(datum, word)
    tail = completing_tail(datum, word)
    order = convex_order_for_word(datum, word).order()
    data = {
        "type": datum.name,
        "word": word_to_str(word),
        "preorder": [_roots(c) for c in pre.classes],
        "completing_tail": word_to_str(tail),
        "convex_order": _roots(order),
        "is_convex": is_convex(datum, order),
    }
    lines = [" < ".join("{" + " ".join(_root_str(r) for r in c) + "}" for c in pre.classes),
             "order: " + " < ".join(_root_str(r) for r in order)]
    rows = [{"position": k + 1, "root": _root_str(r)} for k, r in enumerate(order)]
    return Report(data, rows=rows, lines=lines)


def _element_rows(x: ShuffleElement) -> list:
    return [{"word": format_word(w), "coeff": str(x.terms[w])} for w in x.words()]


def cmd_minor(datum: CartanDatum, args) -> Report:
    lam = _weight(datum, args.L)
    w = _elem(datum, args.w, "--w")
    v = _elem(datum, args.v if args.v is not None else "", "--v")
    x = minor(lam, w, v)
    return Report(x.to_json(), rows=_element_rows(x), lines=[str(x)])


def cmd_flag(datum: CartanDatum, args) -> Report:
    lam = _weight(datum, args.L)
    word = _word(datum, args.w)
    v = _elem(datum, args.v if args.v is not None else "", "--v")
    rows = [r.to_json() for r in check_flag_membership(lam, word, v)]
    ok = all(r["passes"] for r in rows)
    lines = [f"k={r['k']} w_k={r['w_k']} v_k={r['v_k']} {'pass' if r['passes'] else 'FAIL'}" for r in rows]
    return Report({"type": datum.name, "word": word_to_str(word), "v": str(v), "rows": rows, "passed": ok},
                  rows=rows, lines=lines, ok=ok)


def cmd_census(datum: CartanDatum, args) -> Report:
    word = _word(datum, args.w)
    prefix = _word(datum, args.v_prefix if args.v_prefix is not None else "", "--v-prefix")
    if args.beta is None:
        raise UsageError("--beta is required (simple-root coefficients, e.g. 1,1)")
    beta = _ints(args.beta, datum.rank, "--beta")
    count, data = census(datum, word, prefix, beta)
    out = {
        "type": datum.name,
        "word": word_to_str(word),
        "v_prefix": word_to_str(prefix),
        "beta": list(beta),
        "richardson_roots": _roots(richardson_roots(datum, word, prefix)),
        "count": count,
        "kostant_data": [k.to_json() for k in data],
    }
    rows = [{"index": n + 1, "roots": " ".join(_root_str(r) for r in k.roots)} for n, k in enumerate(data)]
    lines = [f"count = {count}"] + ["  " + " ".join(_root_str(r) for r in k.roots) for k in data]
    return Report(out, rows=rows, lines=lines)


def cmd_membership(datum: CartanDatum, args) -> Report:
    if args.element is None:
        raise UsageError("--element is required (JSON file mapping words to coefficients)")
    try:
        raw = json.loads(Path(args.element).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read element file: {exc}") from None
    x = ShuffleElement.from_json(datum, raw)
    w = _elem(datum, args.w if args.w is not None else "", "--w")
    v = _elem(datum, args.v if args.v is not None else "", "--v")
    a = membership_A(x, w, v)
    s = support_membership(x, w, v)
    data = {"type": datum.name, "w": str(w), "v": str(v),
            "in_Aw": a[0], "in_Astar_v": a[1], "in_Cw": s[0], "in_Cstar_v": s[1]}
    return Report(data, rows=[data], lines=[f"{k} = {data[k]}" for k in sorted(data)])


def cmd_verify(datum: CartanDatum, args) -> Report:
    if args.suite is None:
        raise UsageError(f"--suite is required; choose from {', '.join(SUITES)}")
    w = _elem(datum, args.w, "--w") if args.w is not None else None
    rep = run_suite(args.suite, datum, w=w, max_ht=args.max_ht, jobs=args.jobs, seed=args.seed)
    lines = [f"{rep['suite']} {rep['type']}: {rep['cases']} cases, {rep['failed']} failed"]
    lines += [f"  FAIL {f['case']}" for f in rep["failures"]]
    return Report(rep, rows=[{"suite": rep["suite"], "type": rep["type"], "cases": rep["cases"],
                              "failed": rep["failed"], "passed": rep["passed"]}],
                  lines=lines, ok=rep["passed"])


COMMANDS = {
    "roots": (cmd_roots, "list the positive roots"),
    "weyl": (cmd_weyl, "normal form, reduced words and inversions of w"),
    "convex": (cmd_convex, "convex preorder and order attached to a reduced word"),
    "minor": (cmd_minor, "unipotent quantum minor D(w L, v L) in the word model"),
    "flag": (cmd_flag, "membership of the flag minors of a reduced word"),
    "census": (cmd_census, "simple objects of a stratum by Kostant data"),
    "membership": (cmd_membership, "membership tests for an element read from JSON"),
    "verify": (cmd_verify, "run an exhaustive verification suite"),
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--type", required=True, help="Cartan type such as A2, B3, D4")
    common.add_argument("--out", choices=("json", "csv", "plain"), default="json")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for verify")
    common.add_argument("--w", help="word for w, e.g. 1,2,1 (\"\" is the identity)")
    common.add_argument("--v", help="word for v")
    common.add_argument("--v-prefix", dest="v_prefix", help="reduced word of v, a prefix of --w")
    common.add_argument("--L", help="dominant weight as fundamental coefficients, e.g. 1,0")
    common.add_argument("--beta", help="weight as simple-root coefficients, e.g. 1,1")
    common.add_argument("--max-ht", dest="max_ht", type=int, help="height bound for census/boson sweeps")
    common.add_argument("--max-words", dest="max_words", type=int, default=100_000,
                        help="guard on the number of reduced words")
    common.add_argument("--element", help="JSON file with a shuffle element")
    common.add_argument("--suite", help=f"one of: {', '.join(SUITES)}")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suite cases")
    parser = _Parser(prog="qstrata", description="Quantum unipotent minors, convex orders and strata.")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text, description=help_text)
    return parser


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.data, sort_keys=True, indent=2) + "\n"
    if fmt == "plain":
        return "\n".join(report.lines) + "\n"
    rows = report.rows if report.rows is not None else [report.data]
    buf = io.StringIO()
    keys = list(rows[0]) if rows else []
    writer = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: json.dumps(v, sort_keys=True) if isinstance(v, (list, dict)) else v for k, v in r.items()})
    return buf.getvalue()


def main(argv: list | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError(f"a command is required: {', '.join(COMMANDS)}")
        if args.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        datum = parse_cartan(args.type)
        report = COMMANDS[args.command][0](datum, args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    sys.stdout.write(render(report, args.out))
    return EXIT_OK if report.ok else EXIT_VERIFY


def entry() -> None:
    sys.exit(main())
