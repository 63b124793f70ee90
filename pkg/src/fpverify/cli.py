"""Command-line front end.

Exit codes: 0 success, 1 operation failure, 2 usage or parse error,
3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cosets import EnumerationLimitExceeded, EnumerationLimits, todd_coxeter
from .homology import abelian_invariants, subgroup_presentation
from .lowindex import SearchBudgetExhausted, SubgroupSearchOptions, low_index_subgroups
from .pipeline import Manifest, ManifestError, bundled_manifest_path, report_json, run_manifest
from .presentation import (ParseError, Presentation, WordTable, WordTableError,
                           parse_presentation, parse_word, read_word_file)
from .quotients import UnknownGroupError, identify, normalizer_index, quotient_on_fixed
from .words import Word

OK, FAILURE, USAGE, VERIFY_FAILED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None


def _parse_file(path: str, parse):
    try:
        return parse(_read(path))
    except ParseError as exc:
        raise UsageError(f"{path}:{exc}") from None


def _load_presentation(path: str) -> Presentation:
    return _parse_file(path, parse_presentation)


def _subgroup_words(p: Presentation, source: str, defs: list[str]) -> list[Word]:
    """Words from a word file, or an inline comma-separated list."""
    table = WordTable(p)
    for d in defs:
        _parse_file(d, lambda text: read_word_file(text, table))
    if Path(source).is_file():
        return _parse_file(source, lambda text: read_word_file(text, table))
    try:
        return [parse_word(w, p, table) for w in source.split(",") if w.strip()]
    except (ParseError, WordTableError) as exc:
        raise UsageError(f"--subgroup: {exc}") from None


def cmd_parse(args) -> int:
    print(_load_presentation(args.file).format())
    return OK


def cmd_abelianize(args) -> int:
    p = _load_presentation(args.file)
    if args.subgroup:
        t = todd_coxeter(p, _subgroup_words(p, args.subgroup, args.defs), EnumerationLimits(args.max))
        p = subgroup_presentation(p, t)
    print(abelian_invariants(p))
    return OK


def cmd_cosets(args) -> int:
    p = _load_presentation(args.file)
    words = _subgroup_words(p, args.subgroup, args.defs)
    t = todd_coxeter(p, words, EnumerationLimits(args.max, args.strategy))
    print(t.index)
    if args.export:
        Path(args.export).write_text(t.export_text(p.generator_names), encoding="utf-8")
    return OK


def cmd_low_index(args) -> int:
    p = _load_presentation(args.file)
    opts = SubgroupSearchOptions(args.max, args.exact, args.normal, args.budget)
    status = OK
    try:
        classes = low_index_subgroups(p, opts)
    except SearchBudgetExhausted as exc:
        print(f"warning: {exc}; listing partial results", file=sys.stderr)
        classes, status = exc.partial, FAILURE
    for k, t in enumerate(classes):
        gens = ", ".join(p.format_word(w) for w in t.subgroup_generators) or "1"
        print(f"{k}\tindex {t.index}\t{gens}")
    return status


def cmd_normalizer(args) -> int:
    p = _load_presentation(args.file)
    t = todd_coxeter(p, _subgroup_words(p, args.subgroup, args.defs), EnumerationLimits(args.max))
    k, m = normalizer_index(t)
    print(f"fixed cosets: {k}")
    print(f"normalizer indices: |N:H| = {k}, |G:N| = {m}")
    try:
        name = identify(quotient_on_fixed(p, t)).name
    except UnknownGroupError:
        name = f"unidentified group of order {k}"
    print(f"N/H: {name}")
    return OK


def cmd_verify(args) -> int:
    path = args.manifest or bundled_manifest_path()
    try:
        m = Manifest.load(path)
    except ManifestError as exc:
        raise UsageError(str(exc)) from None

    def show(entry):
        tail = f"  ({entry['message']})" if "message" in entry else ""
        print(f"{entry['status']:7s} {entry['id']}: computed {json.dumps(entry['computed'])}, "
              f"expected {json.dumps(entry['expected'])}{tail}", flush=True)

    report = run_manifest(m, extended=args.extended, jobs=args.jobs, progress=show)
    if args.json:
        Path(args.json).write_text(report_json(report), encoding="utf-8")
    print(f"overall: {report['overall']}")
    return OK if report["overall"] == "pass" else VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fpverify", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def with_subgroup(sp, required=True):
        sp.add_argument("--subgroup", required=required, metavar="WORDS",
                        help="word file, or comma-separated words")
        sp.add_argument("--defs", action="append", default=[], metavar="FILE",
                        help="word file whose named words --subgroup may use (repeatable)")
        sp.add_argument("--max", type=int, default=1_000_000, help="coset limit")

    sp = sub.add_parser("parse", help="echo the normalized presentation")
    sp.add_argument("file")
    sp.set_defaults(run=cmd_parse)

    sp = sub.add_parser("abelianize", help="abelian invariants of the group or a subgroup")
    sp.add_argument("file")
    with_subgroup(sp, required=False)
    sp.set_defaults(run=cmd_abelianize)

    sp = sub.add_parser("cosets", help="enumerate cosets of a subgroup")
    sp.add_argument("file")
    with_subgroup(sp)
    sp.add_argument("--strategy", choices=["hlt", "felsch"], default="hlt")
    sp.add_argument("--export", metavar="PATH", help="write the coset table")
    sp.set_defaults(run=cmd_cosets)

    sp = sub.add_parser("low-index", help="conjugacy classes of subgroups of bounded index")
    sp.add_argument("file")
    sp.add_argument("--max", type=int, required=True)
    sp.add_argument("--exact", type=int)
    sp.add_argument("--normal", action="store_true")
    sp.add_argument("--budget", type=int, help="node budget")
    sp.set_defaults(run=cmd_low_index)

    sp = sub.add_parser("normalizer", help="normalizer of a subgroup and its quotient")
    sp.add_argument("file")
    with_subgroup(sp)
    sp.set_defaults(run=cmd_normalizer)

    sp = sub.add_parser("verify", help="run a verification manifest")
    sp.add_argument("manifest", nargs="?", help="manifest path (default: the bundled one)")
    sp.add_argument("--json", metavar="PATH", help="write the JSON report")
    sp.add_argument("--extended", action="store_true", help="also run extended checks")
    sp.add_argument("--jobs", type=int, help="worker threads (default: $FPVERIFY_THREADS or 1)")
    sp.set_defaults(run=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (EnumerationLimitExceeded, ValueError, UnknownGroupError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILURE


if __name__ == "__main__":
    sys.exit(main())
