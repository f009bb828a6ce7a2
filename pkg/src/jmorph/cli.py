"""``jmorph`` command line: analyze, generate, evaluate."""
from __future__ import annotations

import argparse
import io
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence, TextIO

from . import postfilter
from .evaluate import EmptyEvalSet, GoldFormatError, JudgedItem, evaluate, load_gold, split_by_class
from .lexicon import InvariantError, Lexicon, ParseError, load_lexicon, seed_lexicon
from .nouns import (
    DEFAULT_ROLES, EmptyHead, FormatError, UnknownRole, analyze_noun, load_role_map, parse_line,
)
from .postfilter import OrderingRules, RulesError
from .verbs import Analysis, UnknownLemma, compile_grammar

EXIT_OK, EXIT_LINE_ERRORS, EXIT_FATAL = 0, 1, 2


@dataclass
class Pipeline:
    lexicon: Lexicon = field(default_factory=seed_lexicon)
    roles: dict = field(default_factory=lambda: dict(DEFAULT_ROLES))
    rules: OrderingRules = field(default_factory=postfilter.default_rules)
    filter_enabled: bool = True

    @property
    def grammar(self):
        return compile_grammar(self.lexicon)

    def analyze_surface(self, surface: str, mecab_lemma: Optional[str] = None) -> list[Analysis]:
        found = self.grammar.analyze(surface)
        if self.filter_enabled:
            found = postfilter.filter(found, mecab_lemma, self.rules)
        return sorted(found)

    def analyze_line(self, line: str) -> list[str]:
        """Output rows for one input line; raises FormatError and friends."""
        line = line.rstrip("\r\n")
        if line.startswith("N#"):
            return [analyze_noun(parse_line(line), self.roles, self.lexicon).format()]
        if line[:2] not in ("V#", "A#"):
            raise FormatError(0, "line must start with N#, V# or A#")
        if not line.endswith("$"):
            raise FormatError(len(line), "missing '$' terminator")
        body = line[2:-1]
        surface, bar, lemma = body.partition("|")
        if not surface or any(c.isspace() for c in surface):
            raise FormatError(2, "expected a single surface token")
        if bar and not lemma:
            raise FormatError(3 + len(surface), "empty lemma after '|'")
        rows = [format_analysis(surface, a)
                for a in self.analyze_surface(surface, lemma or None)]
        return rows or [f"{surface}\t?\t?\t?"]


def format_analysis(surface: str, a: Analysis) -> str:
    return f"{surface}\t{a.lemma}\t{a.cls}\t{' '.join(a.tags) if a.tags else '-'}"


def cmd_analyze(pipe: Pipeline, stdin: TextIO, stdout: TextIO, stderr: TextIO) -> int:
    status = EXIT_OK
    for lineno, line in enumerate(stdin, 1):
        if not line.strip():
            continue
        try:
            rows = pipe.analyze_line(line)
        except (FormatError, UnknownRole, EmptyHead, ValueError) as exc:
            print(f"line {lineno}: {exc}", file=stderr)
            status = EXIT_LINE_ERRORS
            continue
        for row in rows:
            print(row, file=stdout)
    return status


def cmd_generate(pipe: Pipeline, lemma: str, tags: Sequence[str], stdout: TextIO, stderr: TextIO) -> int:
    try:
        surfaces = pipe.grammar.generate(lemma, tags)
    except UnknownLemma:
        print(f"unknown lemma: {lemma}", file=stderr)
        return EXIT_FATAL
    except ValueError as exc:
        print(str(exc), file=stderr)
        return EXIT_FATAL
    for s in surfaces:
        print(s, file=stdout)
    return EXIT_OK


def judge(pipe: Pipeline, entries) -> list[JudgedItem]:
    return [JudgedItem(e.surface, frozenset(pipe.analyze_surface(e.surface, e.mecab_lemma)), e.gold,
                       e.mecab_lemma)
            for e in entries]


def cmd_evaluate(pipe: Pipeline, gold_path: str, mode: str, as_json: bool,
                 stdout: TextIO, stderr: TextIO) -> int:
    try:
        items = judge(pipe, load_gold(gold_path))
        report = evaluate(items, mode)
    except (EmptyEvalSet, GoldFormatError, OSError) as exc:
        print(f"evaluate: {exc}", file=stderr)
        return EXIT_FATAL
    print(report.json_lines() if as_json else report.table(), file=stdout)
    if not as_json:
        for cls, group in split_by_class(items).items():
            if group:
                sub = evaluate(group, mode)
                print(f"class={cls} items={sub.n_items} precision={sub.precision:.3f} "
                      f"recall={sub.recall:.3f}", file=stdout)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lexicon", help="lexicon TSV (default: bundled seed lexicon)")
    common.add_argument("--pos-map", help="pos_id<TAB>role TSV for noun lines")
    common.add_argument("--rules", help="ordering rules for the post-filter")
    common.add_argument("--no-filter", action="store_true", help="print raw analyses")
    common.add_argument("--eval-mode", choices=("token", "type"), default="token")

    parser = argparse.ArgumentParser(prog="jmorph", description="Japanese morphological analyzer")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common], help="analyze N#/V#/A# lines from stdin")
    gen = sub.add_parser("generate", parents=[common], help="surface forms for a lemma and tags")
    gen.add_argument("lemma")
    gen.add_argument("tags", nargs="*")
    ev = sub.add_parser("evaluate", parents=[common], help="score against a gold TSV")
    ev.add_argument("gold")
    ev.add_argument("--json", action="store_true", help="emit JSON lines")
    return parser


def make_pipeline(args) -> Pipeline:
    pipe = Pipeline(filter_enabled=not args.no_filter)
    if args.lexicon:
        pipe.lexicon = load_lexicon(args.lexicon)
    if args.pos_map:
        pipe.roles = load_role_map(args.pos_map)
    if args.rules:
        pipe.rules = postfilter.load_rules(args.rules)
    return pipe


def _utf8(stream):
    if isinstance(stream, io.TextIOWrapper) and stream.encoding.lower() != "utf-8":
        stream.reconfigure(encoding="utf-8")
    return stream


def main(argv: Optional[Sequence[str]] = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or _utf8(sys.stdin)
    stdout = stdout or _utf8(sys.stdout)
    stderr = stderr or _utf8(sys.stderr)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_FATAL if exc.code else EXIT_OK
    try:
        pipe = make_pipeline(args)
    except (OSError, ParseError, InvariantError, RulesError, ValueError) as exc:
        print(f"config: {exc}", file=stderr)
        return EXIT_FATAL
    if args.command == "analyze":
        return cmd_analyze(pipe, stdin, stdout, stderr)
    if args.command == "generate":
        return cmd_generate(pipe, args.lemma, args.tags, stdout, stderr)
    return cmd_evaluate(pipe, args.gold, args.eval_mode, args.json, stdout, stderr)


if __name__ == "__main__":
    sys.exit(main())
