"""Post-processing recognizer over analysis tag sequences.

An analysis survives when its tags respect a configurable precedence order and
its lemma agrees with the upstream tagger's dictionary form. Sequences are cut
into segments after every ``te prog`` pair, since the progressive auxiliary
いる conjugates afresh.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .lexicon import data_path
from .verbs import Analysis


class RulesError(ValueError):
    pass


@dataclass(frozen=True)
class OrderingRules:
    before: frozenset[tuple[str, str]]   # transitively closed
    terminals: frozenset[str]
    requires: tuple[tuple[str, str], ...] = ()

    @classmethod
    def build(cls, pairs: Iterable[tuple[str, str]], terminals: Iterable[str],
              requires: Iterable[tuple[str, str]] = ()) -> "OrderingRules":
        closed = set(pairs)
        while True:
            extra = {(a, d) for a, b in closed for c, d in closed if b == c} - closed
            if not extra:
                break
            closed |= extra
        loops = sorted(a for a, b in closed if a == b)
        if loops:
            raise RulesError(f"precedence relation has a cycle through {loops[0]!r}")
        return cls(frozenset(closed), frozenset(terminals), tuple(requires))

    def segments(self, tags: Sequence[str]) -> list[tuple[str, ...]]:
        anchors = {(prev, tag) for tag, prev in self.requires}
        out, cur = [], []
        for tag in tags:
            cur.append(tag)
            if len(cur) >= 2 and (cur[-2], cur[-1]) in anchors:
                out.append(tuple(cur))
                cur = []
        if cur or not out:
            out.append(tuple(cur))
        return out

    def accepts(self, tags: Sequence[str]) -> bool:
        needed = dict(self.requires)
        for i, tag in enumerate(tags):
            if tag in needed and (i == 0 or tags[i - 1] != needed[tag]):
                return False
        for seg in self.segments(tags):
            if len(set(seg)) != len(seg):
                return False
            for i, a in enumerate(seg):
                for b in seg[i + 1:]:
                    if (b, a) in self.before:
                        return False
                if a in self.terminals and i + 1 < len(seg):
                    if needed.get(seg[i + 1]) != a:
                        return False
        return True


def parse_rules(lines: Iterable[str]) -> OrderingRules:
    pairs, terminals, requires = [], [], []
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        cols = line.split("\t")
        if cols[0] == "terminal" and len(cols) == 2:
            terminals.append(cols[1])
        elif cols[0] == "requires" and len(cols) == 3:
            requires.append((cols[1], cols[2]))
        elif len(cols) == 2:
            pairs.append((cols[0], cols[1]))
        else:
            raise RulesError(f"line {lineno}: cannot read {raw.rstrip()!r}")
    return OrderingRules.build(pairs, terminals, requires)


def load_rules(path=None) -> OrderingRules:
    if path is None:
        return default_rules()
    with open(path, encoding="utf-8") as fh:
        return parse_rules(fh)


@lru_cache(maxsize=1)
def default_rules() -> OrderingRules:
    with open(data_path("ordering_rules.tsv"), encoding="utf-8") as fh:
        return parse_rules(fh)


def filter(analyses: Iterable[Analysis], mecab_lemma: Optional[str] = None,
           rules: Optional[OrderingRules] = None) -> set[Analysis]:
    rules = default_rules() if rules is None else rules
    return {a for a in analyses
            if (mecab_lemma is None or a.lemma == mecab_lemma) and rules.accepts(a.tags)}
