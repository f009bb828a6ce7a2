"""Precision/recall scoring of analysis sets against gold judgements."""
from __future__ import annotations

import json
from collections import OrderedDict
from dataclasses import dataclass
from typing import Iterable, Sequence

from .verbs import Analysis


class EmptyEvalSet(ValueError):
    pass


class GoldFormatError(ValueError):
    pass


@dataclass(frozen=True)
class JudgedItem:
    surface: str
    produced: frozenset
    gold: frozenset
    mecab_lemma: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "produced", frozenset(self.produced))
        object.__setattr__(self, "gold", frozenset(self.gold))

    @property
    def correct(self) -> int:
        return len(self.produced & self.gold)

    @property
    def precision(self) -> float:
        # empty produced sets count as 0, not undefined
        return self.correct / len(self.produced) if self.produced else 0.0

    @property
    def hit(self) -> bool:
        return self.correct > 0


@dataclass(frozen=True)
class EvalReport:
    n_items: int
    precision: float
    recall: float
    per_item: tuple[tuple[str, float, bool], ...]
    mode: str = "token"

    def table(self) -> str:
        width = max([len("surface")] + [len(s) for s, _, _ in self.per_item])
        lines = [f"{'surface':<{width}}  precision  hit"]
        for surface, p, hit in self.per_item:
            lines.append(f"{surface:<{width}}  {p:9.3f}  {'yes' if hit else 'no'}")
        lines.append(f"items={self.n_items} mode={self.mode} "
                     f"precision={self.precision:.3f} recall={self.recall:.3f}")
        return "\n".join(lines)

    def json_lines(self) -> str:
        rows = [json.dumps({"surface": s, "precision": p, "hit": h}, ensure_ascii=False)
                for s, p, h in self.per_item]
        rows.append(json.dumps({"summary": True, "n_items": self.n_items, "mode": self.mode,
                                "precision": self.precision, "recall": self.recall}))
        return "\n".join(rows)


def _dedupe_types(items: Sequence[JudgedItem]) -> list[JudgedItem]:
    seen: OrderedDict = OrderedDict()
    for it in items:
        seen.setdefault(it.surface, it)
    return list(seen.values())


def evaluate(items: Iterable[JudgedItem], mode: str = "token") -> EvalReport:
    """Mean per-item precision and hit-rate recall.

    ``mode="type"`` keeps only the first item for each distinct surface.
    """
    items = list(items)
    if mode not in ("token", "type"):
        raise ValueError(f"eval mode must be 'token' or 'type', not {mode!r}")
    if mode == "type":
        items = _dedupe_types(items)
    if not items:
        raise EmptyEvalSet("nothing to evaluate")
    per_item = tuple((it.surface, it.precision, it.hit) for it in items)
    n = len(items)
    return EvalReport(
        n_items=n,
        precision=sum(p for _, p, _ in per_item) / n,
        recall=sum(h for _, _, h in per_item) / n,
        per_item=per_item,
        mode=mode,
    )


def split_by_class(items: Iterable[JudgedItem]) -> dict[str, list[JudgedItem]]:
    """An item counts as ``adj`` if any gold analysis is adjectival."""
    out: dict[str, list[JudgedItem]] = {"v": [], "adj": []}
    for it in items:
        out["adj" if any(g.cls == "adj" for g in it.gold) else "v"].append(it)
    return out


@dataclass(frozen=True)
class GoldEntry:
    surface: str
    gold: frozenset
    mecab_lemma: str | None


def parse_gold(lines: Iterable[str]) -> list[GoldEntry]:
    """Rows ``surface lemma class tag1+tag2 [mecab_lemma]``; rows sharing a surface merge.

    An empty tag column or ``-`` means no tags.
    """
    gold: OrderedDict[str, set] = OrderedDict()
    lemma_of: dict[str, str | None] = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) < 3 or len(cols) > 5:
            raise GoldFormatError(f"line {lineno}: expected 3 to 5 tab-separated columns")
        surface, lemma, cls = cols[:3]
        tag_col = cols[3] if len(cols) > 3 else ""
        tags = () if tag_col in ("", "-") else tuple(tag_col.split("+"))
        gold.setdefault(surface, set()).add(Analysis(lemma, cls, tags))
        if len(cols) == 5 and cols[4]:
            lemma_of[surface] = cols[4]
        else:
            lemma_of.setdefault(surface, None)
    return [GoldEntry(s, frozenset(g), lemma_of[s]) for s, g in gold.items()]


def load_gold(path) -> list[GoldEntry]:
    with open(path, encoding="utf-8") as fh:
        return parse_gold(fh)
