"""Rule-table analyzer for MeCab-segmented noun phrases (``N#tok/id ...$``)."""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .lexicon import AttrTag, Lexicon, PronounEntry, pronoun_lookup

T = AttrTag


class FormatError(ValueError):
    def __init__(self, column: int, msg: str):
        super().__init__(f"column {column}: {msg}")
        self.column = column


class UnknownRole(ValueError):
    def __init__(self, pos_id: int, surface: str = ""):
        super().__init__(f"no role for pos id {pos_id} ({surface})")
        self.pos_id = pos_id


class EmptyHead(ValueError):
    pass


class Role(enum.Enum):
    HONORIFIC_PREFIX = "honorific-prefix"
    NOUN_HEAD = "noun-head"
    HONORIFIC_SUFFIX = "honorific-suffix"
    COLLECTIVE_SUFFIX = "collective-suffix"
    PRONOUN = "pronoun"
    POSSESSIVE_NO = "possessive-no"
    OTHER = "other"


DEFAULT_ROLES: dict[int, Role] = {
    30: Role.HONORIFIC_PREFIX,
    38: Role.NOUN_HEAD,
    51: Role.COLLECTIVE_SUFFIX,
    55: Role.HONORIFIC_SUFFIX,
    59: Role.PRONOUN,
    63: Role.POSSESSIVE_NO,
}

HONORIFIC_PREFIXES = frozenset({"お", "ご", "御"})
SUFFIX_ATTRS = {
    "ちゃん": (T.INFORMAL, T.ANIMATE),
    "君": (T.INFORMAL, T.ANIMATE),
    "くん": (T.INFORMAL, T.ANIMATE),
    "様": (T.FORMAL, T.ANIMATE),
    "さま": (T.FORMAL, T.ANIMATE),
    "さん": (T.ANIMATE,),
}
COLLECTIVE_SUFFIXES = frozenset({"達", "等", "方", "たち", "ら", "かた"})

# formality, animacy, politeness, collectivity/number, possessive
_ORDER = (T.FORMAL, T.INFORMAL, T.ANIMATE, T.POLITE, T.COLLECTIVE, T.PL, T.POSSESSIVE)


@dataclass(frozen=True)
class SegmentedInput:
    marker: str
    tokens: tuple[tuple[str, int], ...]

    def __post_init__(self):
        if not self.tokens:
            raise ValueError("segmented input needs at least one token")
        if any(pos < 0 for _, pos in self.tokens):
            raise ValueError("pos ids are non-negative")


@dataclass(frozen=True)
class NounAnalysis:
    head: str
    attrs: tuple[AttrTag, ...]
    gloss_attrs: tuple[AttrTag, ...] = ()
    surface: str = field(default="", compare=False)

    def format(self) -> str:
        return f"{self.head}\t{' '.join(a.value for a in self.attrs)}"


_LINE_RE = re.compile(r"^([A-Z])#")


def parse_line(line: str) -> SegmentedInput:
    """Parse ``<marker>#<surface>/<pos_id> ... $``."""
    line = line.rstrip("\r\n")
    m = _LINE_RE.match(line)
    if not m:
        raise FormatError(0, "expected a class letter followed by '#'")
    if not line.endswith("$"):
        raise FormatError(len(line), "missing '$' terminator")
    body = line[2:-1]
    if not body.strip():
        raise FormatError(2, "no tokens")
    tokens = []
    col = 2
    for chunk in body.split(" "):
        if not chunk:
            raise FormatError(col, "empty token")
        surface, slash, pos = chunk.rpartition("/")
        if not slash or not surface:
            raise FormatError(col, f"token {chunk!r} is not surface/pos_id")
        if not pos.isdigit():
            raise FormatError(col + len(surface) + 1, f"pos id {pos!r} is not a non-negative integer")
        tokens.append((surface, int(pos)))
        col += len(chunk) + 1
    return SegmentedInput(m.group(1), tuple(tokens))


def load_role_map(path) -> dict[int, Role]:
    roles: dict[int, Role] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                pos, role = line.split("\t")
                roles[int(pos)] = Role(role)
            except ValueError:
                raise ValueError(f"{path}:{lineno}: expected pos_id<TAB>role") from None
    return roles


def _ordered(attrs: Iterable[AttrTag]) -> tuple[AttrTag, ...]:
    present = set(attrs)
    return tuple(a for a in _ORDER if a in present)


def analyze_noun(inp: SegmentedInput, roles: Optional[Mapping[int, Role]] = None,
                 lex: Optional[Lexicon] = None) -> NounAnalysis:
    """Single analysis of a noun line; ``lex`` is accepted for interface symmetry."""
    if inp.marker != "N":
        raise ValueError(f"noun analyzer got a {inp.marker!r} line")
    roles = DEFAULT_ROLES if roles is None else roles
    head_parts: list[str] = []
    attrs: set[AttrTag] = set()
    collective = []
    for surface, pos in inp.tokens:
        role = roles.get(pos)
        if role is None:
            raise UnknownRole(pos, surface)
        if role is Role.HONORIFIC_PREFIX:
            if surface in HONORIFIC_PREFIXES:
                attrs.add(T.POLITE)
        elif role is Role.HONORIFIC_SUFFIX:
            attrs.update(SUFFIX_ATTRS.get(surface, (T.ANIMATE,)))
        elif role is Role.COLLECTIVE_SUFFIX:
            collective.append(surface)
        elif role is Role.POSSESSIVE_NO:
            attrs.add(T.POSSESSIVE)
        else:
            head_parts.append(surface)
    if not head_parts:
        raise EmptyHead("noun line has affixes but no head")
    head = "".join(head_parts)

    pronoun: Optional[PronounEntry] = None
    if collective:
        pronoun = pronoun_lookup(head + "".join(collective))
    if pronoun is None:
        pronoun = pronoun_lookup(head)
        if pronoun is not None and collective:
            pronoun = PronounEntry(pronoun.surface, pronoun.person, T.PL,
                                   pronoun.gender, pronoun.formality)

    if pronoun is None:
        if collective:
            attrs.add(T.COLLECTIVE)
        return NounAnalysis(head, _ordered(attrs), (), head)

    base = pronoun.attrs
    extra = tuple(a for a in _ordered(attrs) if a not in base
                  and not (a in (T.FORMAL, T.INFORMAL) and pronoun.formality))
    gloss = tuple(a for a in base if a not in (T.FORMAL, T.INFORMAL))
    surface = head + "".join(collective)
    return NounAnalysis(T.PRN.value, base + extra, gloss, surface)
