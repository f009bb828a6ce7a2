"""Tagset, conjugation groups, the lexicon TSV format and the pronoun table."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional


class AttrTag(str, enum.Enum):
    # verbs and adjectives
    POL = "pol"
    PFV = "pfv"
    NEG = "neg"
    PASV = "pasv"
    TE = "te"
    PROG = "prog"
    COND = "cond"
    VOL = "vol"
    IMP = "imp"
    CAUS = "caus"
    POT = "pot"
    # class markers
    V = "v"
    ADJ = "adj"
    ADV = "adv"
    # nouns
    POLITE = "polite"
    FORMAL = "formal"
    INFORMAL = "informal"
    ANIMATE = "animate"
    COLLECTIVE = "collective"
    POSSESSIVE = "possessive"
    # pronouns
    PER1 = "1per"
    PER2 = "2per"
    PER3 = "3per"
    SG = "sg"
    PL = "pl"
    MALE = "male"
    FEMALE = "female"
    PRN = "prn"

    def __str__(self):
        return self.value


VERB_TAGS = frozenset({
    AttrTag.POL, AttrTag.PFV, AttrTag.NEG, AttrTag.PASV, AttrTag.TE, AttrTag.PROG,
    AttrTag.COND, AttrTag.VOL, AttrTag.IMP, AttrTag.CAUS, AttrTag.POT, AttrTag.ADV,
})
NOUN_TAGS = frozenset({
    AttrTag.POLITE, AttrTag.FORMAL, AttrTag.INFORMAL, AttrTag.ANIMATE,
    AttrTag.COLLECTIVE, AttrTag.POSSESSIVE, AttrTag.PRN,
})


def parse_tag(name: str) -> AttrTag:
    try:
        return AttrTag(name)
    except ValueError:
        raise ValueError(f"unknown attribute tag: {name!r}") from None


# -- conjugation groups ---------------------------------------------------

GODAN_ROWS = {
    "う": ("u", "わいうえお"),
    "く": ("k", "かきくけこ"),
    "ぐ": ("g", "がぎぐげご"),
    "す": ("s", "さしすせそ"),
    "つ": ("t", "たちつてと"),
    "ぬ": ("n", "なにぬねの"),
    "ぶ": ("b", "ばびぶべぼ"),
    "む": ("m", "まみむめも"),
    "る": ("r", "らりるれろ"),
}
_ROW_BY_NAME = {name: kana for kana, (name, _) in GODAN_ROWS.items()}


class GroupKind(enum.Enum):
    ICHIDAN = "ichidan"
    GODAN = "godan"
    SA_IRREGULAR = "sa-irreg"
    KA_IRREGULAR = "ka-irreg"
    I_ADJECTIVE = "i-adj"
    NA_ADJECTIVE = "na-adj"


@dataclass(frozen=True, order=True)
class ConjGroup:
    kind: GroupKind = field(compare=False)
    row: Optional[str] = None   # dictionary-form final kana, godan only
    name: str = field(default="", init=False)

    def __post_init__(self):
        if (self.kind is GroupKind.GODAN) != (self.row is not None):
            raise ValueError("exactly the godan group carries a row")
        if self.row is not None and self.row not in GODAN_ROWS:
            raise ValueError(f"not a godan row: {self.row!r}")
        name = f"godan-{GODAN_ROWS[self.row][0]}" if self.row else self.kind.value
        object.__setattr__(self, "name", name)

    def __str__(self):
        return self.name

    @classmethod
    def parse(cls, name: str) -> "ConjGroup":
        if name.startswith("godan-"):
            row = _ROW_BY_NAME.get(name[len("godan-"):])
            if row is None:
                raise ValueError(f"unknown godan row in {name!r}")
            return cls(GroupKind.GODAN, row)
        try:
            return cls(GroupKind(name))
        except ValueError:
            raise ValueError(f"unknown conjugation group: {name!r}") from None

    @property
    def is_verb(self):
        return self.kind in (GroupKind.ICHIDAN, GroupKind.GODAN,
                             GroupKind.SA_IRREGULAR, GroupKind.KA_IRREGULAR)

    @property
    def word_class(self) -> AttrTag:
        return AttrTag.V if self.is_verb else AttrTag.ADJ


ICHIDAN = ConjGroup(GroupKind.ICHIDAN)
SA_IRREGULAR = ConjGroup(GroupKind.SA_IRREGULAR)
KA_IRREGULAR = ConjGroup(GroupKind.KA_IRREGULAR)
I_ADJECTIVE = ConjGroup(GroupKind.I_ADJECTIVE)
NA_ADJECTIVE = ConjGroup(GroupKind.NA_ADJECTIVE)


def Godan(row: str) -> ConjGroup:
    return ConjGroup(GroupKind.GODAN, row)


# -- lexemes --------------------------------------------------------------

FLAGS = frozenset({"iku"})   # 行く-type: geminate te/ta despite the く row


class ParseError(ValueError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


class InvariantError(ValueError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


def check_lemma(lemma: str, group: ConjGroup) -> Optional[str]:
    """Why ``lemma`` cannot belong to ``group``, or None when consistent."""
    kind = group.kind
    if not lemma:
        return "empty lemma"
    if kind is GroupKind.ICHIDAN and (not lemma.endswith("る") or len(lemma) < 2):
        return "ichidan lemma must end in る after a stem"
    if kind is GroupKind.GODAN and not lemma.endswith(group.row):
        return f"{group.name} lemma must end in {group.row}"
    if kind is GroupKind.SA_IRREGULAR and not lemma.endswith(("する", "ずる")):
        return "sa-irreg lemma must end in する or ずる"
    if kind is GroupKind.KA_IRREGULAR and not lemma.endswith(("くる", "来る")):
        return "ka-irreg lemma must end in くる or 来る"
    if kind is GroupKind.I_ADJECTIVE and (not lemma.endswith("い") or len(lemma) < 2):
        return "i-adj lemma must end in い after a stem"
    return None


@dataclass(frozen=True, order=True)
class Lexeme:
    lemma: str
    group: ConjGroup
    reading: str = ""
    flags: frozenset = frozenset()

    def __post_init__(self):
        problem = check_lemma(self.lemma, self.group)
        if problem:
            raise ValueError(problem)
        unknown = set(self.flags) - FLAGS
        if unknown:
            raise ValueError(f"unknown lexeme flags: {sorted(unknown)}")


@dataclass(frozen=True)
class Lexicon:
    entries: tuple[Lexeme, ...]

    def __post_init__(self):
        seen = set()
        for e in self.entries:
            key = (e.lemma, e.group)
            if key in seen:
                raise ValueError(f"duplicate entry {e.lemma} {e.group}")
            seen.add(key)

    @classmethod
    def of(cls, entries: Iterable[Lexeme]) -> "Lexicon":
        return cls(tuple(entries))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __contains__(self, lemma):
        return lemma in self.index

    @property
    def index(self) -> dict[str, tuple[Lexeme, ...]]:
        idx = self.__dict__.get("_index")
        if idx is None:
            tmp: dict[str, list[Lexeme]] = {}
            for e in self.entries:
                tmp.setdefault(e.lemma, []).append(e)
            idx = {k: tuple(v) for k, v in tmp.items()}
            object.__setattr__(self, "_index", idx)
        return idx

    def lookup(self, lemma: str) -> tuple[Lexeme, ...]:
        return self.index.get(lemma, ())


HEADER = ("lemma", "reading", "group")


def parse_lexicon(lines: Iterable[str]) -> Lexicon:
    entries: list[Lexeme] = []
    seen: set = set()
    header_seen = False
    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = line.split("\t")
        if not header_seen:
            if tuple(cols[:3]) != HEADER or cols[3:] not in ([], ["flags"]):
                raise ParseError(lineno, "expected header lemma<TAB>reading<TAB>group[<TAB>flags]")
            header_seen = True
            continue
        if len(cols) not in (3, 4):
            raise ParseError(lineno, f"expected 3 or 4 columns, got {len(cols)}")
        lemma, reading, group_name = cols[0], cols[1], cols[2]
        if not lemma:
            raise ParseError(lineno, "empty lemma")
        try:
            group = ConjGroup.parse(group_name)
        except ValueError as exc:
            raise ParseError(lineno, str(exc)) from None
        flags = frozenset(f for f in (cols[3].split(",") if len(cols) == 4 else []) if f)
        if flags - FLAGS:
            raise ParseError(lineno, f"unknown flags {sorted(flags - FLAGS)}")
        problem = check_lemma(lemma, group)
        if problem:
            raise InvariantError(lineno, problem)
        if (lemma, group) in seen:
            raise InvariantError(lineno, f"duplicate entry {lemma} {group}")
        seen.add((lemma, group))
        entries.append(Lexeme(lemma, group, reading, flags))
    return Lexicon(tuple(entries))


def load_lexicon(path) -> Lexicon:
    with open(path, encoding="utf-8") as fh:
        return parse_lexicon(fh)


def dump_lexicon(lex: Lexicon) -> str:
    out = ["\t".join(HEADER + ("flags",))]
    for e in lex.entries:
        out.append("\t".join([e.lemma, e.reading, e.group.name, ",".join(sorted(e.flags))]))
    return "\n".join(out) + "\n"


def seed_lexicon() -> Lexicon:
    text = resources.files("jmorph.data").joinpath("seed_lexicon.tsv").read_text(encoding="utf-8")
    return parse_lexicon(text.splitlines())


def data_path(name: str) -> Path:
    return Path(str(resources.files("jmorph.data").joinpath(name)))


# -- pronouns -------------------------------------------------------------

@dataclass(frozen=True)
class PronounEntry:
    surface: str
    person: AttrTag
    number: AttrTag
    gender: Optional[AttrTag] = None
    formality: Optional[AttrTag] = None

    @property
    def attrs(self) -> tuple[AttrTag, ...]:
        """Person, gender, number, formality; absent cells are skipped."""
        return tuple(a for a in (self.person, self.gender, self.number, self.formality) if a)


_P1, _P2, _P3 = AttrTag.PER1, AttrTag.PER2, AttrTag.PER3
_SG, _PL = AttrTag.SG, AttrTag.PL
_M, _F = AttrTag.MALE, AttrTag.FEMALE
_FORMAL, _INFORMAL = AttrTag.FORMAL, AttrTag.INFORMAL

# one row per table line: surfaces, person, number, gender, formality
PRONOUN_ROWS = (
    (("私", "わたし"), _P1, _SG, None, None),
    (("我", "吾", "余"), _P1, _SG, None, _FORMAL),
    (("こちら",), _P1, _SG, None, _INFORMAL),
    (("儂", "わし"), _P1, _SG, _M, None),
    (("己", "おのれ"), _P1, _SG, _M, _FORMAL),
    (("僕",), _P1, _SG, _M, _INFORMAL),
    (("あたし", "うち"), _P1, _SG, _F, _INFORMAL),
    (("われわれ", "我々"), _P1, _PL, None, _INFORMAL),
    (("僕ら", "僕達"), _P1, _PL, _M, _INFORMAL),
    (("あなた", "貴方"), _P2, _SG, None, None),
    (("あんた", "君"), _P2, _SG, None, _INFORMAL),
    (("きさま", "お前"), _P2, _SG, _M, _INFORMAL),
    (("君たち",), _P2, _PL, None, _INFORMAL),
    (("かれ", "やつ", "奴"), _P3, _SG, None, _INFORMAL),
    (("彼女",), _P3, _SG, _F, _INFORMAL),
    (("奴ら", "奴等", "彼ら"), _P3, _PL, None, _INFORMAL),
    (("彼女ら",), _P3, _PL, _F, _INFORMAL),
)

PRONOUNS: dict[str, PronounEntry] = {
    surface: PronounEntry(surface, person, number, gender, formality)
    for surfaces, person, number, gender, formality in PRONOUN_ROWS
    for surface in surfaces
}


def pronoun_lookup(surface: str) -> Optional[PronounEntry]:
    return PRONOUNS.get(surface)
