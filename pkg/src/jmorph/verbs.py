"""Verb and adjective generator FST, analyzed by inversion.

The generator relates ``lemma[cls][tag]...`` to surface forms. It is the
composition of a morphotactic machine, which spells each suffix onto the
right stem base and leaves boundary markers between morphemes, with a
phonology cascade that applies the t-euphony rules, optional contractions,
and finally erases the markers.

Marker tags on the intermediate tape:

* ``[+]`` ordinary morpheme boundary,
* ``[^]`` godan continuative before a t-initial suffix (euphony site),
* ``[!]`` the same site for lexically exceptional lemmas (行く).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from . import fst
from .fst import Transducer
from .lexicon import (
    GODAN_ROWS, AttrTag, ConjGroup, GroupKind, Lexeme, Lexicon, parse_tag,
)
from .symbols import EPS, decode, encode, tokenize, Tag

MAX_SUFFIXES = 6

BOUNDARY = "[+]"
EUPHONY = "[^]"
EUPHONY_EXCEPTION = "[!]"


class NotConjugable(ValueError):
    pass


class UnknownLemma(KeyError):
    pass


class EmptyLexicon(ValueError):
    pass


class StemBase(enum.Enum):
    IRREALIS = "irrealis"
    CONTINUATIVE = "continuative"
    TERMINAL = "terminal"
    ATTRIBUTIVE = "attributive"
    HYPOTHETICAL = "hypothetical"
    IMPERATIVE = "imperative"


_GODAN_COLUMN = {
    StemBase.IRREALIS: 0,
    StemBase.CONTINUATIVE: 1,
    StemBase.TERMINAL: 2,
    StemBase.ATTRIBUTIVE: 2,
    StemBase.HYPOTHETICAL: 3,
    StemBase.IMPERATIVE: 3,
}

# base endings that replace する / ずる / くる
_IRREGULAR_BASES = {
    "する": ("し", "し", "する", "する", "すれ", "しろ"),
    "ずる": ("じ", "じ", "ずる", "ずる", "ずれ", "じろ"),
    "くる": ("こ", "き", "くる", "くる", "くれ", "こい"),
}
_IADJ_BASES = ("かろ", "く", "い", "い", "けれ", "かれ")
_BASE_ORDER = list(StemBase)


def stem(lex: Lexeme, base: StemBase) -> str:
    """The written stem of ``lex`` in the given base."""
    kind, lemma = lex.group.kind, lex.lemma
    if kind is GroupKind.GODAN:
        return lemma[:-1] + GODAN_ROWS[lex.group.row][1][_GODAN_COLUMN[base]]
    if kind is GroupKind.ICHIDAN:
        # the る is the terminal/attributive ending, as with the other groups
        return lemma if base in (StemBase.TERMINAL, StemBase.ATTRIBUTIVE) else lemma[:-1]
    if kind is GroupKind.SA_IRREGULAR:
        return lemma[:-2] + _IRREGULAR_BASES[lemma[-2:]][_BASE_ORDER.index(base)]
    if kind is GroupKind.KA_IRREGULAR:
        ending = _IRREGULAR_BASES["くる"][_BASE_ORDER.index(base)]
        if lemma.endswith("来る"):
            return lemma[:-2] + "来" + ending[1:]
        return lemma[:-2] + ending
    if kind is GroupKind.I_ADJECTIVE:
        return lemma[:-1] + _IADJ_BASES[_BASE_ORDER.index(base)]
    raise NotConjugable(f"{lemma} ({lex.group}) takes the copula instead of stem bases")


# -- paradigms -------------------------------------------------------------
#
# A paradigm lists, for a continuation class whose stem is already spelled
# out, the arcs (tag, intermediate spelling, next class). ``None`` as tag ends
# the word; ``None`` as next class means no further suffix may follow.

T = AttrTag
ICH, IADJ, TE, MASU, MASEN, DESU = "ichidan", "iadj", "te", "masu", "masen", "desu"
B = BOUNDARY

_NEG_TAILS = ("ぬ", "ん", "ず", "ずな", "なきゃ", "ざる")


def _verb_paradigm(irr, cont, term, hyp, imp, vol, pasv, caus, pot, t_site=B, neg_irr=None):
    """Arcs shared by every verb class, given its base spellings.

    ``neg_irr`` overrides the irrealis used by the colloquial negations
    (せ for する).
    """
    neg_irr = irr if neg_irr is None else neg_irr
    arcs = [
        (None, term, None),
        (T.NEG, irr + B + "な", IADJ),
        (T.NEG, term + B + "な", None),
        (T.PFV, cont + t_site + "た", None),
        (T.TE, cont + t_site + "て", TE),
        (T.COND, hyp + B + "ば", None),
        (T.COND, cont + t_site + "たら", None),
        (T.POL, cont + B + "ま", MASU),
        (T.POL, cont + B + "で", DESU),
    ]
    arcs += [(T.NEG, neg_irr + B + tail, None) for tail in _NEG_TAILS]
    arcs += [(T.VOL, v, None) for v in vol]
    arcs += [(T.IMP, i, None) for i in imp]
    arcs += [(T.PASV, p, ICH) for p in pasv]
    arcs += [(T.CAUS, c, ICH) for c in caus]
    arcs += [(T.POT, p, ICH) for p in pot]
    return arcs


def _godan(row, site):
    a, i, u, e, o = GODAN_ROWS[row][1]
    return _verb_paradigm(
        irr=a, cont=i, term=u, hyp=e, imp=[e], vol=[o + B + "う"],
        pasv=[a + B + "れ"], caus=[a + B + "せ"], pot=[e], t_site=site,
    )


def _ka(strip):
    def w(s):
        return s[1:] if strip else s
    return _verb_paradigm(
        irr=w("こ"), cont=w("き"), term=w("くる"), hyp=w("くれ"), imp=[w("こい")],
        vol=[w("こ") + B + "よう"], pasv=[w("こ") + B + "られ"], caus=[w("こ") + B + "させ"],
        pot=[w("こ") + B + "られ", w("こ") + B + "れ"],
    )


PARADIGMS: dict[str, list] = {
    ICH: _verb_paradigm(
        irr="", cont="", term="る", hyp="れ", imp=["ろ", "よ"], vol=[B + "よう"],
        pasv=[B + "られ"], caus=[B + "させ"], pot=[B + "られ"],
    ),
    "sa-suru": _verb_paradigm(
        irr="し", cont="し", term="する", hyp="すれ", imp=["しろ", "せよ"], vol=["し" + B + "よう"],
        pasv=["さ" + B + "れ"], caus=["さ" + B + "せ"], pot=["でき"], neg_irr="せ",
    ),
    "sa-zuru": _verb_paradigm(
        irr="じ", cont="じ", term="ずる", hyp="ずれ", imp=["じろ", "ぜよ"], vol=["じ" + B + "よう"],
        pasv=["じ" + B + "られ", "ぜ" + B + "られ"], caus=["じ" + B + "させ"], pot=["じ" + B + "られ"],
        neg_irr="ぜ",
    ),
    "ka-kana": _ka(strip=False),
    "ka-kanji": _ka(strip=True),
    IADJ: [
        (None, "い", None),
        (T.NEG, "く" + B + "な", IADJ),
        (T.PFV, "かっ" + B + "た", None),
        (T.TE, "く" + B + "て", None),
        (T.COND, "けれ" + B + "ば", None),
        (T.COND, "かっ" + B + "たら", None),
        (T.VOL, "かろ" + B + "う", None),
        (T.ADV, "く", None),
        (T.POL, "い" + B + "で", DESU),
    ],
    "na": [
        (None, "", None),
        (None, B + "だ", None),
        (T.ADV, B + "な", None),
        (T.ADV, B + "に", None),
        (T.PFV, B + "だっ" + B + "た", None),
        (T.POL, B + "で", DESU),
        (T.NEG, B + "では" + B + "な", IADJ),
        (T.NEG, B + "じゃ" + B + "な", IADJ),
        (T.TE, B + "で", None),
        (T.COND, B + "なら", None),
        (T.COND, B + "だっ" + B + "たら", None),
        (T.VOL, B + "だろ" + B + "う", None),
    ],
    TE: [
        (None, "", None),
        (T.PROG, B + "い", ICH),
    ],
    MASU: [
        (None, "す", None),
        (T.PFV, "し" + B + "た", None),
        (T.NEG, "せん", MASEN),
        (T.VOL, "しょ" + B + "う", None),
        (T.TE, "し" + B + "て", None),
        (T.COND, "し" + B + "たら", None),
        (T.COND, "すれ" + B + "ば", None),
    ],
    MASEN: [
        (None, "", None),
        (T.PFV, B + "でし" + B + "た", None),
    ],
    DESU: [
        (None, "す", None),
        (T.PFV, "し" + B + "た", None),
        (T.VOL, "しょ" + B + "う", None),
    ],
}
for _row in GODAN_ROWS:
    PARADIGMS[f"godan-{_row}"] = _godan(_row, EUPHONY)
PARADIGMS["godan-く!"] = _godan("く", EUPHONY_EXCEPTION)


def entry_class(lex: Lexeme) -> tuple[str, str]:
    """``(written stem prefix, continuation class)`` for a lexeme's dictionary form."""
    kind, lemma = lex.group.kind, lex.lemma
    if kind is GroupKind.GODAN:
        cls = f"godan-{lex.group.row}" + ("!" if "iku" in lex.flags else "")
        return lemma[:-1], cls
    if kind is GroupKind.ICHIDAN:
        return lemma[:-1], ICH
    if kind is GroupKind.SA_IRREGULAR:
        return lemma[:-2], "sa-suru" if lemma.endswith("する") else "sa-zuru"
    if kind is GroupKind.KA_IRREGULAR:
        if lemma.endswith("来る"):
            return lemma[:-1], "ka-kanji"
        return lemma[:-2], "ka-kana"
    if kind is GroupKind.I_ADJECTIVE:
        return lemma[:-1], IADJ
    return lemma, "na"


# -- machine construction -------------------------------------------------

class _Builder:
    def __init__(self):
        self.n = 0
        self.arcs: list[tuple[int, int, int, int]] = []

    def state(self):
        self.n += 1
        return self.n - 1

    def path(self, q, t, inp, out):
        k = max(len(inp), len(out), 1)
        inp = tuple(inp) + (EPS,) * (k - len(inp))
        out = tuple(out) + (EPS,) * (k - len(out))
        cur = q
        for i in range(k):
            nxt = t if i == k - 1 else self.state()
            self.arcs.append((cur, nxt, inp[i], out[i]))
            cur = nxt


def _codes(text):
    return encode(text) if text else ()


def morphotactics(lex: Lexicon, max_suffixes: int = MAX_SUFFIXES) -> Transducer:
    """``lemma[cls][tag]*`` to marked-up pre-phonology spellings.

    Suffix order is only constrained by continuation classes, so the machine
    over-generates; chains are cut after ``max_suffixes`` tags.
    """
    if not len(lex):
        raise EmptyLexicon("cannot build a generator from an empty lexicon")
    b = _Builder()
    start, final = b.state(), b.state()
    class_states: dict[tuple[str, int], int] = {}
    todo: list[tuple[str, int]] = []

    def class_state(cls, depth):
        key = (cls, depth)
        if key not in class_states:
            class_states[key] = b.state()
            todo.append(key)
        return class_states[key]

    for e in lex:
        prefix, cls = entry_class(e)
        inp = encode(e.lemma) + encode(f"[{e.group.word_class}]")
        b.path(start, class_state(cls, 0), inp, _codes(prefix))

    while todo:
        cls, depth = todo.pop()
        q = class_states[(cls, depth)]
        for tag, spelling, nxt in PARADIGMS[cls]:
            out = _codes(spelling)
            if tag is None:
                b.path(q, final, (), out)
                continue
            if depth == max_suffixes:
                continue
            target = final if nxt is None else class_state(nxt, depth + 1)
            b.path(q, target, encode(f"[{tag}]"), out)
    sigma = {c for arc in b.arcs for c in arc[2:] if c > 1 or c < 0}
    return fst._build(b.n, start, [final], b.arcs, sigma)


_ONBIN = {
    # continuative kana -> replacement for て; た follows the same voicing
    "い": "って", "ち": "って", "り": "って",
    "び": "んで", "み": "んで", "に": "んで",
    "き": "いて", "ぎ": "いで",
}
_VOICE_TA = str.maketrans({"て": "た", "で": "だ"})


def euphony_rules() -> list[tuple[str, str]]:
    rules = []
    for kana, te in _ONBIN.items():
        rules.append((kana + EUPHONY + "て", te))
        rules.append((kana + EUPHONY + "た", te.translate(_VOICE_TA)))
    rules.append(("き" + EUPHONY_EXCEPTION + "て", "って"))
    rules.append(("き" + EUPHONY_EXCEPTION + "た", "った"))
    return rules


CONTRACTIONS = [
    ("て" + BOUNDARY + "い", "て"),
    ("で" + BOUNDARY + "い", "で"),
    ("て" + BOUNDARY + "しま", "ちゃ"),
    ("で" + BOUNDARY + "しま", "じゃ"),
]


def phonology() -> Transducer:
    """Euphony, then optional contractions, then marker erasure."""
    return fst.compose_all([
        fst.rewrite_rules(euphony_rules()),
        fst.rewrite_rules(CONTRACTIONS, optional=True),
        fst.rewrite_rules([(m, "") for m in (BOUNDARY, EUPHONY, EUPHONY_EXCEPTION)]),
    ])


def build_generator(lex: Lexicon) -> Transducer:
    return fst.compose(morphotactics(lex), _phonology_cached())


@lru_cache(maxsize=1)
def _phonology_cached():
    return phonology()


# -- analyses -------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Analysis:
    lemma: str
    cls: str
    tags: tuple[str, ...] = ()

    def __str__(self):
        return f"{self.lemma} {self.cls} {' '.join(self.tags)}".rstrip()

    @classmethod
    def parse_lexical(cls, text: str) -> "Analysis":
        """Read ``lemma[cls][tag]...`` as written on the generator's input side."""
        syms = tokenize(text)
        k = next(i for i, s in enumerate(syms) if isinstance(s, Tag))
        lemma = "".join(str(s) for s in syms[:k])
        return cls(lemma, syms[k].name, tuple(s.name for s in syms[k + 1:]))


VerbAnalysis = Analysis


class Grammar:
    """Compiled generator for one lexicon."""

    def __init__(self, lex: Lexicon):
        self.lexicon = lex
        self.generator = build_generator(lex)

    def generate(self, lemma: str, tags: Sequence = ()) -> list[str]:
        entries = self.lexicon.lookup(lemma)
        if not entries:
            raise UnknownLemma(lemma)
        tag_text = "".join(f"[{parse_tag(str(t))}]" for t in tags)
        out: set[str] = set()
        for cls in sorted({e.group.word_class.value for e in entries}):
            out.update(fst.apply_down(self.generator, f"{lemma}[{cls}]{tag_text}"))
        return sorted(out)

    def analyze(self, surface: str) -> list[Analysis]:
        try:
            codes = encode(surface)
        except ValueError:
            return []
        if not codes:
            return []
        found = fst.apply_codes(self.generator.inverse, codes)
        return sorted({Analysis.parse_lexical(decode(c)) for c in found})


@lru_cache(maxsize=8)
def compile_grammar(lex: Lexicon) -> Grammar:
    return Grammar(lex)


def generate(lex: Lexicon, lemma: str, tags: Sequence = ()) -> list[str]:
    return compile_grammar(lex).generate(lemma, tags)


def analyze(lex: Lexicon, surface: str) -> list[Analysis]:
    return compile_grammar(lex).analyze(surface)
