"""Transducer alphabet: characters, tags and epsilon, with their integer codes.

Codes used inside the kernels:

* ``EPS`` (0) is the empty symbol,
* ``OTHER`` (1) is the identity wildcard (any symbol outside a machine's alphabet),
* a character ``c`` is ``ord(c) + 2``,
* a tag is a negative integer handed out by the process-wide registry.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

EPS = 0
OTHER = 1
_CHAR_OFFSET = 2

_TAG_RE = re.compile(r"\[([A-Za-z0-9_+^!.\-]+)\]")

_tag_ids: dict[str, int] = {}
_tag_names: list[str] = []


@dataclass(frozen=True)
class Char:
    codepoint: int

    def __str__(self):
        return chr(self.codepoint)


@dataclass(frozen=True)
class Tag:
    name: str

    def __str__(self):
        return f"[{self.name}]"


class _Epsilon:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "EPSILON"

    def __str__(self):
        return ""


EPSILON = _Epsilon()

Symbol = Union[Char, Tag, _Epsilon]
SymbolLike = Union[str, Sequence[Symbol], Sequence[int]]


def tag_id(name: str) -> int:
    code = _tag_ids.get(name)
    if code is None:
        _tag_names.append(name)
        code = -len(_tag_names)
        _tag_ids[name] = code
    return code


def tag_name(code: int) -> str:
    return _tag_names[-code - 1]


def encode_symbol(sym: Symbol) -> int:
    if isinstance(sym, Char):
        return sym.codepoint + _CHAR_OFFSET
    if isinstance(sym, Tag):
        return tag_id(sym.name)
    if sym is EPSILON:
        return EPS
    raise TypeError(f"not a symbol: {sym!r}")


def decode_symbol(code: int) -> Symbol:
    if code == EPS:
        return EPSILON
    if code == OTHER:
        raise ValueError("the identity wildcard has no concrete symbol")
    if code < 0:
        return Tag(tag_name(code))
    return Char(code - _CHAR_OFFSET)


def tokenize(text: str) -> tuple[Symbol, ...]:
    """Split a string into symbols; ``[name]`` is a tag, anything else a character."""
    out: list[Symbol] = []
    pos = 0
    for m in _TAG_RE.finditer(text):
        out.extend(Char(ord(c)) for c in text[pos:m.start()])
        out.append(Tag(m.group(1)))
        pos = m.end()
    out.extend(Char(ord(c)) for c in text[pos:])
    return tuple(out)


def encode(seq: SymbolLike) -> tuple[int, ...]:
    """Integer codes for a string, a symbol sequence or an already-encoded sequence."""
    if isinstance(seq, str):
        return tuple(encode_symbol(s) for s in tokenize(seq))
    codes = []
    for s in seq:
        if isinstance(s, (int,)) and not isinstance(s, bool):
            codes.append(int(s))
        else:
            codes.append(encode_symbol(s))
    if any(c in (EPS, OTHER) for c in codes):
        raise ValueError("epsilon and the wildcard cannot appear in a materialized string")
    return tuple(codes)


def code_str(code: int) -> str:
    if code == EPS:
        return ""
    if code < 0:
        return f"[{tag_name(code)}]"
    return chr(code - _CHAR_OFFSET)


def decode(codes: Iterable[int]) -> str:
    return "".join(code_str(c) for c in codes)


def att_label(code: int) -> str:
    if code == EPS:
        return "<eps>"
    if code == OTHER:
        return "@_IDENTITY_SYMBOL_@"
    return code_str(code)
