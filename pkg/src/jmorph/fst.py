"""Unweighted finite-state transducers over characters and tags.

A :class:`Transducer` is an immutable arc table. The construction algebra
(:func:`literal`, :func:`cross`, :func:`union`, :func:`concat`,
:func:`closure`, :func:`compose`, :func:`invert`, :func:`rewrite_rule`)
always returns trimmed machines; :func:`apply_down` / :func:`apply_up` run
them nondeterministically and return every related string.

Machines may carry identity-wildcard arcs (``OTHER:OTHER``) that copy any
symbol outside the machine's alphabet. Alphabets are harmonized whenever two
machines are combined.
"""
from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from ._accel import USE_NUMBA
from .symbols import EPS, OTHER, SymbolLike, att_label, decode, encode

MAX_EPSILON_CHAIN = 64


class EpsilonBoundExceeded(RuntimeError):
    """A path chained more epsilon-input arcs than the configured bound."""


class Transducer:
    __slots__ = ("n_states", "start", "finals", "src", "dst", "ilab", "olab", "sigma", "__dict__")

    def __init__(self, n_states, start, finals, src, dst, ilab, olab, sigma=frozenset()):
        self.n_states = int(n_states)
        self.start = int(start)
        self.finals = frozenset(int(f) for f in finals)
        self.src = _frozen(src)
        self.dst = _frozen(dst)
        self.ilab = _frozen(ilab)
        self.olab = _frozen(olab)
        self.sigma = frozenset(sigma)
        if not 0 <= self.start < max(self.n_states, 1):
            raise ValueError("start state out of range")
        if any(not 0 <= f < self.n_states for f in self.finals):
            raise ValueError("final state out of range")
        if len(self.src) and (self.src.max() >= self.n_states or self.dst.max() >= self.n_states):
            raise ValueError("arc references a missing state")

    def __repr__(self):
        return f"Transducer(states={self.n_states}, arcs={self.n_arcs}, finals={len(self.finals)})"

    @property
    def n_arcs(self):
        return int(self.src.shape[0])

    @property
    def arcs(self):
        return list(zip(self.src.tolist(), self.dst.tolist(), self.ilab.tolist(), self.olab.tolist()))

    @cached_property
    def final_mask(self):
        mask = np.zeros(self.n_states, np.bool_)
        mask[list(self.finals)] = True
        return mask

    @cached_property
    def csr(self):
        """``(off, ilab, olab, dst)`` sorted by source state then input label."""
        order = np.lexsort((self.olab, self.ilab, self.src))
        off = np.zeros(self.n_states + 1, np.int64)
        np.add.at(off, self.src + 1, 1)
        np.cumsum(off, out=off)
        return off, self.ilab[order].copy(), self.olab[order].copy(), self.dst[order].copy()

    @cached_property
    def inverse(self):
        return invert(self)

    def apply_down(self, inp, max_epsilon_chain=MAX_EPSILON_CHAIN):
        return apply_down(self, inp, max_epsilon_chain)

    def apply_up(self, inp, max_epsilon_chain=MAX_EPSILON_CHAIN):
        return apply_up(self, inp, max_epsilon_chain)

    def to_att(self) -> str:
        """AT&T-style dump: one ``from to in out`` line per arc, then finals."""
        lines = [f"{s}\t{d}\t{att_label(i)}\t{att_label(o)}" for s, d, i, o in self.arcs]
        lines.extend(str(f) for f in sorted(self.finals))
        return "\n".join(lines) + "\n"


def _frozen(values):
    arr = np.ascontiguousarray(np.asarray(values, dtype=np.int64).reshape(-1))
    arr.setflags(write=False)
    return arr


def _alphabet(src_codes):
    return frozenset(c for c in src_codes if c not in (EPS, OTHER))


def _build(n, start, finals, arcs, sigma):
    arr = np.array(arcs, dtype=np.int64).reshape(-1, 4)
    return trim(Transducer(n, start, finals, arr[:, 0], arr[:, 1], arr[:, 2], arr[:, 3], sigma))


def _empty(sigma=frozenset()):
    return Transducer(1, 0, (), (), (), (), (), sigma)


def trim(t: Transducer) -> Transducer:
    """Drop states that are unreachable from start or cannot reach a final."""
    finals = np.array(sorted(t.finals), np.int64)
    if USE_NUMBA:
        keep = _kernels.trim_mask(t.n_states, t.start, finals, t.src, t.dst)
    else:
        keep = _kernels.trim_mask_numpy(t.n_states, t.start, finals, t.src, t.dst)
    if not keep[t.start]:
        return _empty(t.sigma)
    if keep.all():
        return t
    new_id = np.cumsum(keep) - 1
    arc_keep = keep[t.src] & keep[t.dst]
    return Transducer(
        int(keep.sum()), new_id[t.start], [new_id[f] for f in t.finals if keep[f]],
        new_id[t.src[arc_keep]], new_id[t.dst[arc_keep]], t.ilab[arc_keep], t.olab[arc_keep],
        t.sigma,
    )


def _harmonize(t: Transducer, sigma: frozenset) -> Transducer:
    """Spell out wildcard arcs for symbols that ``sigma`` adds to ``t``'s alphabet."""
    extra = np.array(sorted(sigma - t.sigma), np.int64)
    if extra.size == 0:
        return t
    wild = np.flatnonzero(t.ilab == OTHER)
    if wild.size == 0:
        return Transducer(t.n_states, t.start, t.finals, t.src, t.dst, t.ilab, t.olab, t.sigma | sigma)
    k = extra.size
    src = np.concatenate([t.src, np.repeat(t.src[wild], k)])
    dst = np.concatenate([t.dst, np.repeat(t.dst[wild], k)])
    lab = np.tile(extra, wild.size)
    return Transducer(t.n_states, t.start, t.finals, src, dst,
                      np.concatenate([t.ilab, lab]), np.concatenate([t.olab, lab]), t.sigma | sigma)


def _stitch(parts, n, start, finals, extra_arcs, sigma):
    src = [p.src + off for p, off in parts]
    dst = [p.dst + off for p, off in parts]
    ilab = [p.ilab for p, _ in parts]
    olab = [p.olab for p, _ in parts]
    if extra_arcs:
        e = np.array(extra_arcs, np.int64).reshape(-1, 4)
        src.append(e[:, 0])
        dst.append(e[:, 1])
        ilab.append(e[:, 2])
        olab.append(e[:, 3])
    return trim(Transducer(n, start, finals, np.concatenate(src), np.concatenate(dst),
                           np.concatenate(ilab), np.concatenate(olab), sigma))


# -- constructors ---------------------------------------------------------

def literal(s: SymbolLike) -> Transducer:
    codes = encode(s)
    return cross(codes, codes)


def cross(inp: SymbolLike, out: SymbolLike) -> Transducer:
    """Relation mapping exactly ``inp`` to ``out``; the shorter side is epsilon-padded."""
    a, b = encode(inp), encode(out)
    k = max(len(a), len(b))
    a = a + (EPS,) * (k - len(a))
    b = b + (EPS,) * (k - len(b))
    arcs = [(i, i + 1, a[i], b[i]) for i in range(k)]
    return _build(k + 1, 0, [k], arcs, _alphabet(a + b))


def identity() -> Transducer:
    """Sigma-star identity over any alphabet."""
    return Transducer(1, 0, [0], [0], [0], [OTHER], [OTHER])


# -- regular operations ---------------------------------------------------

def union(a: Transducer, b: Transducer) -> Transducer:
    sigma = a.sigma | b.sigma
    a, b = _harmonize(a, sigma), _harmonize(b, sigma)
    oa, ob = 1, 1 + a.n_states
    finals = [f + oa for f in a.finals] + [f + ob for f in b.finals]
    extra = [(0, a.start + oa, EPS, EPS), (0, b.start + ob, EPS, EPS)]
    return _stitch([(a, oa), (b, ob)], 1 + a.n_states + b.n_states, 0, finals, extra, sigma)


def concat(a: Transducer, b: Transducer) -> Transducer:
    sigma = a.sigma | b.sigma
    a, b = _harmonize(a, sigma), _harmonize(b, sigma)
    ob = a.n_states
    extra = [(f, b.start + ob, EPS, EPS) for f in a.finals]
    finals = [f + ob for f in b.finals]
    return _stitch([(a, 0), (b, ob)], a.n_states + b.n_states, a.start, finals, extra, a.sigma)


def closure(a: Transducer) -> Transducer:
    """Kleene star: a fresh final start state looping through ``a``."""
    extra = [(0, a.start + 1, EPS, EPS)] + [(f + 1, 0, EPS, EPS) for f in a.finals]
    return _stitch([(a, 1)], a.n_states + 1, 0, [0], extra, a.sigma)


def invert(a: Transducer) -> Transducer:
    return Transducer(a.n_states, a.start, a.finals, a.src, a.dst, a.olab, a.ilab, a.sigma)


def compose(a: Transducer, b: Transducer) -> Transducer:
    """Relation ``{(x, z) : (x, y) in a and (y, z) in b}``."""
    sigma = a.sigma | b.sigma
    a, b = _harmonize(a, sigma), _harmonize(b, sigma)
    a_off, a_in, a_out, a_dst = a.csr
    b_off, b_in, b_out, b_dst = b.csr
    n, finals, src, dst, ilab, olab = _kernels.compose_product(
        a.start, a.final_mask, a_off, a_in, a_out, a_dst,
        b.n_states, b.start, b.final_mask, b_off, b_in, b_out, b_dst,
    )
    return trim(Transducer(n, 0, finals.tolist(), src, dst, ilab, olab, sigma))


def optional(a: Transducer) -> Transducer:
    return union(a, literal(""))


def union_all(machines: Iterable[Transducer]) -> Transducer:
    machines = list(machines)
    if not machines:
        return _empty()
    sigma = frozenset().union(*(m.sigma for m in machines))
    machines = [_harmonize(m, sigma) for m in machines]
    parts, extra, finals = [], [], []
    off = 1
    for m in machines:
        parts.append((m, off))
        extra.append((0, m.start + off, EPS, EPS))
        finals.extend(f + off for f in m.finals)
        off += m.n_states
    return _stitch(parts, off, 0, finals, extra, sigma)


def compose_all(machines: Sequence[Transducer]) -> Transducer:
    out = machines[0]
    for m in machines[1:]:
        out = compose(out, m)
    return out


# -- rewrite rules --------------------------------------------------------

def _occurs_inside(short, long):
    """True when ``short`` occurs in ``long`` anywhere but as its suffix."""
    k = len(short)
    return any(long[i:i + k] == short for i in range(len(long) - k))


def rewrite_rules(pairs, optional: bool = False) -> Transducer:
    """Parallel obligatory left-to-right replacement of several fixed strings.

    ``pairs`` holds ``(pattern, replacement)``. Input is scanned left to right;
    each leftmost occurrence of any pattern is replaced and scanning resumes
    after it. A pattern may not occur inside another one except as its suffix
    (the longer one then wins). With ``optional=True`` every occurrence may
    also be kept.
    """
    rules = {}
    for pat, rep in pairs:
        pat, rep = encode(pat), encode(rep)
        if not pat:
            raise ValueError("rewrite rule needs a non-empty left-hand side")
        if rules.get(pat, rep) != rep:
            raise ValueError("one pattern with two replacements")
        rules[pat] = rep
    for p in rules:
        for q in rules:
            if p != q and _occurs_inside(p, q):
                raise ValueError("a pattern occurs inside another pattern")
    sigma = _alphabet([c for p, r in rules.items() for c in p + r])
    prefixes = sorted({p[:i] for p in rules for i in range(len(p))}, key=lambda x: (len(x), x))
    state_of = {pre: i for i, pre in enumerate(prefixes)}   # root is state 0
    sink = len(prefixes)
    arcs: list[tuple[int, int, int, int]] = []
    n_states = [sink + 1]

    def fresh():
        n_states[0] += 1
        return n_states[0] - 1

    def path(q, t, inp, out):
        k = max(len(inp), len(out), 1)
        inp = tuple(inp) + (EPS,) * (k - len(inp))
        out = tuple(out) + (EPS,) * (k - len(out))
        cur = q
        for i in range(k):
            nxt = t if i == k - 1 else fresh()
            arcs.append((cur, nxt, inp[i], out[i]))
            cur = nxt

    def settle(seen, skip_complete=False):
        """Emit what can no longer belong to a match; return (output, next state)."""
        for k in range(len(seen) if not skip_complete else len(seen) - 1, -1, -1):
            tail = seen[len(seen) - k:]
            if tail in rules and not skip_complete:
                return seen[:len(seen) - k] + rules[tail], 0
            if tail in state_of:
                return seen[:len(seen) - k], state_of[tail]
        return seen, 0

    for pre, q in state_of.items():
        for a in sorted(sigma):
            seen = pre + (a,)
            if seen in rules:
                path(q, 0, (a,), rules[seen])
                if optional:
                    out, t = settle(seen, skip_complete=True)
                    path(q, t, (a,), out)
                continue
            out, t = settle(seen)
            path(q, t, (a,), out)
        # wildcard: flush the buffer, then copy the symbol
        if pre:
            flushed = fresh()
            path(q, flushed, (), pre)
            arcs.append((flushed, 0, OTHER, OTHER))
            path(q, sink, (), pre)
        else:
            arcs.append((q, 0, OTHER, OTHER))
    return _build(n_states[0], 0, [0, sink], arcs, sigma)


def rewrite_rule(lhs: SymbolLike, rhs: SymbolLike, left_ctx: SymbolLike = "",
                 right_ctx: SymbolLike = "", optional: bool = False) -> Transducer:
    """Obligatory left-to-right replacement of ``left_ctx lhs right_ctx``.

    Every non-overlapping occurrence, scanned leftmost first, becomes
    ``left_ctx rhs right_ctx``; all other symbols are copied.
    """
    if not encode(lhs):
        raise ValueError("rewrite rule needs a non-empty left-hand side")
    left, right = encode(left_ctx), encode(right_ctx)
    return rewrite_rules([(left + encode(lhs) + right, left + encode(rhs) + right)], optional)


# -- application ----------------------------------------------------------

def apply_down(t: Transducer, inp: SymbolLike, max_epsilon_chain: int = MAX_EPSILON_CHAIN) -> list[str]:
    """Every output related to ``inp``, deduplicated and sorted."""
    return sorted({decode(o) for o in apply_codes(t, encode(inp), max_epsilon_chain)})


def apply_up(t: Transducer, inp: SymbolLike, max_epsilon_chain: int = MAX_EPSILON_CHAIN) -> list[str]:
    return apply_down(t.inverse, inp, max_epsilon_chain)


def apply_codes(t: Transducer, codes: Sequence[int], max_epsilon_chain: int = MAX_EPSILON_CHAIN):
    """Set of output code tuples for an encoded input."""
    match = np.array([c if c in t.sigma else OTHER for c in codes], np.int64)
    off, ilab, olab, dst = t.csr
    status, lsrc, ldst, lout, lpos, accept = _kernels.apply_lattice(
        t.n_states, t.start, t.final_mask, off, ilab, olab, dst, match, max_epsilon_chain)
    if status:
        raise EpsilonBoundExceeded(
            f"more than {max_epsilon_chain} consecutive epsilon-input arcs")
    if accept.size == 0:
        return set()
    # keep only arcs that lie on an accepting path
    arcs = list(zip(lsrc.tolist(), ldst.tolist(), lout.tolist(), lpos.tolist()))
    into: dict[int, list[int]] = {}
    for s, d, _, _ in arcs:
        into.setdefault(d, []).append(s)
    alive = set(accept.tolist())
    stack = list(alive)
    while stack:
        for s in into.get(stack.pop(), ()):
            if s not in alive:
                alive.add(s)
                stack.append(s)
    out_arcs: dict[int, list[tuple[int, int]]] = {}
    for s, d, o, p in arcs:
        if s in alive and d in alive:
            sym = codes[p] if o == OTHER else o
            out_arcs.setdefault(s, []).append((d, sym))
    accept_set = set(accept.tolist())
    memo: dict[int, set] = {}

    def suffixes(node):
        got = memo.get(node)
        if got is not None:
            return got
        res = {()} if node in accept_set else set()
        for d, sym in out_arcs.get(node, ()):
            tails = suffixes(d)
            if sym == EPS:
                res |= tails
            else:
                res |= {(sym,) + tail for tail in tails}
        memo[node] = res
        return res

    return suffixes(t.start) if t.start in alive else set()
