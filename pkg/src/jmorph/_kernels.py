"""Hot loops of the transducer engine.

Every kernel is written in the numba-compatible subset so the same body runs
jitted or interpreted (see ``_accel``). Arc tables are CSR: ``off[q]:off[q+1]``
indexes the arcs leaving ``q``, sorted by input label.
"""
import numpy as np

from ._accel import jit

EPS = 0


@jit
def lower_bound(labels, lo, hi, x):
    while lo < hi:
        mid = (lo + hi) >> 1
        if labels[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo


@jit
def csr_offsets(n, src):
    off = np.zeros(n + 1, np.int64)
    for i in range(src.shape[0]):
        off[src[i] + 1] += 1
    for q in range(n):
        off[q + 1] += off[q]
    return off


@jit
def _bfs(n, seeds, off, nxt):
    seen = np.zeros(n, np.bool_)
    stack = np.empty(n, np.int64)
    top = 0
    for q in seeds:
        if not seen[q]:
            seen[q] = True
            stack[top] = q
            top += 1
    while top > 0:
        top -= 1
        q = stack[top]
        for i in range(off[q], off[q + 1]):
            t = nxt[i]
            if not seen[t]:
                seen[t] = True
                stack[top] = t
                top += 1
    return seen


@jit
def trim_mask(n, start, finals, src, dst):
    """States both accessible from ``start`` and co-accessible to a final."""
    order = np.argsort(src, kind="mergesort")
    fwd = _bfs(n, np.array([start], np.int64), csr_offsets(n, src), dst[order])
    order = np.argsort(dst, kind="mergesort")
    bwd = _bfs(n, finals, csr_offsets(n, dst), src[order])
    return fwd & bwd


def trim_mask_numpy(n, start, finals, src, dst):
    """Vectorized fixed-point version of :func:`trim_mask`."""
    fwd = np.zeros(n, bool)
    fwd[start] = True
    while True:
        grown = fwd.copy()
        grown[dst[fwd[src]]] = True
        if np.array_equal(grown, fwd):
            break
        fwd = grown
    bwd = np.zeros(n, bool)
    bwd[finals] = True
    while True:
        grown = bwd.copy()
        grown[src[bwd[dst]]] = True
        if np.array_equal(grown, bwd):
            break
        bwd = grown
    return fwd & bwd


@jit
def _grow(arr):
    out = np.empty(arr.shape[0] * 2, arr.dtype)
    out[: arr.shape[0]] = arr
    return out


@jit
def compose_product(a_start, a_final, a_off, a_in, a_out, a_dst,
                    nb, b_start, b_final, b_off, b_in, b_out, b_dst):
    """Pairwise product of two transducers with a two-state epsilon filter.

    Filter state 0 admits both kinds of one-sided epsilon move; once ``b`` has
    moved alone (state 1) ``a`` may not move alone until the next match. This
    keeps exactly one path per interleaving of one-sided moves.
    """
    ids = dict()
    key0 = (a_start * nb + b_start) * 2
    ids[key0] = 0
    queue = [key0]
    head = 0
    cap = 1024
    src = np.empty(cap, np.int64)
    dst = np.empty(cap, np.int64)
    ilab = np.empty(cap, np.int64)
    olab = np.empty(cap, np.int64)
    n_arcs = 0
    finals = [np.int64(0)]
    finals.pop()
    while head < len(queue):
        key = queue[head]
        me = head
        head += 1
        f = key % 2
        pair = key // 2
        qa = pair // nb
        qb = pair % nb
        if a_final[qa] and b_final[qb]:
            finals.append(me)
        # candidate moves: (target key, in, out)
        for i in range(a_off[qa], a_off[qa + 1]):
            y = a_out[i]
            if y == EPS:
                if f == 0:
                    tkey = (a_dst[i] * nb + qb) * 2
                    if tkey not in ids:
                        ids[tkey] = len(queue)
                        queue.append(tkey)
                    if n_arcs == src.shape[0]:
                        src = _grow(src)
                        dst = _grow(dst)
                        ilab = _grow(ilab)
                        olab = _grow(olab)
                    src[n_arcs] = me
                    dst[n_arcs] = ids[tkey]
                    ilab[n_arcs] = a_in[i]
                    olab[n_arcs] = EPS
                    n_arcs += 1
                continue
            lo = b_off[qb]
            hi = b_off[qb + 1]
            j = lower_bound(b_in, lo, hi, y)
            while j < hi and b_in[j] == y:
                tkey = (a_dst[i] * nb + b_dst[j]) * 2
                if tkey not in ids:
                    ids[tkey] = len(queue)
                    queue.append(tkey)
                if n_arcs == src.shape[0]:
                    src = _grow(src)
                    dst = _grow(dst)
                    ilab = _grow(ilab)
                    olab = _grow(olab)
                src[n_arcs] = me
                dst[n_arcs] = ids[tkey]
                ilab[n_arcs] = a_in[i]
                olab[n_arcs] = b_out[j]
                n_arcs += 1
                j += 1
        lo = b_off[qb]
        hi = b_off[qb + 1]
        j = lower_bound(b_in, lo, hi, EPS)
        while j < hi and b_in[j] == EPS:
            tkey = (qa * nb + b_dst[j]) * 2 + 1
            if tkey not in ids:
                ids[tkey] = len(queue)
                queue.append(tkey)
            if n_arcs == src.shape[0]:
                src = _grow(src)
                dst = _grow(dst)
                ilab = _grow(ilab)
                olab = _grow(olab)
            src[n_arcs] = me
            dst[n_arcs] = ids[tkey]
            ilab[n_arcs] = EPS
            olab[n_arcs] = b_out[j]
            n_arcs += 1
            j += 1
    fin = np.empty(len(finals), np.int64)
    for k in range(len(finals)):
        fin[k] = finals[k]
    return len(queue), fin, src[:n_arcs].copy(), dst[:n_arcs].copy(), ilab[:n_arcs].copy(), olab[:n_arcs].copy()


@jit
def apply_lattice(n, start, final, off, ilab, olab, dst, inp, max_eps):
    """Forward lattice of ``(position, state)`` nodes reachable on ``inp``.

    Node ids are ``pos * n + state``. Returns ``(status, lsrc, ldst, lout, lpos,
    accept)`` where ``lpos`` is the consumed input position of each lattice arc
    (``-1`` for epsilon-input arcs) and ``accept`` the final nodes on the last
    layer. ``status`` is 1 when some path strings together more than ``max_eps``
    epsilon-input arcs.
    """
    length = inp.shape[0]
    layers = length + 1
    depth = np.full(layers * n, -1, np.int64)
    cap = 256
    lsrc = np.empty(cap, np.int64)
    ldst = np.empty(cap, np.int64)
    lout = np.empty(cap, np.int64)
    lpos = np.empty(cap, np.int64)
    m = 0
    depth[start] = 0
    entry = [np.int64(start)]
    for p in range(layers):
        base = p * n
        # epsilon closure with longest-chain relaxation
        stack_q = [np.int64(0)]
        stack_d = [np.int64(0)]
        stack_q.pop()
        stack_d.pop()
        layer = [np.int64(0)]
        layer.pop()
        for q in entry:
            stack_q.append(q)
            stack_d.append(0)
            layer.append(q)
        while len(stack_q) > 0:
            q = stack_q.pop()
            d = stack_d.pop()
            if d < depth[base + q]:
                continue
            lo = off[q]
            hi = off[q + 1]
            j = lower_bound(ilab, lo, hi, EPS)
            while j < hi and ilab[j] == EPS:
                t = dst[j]
                nd = d + 1
                if nd > max_eps:
                    return 1, lsrc[:0], ldst[:0], lout[:0], lpos[:0], lsrc[:0]
                if nd > depth[base + t]:
                    if depth[base + t] < 0:
                        layer.append(t)
                    depth[base + t] = nd
                    stack_q.append(t)
                    stack_d.append(nd)
                j += 1
        nxt = [np.int64(0)]
        nxt.pop()
        for q in layer:
            lo = off[q]
            hi = off[q + 1]
            j = lower_bound(ilab, lo, hi, EPS)
            while j < hi and ilab[j] == EPS:
                if m == lsrc.shape[0]:
                    lsrc = _grow(lsrc)
                    ldst = _grow(ldst)
                    lout = _grow(lout)
                    lpos = _grow(lpos)
                lsrc[m] = base + q
                ldst[m] = base + dst[j]
                lout[m] = olab[j]
                lpos[m] = -1
                m += 1
                j += 1
            if p == length:
                continue
            x = inp[p]
            j = lower_bound(ilab, lo, hi, x)
            while j < hi and ilab[j] == x:
                t = dst[j]
                if depth[base + n + t] < 0:
                    depth[base + n + t] = 0
                    nxt.append(t)
                if m == lsrc.shape[0]:
                    lsrc = _grow(lsrc)
                    ldst = _grow(ldst)
                    lout = _grow(lout)
                    lpos = _grow(lpos)
                lsrc[m] = base + q
                ldst[m] = base + n + t
                lout[m] = olab[j]
                lpos[m] = p
                m += 1
                j += 1
        entry = nxt
    acc = [np.int64(0)]
    acc.pop()
    base = length * n
    for q in range(n):
        if depth[base + q] >= 0 and final[q]:
            acc.append(base + q)
    accept = np.empty(len(acc), np.int64)
    for k in range(len(acc)):
        accept[k] = acc[k]
    return 0, lsrc[:m].copy(), ldst[:m].copy(), lout[:m].copy(), lpos[:m].copy(), accept
