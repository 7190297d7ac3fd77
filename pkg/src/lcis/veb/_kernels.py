"""Array-backed van Emde Boas forest with dictionary leaves.

Every map lives inside a ``VebPool``: a struct of flat arrays holding the
recursive nodes, the per-node cluster pointer tables, the H bit-arrays and
one shared AVL node pool used by all leaf dictionaries.  A map is identified
by the index of its root node, so one pool can host thousands of maps (the
staircase queues of the LCIS algorithm all share a single pool).

Node layout.  A node covers the local universe ``[0, 2**bits)``.  It is a
*leaf* when ``2**bits <= K*K`` (or ``bits <= 1``); its keys then live in an
AVL tree and ``min``/``max`` are cached copies.  Otherwise it is *internal*:
``hi = ceil(bits/2)`` high bits select a cluster ``U_i`` of ``2**lo`` keys,
``min`` and ``max`` are kept outside every cluster, the H bit-array marks the
non-empty clusters and the summary node ``V`` stores their indices.
Clusters and summaries are allocated on first use.

All functions take local keys.  ``-1`` means "none" for keys and node ids.
"""
import math

import numpy as np

from .._jit import DISABLE_NUMBA, njit

# node record columns; the ones touched by queries come first so a record's
# hot part shares a cache line
N_MIN, N_MAX, N_PMIN, N_PMAX, N_LO, N_REF, N_SUM, N_H, N_BITS, N_K2 = range(10)
NODE_STRIDE = 16
# AVL cell columns
T_KEY, T_LEFT, T_RIGHT, T_VAL, T_HEIGHT = range(5)
AVL_STRIDE = 8

_POOL_FIELDS = (
    "nd",
    "n_used",
    # cluster pointer tables
    "c_ptr",
    "c_used",
    # H bit-arrays, 64 bits per word
    "h_words",
    "h_used",
    "h_bits",
    # AVL pool
    "tr",
    "t_used",
    "t_free",
    "t_live",
    # instrumentation
    "descents",
    "dict_steps",
    "ops",
    "flag",
    # scratch stacks for the iterative AVL and vEB descents
    "path",
    "stk",
)

NODE_FIELDS = 10
AVL_FIELDS = 5


@njit
def _blank_nodes(cap):
    nd = np.zeros((cap, NODE_STRIDE), np.int64)
    nd[:, N_MIN] = -1
    nd[:, N_MAX] = -1
    nd[:, N_REF] = -1
    nd[:, N_SUM] = -1
    nd[:, N_H] = -1
    return nd


@njit
def _blank_avl(cap):
    tr = np.zeros((cap, AVL_STRIDE), np.int64)
    tr[:, T_LEFT] = -1
    tr[:, T_RIGHT] = -1
    return tr


if DISABLE_NUMBA:

    class VebPool:
        __slots__ = _POOL_FIELDS

        def __init__(self, *values):
            for name, v in zip(_POOL_FIELDS, values):
                setattr(self, name, v)

else:
    # a StructRef rather than a jitclass: kernels taking it can be cached on disk
    from numba import types
    from numba.experimental import structref

    @structref.register
    class VebPoolType(types.StructRef):
        def preprocess_fields(self, fields):
            return tuple((name, types.unliteral(t)) for name, t in fields)

    class VebPool(structref.StructRefProxy):
        pass

    structref.define_proxy(VebPool, VebPoolType, list(_POOL_FIELDS))

    @njit
    def _pool_scalars(p):
        return (p.n_used, p.c_used, p.h_used, p.h_bits, p.t_used, p.t_free, p.t_live,
                p.descents, p.dict_steps, p.ops, p.flag)

    def _scalar_property(i):
        return property(lambda self: int(_pool_scalars(self)[i]))

    for _i, _name in enumerate(("n_used", "c_used", "h_used", "h_bits", "t_used", "t_free", "t_live",
                                "descents", "dict_steps", "ops", "flag")):
        setattr(VebPool, _name, _scalar_property(_i))


@njit
def _make_pool(node_cap, slot_cap, word_cap, avl_cap):
    z = np.int64(0)
    return VebPool(
        _blank_nodes(max(node_cap, 4)), z,
        np.full(max(slot_cap, 4), -1, np.int64), z,
        np.zeros(max(word_cap, 4), np.int64), z, z,
        _blank_avl(max(avl_cap, 4)), z, np.int64(-1), z,
        z, z, z, z,
        np.zeros(128, np.int64), np.zeros(192, np.int64),
    )


def new_pool(node_cap=16, slot_cap=64, word_cap=16, avl_cap=64):
    return _make_pool(node_cap, slot_cap, word_cap, avl_cap)


# ---------------------------------------------------------------- growth


@njit
def _grown(a, used, cap, fill):
    out = np.full(cap, fill, np.int64)
    out[:used] = a[:used]
    return out


@njit
def _reserve_nodes(p, extra):
    need = p.n_used + extra
    cap = p.nd.shape[0]
    if need <= cap:
        return
    while cap < need:
        cap *= 2
    nd = _blank_nodes(cap)
    nd[: p.n_used] = p.nd[: p.n_used]
    p.nd = nd


@njit
def _reserve_slots(p, extra):
    need = p.c_used + extra
    cap = p.c_ptr.shape[0]
    if need <= cap:
        return
    while cap < need:
        cap *= 2
    p.c_ptr = _grown(p.c_ptr, p.c_used, cap, -1)


@njit
def _reserve_words(p, extra):
    need = p.h_used + extra
    cap = p.h_words.shape[0]
    if need <= cap:
        return
    while cap < need:
        cap *= 2
    p.h_words = _grown(p.h_words, p.h_used, cap, 0)


@njit
def _reserve_avl(p):
    cap = p.tr.shape[0]
    if p.t_used < cap:
        return
    tr = _blank_avl(2 * cap)
    tr[: p.t_used] = p.tr[: p.t_used]
    p.tr = tr


# ---------------------------------------------------------------- AVL leaves


@njit
def _t_new(p, key, val):
    if p.t_free >= 0:
        t = p.t_free
        p.t_free = p.tr[t, T_LEFT]
    else:
        _reserve_avl(p)
        t = p.t_used
        p.t_used += 1
    p.tr[t, T_KEY] = key
    p.tr[t, T_VAL] = val
    p.tr[t, T_LEFT] = -1
    p.tr[t, T_RIGHT] = -1
    p.tr[t, T_HEIGHT] = 1
    p.t_live += 1
    return t


@njit
def _t_release(p, t):
    p.tr[t, T_LEFT] = p.t_free
    p.tr[t, T_RIGHT] = -1
    p.t_free = t
    p.t_live -= 1


@njit
def _t_h(p, t):
    if t < 0:
        return 0
    return p.tr[t, T_HEIGHT]


@njit
def _t_fix(p, t):
    hl = _t_h(p, p.tr[t, T_LEFT])
    hr = _t_h(p, p.tr[t, T_RIGHT])
    p.tr[t, T_HEIGHT] = 1 + (hl if hl > hr else hr)


@njit
def _t_rot_right(p, t):
    l = p.tr[t, T_LEFT]
    p.tr[t, T_LEFT] = p.tr[l, T_RIGHT]
    p.tr[l, T_RIGHT] = t
    _t_fix(p, t)
    _t_fix(p, l)
    return l


@njit
def _t_rot_left(p, t):
    r = p.tr[t, T_RIGHT]
    p.tr[t, T_RIGHT] = p.tr[r, T_LEFT]
    p.tr[r, T_LEFT] = t
    _t_fix(p, t)
    _t_fix(p, r)
    return r


@njit
def _t_balance(p, t):
    _t_fix(p, t)
    l = p.tr[t, T_LEFT]
    r = p.tr[t, T_RIGHT]
    bf = _t_h(p, l) - _t_h(p, r)
    if bf > 1:
        if _t_h(p, p.tr[l, T_LEFT]) < _t_h(p, p.tr[l, T_RIGHT]):
            p.tr[t, T_LEFT] = _t_rot_left(p, l)
        return _t_rot_right(p, t)
    if bf < -1:
        if _t_h(p, p.tr[r, T_RIGHT]) < _t_h(p, p.tr[r, T_LEFT]):
            p.tr[t, T_RIGHT] = _t_rot_right(p, r)
        return _t_rot_left(p, t)
    return t


@njit
def _t_repath(p, d, root):
    """Rebalance the recorded descent ``path[:d]`` bottom-up; returns the new root."""
    for i in range(d - 1, -1, -1):
        t = p.path[i]
        nt = _t_balance(p, t)
        if i == 0:
            root = nt
        else:
            par = p.path[i - 1]
            if p.tr[par, T_LEFT] == t:
                p.tr[par, T_LEFT] = nt
            else:
                p.tr[par, T_RIGHT] = nt
    return root


@njit
def _t_insert(p, t, key, val):
    """Insert or overwrite; sets ``p.flag`` to 1 iff the key was new."""
    if t < 0:
        p.flag = 1
        return _t_new(p, key, val)
    root = t
    d = 0
    while True:
        p.dict_steps += 1
        p.path[d] = t
        d += 1
        k = p.tr[t, T_KEY]
        if key == k:
            p.tr[t, T_VAL] = val
            p.flag = 0
            return root
        nxt = p.tr[t, T_LEFT] if key < k else p.tr[t, T_RIGHT]
        if nxt < 0:
            nn = _t_new(p, key, val)
            if key < k:
                p.tr[t, T_LEFT] = nn
            else:
                p.tr[t, T_RIGHT] = nn
            break
        t = nxt
    p.flag = 1
    return _t_repath(p, d, root)


@njit
def _t_delete(p, t, key):
    """Remove ``key``; sets ``p.flag`` to 1 iff it was present."""
    root = t
    d = 0
    while t >= 0:
        p.dict_steps += 1
        k = p.tr[t, T_KEY]
        if key == k:
            break
        p.path[d] = t
        d += 1
        t = p.tr[t, T_LEFT] if key < k else p.tr[t, T_RIGHT]
    if t < 0:
        p.flag = 0
        return root
    l = p.tr[t, T_LEFT]
    r = p.tr[t, T_RIGHT]
    if l >= 0 and r >= 0:
        # pull the successor's record up, then unlink the successor instead
        p.path[d] = t
        d += 1
        s = r
        while p.tr[s, T_LEFT] >= 0:
            p.dict_steps += 1
            p.path[d] = s
            d += 1
            s = p.tr[s, T_LEFT]
        p.tr[t, T_KEY] = p.tr[s, T_KEY]
        p.tr[t, T_VAL] = p.tr[s, T_VAL]
        t = s
        repl = p.tr[s, T_RIGHT]
    else:
        repl = l if l >= 0 else r
    _t_release(p, t)
    p.flag = 1
    if d == 0:
        return repl
    par = p.path[d - 1]
    if p.tr[par, T_LEFT] == t:
        p.tr[par, T_LEFT] = repl
    else:
        p.tr[par, T_RIGHT] = repl
    return _t_repath(p, d, root)


@njit
def _t_find(p, t, key):
    while t >= 0:
        p.dict_steps += 1
        k = p.tr[t, T_KEY]
        if key == k:
            return t
        t = p.tr[t, T_LEFT] if key < k else p.tr[t, T_RIGHT]
    return -1


@njit
def _t_succ(p, t, key):
    best = -1
    while t >= 0:
        p.dict_steps += 1
        if p.tr[t, T_KEY] > key:
            best = t
            t = p.tr[t, T_LEFT]
        else:
            t = p.tr[t, T_RIGHT]
    return best


@njit
def _t_pred(p, t, key):
    best = -1
    while t >= 0:
        p.dict_steps += 1
        if p.tr[t, T_KEY] < key:
            best = t
            t = p.tr[t, T_RIGHT]
        else:
            t = p.tr[t, T_LEFT]
    return best


@njit
def _t_extreme(p, t, right):
    if t < 0:
        return -1
    while True:
        nxt = p.tr[t, T_RIGHT] if right else p.tr[t, T_LEFT]
        if nxt < 0:
            return t
        p.dict_steps += 1
        t = nxt


# ---------------------------------------------------------------- nodes


@njit
def threshold_k(universe, c):
    """K = max(1, floor(log2(universe) ** c))."""
    if universe <= 1:
        return 1
    k = int(math.floor(math.log2(universe) ** c + 1e-9))
    return k if k > 1 else 1


@njit
def _is_leaf(bits, k2):
    return bits <= 1 or (1 << bits) <= k2


@njit
def _new_node(p, bits, k2):
    _reserve_nodes(p, 1)
    v = p.n_used
    p.n_used += 1
    p.nd[v, N_BITS] = bits
    p.nd[v, N_K2] = k2
    p.nd[v, N_MIN] = -1
    p.nd[v, N_MAX] = -1
    p.nd[v, N_REF] = -1
    p.nd[v, N_SUM] = -1
    p.nd[v, N_H] = -1
    if _is_leaf(bits, k2):
        p.nd[v, N_LO] = -1
    else:
        lo = bits // 2
        nclu = 1 << (bits - lo)
        nwords = (nclu + 63) // 64
        _reserve_slots(p, nclu)
        _reserve_words(p, nwords)
        p.nd[v, N_LO] = lo
        p.nd[v, N_REF] = p.c_used
        p.c_used += nclu
        p.nd[v, N_H] = p.h_used
        p.h_used += nwords
        p.h_bits += nclu
    return v


@njit
def new_map(p, universe, c):
    """Allocate an empty map for keys ``1..universe``; returns its root."""
    bits = 1
    while (1 << bits) <= universe:
        bits += 1
    k = threshold_k(universe, c)
    return _new_node(p, bits, k * k)


@njit
def _h_get(p, v, i):
    return (p.h_words[p.nd[v, N_H] + (i >> 6)] >> (i & 63)) & 1


@njit
def _h_set(p, v, i):
    w = p.nd[v, N_H] + (i >> 6)
    p.h_words[w] = p.h_words[w] | (np.int64(1) << (i & 63))


@njit
def _h_clear(p, v, i):
    w = p.nd[v, N_H] + (i >> 6)
    p.h_words[w] = p.h_words[w] & ~(np.int64(1) << (i & 63))


@njit
def _cluster(p, v, i):
    return p.c_ptr[p.nd[v, N_REF] + i]


@njit
def _cluster_or_new(p, v, i):
    c = p.c_ptr[p.nd[v, N_REF] + i]
    if c < 0:
        c = _new_node(p, p.nd[v, N_LO], p.nd[v, N_K2])
        p.c_ptr[p.nd[v, N_REF] + i] = c
    return c


@njit
def _summary_or_new(p, v):
    s = p.nd[v, N_SUM]
    if s < 0:
        s = _new_node(p, p.nd[v, N_BITS] - p.nd[v, N_LO], p.nd[v, N_K2])
        p.nd[v, N_SUM] = s
    return s


@njit
def _leaf_refresh(p, v):
    root = p.nd[v, N_REF]
    if root < 0:
        p.nd[v, N_MIN] = -1
        p.nd[v, N_MAX] = -1
        return
    a = _t_extreme(p, root, False)
    b = _t_extreme(p, root, True)
    p.nd[v, N_MIN] = p.tr[a, T_KEY]
    p.nd[v, N_PMIN] = p.tr[a, T_VAL]
    p.nd[v, N_MAX] = p.tr[b, T_KEY]
    p.nd[v, N_PMAX] = p.tr[b, T_VAL]


@njit
def node_insert(p, v, x, pay):
    """Insert or overwrite local key ``x``; returns 1 iff it was new."""
    # ``forced`` >= 0 once the answer is settled and only summary upkeep remains
    forced = -1
    while True:
        p.descents += 1
        if p.nd[v, N_LO] < 0:
            root = _t_insert(p, p.nd[v, N_REF], x, pay)
            p.nd[v, N_REF] = root
            new = p.flag
            if p.nd[v, N_MIN] < 0 or x <= p.nd[v, N_MIN]:
                p.nd[v, N_MIN] = x
                p.nd[v, N_PMIN] = pay
            if p.nd[v, N_MAX] < 0 or x >= p.nd[v, N_MAX]:
                p.nd[v, N_MAX] = x
                p.nd[v, N_PMAX] = pay
            return forced if forced >= 0 else new
        mn = p.nd[v, N_MIN]
        if mn < 0:
            p.nd[v, N_MIN] = x
            p.nd[v, N_MAX] = x
            p.nd[v, N_PMIN] = pay
            p.nd[v, N_PMAX] = pay
            return 1
        mx = p.nd[v, N_MAX]
        if x == mn or x == mx:
            if x == mn:
                p.nd[v, N_PMIN] = pay
            if x == mx:
                p.nd[v, N_PMAX] = pay
            return forced if forced >= 0 else 0
        if mn == mx:
            if x < mn:
                p.nd[v, N_MIN] = x
                p.nd[v, N_PMIN] = pay
            else:
                p.nd[v, N_MAX] = x
                p.nd[v, N_PMAX] = pay
            return 1
        if x < mn:
            old = p.nd[v, N_PMIN]
            p.nd[v, N_MIN] = x
            p.nd[v, N_PMIN] = pay
            x = mn
            pay = old
        elif x > mx:
            old = p.nd[v, N_PMAX]
            p.nd[v, N_MAX] = x
            p.nd[v, N_PMAX] = pay
            x = mx
            pay = old
        lo = p.nd[v, N_LO]
        h = x >> lo
        c = _cluster_or_new(p, v, h)
        if p.nd[c, N_MIN] < 0:
            # fresh cluster: fill it directly, then record h in the summary
            s = _summary_or_new(p, v)
            _h_set(p, v, h)
            p.descents += 1
            p.nd[c, N_MIN] = x & ((1 << lo) - 1)
            p.nd[c, N_MAX] = p.nd[c, N_MIN]
            p.nd[c, N_PMIN] = pay
            p.nd[c, N_PMAX] = pay
            if p.nd[c, N_LO] < 0:
                p.nd[c, N_REF] = _t_new(p, p.nd[c, N_MIN], pay)
            forced = 1
            v, x, pay = s, h, 0
        else:
            v, x = c, x & ((1 << lo) - 1)


@njit
def _clear_single(p, c):
    """Empty a node that holds exactly one key."""
    p.descents += 1
    if p.nd[c, N_LO] < 0:
        p.nd[c, N_REF] = _t_delete(p, p.nd[c, N_REF], p.nd[c, N_MIN])
    p.nd[c, N_MIN] = -1
    p.nd[c, N_MAX] = -1


@njit
def node_delete(p, v, x):
    """Delete local key ``x``; returns 1 iff it was present."""
    forced = -1
    while True:
        p.descents += 1
        mn = p.nd[v, N_MIN]
        if mn < 0:
            return forced if forced >= 0 else 0
        if p.nd[v, N_LO] < 0:
            root = _t_delete(p, p.nd[v, N_REF], x)
            p.nd[v, N_REF] = root
            gone = p.flag
            if gone == 1 and (x == mn or x == p.nd[v, N_MAX]):
                _leaf_refresh(p, v)
            return forced if forced >= 0 else gone
        mx = p.nd[v, N_MAX]
        lo = p.nd[v, N_LO]
        s = p.nd[v, N_SUM]
        empty_clusters = s < 0 or p.nd[s, N_MIN] < 0
        if x == mn or x == mx:
            if mn == mx:
                p.nd[v, N_MIN] = -1
                p.nd[v, N_MAX] = -1
                return 1
            if empty_clusters:
                if x == mn:
                    p.nd[v, N_MIN] = mx
                    p.nd[v, N_PMIN] = p.nd[v, N_PMAX]
                else:
                    p.nd[v, N_MAX] = mn
                    p.nd[v, N_PMAX] = p.nd[v, N_PMIN]
                return 1
            # pull the neighbouring key out of its cluster
            if x == mn:
                h = p.nd[s, N_MIN]
                c = _cluster(p, v, h)
                l = p.nd[c, N_MIN]
                p.nd[v, N_MIN] = (h << lo) | l
                p.nd[v, N_PMIN] = p.nd[c, N_PMIN]
            else:
                h = p.nd[s, N_MAX]
                c = _cluster(p, v, h)
                l = p.nd[c, N_MAX]
                p.nd[v, N_MAX] = (h << lo) | l
                p.nd[v, N_PMAX] = p.nd[c, N_PMAX]
            forced = 1
        else:
            if x < mn or x > mx:
                return forced if forced >= 0 else 0
            h = x >> lo
            if _h_get(p, v, h) == 0:
                return forced if forced >= 0 else 0
            c = _cluster(p, v, h)
            l = x & ((1 << lo) - 1)
        if p.nd[c, N_MIN] == p.nd[c, N_MAX]:
            # the cluster empties: no descent into it, only into the summary
            if p.nd[c, N_MIN] != l:
                return forced if forced >= 0 else 0
            _clear_single(p, c)
            _h_clear(p, v, h)
            forced = 1
            v, x = s, h
        else:
            v, x = c, l


@njit
def node_find(p, v, x):
    """Returns ``(found, payload)``."""
    while True:
        p.descents += 1
        mn = p.nd[v, N_MIN]
        if mn < 0:
            return 0, 0
        if x == mn:
            return 1, p.nd[v, N_PMIN]
        if x == p.nd[v, N_MAX]:
            return 1, p.nd[v, N_PMAX]
        if p.nd[v, N_LO] < 0:
            t = _t_find(p, p.nd[v, N_REF], x)
            if t < 0:
                return 0, 0
            return 1, p.tr[t, T_VAL]
        if x < mn or x > p.nd[v, N_MAX]:
            return 0, 0
        lo = p.nd[v, N_LO]
        h = x >> lo
        if _h_get(p, v, h) == 0:
            return 0, 0
        v = _cluster(p, v, h)
        x = x & ((1 << lo) - 1)


@njit
def node_next(p, v, x):
    """Smallest stored key ``> x`` as ``(key, payload)``; key -1 if none.

    Cluster descents just add an offset. Summary descents push a frame
    ``(node, lo, offset)`` that is resolved once the inner answer is known.
    """
    st = p.stk
    d = 0
    base = 0
    while True:
        p.descents += 1
        mn = p.nd[v, N_MIN]
        if mn < 0:
            r, pay = -1, 0
            break
        if x < mn:
            r, pay = base + mn, p.nd[v, N_PMIN]
            break
        if x >= p.nd[v, N_MAX]:
            r, pay = -1, 0
            break
        if p.nd[v, N_LO] < 0:
            t = _t_succ(p, p.nd[v, N_REF], x)
            r, pay = base + p.tr[t, T_KEY], p.tr[t, T_VAL]
            break
        lo = p.nd[v, N_LO]
        h = x >> lo
        l = x & ((1 << lo) - 1)
        if _h_get(p, v, h) == 1:
            c = _cluster(p, v, h)
            if l < p.nd[c, N_MAX]:
                base += h << lo
                v, x = c, l
                continue
        s = p.nd[v, N_SUM]
        if s < 0:
            r, pay = base + p.nd[v, N_MAX], p.nd[v, N_PMAX]
            break
        st[d] = v
        st[d + 1] = lo
        st[d + 2] = base
        d += 3
        base = 0
        v, x = s, h
    while d > 0:
        d -= 3
        v = st[d]
        lo = st[d + 1]
        base = st[d + 2]
        if r >= 0:
            c = _cluster(p, v, r)
            r, pay = base + ((r << lo) | p.nd[c, N_MIN]), p.nd[c, N_PMIN]
        else:
            r, pay = base + p.nd[v, N_MAX], p.nd[v, N_PMAX]
    return r, pay


@njit
def node_prev(p, v, x):
    """Largest stored key ``< x`` as ``(key, payload)``; key -1 if none."""
    st = p.stk
    d = 0
    base = 0
    while True:
        p.descents += 1
        mn = p.nd[v, N_MIN]
        if mn < 0:
            r, pay = -1, 0
            break
        if x > p.nd[v, N_MAX]:
            r, pay = base + p.nd[v, N_MAX], p.nd[v, N_PMAX]
            break
        if x <= mn:
            r, pay = -1, 0
            break
        if p.nd[v, N_LO] < 0:
            t = _t_pred(p, p.nd[v, N_REF], x)
            r, pay = base + p.tr[t, T_KEY], p.tr[t, T_VAL]
            break
        lo = p.nd[v, N_LO]
        h = x >> lo
        l = x & ((1 << lo) - 1)
        if _h_get(p, v, h) == 1:
            c = _cluster(p, v, h)
            if l > p.nd[c, N_MIN]:
                base += h << lo
                v, x = c, l
                continue
        s = p.nd[v, N_SUM]
        if s < 0:
            r, pay = base + mn, p.nd[v, N_PMIN]
            break
        st[d] = v
        st[d + 1] = lo
        st[d + 2] = base
        d += 3
        base = 0
        v, x = s, h
    while d > 0:
        d -= 3
        v = st[d]
        lo = st[d + 1]
        base = st[d + 2]
        if r >= 0:
            c = _cluster(p, v, r)
            r, pay = base + ((r << lo) | p.nd[c, N_MAX]), p.nd[c, N_PMAX]
        else:
            r, pay = base + p.nd[v, N_MIN], p.nd[v, N_PMIN]
    return r, pay


# ------------------------------------------------- counted entry points


@njit
def veb_insert(p, root, key, pay):
    p.ops += 1
    return node_insert(p, root, key, pay)


@njit
def veb_delete(p, root, key):
    p.ops += 1
    return node_delete(p, root, key)


@njit
def veb_find(p, root, key):
    p.ops += 1
    return node_find(p, root, key)


@njit
def veb_next(p, root, key):
    p.ops += 1
    return node_next(p, root, key)


@njit
def veb_prev(p, root, key):
    p.ops += 1
    return node_prev(p, root, key)


@njit
def veb_items(p, root):
    """All ``(key, payload)`` rows in key order."""
    n = 0
    k, _ = node_next(p, root, -1)
    while k >= 0:
        n += 1
        k, _ = node_next(p, root, k)
    out = np.empty((n, 2), np.int64)
    k, pay = node_next(p, root, -1)
    i = 0
    while k >= 0:
        out[i, 0] = k
        out[i, 1] = pay
        i += 1
        k, pay = node_next(p, root, k)
    return out


@njit
def reset_counters(p):
    p.descents = 0
    p.dict_steps = 0


@njit
def pool_cost(p):
    """Resident words: node records, cluster slots, H words, live AVL nodes."""
    return p.n_used * NODE_FIELDS + p.c_used + p.h_used + p.t_live * AVL_FIELDS
