"""Differential-testing support: a Fenwick-tree ordered map and a script driver.

The reference shares no code with the vEB kernels.  It keeps a dense
presence/payload array over ``1..u`` and a Fenwick tree of counts; ``next``
and ``prev`` go through rank/select by binary lifting.
"""
import numpy as np

from .._jit import njit
from . import _kernels as K

OP_INSERT, OP_DELETE, OP_FIND, OP_NEXT, OP_PREV, OP_MIN, OP_MAX, OP_DELETE_ABSENT = range(8)
OP_NAMES = ("insert", "delete", "find", "next", "prev", "min", "max", "delete_absent")


@njit
def _fw_add(tree, i, d):
    n = tree.shape[0] - 1
    while i <= n:
        tree[i] += d
        i += i & (-i)


@njit
def _fw_rank(tree, i):
    """Number of stored keys <= i."""
    n = tree.shape[0] - 1
    if i > n:
        i = n
    s = 0
    while i > 0:
        s += tree[i]
        i -= i & (-i)
    return s


@njit
def _fw_select(tree, k):
    """Smallest index whose prefix count reaches k (k >= 1)."""
    n = tree.shape[0] - 1
    step = 1
    while step * 2 <= n:
        step *= 2
    pos = 0
    while step > 0:
        nxt = pos + step
        if nxt <= n and tree[nxt] < k:
            pos = nxt
            k -= tree[nxt]
        step //= 2
    return pos + 1


@njit
def run_differential(p, root, universe, ops, keys, pays):
    """Apply a script to the vEB map and to the reference; returns both traces.

    Each trace row is ``(key_or_flag, payload)``.  Delete ops pick a present
    key from ``keys[i] % size``; ``OP_DELETE_ABSENT`` deletes an absent key
    and records the found flag (must be 0 on both sides).
    """
    n = ops.shape[0]
    got = np.full((n, 2), -1, np.int64)
    want = np.full((n, 2), -1, np.int64)
    tree = np.zeros(universe + 1, np.int64)
    present = np.zeros(universe + 1, np.bool_)
    payload = np.zeros(universe + 1, np.int64)
    slot = np.full(universe + 1, -1, np.int64)
    live = np.empty(universe + 1, np.int64)
    size = 0
    for i in range(n):
        op = ops[i]
        key = keys[i]
        if op == OP_INSERT:
            got[i, 0] = K.veb_insert(p, root, key, pays[i])
            want[i, 0] = 0 if present[key] else 1
            if not present[key]:
                present[key] = True
                _fw_add(tree, key, 1)
                slot[key] = size
                live[size] = key
                size += 1
            payload[key] = pays[i]
        elif op == OP_DELETE:
            if size == 0:
                continue
            key = live[keys[i] % size]
            got[i, 0] = K.veb_delete(p, root, key)
            want[i, 0] = 1
            present[key] = False
            _fw_add(tree, key, -1)
            j = slot[key]
            size -= 1
            live[j] = live[size]
            slot[live[j]] = j
            slot[key] = -1
        elif op == OP_DELETE_ABSENT:
            if present[key]:
                continue
            got[i, 0] = K.veb_delete(p, root, key)
            want[i, 0] = 0
        elif op == OP_FIND:
            f, v = K.veb_find(p, root, key)
            got[i, 0] = f
            got[i, 1] = v if f else -1
            want[i, 0] = 1 if present[key] else 0
            want[i, 1] = payload[key] if present[key] else -1
        elif op == OP_NEXT or op == OP_MIN:
            if op == OP_MIN:
                key = 0
            k, v = K.veb_next(p, root, key)
            got[i, 0] = k
            got[i, 1] = v if k >= 0 else -1
            r = _fw_rank(tree, key)
            if r < size:
                w = _fw_select(tree, r + 1)
                want[i, 0] = w
                want[i, 1] = payload[w]
        else:
            if op == OP_MAX:
                key = universe + 1
            k, v = K.veb_prev(p, root, key)
            got[i, 0] = k
            got[i, 1] = v if k >= 0 else -1
            r = _fw_rank(tree, key - 1)
            if r > 0:
                w = _fw_select(tree, r)
                want[i, 0] = w
                want[i, 1] = payload[w]
    return got, want, size


def make_script(universe, n_ops, rng, insert_bias=0.45):
    """Random op script mixing uniform keys with clustered bursts near a walking focus."""
    probs = np.array([insert_bias, 0.2, 0.08, 0.12, 0.12, 0.015, 0.015, 0.0])
    probs[7] = max(0.0, 1.0 - probs[:7].sum())
    probs = probs / probs.sum()
    ops = rng.choice(8, size=n_ops, p=probs).astype(np.int64)
    uniform = rng.integers(1, universe + 1, size=n_ops)
    focus = np.cumsum(rng.integers(-64, 65, size=n_ops)) + rng.integers(1, universe + 1)
    near = focus + rng.integers(-16, 17, size=n_ops)
    near = (np.abs(near) % universe) + 1
    keys = np.where(rng.random(n_ops) < 0.5, uniform, near).astype(np.int64)
    nxt = ops == OP_NEXT
    keys[nxt] = np.minimum(keys[nxt] - (rng.random(nxt.sum()) < 0.05), universe)
    prv = ops == OP_PREV
    keys[prv] = keys[prv] + (rng.random(prv.sum()) < 0.05)
    dele = ops == OP_DELETE
    keys[dele] = rng.integers(0, 2**62, size=dele.sum())
    pays = rng.integers(-(2**40), 2**40, size=n_ops).astype(np.int64)
    return ops, keys, pays


def first_mismatch(got, want):
    bad = np.nonzero((got != want).any(axis=1))[0]
    return int(bad[0]) if bad.size else -1
