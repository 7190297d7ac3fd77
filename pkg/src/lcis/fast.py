"""Sub-quadratic LCIS by maintaining significant pairs in per-level staircase queues.

Symbols are processed in increasing order.  ``Q[k]`` holds pairs whose
lcisto is ``k``, keyed by ``x`` with payload ``y``; ``Q[0]`` holds the
sentinel ``(0, 0)``.  Queue keys are stored shifted by one (``x + 1``) so the
sentinel fits a ``1..|A|+1`` universe.

Rare symbols (at most ``n / sqrt(t)`` occurrences in B) walk their matching
pairs and gallop through the levels.  Frequent ones sweep every queued pair
forward to the next occurrence in A and B.  New pairs of a symbol wait in a
batch until the symbol is done.
"""
from __future__ import annotations

import bisect
import os
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._jit import njit
from .core import SeqLike, as_array
from .veb import _kernels as K

# counter slots
C_PROBES, C_CNP, C_INSERT_CALLS, C_INSERTED, C_T_TOTAL, C_T_MAX, C_FREQ, C_INFREQ, C_QUEUE_OPS = range(9)
C_ERR, C_ERR_X, C_ERR_Y, C_ERR_K = range(9, 13)
N_COUNTERS = 13
COUNTER_NAMES = (
    "probes",
    "cnp_calls",
    "insert_inv_calls",
    "inserted",
    "t_total",
    "t_max",
    "frequent_symbols",
    "infrequent_symbols",
    "queue_ops",
)

ERR_STAIRCASE, ERR_PREV_SUFFICES, ERR_CARRY, ERR_SYMBOL_ORDER = 1, 2, 3, 4
ERR_TEXT = {
    ERR_STAIRCASE: "staircase order broken after insert_inv",
    ERR_PREV_SUFFICES: "prev-by-x disagrees with a full scan of the queue",
    ERR_CARRY: "lcisto decreased along a row",
    ERR_SYMBOL_ORDER: "queue holds a pair of the symbol being processed",
}

# state slots: [max_nonempty]
S_TOP = 0
NO_PAYLOAD = np.iinfo(np.int64).max


class InvariantError(AssertionError):
    """A debug-mode invariant failed inside the fast algorithm."""


def choose_t(n: int) -> int:
    """max(4, floor(cbrt(log2 n))), exact for arbitrarily large integers."""
    if n < 1:
        raise ValueError("n must be positive")
    lg = int(n).bit_length() - 1  # floor(log2 n); m^3 <= log2 n iff m^3 <= floor
    m = round(lg ** (1.0 / 3.0)) + 1
    while m**3 > lg:
        m -= 1
    return max(4, m)


def debug_enabled() -> bool:
    return os.environ.get("LCIS_DEBUG_ASSERT", "").strip().lower() not in ("", "0", "false", "no")


# ------------------------------------------------------------------ kernels


@njit
def _fail(counters, code, x, y, k):
    if counters[C_ERR] == 0:
        counters[C_ERR] = code
        counters[C_ERR_X] = x
        counters[C_ERR_Y] = y
        counters[C_ERR_K] = k


# Hot loops live in the body of one function per batch (a row of pairs, a
# symbol's flush).  Small helpers taking the pool would pay reference-count
# traffic on every call, which costs more than the queue probes themselves.


@njit
def _flush(p, qroot, qcnt, state, universe, c, tx, ty, tk, m, counters, debug):
    """insert_inv for each of the first m triples: store (x, y) in Q[k] unless a
    stored pair is <= it, and evict stored pairs >= it."""
    for i in range(m):
        x = tx[i]
        y = ty[i]
        k = tk[i]
        counters[C_INSERT_CALLS] += 1
        root = qroot[k]
        if root < 0:
            root = K.new_map(p, universe, c)
            qroot[k] = root
        key = x + 1
        # one probe answers both "is x stored" and "what precedes x"
        pk, pb = K.veb_prev(p, root, key + 1)
        found = pk == key
        if found:
            if pb <= y:
                continue
            K.veb_delete(p, root, key)
            qcnt[k] -= 1
            pk, pb = K.veb_prev(p, root, key)
        if pk >= 0 and pb <= y:
            if found:  # a valid staircase has pb > old payload > y here
                _fail(counters, ERR_STAIRCASE, x, y, k)
            continue
        K.veb_insert(p, root, key, y)
        qcnt[k] += 1
        while True:
            nk, nb = K.veb_next(p, root, key)
            if nk < 0 or nb < y:
                break
            K.veb_delete(p, root, nk)
            qcnt[k] -= 1
        if k > state[S_TOP]:
            state[S_TOP] = k
        counters[C_INSERTED] += 1
        if debug:
            pk, pb = K.veb_prev(p, root, key)
            nk, nb = K.veb_next(p, root, key)
            if (pk >= 0 and pb <= y) or (nk >= 0 and nb >= y):
                _fail(counters, ERR_STAIRCASE, x, y, k)


@njit
def _debug_probe(p, root, x, y, res, pk, s, counters, A, sigma):
    if res and pk > 1 and A.shape[0] and A[pk - 2] >= sigma:
        _fail(counters, ERR_SYMBOL_ORDER, x, y, s)
    items = K.veb_items(p, root)
    brute = False
    for i in range(items.shape[0]):
        if items[i, 0] - 1 < x and items[i, 1] < y:
            brute = True
    if brute != res:
        _fail(counters, ERR_PREV_SUFFICES, x, y, s)


@njit
def _scan_row(p, qroot, state, x, ys, k0, out, counters, debug, A, sigma, memo_x, memo_y):
    """lcisto(x, y) for each y in ys (increasing), the first known to be >= k0.

    Each answer is a lower bound for the next one.  Per y: gallop upward from
    level k-1 over ok(s) = "prev-by-x in Q[s] has payload < y", then bisect;
    the answer is the last true level plus one.  Prev payloads depend only on
    x and the queues are frozen during a row, so they are cached per level.
    """
    top = state[S_TOP]
    k = k0
    for j in range(ys.shape[0]):
        y = ys[j]
        counters[C_CNP] += 1
        base = k - 1 if k > 0 else 0
        lo = base
        hi = -1
        d = 1
        while True:
            if hi < 0:
                lv = base + d
            elif hi - lo > 1:
                lv = (lo + hi) // 2
            else:
                break
            ok = False
            if lv <= top and qroot[lv] >= 0:
                if memo_x[lv] == x:
                    ok = memo_y[lv] < y
                else:
                    counters[C_PROBES] += 1
                    pk, pb = K.veb_prev(p, qroot[lv], x + 1)
                    if pk < 0:
                        pb = NO_PAYLOAD
                    memo_x[lv] = x
                    memo_y[lv] = pb
                    ok = pb < y
                    if debug:
                        _debug_probe(p, qroot[lv], x, y, ok, pk, lv, counters, A, sigma)
            if ok:
                lo = lv
                if hi < 0:
                    d *= 2
            else:
                hi = lv
        if debug and lo + 1 < k:
            _fail(counters, ERR_CARRY, x, y, lo + 1)
        k = lo + 1
        out[j] = k


@njit
def _csr(s, n_symbols):
    cnt = np.zeros(n_symbols + 2, np.int64)
    for v in s:
        cnt[v + 1] += 1
    for v in range(1, n_symbols + 2):
        cnt[v] += cnt[v - 1]
    pos = np.empty(s.shape[0], np.int64)
    fill = cnt.copy()
    for i in range(s.shape[0]):
        pos[fill[s[i]]] = i + 1
        fill[s[i]] += 1
    return cnt, pos


@njit
def _reserve(tx, ty, tk, m, need):
    """Grow the pending batch so it holds ``need`` triples; first m are kept."""
    if need <= tx.shape[0]:
        return tx, ty, tk
    cap = max(need, 2 * tx.shape[0])
    nx = np.empty(cap, np.int64)
    ny = np.empty(cap, np.int64)
    nk = np.empty(cap, np.int64)
    nx[:m] = tx[:m]
    ny[:m] = ty[:m]
    nk[:m] = tk[:m]
    return nx, ny, nk


@njit
def _new_family(p, n_levels, universe, c):
    qroot = np.full(n_levels, -1, np.int64)
    qcnt = np.zeros(n_levels, np.int64)
    state = np.zeros(1, np.int64)
    qroot[0] = K.new_map(p, universe, c)
    K.veb_insert(p, qroot[0], 1, 0)
    qcnt[0] = 1
    return qroot, qcnt, state


@njit
def _lcis_fast_kernel(p, qroot, qcnt, state, A, B, t, c, debug, counters):
    na = A.shape[0]
    nb = B.shape[0]
    n = max(na, nb)
    universe = na + 1
    sigma_max = 0
    for v in A:
        sigma_max = max(sigma_max, v)
    for v in B:
        sigma_max = max(sigma_max, v)
    sa, pa = _csr(A, sigma_max)
    sb, pb = _csr(B, sigma_max)
    memo_x = np.full(qroot.shape[0], -1, np.int64)
    memo_y = np.zeros(qroot.shape[0], np.int64)
    tx = np.empty(16, np.int64)
    ty = np.empty(16, np.int64)
    tk = np.empty(16, np.int64)
    for s in range(1, sigma_max + 1):
        ca = sa[s + 1] - sa[s]
        cb = sb[s + 1] - sb[s]
        if ca == 0 or cb == 0:
            continue
        m = 0
        if cb * cb * t > n * n:
            counters[C_FREQ] += 1
            xs = K.new_map(p, na, c)
            for i in range(sa[s], sa[s + 1]):
                K.veb_insert(p, xs, pa[i], 0)
            ys = K.new_map(p, nb, c)
            for j in range(sb[s], sb[s + 1]):
                K.veb_insert(p, ys, pb[j], 0)
            for k in range(0, state[S_TOP] + 1):
                root = qroot[k]
                if root < 0:
                    continue
                if m + qcnt[k] > tx.shape[0]:
                    tx, ty, tk = _reserve(tx, ty, tk, m, m + qcnt[k])
                key, y = K.veb_next(p, root, 0)
                while key >= 0:
                    x2, _ = K.veb_next(p, xs, key - 1)
                    y2, _ = K.veb_next(p, ys, y)
                    if x2 >= 0 and y2 >= 0:
                        tx[m] = x2
                        ty[m] = y2
                        tk[m] = k + 1
                        m += 1
                    key, y = K.veb_next(p, root, key)
        else:
            counters[C_INFREQ] += 1
            ys = pb[sb[s] : sb[s + 1]]
            ks = np.empty(cb, np.int64)
            for i in range(sa[s], sa[s + 1]):
                x = pa[i]
                _scan_row(p, qroot, state, x, ys, 0, ks, counters, debug, A, s, memo_x, memo_y)
                if m + cb > tx.shape[0]:
                    tx, ty, tk = _reserve(tx, ty, tk, m, m + cb)
                k = 0
                for j in range(cb):
                    # a later y at the same level is dominated by the earlier one
                    if ks[j] != k:
                        k = ks[j]
                        tx[m] = x
                        ty[m] = ys[j]
                        tk[m] = k
                        m += 1
        counters[C_T_TOTAL] += m
        if m > counters[C_T_MAX]:
            counters[C_T_MAX] = m
        _flush(p, qroot, qcnt, state, universe, c, tx, ty, tk, m, counters, debug)
        if counters[C_ERR] != 0:
            break
    counters[C_QUEUE_OPS] = p.ops
    return state[S_TOP]


# ------------------------------------------------------------------ Python API


class QueueFamily:
    """Staircase queues ``Q[0..n]``; ``Q[0]`` starts with the sentinel (0, 0)."""

    def __init__(self, n: int, universe_x: int, c: int = 2, pool=None, debug: bool = False):
        self.n = int(n)
        self.universe = int(universe_x) + 1
        self.c = int(c)
        self.debug = bool(debug)
        self.pool = K.new_pool() if pool is None else pool
        self.qroot, self.qcnt, self.state = _new_family(self.pool, self.n + 2, self.universe, self.c)
        self.counters = np.zeros(N_COUNTERS, np.int64)

    @property
    def max_nonempty(self) -> int:
        return int(self.state[S_TOP])

    def level(self, k: int) -> list[tuple[int, int]]:
        """Pairs of Q[k] as (x, y), increasing in x."""
        if not 0 <= k < len(self.qroot) or self.qroot[k] < 0:
            return []
        return [(int(key) - 1, int(y)) for key, y in K.veb_items(self.pool, self.qroot[k])]

    def levels(self) -> dict[int, list[tuple[int, int]]]:
        return {k: self.level(k) for k in range(1, self.max_nonempty + 1) if self.qcnt[k]}

    def insert_inv(self, k: int, pair) -> bool:
        """Returns True when (x, y) was stored."""
        x, y = int(pair[0]), int(pair[1])
        if not 1 <= k <= self.n or not 1 <= x < self.universe or y < 1:
            raise ValueError(f"bad level or pair: k={k}, ({x}, {y})")
        before = int(self.counters[C_INSERTED])
        one = lambda v: np.array([v], np.int64)
        _flush(self.pool, self.qroot, self.qcnt, self.state, self.universe, self.c, one(x), one(y), one(k), 1, self.counters, self.debug)
        self._raise_if_failed()
        return int(self.counters[C_INSERTED]) > before

    def compute_next_pair(self, x: int, y: int, k: int = 0, symbol: Optional[int] = None, A=None) -> int:
        """lcisto(x, y) assuming it is at least k and the queues hold earlier symbols only."""
        a = np.zeros(0, np.int64) if A is None else as_array(A)
        sym = np.iinfo(np.int64).max if symbol is None else int(symbol)
        dbg = self.debug and A is not None
        out = np.zeros(1, np.int64)
        memo_x = np.full(len(self.qroot), -1, np.int64)
        memo_y = np.zeros(len(self.qroot), np.int64)
        ys = np.array([int(y)], np.int64)
        _scan_row(self.pool, self.qroot, self.state, int(x), ys, int(k), out, self.counters, dbg, a, sym, memo_x, memo_y)
        self._raise_if_failed()
        return int(out[0])

    def staircase_ok(self) -> bool:
        for k in range(self.max_nonempty + 1):
            lv = self.level(k)
            if any(a[0] >= b[0] or a[1] <= b[1] for a, b in zip(lv, lv[1:])):
                return False
        return True

    def _raise_if_failed(self):
        code = int(self.counters[C_ERR])
        if code:
            x, y, k = (int(v) for v in self.counters[C_ERR_X : C_ERR_K + 1])
            raise InvariantError(f"{ERR_TEXT.get(code, code)} at pair ({x}, {y}), level {k}")


@dataclass
class FastRun:
    value: int
    t: int
    queues: QueueFamily
    counters: dict

    @property
    def probes(self) -> int:
        return self.counters["probes"]


def lcis_fast_run(A: SeqLike, B: SeqLike, *, t: Optional[int] = None, c: int = 2, debug: Optional[bool] = None) -> FastRun:
    """Run the fast algorithm and keep the queues and counters around."""
    a, b = as_array(A), as_array(B)
    if a.size and a.min() < 1 or b.size and b.min() < 1:
        raise ValueError("expected compressed sequences (symbols >= 1)")
    n = max(len(a), len(b), 1)
    t = choose_t(n) if t is None else int(t)
    debug = debug_enabled() if debug is None else bool(debug)
    qf = QueueFamily(n, len(a), c=c, debug=debug)
    value = 0
    if a.size and b.size:
        value = int(_lcis_fast_kernel(qf.pool, qf.qroot, qf.qcnt, qf.state, a, b, t, c, debug, qf.counters))
        qf._raise_if_failed()
    counters = {name: int(qf.counters[i]) for i, name in enumerate(COUNTER_NAMES)}
    run = FastRun(value, t, qf, counters)
    if debug:
        problems = check_end_state(run, a, b)
        if problems:
            raise InvariantError("; ".join(problems[:5]))
    return run


def lcis_fast(A: SeqLike, B: SeqLike, *, t: Optional[int] = None, c: int = 2) -> int:
    """LCIS length of two compressed sequences."""
    return lcis_fast_run(A, B, t=t, c=c).value


def check_end_state(run: FastRun, A: SeqLike, B: SeqLike) -> list[str]:
    """Compare final queues to the quadratic oracle.

    Every stored pair must be significant with its level equal to its lcisto,
    and every significant pair must sit above some stored pair of its level.
    """
    from .oracle import lcis_dp, significant_pairs

    t = lcis_dp(A, B)
    sig = significant_pairs(A, B).as_dict()
    problems = []
    if run.value != t.value:
        problems.append(f"returned {run.value}, oracle says {t.value}")
    levels = run.queues.levels()
    for k, pairs in levels.items():
        for x, y in pairs:
            if sig.get((x, y)) != k:
                problems.append(f"Q[{k}] holds ({x}, {y}) which is not a significant pair of lcisto {k}")
    xs = {k: [a for a, _ in pairs] for k, pairs in levels.items()}
    for (x, y), k in sig.items():
        # staircase: the last stored pair with a <= x has the smallest b of those
        i = bisect.bisect_right(xs.get(k, []), x) - 1
        if i < 0 or levels[k][i][1] > y:
            problems.append(f"significant ({x}, {y}) at level {k} has no stored pair below it")
    if not run.queues.staircase_ok():
        problems.append("final queues are not staircases")
    return problems
