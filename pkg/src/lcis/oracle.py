"""Ground truth: quadratic DP, exhaustive search, predecessors, significant pairs."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Optional

import numpy as np

from ._jit import DISABLE_NUMBA, njit
from .core import MatchingPair, SeqLike, as_array, matching_pair_count

BRUTEFORCE_CAP = 14


# ------------------------------------------------------------------ DP kernels


@njit(cache=True)
def _dp_table_kernel(A, B, npairs):
    na = A.shape[0]
    nb = B.shape[0]
    L = np.zeros((na + 1, nb + 1), np.int32)
    f = np.zeros(nb, np.int64)
    px = np.empty(npairs, np.int64)
    py = np.empty(npairs, np.int64)
    pv = np.empty(npairs, np.int64)
    m = 0
    for i in range(na):
        a = A[i]
        best = 0
        for j in range(nb):
            b = B[j]
            v = 0
            if b < a:
                if f[j] > best:
                    best = f[j]
            elif b == a:
                v = best + 1
                px[m] = i + 1
                py[m] = j + 1
                pv[m] = v
                m += 1
                if v > f[j]:
                    f[j] = v
            cell = L[i, j + 1]
            if L[i + 1, j] > cell:
                cell = L[i + 1, j]
            if v > cell:
                cell = v
            L[i + 1, j + 1] = cell
    return L, px, py, pv


@njit(cache=True)
def _dp_length_kernel(A, B):
    nb = B.shape[0]
    f = np.zeros(nb, np.int64)
    for i in range(A.shape[0]):
        a = A[i]
        best = 0
        for j in range(nb):
            b = B[j]
            if b < a:
                if f[j] > best:
                    best = f[j]
            elif b == a and best + 1 > f[j]:
                f[j] = best + 1
    out = 0
    for j in range(nb):
        if f[j] > out:
            out = f[j]
    return out


def _dp_table_numpy(A, B):
    """Row-vectorised version of the same recurrence."""
    na, nb = len(A), len(B)
    L = np.zeros((na + 1, nb + 1), np.int32)
    f = np.zeros(nb, np.int64)
    xs, ys, vs = [], [], []
    for i in range(na):
        a = A[i]
        best = np.maximum.accumulate(np.where(B < a, f, 0)) if nb else f
        hit = B == a
        v = np.where(hit, best + 1, 0)
        js = np.nonzero(hit)[0]
        xs.append(np.full(js.size, i + 1, np.int64))
        ys.append(js + 1)
        vs.append(v[js])
        np.maximum(f, v, out=f)
        if nb:
            L[i + 1, 1:] = np.maximum.accumulate(np.maximum(L[i, 1:], v))
    cat = lambda parts: np.concatenate(parts).astype(np.int64) if parts else np.zeros(0, np.int64)
    return L, cat(xs), cat(ys), cat(vs)


def _dp_length_numpy(A, B):
    nb = len(B)
    f = np.zeros(nb, np.int64)
    if not nb:
        return 0
    for a in A:
        best = np.maximum.accumulate(np.where(B < a, f, 0))
        np.maximum(f, np.where(B == a, best + 1, 0), out=f)
    return int(f.max())


# ------------------------------------------------------------------ tables


@dataclass
class LcisTable:
    """``lcis`` for every prefix pair plus ``lcisto`` for every matching pair.

    Pair arrays are ordered by symbol, then x, then y.
    """

    A: np.ndarray
    B: np.ndarray
    lcis: np.ndarray
    px: np.ndarray
    py: np.ndarray
    psym: np.ndarray
    pval: np.ndarray

    @property
    def value(self) -> int:
        return int(self.lcis[-1, -1])

    @cached_property
    def _index(self) -> dict:
        return {(int(x), int(y)): i for i, (x, y) in enumerate(zip(self.px, self.py))}

    def lcisto(self, x: int, y: int) -> int:
        """Length of the longest chain ending at matching pair (x, y)."""
        i = self._index.get((int(x), int(y)))
        if i is None:
            raise KeyError(f"({x}, {y}) is not a matching pair")
        return int(self.pval[i])

    def pair(self, x: int, y: int) -> MatchingPair:
        if (int(x), int(y)) not in self._index:
            raise KeyError(f"({x}, {y}) is not a matching pair")
        return MatchingPair(int(x), int(y), int(self.A[x - 1]))

    def pairs(self) -> Iterator[tuple[MatchingPair, int]]:
        for x, y, s, v in zip(self.px.tolist(), self.py.tolist(), self.psym.tolist(), self.pval.tolist()):
            yield MatchingPair(x, y, s), v

    def witness(self) -> list[MatchingPair]:
        """A longest common increasing subsequence as a chain of pairs."""
        if self.value == 0:
            return []
        ends = np.nonzero(self.pval == self.value)[0]
        i = ends[np.lexsort((self.px[ends], self.py[ends]))[0]]
        p = MatchingPair(int(self.px[i]), int(self.py[i]), int(self.psym[i]))
        chain = [p]
        while (q := predecessor(chain[-1], self)) is not None:
            chain.append(q)
        return chain[::-1]


def lcis_dp(A: SeqLike, B: SeqLike) -> LcisTable:
    """Quadratic row-sweep DP; the reference every other route is checked against."""
    a, b = as_array(A), as_array(B)
    if DISABLE_NUMBA:
        L, px, py, pv = _dp_table_numpy(a, b)
    else:
        L, px, py, pv = _dp_table_kernel(a, b, matching_pair_count(a, b))
    sym = a[px - 1] if px.size else np.zeros(0, np.int64)
    order = np.lexsort((py, px, sym))
    return LcisTable(a, b, L, px[order], py[order], sym[order], pv[order])


def lcis_length_dp(A: SeqLike, B: SeqLike) -> int:
    """The DP's final value in O(|B|) memory."""
    a, b = as_array(A), as_array(B)
    if DISABLE_NUMBA:
        return _dp_length_numpy(a, b)
    return int(_dp_length_kernel(a, b))


# ------------------------------------------------------------------ brute force


def _is_subsequence(seq, b) -> bool:
    it = iter(b)
    return all(any(v == w for w in it) for v in seq)


def lcis_bruteforce(A: SeqLike, B: SeqLike) -> int:
    """Exhaustive search over increasing subsequences of A; no DP involved."""
    a = as_array(A).tolist()
    b = as_array(B).tolist()
    if len(a) > BRUTEFORCE_CAP or len(b) > BRUTEFORCE_CAP:
        raise ValueError(f"brute force is capped at length {BRUTEFORCE_CAP}, got {len(a)} and {len(b)}")
    best = 0
    stack = [(-1, [])]
    while stack:
        i, seq = stack.pop()
        best = max(best, len(seq))
        last = seq[-1] if seq else None
        for j in range(i + 1, len(a)):
            if last is not None and a[j] <= last:
                continue
            ext = seq + [a[j]]
            if _is_subsequence(ext, b):
                stack.append((j, ext))
    return best


# ------------------------------------------------------------------ predecessors


def predecessor(p, t: LcisTable) -> Optional[MatchingPair]:
    """Canonical previous pair: lcisto one less, then minimal y, then minimal x."""
    x, y = int(p[0]), int(p[1])
    v = t.lcisto(x, y)
    if v == 1:
        return None
    sym = int(t.A[x - 1])
    cand = np.nonzero((t.px < x) & (t.py < y) & (t.psym < sym) & (t.pval == v - 1))[0]
    i = cand[np.lexsort((t.px[cand], t.py[cand]))[0]]
    return MatchingPair(int(t.px[i]), int(t.py[i]), int(t.psym[i]))


def kth_predecessor(p, k: int, t: LcisTable) -> MatchingPair:
    if k < 0:
        raise ValueError("k must be non-negative")
    v = t.lcisto(p[0], p[1])
    if v <= k:
        raise ValueError(f"lcisto{tuple(p[:2])} = {v} has no {k}-th predecessor")
    q = t.pair(p[0], p[1])
    for _ in range(k):
        q = predecessor(q, t)
    return q


# ------------------------------------------------------------------ significance


@njit(cache=True)
def _sig_scan_kernel(A, B, n_symbols, npairs, store):
    """One DP sweep that also classifies each pair by a per-symbol prefix-max tree.

    Pairs are met in (x, y) order, so every same-symbol pair (x', y') <= (x, y)
    was seen already; (x, y) is significant iff the best lcisto among those
    with y' <= y is smaller than its own.
    """
    nb = B.shape[0]
    cnt = np.zeros(n_symbols + 2, np.int64)
    for j in range(nb):
        cnt[B[j]] += 1
    start = np.zeros(n_symbols + 2, np.int64)
    for s in range(1, n_symbols + 1):
        start[s + 1] = start[s] + cnt[s]
    rank = np.empty(nb, np.int64)
    seen = np.zeros(n_symbols + 2, np.int64)
    for j in range(nb):
        seen[B[j]] += 1
        rank[j] = seen[B[j]]
    tree = np.zeros(nb + 1, np.int64)
    f = np.zeros(nb, np.int64)
    per_symbol = np.zeros(n_symbols + 1, np.int64)
    m_out = npairs if store else 0
    px = np.empty(m_out, np.int64)
    py = np.empty(m_out, np.int64)
    pv = np.empty(m_out, np.int64)
    sig = np.empty(m_out, np.bool_)
    m = 0
    for i in range(A.shape[0]):
        a = A[i]
        best = 0
        for j in range(nb):
            b = B[j]
            if b < a:
                if f[j] > best:
                    best = f[j]
            elif b == a:
                v = best + 1
                if v > f[j]:
                    f[j] = v
                off = start[a]
                size = cnt[a]
                q = 0
                k = rank[j]
                while k > 0:
                    if tree[off + k] > q:
                        q = tree[off + k]
                    k -= k & (-k)
                k = rank[j]
                while k <= size:
                    if tree[off + k] < v:
                        tree[off + k] = v
                    k += k & (-k)
                s = q < v
                if s:
                    per_symbol[a] += 1
                if store:
                    px[m] = i + 1
                    py[m] = j + 1
                    pv[m] = v
                    sig[m] = s
                    m += 1
    return per_symbol, px, py, pv, sig


def _n_symbols(a, b) -> int:
    return int(max(a.max() if a.size else 0, b.max() if b.size else 0))


@dataclass
class SignificantPairSet:
    """Significant pairs grouped by symbol, each list sorted by x then y."""

    by_symbol: dict[int, list[tuple[MatchingPair, int]]] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(len(v) for v in self.by_symbol.values())

    def __len__(self) -> int:
        return self.total

    def __iter__(self) -> Iterator[tuple[MatchingPair, int]]:
        for s in sorted(self.by_symbol):
            yield from self.by_symbol[s]

    def as_dict(self) -> dict[tuple[int, int], int]:
        return {(p.x, p.y): v for p, v in self}

    def level(self, x: int, y: int) -> Optional[int]:
        """lcisto of (x, y) if it is significant, else None."""
        idx = self.__dict__.get("_idx")
        if idx is None or len(idx) != self.total:
            idx = self.__dict__["_idx"] = self.as_dict()
        return idx.get((int(x), int(y)))

    def __contains__(self, p) -> bool:
        return self.level(p[0], p[1]) is not None

    def per_symbol(self) -> dict[int, int]:
        return {s: len(v) for s, v in self.by_symbol.items() if v}


def significant_pairs(A: SeqLike, B: SeqLike) -> SignificantPairSet:
    a, b = as_array(A), as_array(B)
    out = SignificantPairSet()
    if not a.size or not b.size:
        return out
    _, px, py, pv, sig = _sig_scan_kernel(a, b, _n_symbols(a, b), matching_pair_count(a, b), True)
    for x, y, v in zip(px[sig].tolist(), py[sig].tolist(), pv[sig].tolist()):
        s = int(a[x - 1])
        out.by_symbol.setdefault(s, []).append((MatchingPair(x, y, s), v))
    return out


def significant_count(A: SeqLike, B: SeqLike) -> tuple[int, dict[int, int]]:
    """Total and per-symbol number of significant pairs, in O(n) memory."""
    a, b = as_array(A), as_array(B)
    if not a.size or not b.size:
        return 0, {}
    per, *_ = _sig_scan_kernel(a, b, _n_symbols(a, b), 0, False)
    nz = np.nonzero(per)[0]
    return int(per.sum()), {int(s): int(per[s]) for s in nz}


def significant_pairs_bruteforce(t: LcisTable) -> dict[tuple[int, int], int]:
    """Literal dominance check over all same-symbol pairs, quadratic per symbol."""
    out = {}
    for s in np.unique(t.psym).tolist():
        idx = np.nonzero(t.psym == s)[0]
        xs, ys, vs = t.px[idx], t.py[idx], t.pval[idx]
        for x, y, v in zip(xs.tolist(), ys.tolist(), vs.tolist()):
            below = (xs <= x) & (ys <= y) & ~((xs == x) & (ys == y))
            if not np.any(vs[below] >= v):
                out[(x, y)] = v
    return out


def theorem1_bound(n: int) -> float:
    """144 n^2 / (log2 n)^(1/3), the explicit constant from the counting proof."""
    if n < 2:
        return math.inf
    return 144.0 * n * n / math.log2(n) ** (1.0 / 3.0)
