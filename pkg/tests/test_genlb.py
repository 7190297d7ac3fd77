import math

import numpy as np
import pytest

from lcis import genlb
from lcis.genlb import base_length, build_base, build_padded, gen_random, inflate, pad_prefix
from lcis.oracle import lcis_dp, lcis_length_dp, significant_count, significant_pairs

from helpers import FIG_A, FIG_B, random_pair


def test_inflate_examples():
    assert inflate([1]).tolist() == [2, 3]
    assert inflate([]).tolist() == []
    assert inflate([3, 5]).tolist() == [6, 7, 10, 11]


@pytest.mark.parametrize("variant", genlb.VARIANTS)
def test_lengths(variant):
    for k in range(13):
        A, B, ea, eb, s = build_base(k, variant)
        assert len(A) == len(B) == base_length(k) == 2**k + 3 * k * 2 ** max(k - 1, 0) * (k > 0)
        assert len(ea) == len(eb) == 2**k and ea[-1] == eb[-1] == len(A)
        assert max(A.max(), B.max()) == s
        inst = build_padded(k, variant)
        assert len(inst.A) == len(A) + k * 2**k


def test_printed_k1_fixtures():
    A, B, ea, eb, s = build_base(1)
    assert A.tolist() == [2, 3, 4, 3, 5] and B.tolist() == [2, 3, 3, 4, 5] and s == 5
    assert lcis_length_dp(A, B) == 4
    inst = build_padded(1)
    assert inst.A.elems.tolist() == [2, 3, 4, 6, 3, 5, 6]
    assert inst.B.elems.tolist() == [2, 3, 3, 6, 4, 5, 6]
    assert inst.tau == (6,)


def test_guards():
    with pytest.raises(ValueError):
        build_base(21)
    with pytest.raises(ValueError):
        build_padded(13)
    with pytest.raises(ValueError):
        build_padded(2, "other")


@pytest.mark.parametrize("variant", genlb.VARIANTS)
@pytest.mark.parametrize("k", range(0, 7))
def test_tau_structure(variant, k):
    inst = build_padded(k, variant)
    base_max = inst.s_k
    assert all(t > base_max for t in inst.tau)
    assert list(inst.tau) == sorted(set(inst.tau))
    run = np.array(inst.tau[::-1])
    for seq, ends in ((inst.A.elems, inst.block_ends_A), (inst.B.elems, inst.block_ends_B)):
        assert len(ends) == 2**k
        for e in ends:
            assert (seq[e - k : e] == run).all()
        for t in inst.tau:
            assert (seq == t).sum() == 2**k


def block_prefix_table(k, variant):
    A, B, ea, eb, _ = build_base(k, variant)
    L = lcis_dp(A, B).lcis
    return np.array([[L[x, y] for y in eb] for x in ea]), 2**k


def test_printed_recursion_misses_the_prefix_identity():
    # measured behaviour of the recursion as published; see the amended variant
    L, two_k = block_prefix_table(1, "printed")
    assert L.tolist() == [[2, 3], [2, 4]]
    assert L[1, 0] != 1 + 0 + two_k


@pytest.mark.parametrize("k", range(1, 7))
def test_amended_prefix_identity(k):
    L, two_k = block_prefix_table(k, "amended")
    i, j = np.indices(L.shape)
    assert (L == i + j + two_k).all()


@pytest.mark.parametrize("k", range(1, 7))
def test_amended_tau_certification(k):
    inst = build_padded(k, "amended")
    sig = significant_pairs(inst.A, inst.B)
    t = lcis_dp(inst.A, inst.B)
    n_tau = 0
    for x, y, r, i, j in inst.tau_pairs():
        assert sig.level(x, y) == inst.expected_lcisto(i, j) == t.lcisto(x, y)
        n_tau += 1
    assert n_tau == inst.certified_tau_pairs == k * 4**k


def test_amended_density_stays_high():
    # Omega(n^2 / log n): density * log2 n must not collapse
    scaled = []
    for k in range(1, 7):
        inst = build_padded(k, "amended")
        n = len(inst.A)
        total, _ = significant_count(inst.A, inst.B)
        scaled.append(total / n**2 * math.log2(n))
    assert min(scaled) > 0.25


def test_pad_prefix_examples():
    A, B = pad_prefix([1], [1], 1)
    assert A.elems.tolist() == [1, 2, 3] and lcis_length_dp(A, B) == 3
    A, B = pad_prefix(FIG_A, FIG_B, 7)
    assert lcis_length_dp(A, B) == 18
    with pytest.raises(ValueError):
        pad_prefix([1, 2], [1], 1)
    with pytest.raises(ValueError):
        pad_prefix([0], [1], 1)


def test_pad_prefix_preserves_significance():
    rng = np.random.default_rng(9)
    for _ in range(40):
        a, b = random_pair(rng, 20)
        if not len(a) or not len(b):
            continue
        n = int(rng.integers(max(len(a), len(b), 1), 41))
        pa, pb = pad_prefix(a, b, n)
        old = significant_pairs(a, b).as_dict()
        new = significant_pairs(pa, pb).as_dict()
        shifted = {(x - 2 * n, y - 2 * n): v - 2 * n for (x, y), v in new.items() if x > 2 * n and y > 2 * n}
        assert shifted == old
        assert len(new) >= len(old)
        assert lcis_length_dp(pa, pb) == lcis_length_dp(a, b) + 2 * n


def test_gen_random():
    a, b = gen_random(0, 5, 1)
    assert len(a) == len(b) == 0
    x1, y1 = gen_random(50, 7, 42)
    x2, y2 = gen_random(50, 7, 42)
    assert x1 == x2 and y1 == y2
    assert max(x1.elems.max(), y1.elems.max()) <= 7
    a, b = gen_random(30, 1, 3)
    assert lcis_length_dp(a, b) == 1
    with pytest.raises(ValueError):
        gen_random(5, 0, 1)
