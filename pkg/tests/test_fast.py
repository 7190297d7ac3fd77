import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lcis import fast
from lcis.fast import InvariantError, QueueFamily, check_end_state, choose_t, lcis_fast, lcis_fast_run
from lcis.oracle import lcis_dp, lcis_length_dp, significant_pairs

from helpers import FIG_A, FIG_B, minimal_elements, random_pair


@pytest.mark.parametrize("n, t", [(1, 4), (2, 4), (2**64, 4), (2**1000, 10), (2**999, 9), (2**343, 7)])
def test_choose_t(n, t):
    assert choose_t(n) == t


def test_choose_t_rejects_zero():
    with pytest.raises(ValueError):
        choose_t(0)


def family(*levels):
    qf = QueueFamily(10, 10)
    for k, pairs in enumerate(levels, start=1):
        for p in pairs:
            qf.insert_inv(k, p)
    return qf


def test_insert_inv_examples():
    qf = family([(2, 9)])
    assert qf.insert_inv(1, (5, 4))
    assert qf.level(1) == [(2, 9), (5, 4)]
    assert qf.insert_inv(1, (3, 7))
    assert qf.level(1) == [(2, 9), (3, 7), (5, 4)]
    assert qf.insert_inv(1, (1, 3))
    assert qf.level(1) == [(1, 3)]
    assert qf.staircase_ok()


def test_insert_inv_same_x_and_dominated():
    qf = family([(3, 7)])
    assert not qf.insert_inv(1, (3, 9))  # a stored pair is <= it
    assert qf.insert_inv(1, (3, 5))  # replaces the weaker pair at the same x
    assert qf.level(1) == [(3, 5)]
    assert not qf.insert_inv(1, (6, 6))
    assert qf.level(1) == [(3, 5)]
    assert qf.max_nonempty == 1


def test_insert_inv_rejects_bad_level():
    qf = QueueFamily(4, 4)
    with pytest.raises(ValueError):
        qf.insert_inv(0, (1, 1))
    with pytest.raises(ValueError):
        qf.insert_inv(5, (1, 1))


def test_compute_next_pair_on_running_example():
    # queues after symbols 1..4 of the running example
    qf = family([(1, 1)], [(2, 4), (4, 2)], [(6, 6)])
    assert qf.compute_next_pair(3, 3, 0) == 2
    assert qf.compute_next_pair(3, 5, 2) == 3
    assert qf.compute_next_pair(7, 7, 0) == 4
    # the sentinel alone gives 1
    assert QueueFamily(5, 5).compute_next_pair(2, 3, 0) == 1


def test_compute_next_pair_debug_detects_same_symbol_in_queue():
    qf = QueueFamily(7, 7, debug=True)
    qf.insert_inv(1, (3, 3))
    with pytest.raises(InvariantError):
        qf.compute_next_pair(5, 5, 0, symbol=5, A=FIG_A)


def test_running_example_end_state():
    run = lcis_fast_run(FIG_A, FIG_B, debug=True)
    assert run.value == 4
    assert run.queues.levels() == {1: [(1, 1)], 2: [(2, 4), (3, 3), (4, 2)], 3: [(3, 5), (5, 3)], 4: [(7, 7)]}
    assert check_end_state(run, FIG_A, FIG_B) == []


def stored_equals_minimal(run, A, B):
    sig = significant_pairs(A, B).as_dict()
    by_level = {}
    for p, k in sig.items():
        by_level.setdefault(k, set()).add(p)
    want = {k: minimal_elements(ps) for k, ps in by_level.items()}
    got = {k: set(v) for k, v in run.queues.levels().items()}
    return got == want


def test_end_state_is_minimal_significant_pairs_per_level():
    assert stored_equals_minimal(lcis_fast_run(FIG_A, FIG_B), FIG_A, FIG_B)
    rng = np.random.default_rng(8)
    for _ in range(150):
        a, b = random_pair(rng, 40)
        assert stored_equals_minimal(lcis_fast_run(a, b), a, b)


def test_trivial_instances():
    assert lcis_fast([], [1]) == 0
    assert lcis_fast([1, 2], [3, 4]) == 0
    assert lcis_fast([3], [3]) == 1
    with pytest.raises(ValueError):
        lcis_fast([0, 1], [1])


@pytest.mark.parametrize("t", [None, 1, 4, 10**9])
@pytest.mark.parametrize("c", [1, 2])
def test_matches_dp_random(t, c):
    rng = np.random.default_rng(100 + (t or 0) % 97 + c)
    for _ in range(80):
        n = int(rng.integers(1, 300))
        al = int(rng.choice([2, 8, max(1, int(n**0.5)), n]))
        a = rng.integers(1, al + 1, n)
        b = rng.integers(1, al + 1, int(rng.integers(1, 300)))
        assert lcis_fast(a, b, t=t, c=c) == lcis_length_dp(a, b)


def test_frequency_split_follows_t():
    rng = np.random.default_rng(5)
    a = rng.integers(1, 5, 200)
    b = rng.integers(1, 5, 200)
    rare = lcis_fast_run(a, b, t=1).counters
    dense = lcis_fast_run(a, b, t=10**9).counters
    assert rare["frequent_symbols"] == 0 and rare["infrequent_symbols"] > 0
    assert dense["frequent_symbols"] > 0 and dense["infrequent_symbols"] == 0


@given(st.lists(st.integers(1, 10), max_size=40), st.lists(st.integers(1, 10), max_size=40))
def test_debug_runs_clean(a, b):
    run = lcis_fast_run(a, b, debug=True)
    assert run.value == lcis_dp(a, b).value


@given(st.lists(st.tuples(st.integers(1, 3), st.integers(1, 12), st.integers(1, 12)), max_size=12), st.randoms())
def test_flush_order_does_not_matter(triples, rnd):
    orders = [list(triples), list(reversed(triples))]
    shuffled = list(triples)
    rnd.shuffle(shuffled)
    orders.append(shuffled)
    results = []
    for order in orders:
        qf = QueueFamily(4, 12, debug=True)
        for k, x, y in order:
            qf.insert_inv(k, (x, y))
        assert qf.staircase_ok()
        results.append(qf.levels())
    assert results[0] == results[1] == results[2]
    for k, pairs in results[0].items():
        assert set(pairs) == minimal_elements({(x, y) for kk, x, y in triples if kk == k})


def test_check_end_state_flags_tampering():
    run = lcis_fast_run(FIG_A, FIG_B)
    run.queues.insert_inv(2, (1, 7))  # (1,7) is not a matching pair at level 2
    assert check_end_state(run, FIG_A, FIG_B)


def test_debug_env_flag(monkeypatch):
    monkeypatch.setenv("LCIS_DEBUG_ASSERT", "1")
    assert fast.debug_enabled()
    monkeypatch.setenv("LCIS_DEBUG_ASSERT", "0")
    assert not fast.debug_enabled()


def test_python_backend_agrees():
    """The pure fallback (no numba) computes the same values."""
    rng = np.random.default_rng(21)
    cases = [random_pair(rng, 60) for _ in range(40)]
    want = [lcis_length_dp(a, b) for a, b in cases]
    code = (
        "import sys, json\n"
        "from lcis import BACKEND, lcis_fast, lcis_dp\n"
        "assert BACKEND == 'python'\n"
        "cases = json.load(sys.stdin)\n"
        "print(json.dumps([[lcis_fast(a, b, t=t) for t in (None, 10**9)] + [lcis_dp(a, b).value] for a, b in cases]))\n"
    )
    import json

    payload = json.dumps([[a.tolist(), b.tolist()] for a, b in cases])
    env = dict(os.environ, LCIS_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], input=payload, capture_output=True, text=True, env=env, check=True)
    got = json.loads(out.stdout)
    assert [g[0] for g in got] == want
    assert all(len(set(g)) == 1 for g in got)
