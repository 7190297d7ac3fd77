"""``lcis`` command line: run, sig, gen, verify, bench.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import csv
import logging
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional

import numpy as np

from . import fast, genlb, oracle
from .core import compress, matching_pair_count, read_sequence, write_sequence

log = logging.getLogger("lcis")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
CSV_HEADER = ["n", "seed", "family", "alphabet", "algo", "lcis", "match_pairs", "sig_pairs", "wall_time_ns", "probe_count"]
ALGOS = ("fast", "dp", "brute")


class UsageError(Exception):
    pass


def _load_pair(a_path, b_path):
    try:
        raw_a, raw_b = read_sequence(a_path), read_sequence(b_path)
    except (OSError, ValueError) as e:
        raise UsageError(str(e)) from None
    return raw_a, raw_b


def _compute(algo: str, A, B) -> int:
    if algo == "fast":
        return fast.lcis_fast(A, B)
    if algo == "dp":
        return oracle.lcis_length_dp(A, B)
    try:
        return oracle.lcis_bruteforce(A, B)
    except ValueError as e:
        raise UsageError(str(e)) from None


# ------------------------------------------------------------------ run / sig


def cmd_run(args) -> int:
    raw_a, raw_b = _load_pair(args.a, args.b)
    A, B = compress(raw_a, raw_b)
    if args.witness:
        if args.algo != "dp":
            raise UsageError("--witness needs --algo dp")
        t = oracle.lcis_dp(A, B)
        print(t.value)
        print(" ".join(str(raw_a[p.x - 1]) for p in t.witness()))
        return EXIT_OK
    print(_compute(args.algo, A, B))
    return EXIT_OK


def cmd_sig(args) -> int:
    raw_a, raw_b = _load_pair(args.a, args.b)
    A, B = compress(raw_a, raw_b)
    total, per = oracle.significant_count(A, B)
    print(total)
    if args.per_symbol:
        values = np.unique(np.asarray(raw_a + raw_b, dtype=np.int64))
        for s in sorted(per):
            print(f"{values[s - 1]},{per[s]}")
    return EXIT_OK


# ------------------------------------------------------------------ gen


def cmd_gen(args) -> int:
    if args.family == "adversarial":
        if args.k is None:
            raise UsageError("--family adversarial needs --k")
        try:
            inst = genlb.build_padded(args.k, args.variant)
        except ValueError as e:
            raise UsageError(str(e)) from None
        A, B = inst.A, inst.B
        print(inst.certified_tau_pairs)
    else:
        if args.n is None:
            raise UsageError("--family random needs --n")
        alphabet = args.alphabet if args.alphabet is not None else max(1, math.isqrt(args.n))
        try:
            A, B = genlb.gen_random(args.n, alphabet, args.seed)
        except ValueError as e:
            raise UsageError(str(e)) from None
    try:
        write_sequence(args.out_a, A)
        write_sequence(args.out_b, B)
    except OSError as e:
        raise UsageError(str(e)) from None
    return EXIT_OK


# ------------------------------------------------------------------ verify


def _check_instance(A, B) -> Optional[str]:
    """None when fast, dp (and brute where it fits) agree and debug checks pass."""
    table = oracle.lcis_dp(A, B)
    want = table.value
    try:
        got = fast.lcis_fast_run(A, B, debug=True).value
    except fast.InvariantError as e:
        got, err = None, f"invariant: {e}"
    else:
        err = None if got == want else f"fast={got} dp={want}"
    small = len(A) <= oracle.BRUTEFORCE_CAP and len(B) <= oracle.BRUTEFORCE_CAP
    if err is None and len(A) <= 12 and len(B) <= 12:
        b = oracle.lcis_bruteforce(A, B)
        if b != want:
            err = f"brute={b} dp={want}"
    if err is not None and small:
        err += f" (brute says {oracle.lcis_bruteforce(A, B)})"
    return err


def _verify_trial(job):
    i, seed, max_n = job
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, max_n + 1))
    alphabet = [2, 8, max(1, math.isqrt(n)), n][int(rng.integers(4))]
    A, B = genlb.gen_random(n, alphabet, rng)
    err = _check_instance(A, B)
    return None if err is None else f"FAIL trial={i} seed={seed} n={n} alphabet={alphabet}: {err}"


def _verify_adversarial(job):
    """(failure or None, note on the tau certification)."""
    k, variant = job
    inst = genlb.build_padded(k, variant)
    err = _check_instance(inst.A, inst.B)
    sig = oracle.significant_pairs(inst.A, inst.B)
    good = sum(sig.level(x, y) == inst.expected_lcisto(i, j) for x, y, _, i, j in inst.tau_pairs())
    note = f"adversarial k={k} variant={variant}: {good}/{inst.certified_tau_pairs} tau pairs certified"
    return (None if err is None else f"FAIL adversarial k={k} variant={variant}: {err}"), note


def _pool_map(fn, jobs, workers):
    if workers <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(workers) as ex:
        return list(ex.map(fn, jobs))


def cmd_verify(args) -> int:
    if args.max_n < 1 or args.trials < 0:
        raise UsageError("need --max-n >= 1 and --trials >= 0")
    seeds = np.random.SeedSequence(args.seed).generate_state(max(args.trials, 1), dtype=np.uint64)
    jobs = [(i, int(seeds[i]), args.max_n) for i in range(args.trials)]
    failures = [r for r in _pool_map(_verify_trial, jobs, args.workers) if r]
    adv = [(k, v) for v in genlb.VARIANTS for k in range(7)]
    for err, note in _pool_map(_verify_adversarial, adv, args.workers):
        logging.info(note)
        if err:
            failures.append(err)
    for line in failures:
        print(line)
    print(f"verify: {args.trials} random + {len(adv)} adversarial instances, {len(failures)} failures", file=sys.stderr)
    return EXIT_FAIL if failures else EXIT_OK


# ------------------------------------------------------------------ bench


def _adversarial_k(n: int) -> int:
    k = 0
    while k < genlb.PADDED_MAX_K and genlb.base_length(k + 1) + (k + 1) * 2 ** (k + 1) <= n:
        k += 1
    return k


def _alphabet_for(spec: str, n: int) -> int:
    if spec == "sqrt":
        return max(1, math.isqrt(n))
    if spec == "n":
        return max(1, n)
    return int(spec)


def _timed(fn, *a):
    t0 = time.perf_counter_ns()
    r = fn(*a)
    return r, time.perf_counter_ns() - t0


def _bench_instance(job):
    n, seed, family, alphabet_spec, algos, sig_max_n, dp_max_n = job
    if family == "adversarial":
        inst = genlb.build_padded(_adversarial_k(n))
        A, B = inst.A, inst.B
        alphabet = int(max(A.elems.max(), B.elems.max()))
    else:
        alphabet = _alphabet_for(alphabet_spec, n)
        A, B = genlb.gen_random(n, alphabet, seed)
    size = max(len(A), len(B))
    pairs = matching_pair_count(A, B)
    sig = oracle.significant_count(A, B)[0] if size <= sig_max_n else -1
    rows = []
    for algo in algos:
        if algo == "dp" and size > dp_max_n or algo == "brute" and size > oracle.BRUTEFORCE_CAP:
            log.info("skipping %s at n=%d", algo, size)
            continue
        probes = -1
        if algo == "fast":
            run, ns = _timed(fast.lcis_fast_run, A, B)
            value, probes = run.value, run.probes
        elif algo == "dp":
            value, ns = _timed(oracle.lcis_length_dp, A, B)
        else:
            value, ns = _timed(oracle.lcis_bruteforce, A, B)
        rows.append([size, seed, family, alphabet, algo, value, pairs, sig, ns, probes])
    return rows


def _warm_up():
    A, B = genlb.gen_random(16, 4, 0)
    fast.lcis_fast_run(A, B)
    oracle.lcis_length_dp(A, B)
    oracle.significant_count(A, B)


def cmd_bench(args) -> int:
    try:
        sizes = [int(v) for v in args.sizes.split(",") if v]
        families = [v for v in args.families.split(",") if v]
        algos = [v for v in args.algos.split(",") if v]
    except ValueError:
        raise UsageError(f"bad --sizes: {args.sizes!r}") from None
    if any(f not in ("random", "adversarial") for f in families) or any(a not in ALGOS for a in algos):
        raise UsageError("unknown family or algo")
    if any(n < 1 for n in sizes):
        raise UsageError("sizes must be positive")
    if args.alphabet not in ("sqrt", "n") and not (args.alphabet.isdigit() and int(args.alphabet) > 0):
        raise UsageError(f"bad --alphabet: {args.alphabet!r}")
    _warm_up()
    jobs = [(n, args.seed, f, args.alphabet, algos, args.sig_max_n, args.dp_max_n) for f in families for n in sizes]
    results = _pool_map(_bench_instance, jobs, args.workers)
    rows = [r for rs in results for r in rs]
    mismatched = False
    for rs in results:
        if len({r[5] for r in rs}) > 1:
            log.error("algorithms disagree on n=%s family=%s: %s", rs[0][0], rs[0][2], [(r[4], r[5]) for r in rs])
            mismatched = True
    try:
        out = open(args.csv, "w", newline="") if args.csv != "-" else sys.stdout
    except OSError as e:
        raise UsageError(str(e)) from None
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(CSV_HEADER)
        w.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_FAIL if mismatched else EXIT_OK


# ------------------------------------------------------------------ entry


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lcis", description="Longest common increasing subsequence tools.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("run", help="print the LCIS length of two sequence files")
    p.add_argument("a", type=Path)
    p.add_argument("b", type=Path)
    p.add_argument("--algo", choices=ALGOS, default="fast")
    p.add_argument("--witness", action="store_true", help="also print one optimal subsequence (dp only)")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sig", help="count significant pairs")
    p.add_argument("a", type=Path)
    p.add_argument("b", type=Path)
    p.add_argument("--per-symbol", action="store_true")
    p.set_defaults(func=cmd_sig)

    p = sub.add_parser("gen", help="write an instance as two sequence files")
    p.add_argument("--family", choices=("random", "adversarial"), default="random")
    p.add_argument("--k", type=int)
    p.add_argument("--variant", choices=genlb.VARIANTS, default="printed", help="adversarial recursion")
    p.add_argument("--n", type=int)
    p.add_argument("--alphabet", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("out_a", type=Path)
    p.add_argument("out_b", type=Path)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="differential check of fast against the oracles")
    p.add_argument("--max-n", type=int, default=64)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time the algorithms and write CSV")
    p.add_argument("--sizes", default="1024,2048,4096")
    p.add_argument("--families", default="random")
    p.add_argument("--algos", default="fast,dp")
    p.add_argument("--alphabet", default="sqrt", help="integer, 'sqrt' or 'n' (random family)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", default="-", help="output path, '-' for stdout")
    p.add_argument("--sig-max-n", type=int, default=8192, help="count significant pairs up to this n")
    p.add_argument("--dp-max-n", type=int, default=1 << 15, help="skip dp above this n")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="lcis: %(message)s")
    try:
        return args.func(args)
    except UsageError as e:
        print(f"lcis: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
