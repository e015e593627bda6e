"""Release-gate verification: every closed formula against an independent
brute-force twin.  Any disagreement is a hard failure.

Suites
  gl2       matrix counts, group order, partition identity
  charsum   complete sums, Jacobi sums, triple-sum path agreement
  elliptic  trace formula vs point enumeration, accelerator vs exact sum
  sieve     square detection, version-2 inequality, window density,
            character-sum path agreement
"""

from __future__ import annotations

import csv
import math
import os
import random

from frobmatch.arith import primes_in
from frobmatch.charsum import (
    CHARSUM_CSV_COLUMNS,
    charsum_verification_rows,
    jacobi_sum,
    jacobi_symbol,
    triple_sum,
)
from frobmatch.elliptic import CurveQ, ap_bsgs, ap_naive
from frobmatch.gl2 import (
    GL2_CSV_COLUMNS,
    order_H_formula,
    order_H_histogram,
    pair_class_count,
    verification_rows,
)
from frobmatch.sieve import (
    Multiset,
    build_prime_window,
    prime_char_sum,
    prime_char_sum_by_classes,
    sieve_bound_v2,
    square_count_exact,
)

TEST_CURVES = (CurveQ(0, 1), CurveQ(1, 0), CurveQ(2, 3), CurveQ(5, 7), CurveQ(-4, 4))
DEMO_PAIR = (CurveQ(2, 3), CurveQ(5, 7))


def count_points_enumeration(curve: CurveQ, p: int) -> int:
    """#E(F_p) by tabulating y^2 values and scanning x; no Legendre symbols."""
    sq = [0] * p
    for y in range(p):
        sq[y * y % p] += 1
    a, b = curve.A % p, curve.B % p
    affine = sum(sq[(x * x % p * x + a * x + b) % p] for x in range(p))
    return affine + 1


def _write_csv(path: str, header: list[str], rows: list[list]) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def verify_gl2(out_dir: str | None = None) -> tuple[bool, str]:
    rows = verification_rows()
    bad = sum(1 for r in rows if r[7] != "true")
    if out_dir:
        _write_csv(os.path.join(out_dir, "gl2_verification.csv"), GL2_CSV_COLUMNS, rows)
    hf, hh = order_H_formula(3, 5), order_H_histogram(3, 5)
    order_ok = hf == hh and order_H_formula(3, 7) == order_H_histogram(3, 7)
    part = sum(
        pair_class_count(3, 5, d, s, t)
        for d in range(15)
        if math.gcd(d, 15) == 1
        for s in range(15)
        for t in range(15)
    )
    part_ok = part == hf
    ok = bad == 0 and order_ok and part_ok
    return ok, (
        f"gl2: {len(rows)} formula-vs-enumeration cells, {bad} mismatches; "
        f"order formula==histogram: {order_ok}; partition sum==order: {part_ok}"
    )


def verify_charsum(out_dir: str | None = None) -> tuple[bool, str]:
    rows = charsum_verification_rows(97)
    bad = sum(1 for r in rows if r[4] != "true")
    if out_dir:
        _write_csv(os.path.join(out_dir, "charsum_verification.csv"), CHARSUM_CSV_COLUMNS, rows)
    jac_ok = all(
        jacobi_sum(q) == -jacobi_symbol(-1, q)
        for q in primes_in(2, 97)
        if q > 2
    )
    triple_ok = True
    odd = [q for q in primes_in(2, 31) if q > 2]
    for i, q1 in enumerate(odd):
        for q2 in odd[i + 1 :]:
            if triple_sum(q1, q2) != (q1 - 1) * (q2 - 1):  # raises on path mismatch
                triple_ok = False
    ok = bad == 0 and jac_ok and triple_ok
    return ok, (
        f"charsum: {len(rows)} brute-vs-closed cells, {bad} mismatches; "
        f"jacobi-sum identity: {jac_ok}; triple-sum equality: {triple_ok}"
    )


def verify_elliptic(p_max_naive: int = 1000, p_max_bsgs: int = 10_000) -> tuple[bool, str]:
    mism_enum = mism_bsgs = 0
    checked = 0
    for curve in TEST_CURVES:
        for p in primes_in(3, p_max_bsgs):
            if not curve.is_good(p):
                continue
            checked += 1
            fast = ap_bsgs(curve, p)
            if p < p_max_naive:
                a = ap_naive(curve, p)
                if a != p + 1 - count_points_enumeration(curve, p):
                    mism_enum += 1
                if fast != a:
                    mism_bsgs += 1
            elif fast != ap_naive(curve, p):
                mism_bsgs += 1
    ok = mism_enum == 0 and mism_bsgs == 0
    return ok, (
        f"elliptic: {checked} traces over {len(TEST_CURVES)} curves; "
        f"enumeration mismatches: {mism_enum}; accelerator mismatches: {mism_bsgs}"
    )


def verify_sieve() -> tuple[bool, str]:
    rng = random.Random(0xC0FFEE)
    window = build_prime_window(50)
    v2_ok = True
    for _ in range(25):
        a = Multiset(tuple(rng.randrange(1, 10**9 + 1) for _ in range(1000)))
        rep = sieve_bound_v2(a, window)  # raises if the inequality fails
        v2_ok = v2_ok and rep.exact_square_count <= rep.bound_total

    sample = [rng.randrange(1, 10**6 + 1) for _ in range(1000)]
    by_op = square_count_exact(Multiset(tuple(sample)))
    by_scan = sum(1 for e in sample if math.isqrt(e) ** 2 == e)
    squares_ok = by_op == by_scan

    density_ok = True
    for z in (10**3, 10**4, 10**5, 10**6):
        w = build_prime_window(z)
        expected = z / (2 * math.log(z))
        density_ok = density_ok and abs(w.P - expected) <= 0.25 * expected

    e1, e2 = DEMO_PAIR
    direct = prime_char_sum(e1, e2, 10**4, 3, 5)
    classes = prime_char_sum_by_classes(e1, e2, 10**4, 3, 5)
    paths_ok = direct == classes

    ok = v2_ok and squares_ok and density_ok and paths_ok
    return ok, (
        f"sieve: v2 inequality: {v2_ok}; square-count oracle: {squares_ok}; "
        f"window density within 25%: {density_ok}; "
        f"char-sum paths agree ({direct}): {paths_ok}"
    )


def verify_all(out_dir: str | None = None) -> int:
    """Run every suite; print one line each; 0 iff all pass."""
    failures = 0
    for name, fn in (
        ("gl2", lambda: verify_gl2(out_dir)),
        ("charsum", lambda: verify_charsum(out_dir)),
        ("elliptic", verify_elliptic),
        ("sieve", verify_sieve),
    ):
        try:
            ok, msg = fn()
        except Exception as e:  # an oracle disagreement raised inside a suite
            ok, msg = False, f"{name}: raised {e!r}"
        print(("PASS " if ok else "FAIL ") + msg)
        failures += not ok
    return 1 if failures else 0
