"""Acceptance criteria, each at its stated tolerance and time limit.

A pass/fail line per criterion is printed in the pytest terminal summary;
running this file directly prints the same lines.
"""

import time

import pytest

from stirling2adic.exact import (
    inversion_check,
    stirling2,
    stirling2_column,
    stirling2_explicit,
    stirling2_series,
    vp,
)
from stirling2adic.levels import ClassId, ExactPeriodic, build_level_tree, m_level
from stirling2adic.padic import numerator_period, s5_numerator_mod, v2_stirling5
from stirling2adic.verify import (
    verify_lemma_2_1,
    verify_theorem_2_7,
    verify_theorem_3_2,
    verify_theorem_3_3,
    verify_wannemacker,
)

RESULTS: list[tuple[str, bool, str]] = []


def record(name: str, ok: bool, detail: str = "") -> None:
    RESULTS.append((name, ok, detail))
    assert ok, f"{name}: {detail}"


# values as stated in the acceptance list
GOLDEN = [(28, 6), (60, 4), (31, 7), (61, 4), (92, 5), (156, 11), (412, 7)]


@pytest.mark.parametrize("n, v", GOLDEN)
def test_criterion_1_golden_valuations(n, v):
    oracle = vp(stirling2(n, 5), 2)
    fast = v2_stirling5(n)
    record(
        f"1  golden v2(S({n},5)) = {v}",
        oracle == v and fast == v,
        f"oracle={oracle} fast={fast}",
    )


def test_criterion_1_time():
    t0 = time.perf_counter()
    for n, _ in GOLDEN:
        vp(stirling2(n, 5), 2)
        v2_stirling5(n)
    elapsed = time.perf_counter() - t0
    record("1  golden valuations under 1 s", elapsed < 1.0, f"{elapsed:.3f} s")


def test_criterion_2_theorem_2_7_sweep():
    rep = verify_theorem_2_7(100_000, exact_max=500)
    ok = rep.passed and rep.checked_count == 100_000 - 1 and rep.notes["cross_checked"] == 998
    record("2  q_4i != q_4i+3 iff i = 7 mod 32, i <= 1e5", ok and rep.elapsed < 30,
           f"{rep.checked_count} indices, {len(rep.failures)} failures, {rep.elapsed:.2f} s")


def test_criterion_3_level_tree():
    t0 = time.perf_counter()
    tree = build_level_tree(5, 8, ExactPeriodic())
    elapsed = time.perf_counter() - t0
    levels = {4: [12, 15], 5: [28, 31], 6: [28, 31], 7: [28, 31], 8: [31, 156]}
    siblings = {4: ((4, 7), 2), 5: ((12, 15), 3), 6: ((60, 63), 4), 7: ((92, 95), 5), 8: ((28, 159), 6)}
    bad = []
    for m, js in levels.items():
        got = [c.j for c in m_level(tree, m)]
        if got != js:
            bad.append(f"level {m}: {got}")
        pair, c = siblings[m]
        for j in pair:
            s = tree.nodes[ClassId(5, m, j)]
            if not (s.is_constant and s.value == c and s.certainty == "exact"):
                bad.append(f"C_{{{m},{j}}}: {s.describe()}")
    record("3  k=5 level tree, levels 4..8", not bad and elapsed < 10,
           f"{elapsed:.3f} s {'; '.join(bad)}")


def test_criterion_4_powers_of_two():
    a = verify_wannemacker(10)
    b = verify_theorem_3_2(10)
    total = a.elapsed + b.elapsed
    per = sum(2**t for t in range(1, 11))
    ok = a.passed and b.passed and a.checked_count == b.checked_count == per
    record("4  v2(S(2^n,k)) and v2(S(2^n+1,k+1)) = s2(k)-1, n <= 10", ok and total < 60,
           f"{a.checked_count}+{b.checked_count} checks, {total:.2f} s")


def test_criterion_5_theorem_3_3():
    rep = verify_theorem_3_3(10)
    record("5  three-case v2(S(2^n+2,k+2)), n <= 10",
           rep.passed and rep.checked_count == 2046 and rep.elapsed < 60,
           f"{rep.checked_count} checks, {rep.elapsed:.2f} s")


def test_criterion_6_lte_grid():
    rep = verify_lemma_2_1(8, 9, 8, 9)
    record("6  v2((2^N r +- 1)^(2^m i) - 1) = m+N grid",
           rep.passed and rep.checked_count == 7 * 5 * 8 * 5 * 2 and rep.elapsed < 5,
           f"{rep.checked_count} checks, {rep.elapsed:.3f} s")


def test_criterion_7_oracle_equivalence():
    bad = []
    for n in range(0, 61):
        for k in range(1, n + 1):
            a = stirling2(n, k)
            if not a == stirling2_explicit(n, k) == stirling2_series(k, n)[n - k]:
                bad.append((n, k))
    inv = inversion_check(25)
    col = stirling2_column(5, 2000)
    fast_bad = [n for n in range(5, 2001) if v2_stirling5(n) != vp(col[n], 2)]
    record("7  three-way agreement n <= 60, inversion to 25, fast path n <= 2000",
           not bad and inv and not fast_bad,
           f"three-way mismatches={len(bad)} inversion={inv} fast mismatches={len(fast_bad)}")


def test_criterion_8_periodicity():
    bad = []
    for M in range(3, 13):
        P = numerator_period(M)
        if P != 2 ** (M - 2):
            bad.append(("period", M))
        for n in range(M, M + 2 * P):
            if s5_numerator_mod(n, M) != s5_numerator_mod(n + P, M):
                bad.append((M, n))
    record("8  numerator period 2^(M-2), M in [3,12]", not bad, f"{len(bad)} mismatches")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
