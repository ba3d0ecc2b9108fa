"""Acceptance suite: one PASS/FAIL line per criterion.

Run under pytest, or directly with ``python tests/test_acceptance.py``.
Each criterion returns ``(passed, report)``; reports hold no timings so two
runs can be compared byte for byte.
"""

from __future__ import annotations

import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from opbar import asymptotics as asy  # noqa: E402
from opbar import exact_seq  # noqa: E402
from opbar import inequalities as ineq  # noqa: E402
from opbar.certified_real import Comparison, CertifiedReal, compare, exp  # noqa: E402
from opbar.search import find_threshold, problem51_explore  # noqa: E402
from oracles import overpartition_count_by_enumeration  # noqa: E402


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


def criterion_1():
    oracle = [overpartition_count_by_enumeration(n) for n in range(61)]
    t = time.perf_counter()
    values = exact_seq.overpartition_range(0, 60, exact_seq.OverpartitionCache())
    elapsed = time.perf_counter() - t
    ok = values == oracle and values[3] == 8
    return ok, elapsed < 1.0, {"pbar_0_60": [str(v) for v in values], "pbar_3": values[3]}


def criterion_2():
    t = time.perf_counter()
    res = find_threshold("det3_pos", 3, 2000)
    elapsed = time.perf_counter() - t
    ok = res.minimal_n == 42 and len(res.violations) > 0 and max(res.violations) < 42
    return ok, elapsed < 10, {"minimal_n": res.minimal_n, "violations": list(res.violations)}


def criterion_3():
    t = time.perf_counter()
    negatives = [n for n in range(42, 2001) if ineq.two_log_lhs(n) <= 0]
    disagree = [n for n in range(42, 2001) if _sign(ineq.two_log_lhs(n)) != ineq.toeplitz_det(n, 3).sign]
    elapsed = time.perf_counter() - t
    return not negatives and not disagree, elapsed < 10, {"nonpositive": negatives, "sign_mismatch": disagree}


def criterion_4():
    t = time.perf_counter()
    bounds = find_threshold("bounds_b1b2", 94, 2000, precision_cap=1024, window=0)
    tt = find_threshold("ttilde_vs_mu6", 1, 1000)
    elapsed = time.perf_counter() - t
    ok = not bounds.violations and tt.minimal_n == 275
    report = {
        "bounds_failures": list(bounds.violations),
        "bounds_undecided": list(bounds.undecided),
        "ttilde_vs_mu6_minimal_n": tt.minimal_n,
    }
    return ok, elapsed < 60, report


def criterion_5():
    t = time.perf_counter()
    runs = {pid: find_threshold(pid, lo, 1000, precision_cap=8192, window=0)
            for pid, lo in [("sandwich_fug", 94), ("sandwich_s1ss2", 91), ("s2_lt_1", 3), ("g_lt_phi_s", 30)]}  # fmt: skip
    elapsed = time.perf_counter() - t
    ok = all(not r.violations and not r.undecided for r in runs.values())
    report = {pid: {"failures": list(r.violations), "undecided": list(r.undecided)} for pid, r in runs.items()}
    return ok, elapsed < 300, report


def criterion_6():
    t = time.perf_counter()
    outside = [n for n in range(1, 301) if not asy.zuckerman_estimate(n, 2).contains(exact_seq.overpartition(n))]
    elapsed = time.perf_counter() - t
    return not outside, elapsed < 60, {"outside_error_bound": outside}


def criterion_7():
    t = time.perf_counter()
    br = find_threshold("brackets_n59", 59, 2000, window=0)
    rng = random.Random(20261015)
    samples = [-Fraction(rng.randrange(1, 2 * 10**6), 10**5) for _ in range(1000)]
    taylor_bad = []
    for x in samples:
        e = lambda bits, x=x: exp(CertifiedReal.exact(x, bits))  # noqa: E731
        if compare(ineq.taylor_lower7(x), e) is not Comparison.LESS or compare(e, ineq.taylor_upper6(x)) is not Comparison.LESS:
            taylor_bad.append(str(x))
    r_bad = [n for n in range(59, 501) if not ineq.r_bounds(n).combination().is_negative()]
    elapsed = time.perf_counter() - t
    ok = not br.violations and not taylor_bad and not r_bad
    report = {"bracket_failures": list(br.violations), "taylor_failures": taylor_bad, "r_combination_failures": r_bad}
    return ok, elapsed < 120, report


def criterion_8():
    t = time.perf_counter()
    negative_minor = [n for n in range(3, 2001) if min(ineq.toeplitz_det(n, 3).minor_signs) < 0]
    det2 = find_threshold("det2_pos", 1, 2000)
    zero_at = [n for n in det2.violations if ineq.toeplitz_det(n, 2).det == 0]
    elapsed = time.perf_counter() - t
    ok = not negative_minor and det2.minimal_n == 3 and zero_at == [1, 2]
    report = {
        "negative_minor_at": negative_minor,
        "det2_minimal_n": det2.minimal_n,
        "det2_zero_at": zero_at,
        "note": "det M2 vanishes at n = 2, so strict positivity starts at n = 3",
    }
    return ok, elapsed < 60, report


def criterion_9():
    t = time.perf_counter()
    full = problem51_explore(4, 5000)
    shorter = problem51_explore(4, 4000)
    elapsed = time.perf_counter() - t
    ok = full.empirical_n_k is not None and full.empirical_n_k == shorter.empirical_n_k and full.exploratory
    report = {"k": 4, "empirical_n_k": full.empirical_n_k, "violations": list(full.violations), "label": "exploratory"}
    return ok, elapsed < 300, report


CRITERIA = {
    1: ("exactness anchor pbar(0..60)", criterion_1),
    2: ("det M3 threshold 42", criterion_2),
    3: ("2-log-concavity 42..2000", criterion_3),
    4: ("B1 < pbar < B2 and ttilde threshold", criterion_4),
    5: ("sandwiches, s2 < 1, g < phi(s)", criterion_5),
    6: ("Zuckerman series with error bound", criterion_6),
    7: ("brackets, Taylor sandwich, R combination", criterion_7),
    8: ("M3 minors and det M2 threshold", criterion_8),
    9: ("k = 4 determinant exploration", criterion_9),
}


def clear_caches() -> None:
    for fn in (asy.pi, asy.mu, asy.omega_phase, ineq.five_point, ineq.f, ineq.g, ineq.brackets):
        fn.cache_clear()
    exact_seq.set_default_cache(exact_seq.OverpartitionCache())


def run_all(emit=print) -> tuple[dict[int, tuple[bool, bool]], str]:
    """Run criteria 1 to 9; return per-criterion (correct, fast) and the JSON report."""
    verdicts, reports = {}, {}
    for k, (label, fn) in CRITERIA.items():
        correct, fast, report = fn()
        verdicts[k] = (correct, fast)
        reports[str(k)] = {"label": label, "passed": correct, "report": report}
        status = "PASS" if correct and fast else "FAIL"
        detail = "" if fast else " (too slow)"
        emit(f"criterion {k}: {status}  {label}{detail}")
    return verdicts, json.dumps(reports, indent=2, sort_keys=True)


@pytest.fixture(scope="module")
def acceptance_runs():
    lines: list[str] = []
    clear_caches()
    first = run_all(lines.append)
    clear_caches()
    second = run_all(lambda _line: None)
    return lines, first, second


@pytest.mark.slow
@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(acceptance_runs, k, capsys):
    lines, (verdicts, _), _ = acceptance_runs
    with capsys.disabled():
        print("\n" + lines[k - 1])
    correct, fast = verdicts[k]
    assert correct, lines[k - 1]
    assert fast, lines[k - 1]


@pytest.mark.slow
def test_criterion_10_deterministic_report(acceptance_runs, capsys):
    _, (_, first), (_, second) = acceptance_runs
    ok = first == second
    with capsys.disabled():
        print(f"\ncriterion 10: {'PASS' if ok else 'FAIL'}  byte-identical JSON reports across two runs")
    assert ok


if __name__ == "__main__":
    clear_caches()
    _, a = run_all()
    clear_caches()
    _, b = run_all(lambda _line: None)
    print(f"criterion 10: {'PASS' if a == b else 'FAIL'}  byte-identical JSON reports across two runs")
