import pytest

from opbar.certified_real import DomainError
from opbar.search import (
    PREDICATES,
    Problem51Result,
    evaluate,
    find_threshold,
    growth_summary,
    problem51_explore,
    threshold_from_outcomes,
)


@pytest.mark.parametrize(
    "pid, lo, hi, expected",
    [
        ("det3_pos", 3, 2000, 42),
        ("ttilde_vs_mu6", 1, 1000, 275),
        ("bounds_b1b2", 1, 2000, 94),
        ("two_log_concave", 2, 2000, 42),
        ("g_lt_phi_s", 2, 1000, 30),
        ("det2_pos", 1, 500, 3),
    ],
)
def test_thresholds(pid, lo, hi, expected):
    res = find_threshold(pid, lo, hi)
    assert res.minimal_n == expected
    assert res.sharp_within_range
    assert not res.undecided
    assert res.n_scanned == (lo, hi)


def test_observed_starts_of_remaining_predicates():
    assert find_threshold("sandwich_fug", 2, 400).minimal_n == 91
    assert find_threshold("sandwich_s1ss2", 3, 400).minimal_n == 19
    assert find_threshold("brackets_n59", 3, 400).minimal_n == 56
    res = find_threshold("s2_lt_1", 3, 400)
    assert res.minimal_n == 3 and not res.violations


def test_det3_violations_listed():
    res = find_threshold("det3_pos", 3, 500)
    assert res.violations[-3:] == (35, 38, 41)


def test_exact_predicates_have_no_cap():
    assert find_threshold("det3_pos", 3, 200).precision_cap is None
    assert find_threshold("s2_lt_1", 3, 200, precision_cap=1024).precision_cap == 1024


class TestWindow:
    def test_too_short_tail_withholds(self):
        res = find_threshold("det3_pos", 3, 100)
        assert res.minimal_n is None
        assert res.violations[-1] == 41

    def test_exact_window_edge(self):
        # withheld while hi - minimal_n < window
        assert threshold_from_outcomes(0, [False] + [True] * 101, 100)[0] == 1
        assert threshold_from_outcomes(0, [False] + [True] * 100, 100)[0] is None

    def test_undecided_counts_as_violation(self):
        minimal, violations, undecided = threshold_from_outcomes(10, [True, None, True, True], 1)
        assert minimal == 12 and violations == (11,) and undecided == (11,)

    def test_all_fail(self):
        assert threshold_from_outcomes(0, [False, False], 0) == (None, (0, 1), ())


def test_errors():
    with pytest.raises(ValueError):
        find_threshold("nope", 1, 10)
    with pytest.raises(DomainError):
        find_threshold("det3_pos", 1, 10)
    with pytest.raises(DomainError):
        find_threshold("det3_pos", 10, 5)
    with pytest.raises(DomainError):
        evaluate("s2_lt_1", 2)


def test_evaluate():
    assert evaluate("det3_pos", 42) is True
    assert evaluate("det3_pos", 41) is False
    assert evaluate("g_lt_phi_s", 3) is False  # s(3) = 1 leaves phi undefined


def test_registry_metadata():
    assert {p.id for p in PREDICATES.values()} == set(PREDICATES)
    assert all(p.min_index >= 1 and p.description for p in PREDICATES.values())


def test_deterministic_and_parallel_equal():
    a = find_threshold("sandwich_s1ss2", 3, 250)
    b = find_threshold("sandwich_s1ss2", 3, 250)
    c = find_threshold("sandwich_s1ss2", 3, 250, workers=2)
    assert a == b == c


class TestProblem51:
    def test_k3(self):
        res = problem51_explore(3, 2000)
        assert res.empirical_n_k == 42 and not res.exploratory

    def test_k2(self):
        res = problem51_explore(2, 2000)
        assert res.empirical_n_k == 3
        assert res.violations == (1, 2)

    def test_k4_trace(self):
        res = problem51_explore(4, 1000, trace=True)
        assert res.exploratory
        assert res.empirical_n_k == 141
        assert len(res.det_trace) == 1000 - 3 + 1
        assert res.det_trace[res.empirical_n_k - res.lo - 1] <= 0
        assert all(sg > 0 for sg in res.det_trace[res.empirical_n_k - res.lo :])

    def test_errors(self):
        with pytest.raises(DomainError):
            problem51_explore(1, 100)
        with pytest.raises(DomainError):
            problem51_explore(4, 2)


class TestGrowth:
    def test_two_three(self):
        rows = growth_summary([problem51_explore(2, 2000), problem51_explore(3, 2000)])
        assert [(r.k, r.n_k) for r in rows] == [(2, 3), (3, 42)]
        assert rows[0].ratio_to_previous is None
        assert rows[1].ratio_to_previous == 14.0
        assert rows[1].n_k_over_k_squared == pytest.approx(42 / 9)

    def test_errors(self):
        one = Problem51Result(2, 1, 10, 3, (), 0)
        with pytest.raises(DomainError):
            growth_summary([one])
        with pytest.raises(DomainError):
            growth_summary([one, one])
