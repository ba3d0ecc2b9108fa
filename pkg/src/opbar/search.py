"""Empirical thresholds for the inequality predicates.

A threshold is the smallest ``N`` such that a predicate holds at every index
from ``N`` to the top of the scanned range. It is a statement about that
finite range only, and it is withheld when fewer than ``window`` indices
back it up.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from . import asymptotics as asy
from . import inequalities as ineq
from .certified_real import MAX_PRECISION, CertifiedReal, Comparison, DomainError, compare
from .exact_seq import overpartition

__all__ = [
    "DEFAULT_WINDOW",
    "PREDICATES",
    "Predicate",
    "Problem51Result",
    "ThresholdResult",
    "evaluate",
    "find_threshold",
    "growth_summary",
    "problem51_explore",
    "threshold_from_outcomes",
]

DEFAULT_WINDOW = 100

# outcome of one predicate at one n: True, False, or None for undecided at the cap
Outcome = Optional[bool]


def _less(a, b, cap: int) -> Outcome:
    verdict = compare(a, b, cap)
    if verdict is Comparison.LESS:
        return True
    if verdict is Comparison.GREATER:
        return False
    return None


def _all(outcomes: Iterable[Callable[[], Outcome]]) -> Outcome:
    # short-circuit on a definite failure; otherwise undecided wins over true
    undecided = False
    for thunk in outcomes:
        o = thunk()
        if o is False:
            return False
        if o is None:
            undecided = True
    return None if undecided else True


def _exact(value) -> Callable[[int], CertifiedReal]:
    return lambda p: CertifiedReal.exact(value, p)


# -- predicates -----------------------------------------------------------------


def _det2_pos(n: int, cap: int) -> Outcome:
    return ineq.toeplitz_det(n, 2).det > 0


def _det3_pos(n: int, cap: int) -> Outcome:
    return ineq.toeplitz_det(n, 3).det > 0


def _two_log_concave(n: int, cap: int) -> Outcome:
    return ineq.two_log_lhs(n) > 0


def _bounds_b1b2(n: int, cap: int) -> Outcome:
    pb = overpartition(n)
    return _all(
        [
            lambda: _less(lambda p: asy.b1(n, p), pb, cap),
            lambda: _less(pb, lambda p: asy.b2(n, p), cap),
        ]
    )


def _ttilde_vs_mu6(n: int, cap: int) -> Outcome:
    return _less(lambda p: asy.ttilde_bound(n, p), lambda p: 1 / asy.mu(n, p) ** 6, cap)


def _s2_lt_1(n: int, cap: int) -> Outcome:
    return _less(lambda p: ineq.s2(n, p), 1, cap)


def _g_lt_phi_s(n: int, cap: int) -> Outcome:
    s_n = ineq.s(n)
    if not 0 < s_n < 1:
        return False
    return _less(lambda p: ineq.g(n, p), lambda p: ineq.phi_root(s_n, p), cap)


def _sandwich_fug(n: int, cap: int) -> Outcome:
    u_n = _exact(ineq.u(n))
    return _all(
        [
            lambda: _less(lambda p: ineq.f(n, p), u_n, cap),
            lambda: _less(u_n, lambda p: ineq.g(n, p), cap),
        ]
    )


def _sandwich_s1ss2(n: int, cap: int) -> Outcome:
    s_n = _exact(ineq.s(n))
    return _all(
        [
            lambda: _less(lambda p: ineq.s1(n, p), s_n, cap),
            lambda: _less(s_n, lambda p: ineq.s2(n, p), cap),
        ]
    )


_BRACKET_SIDES = [
    ("r1", "r", True), ("r", "r2", False), ("x1", "x", True), ("x", "x2", False),
    ("z1", "z", True), ("z", "z2", False), ("w1", "w", True), ("w", "w2", False),
]  # fmt: skip


def _brackets_n59(n: int, cap: int) -> Outcome:
    def side(name: str, p: int) -> CertifiedReal:
        if len(name) == 1:
            return getattr(ineq.five_point(n, p), name)
        return getattr(ineq.brackets(n, p), name)

    return _all(
        [
            (lambda a=a, b=b: _less(lambda p: side(a, p), lambda p: side(b, p), cap))
            for a, b, _ in _BRACKET_SIDES
        ]
    )


@dataclass(frozen=True)
class Predicate:
    id: str
    min_index: int
    exact: bool
    check: Callable[[int, int], Outcome]
    description: str


PREDICATES: dict[str, Predicate] = {
    p.id: p
    for p in [
        Predicate("det2_pos", 1, True, _det2_pos, "det M2(pbar(n)) > 0"),
        Predicate("det3_pos", 2, True, _det3_pos, "det M3(pbar(n)) > 0"),
        Predicate("two_log_concave", 2, True, _two_log_concave, "2-log-concavity expression > 0"),
        Predicate("bounds_b1b2", 1, False, _bounds_b1b2, "B1(n) < pbar(n) < B2(n)"),
        Predicate("ttilde_vs_mu6", 1, False, _ttilde_vs_mu6, "10 exp(-mu/2) < mu^-6"),
        Predicate("s2_lt_1", 3, False, _s2_lt_1, "s2(n) < 1"),
        Predicate("g_lt_phi_s", 2, False, _g_lt_phi_s, "g(n) < phi(s(n))"),
        Predicate("sandwich_fug", 2, False, _sandwich_fug, "f(n) < u_n < g(n)"),
        Predicate("sandwich_s1ss2", 3, False, _sandwich_s1ss2, "s1(n) < s(n) < s2(n)"),
        Predicate("brackets_n59", 3, False, _brackets_n59, "r1<r<r2, x1<x<x2, z1<z<z2, w1<w<w2"),
    ]
}


def evaluate(predicate_id: str, n: int, precision_cap: int = MAX_PRECISION) -> Outcome:
    """Evaluate one registered predicate at one index."""
    pred = _lookup(predicate_id)
    if n < pred.min_index:
        raise DomainError(f"{predicate_id} is defined from n = {pred.min_index}, got {n}")
    return pred.check(n, precision_cap)


def _lookup(predicate_id: str) -> Predicate:
    try:
        return PREDICATES[predicate_id]
    except KeyError:
        known = ", ".join(sorted(PREDICATES))
        raise ValueError(f"unknown predicate {predicate_id!r}; known: {known}") from None


# -- thresholds -------------------------------------------------------------------


@dataclass(frozen=True)
class ThresholdResult:
    predicate_id: str
    lo: int
    hi: int
    minimal_n: Optional[int]
    violations: tuple[int, ...]
    undecided: tuple[int, ...]
    window: int
    precision_cap: Optional[int] = None

    @property
    def n_scanned(self) -> tuple[int, int]:
        return (self.lo, self.hi)

    @property
    def sharp_within_range(self) -> bool:
        """True when ``minimal_n - 1`` was scanned and fails."""
        return self.minimal_n is not None and (self.minimal_n - 1) in self.violations

    @property
    def has_undecided(self) -> bool:
        return bool(self.undecided)


def threshold_from_outcomes(
    lo: int, outcomes: Sequence[Outcome], window: int = DEFAULT_WINDOW
) -> tuple[Optional[int], tuple[int, ...], tuple[int, ...]]:
    """Reduce per-index outcomes to ``(minimal_n, violations, undecided)``.

    Undecided indices count as violations.
    """
    hi = lo + len(outcomes) - 1
    violations = tuple(lo + i for i, o in enumerate(outcomes) if o is not True)
    undecided = tuple(lo + i for i, o in enumerate(outcomes) if o is None)
    candidate = violations[-1] + 1 if violations else lo
    if candidate > hi or hi - candidate < window:
        return None, violations, undecided
    return candidate, violations, undecided


def _scan(predicate_id: str, ns: list[int], cap: int, workers: int) -> list[Outcome]:
    pred = PREDICATES[predicate_id]
    if workers <= 1 or len(ns) < 2:
        return [pred.check(n, cap) for n in ns]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        chunk = max(1, len(ns) // (4 * workers))
        return list(pool.map(_worker_eval, [(predicate_id, n, cap) for n in ns], chunksize=chunk))


def _worker_eval(args: tuple[str, int, int]) -> Outcome:
    predicate_id, n, cap = args
    return PREDICATES[predicate_id].check(n, cap)


def find_threshold(
    predicate_id: str,
    lo: int,
    hi: int,
    precision_cap: int = MAX_PRECISION,
    window: int = DEFAULT_WINDOW,
    workers: int = 1,
) -> ThresholdResult:
    """Scan ``lo..hi`` and report where the predicate starts holding for good."""
    pred = _lookup(predicate_id)
    if lo < pred.min_index:
        raise DomainError(f"{predicate_id} is defined from n = {pred.min_index}, got lo={lo}")
    if hi < lo:
        raise DomainError(f"empty range: lo={lo} > hi={hi}")
    if window < 0:
        raise ValueError("window must be nonnegative")
    outcomes = _scan(predicate_id, list(range(lo, hi + 1)), precision_cap, workers)
    minimal, violations, undecided = threshold_from_outcomes(lo, outcomes, window)
    return ThresholdResult(
        predicate_id=predicate_id,
        lo=lo,
        hi=hi,
        minimal_n=minimal,
        violations=violations,
        undecided=undecided,
        window=window,
        precision_cap=None if pred.exact else precision_cap,
    )


# -- positivity of k x k Toeplitz determinants for larger k ------------------------------


@dataclass(frozen=True)
class Problem51Result:
    k: int
    lo: int
    hi: int
    empirical_n_k: Optional[int]
    violations: tuple[int, ...]
    window: int
    det_trace: tuple[int, ...] = field(default=(), repr=False)

    @property
    def n_scanned(self) -> tuple[int, int]:
        return (self.lo, self.hi)

    @property
    def exploratory(self) -> bool:
        # no published value exists beyond k = 3
        return self.k >= 4


def problem51_explore(k: int, hi: int, window: int = DEFAULT_WINDOW, trace: bool = False) -> Problem51Result:
    """Empirical ``n(k)`` for ``det (pbar(n - i + j))_{k x k} > 0`` over ``[k-1, hi]``.

    With ``trace`` the sign of every determinant is kept, in order of ``n``.
    """
    if k < 2:
        raise DomainError(f"k must be >= 2, got {k}")
    lo = k - 1
    if hi < lo:
        raise DomainError(f"hi must be >= k-1 = {lo}, got {hi}")
    signs = [ineq.toeplitz_det(n, k).sign for n in range(lo, hi + 1)]
    minimal, violations, _ = threshold_from_outcomes(lo, [sg > 0 for sg in signs], window)
    return Problem51Result(
        k=k,
        lo=lo,
        hi=hi,
        empirical_n_k=minimal,
        violations=violations,
        window=window,
        det_trace=tuple(signs) if trace else (),
    )


@dataclass(frozen=True)
class GrowthRow:
    k: int
    n_k: Optional[int]
    ratio_to_previous: Optional[float]
    n_k_over_k_squared: Optional[float]


def growth_summary(results: Sequence[Problem51Result]) -> list[GrowthRow]:
    """Table of ``(k, n(k))`` with successive ratios and ``n(k)/k^2``.

    Ratios are only filled between consecutive orders ``k`` and ``k + 1``.
    """
    if len(results) < 2:
        raise DomainError("growth summary needs at least two results")
    ks = [r.k for r in results]
    if len(set(ks)) != len(ks):
        raise DomainError(f"duplicate orders in {ks}")
    rows = []
    by_k = {r.k: r for r in results}
    for k in sorted(by_k):
        n_k = by_k[k].empirical_n_k
        prev = by_k.get(k - 1)
        ratio = None
        if prev is not None and prev.empirical_n_k and n_k is not None:
            ratio = n_k / prev.empirical_n_k
        rows.append(GrowthRow(k, n_k, ratio, None if n_k is None else n_k / k**2))
    return rows
