"""Bounds on consecutive ratios of overpartition numbers, and exact determinants.

Notation follows the usual one for this problem: ``u_n = pbar(n-1) pbar(n+1) / pbar(n)^2``,
``s(n) = u_{n-1} + u_{n+1} - u_{n-1} u_{n+1}``, and ``r, x, y, z, w`` are
``mu(n-2), ..., mu(n+2)``. The exact quantities (``u``, ``s``, determinants,
the 2-log-concavity expression) are integers or fractions; the analytic ones
are enclosures.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .asymptotics import mu, pi
from .certified_real import DEFAULT_PRECISION, CertifiedReal, DomainError, exp, sqrt
from .exact_seq import OverpartitionCache, overpartition

__all__ = [
    "BoundProfile",
    "Brackets",
    "FivePoint",
    "RBounds",
    "ToeplitzReport",
    "alpha",
    "bareiss_det",
    "beta",
    "bound_profile",
    "brackets",
    "det3_cofactor",
    "exponent_sums",
    "f",
    "five_point",
    "g",
    "h_factor",
    "phi_root",
    "q_factor",
    "q_poly",
    "r_bounds",
    "s",
    "s1",
    "s2",
    "taylor_lower7",
    "taylor_upper6",
    "toeplitz_det",
    "toeplitz_matrix",
    "two_log_lhs",
    "u",
]

# -- exact ratios ----------------------------------------------------------


def u(n: int, cache: OverpartitionCache | None = None) -> Fraction:
    """``pbar(n-1) pbar(n+1) / pbar(n)^2`` as an exact fraction."""
    if n < 1:
        raise DomainError(f"u(n) needs n >= 1, got {n}")
    a, b, c = (overpartition(m, cache) for m in (n - 1, n, n + 1))
    return Fraction(a * c, b * b)


def s(n: int, cache: OverpartitionCache | None = None) -> Fraction:
    if n < 2:
        raise DomainError(f"s(n) needs n >= 2, got {n}")
    lo, hi = u(n - 1, cache), u(n + 1, cache)
    return lo + hi - lo * hi


def q_poly(n: int, t: Fraction | int, cache: OverpartitionCache | None = None) -> Fraction:
    """``s(n) t^2 - 2t + 1`` evaluated exactly."""
    t = Fraction(t)
    return s(n, cache) * t * t - 2 * t + 1


def two_log_lhs(n: int, cache: OverpartitionCache | None = None) -> int:
    """Left side of the 2-log-concavity inequality at ``n``.

    ``(P(n)^2 - P(n-1)P(n+1))^2 - (P(n-1)^2 - P(n-2)P(n)) (P(n+1)^2 - P(n)P(n+2))``
    """
    if n < 2:
        raise DomainError(f"two_log_lhs needs n >= 2, got {n}")
    a, b, c, d, e = (overpartition(m, cache) for m in range(n - 2, n + 3))
    return (c * c - b * d) ** 2 - (b * b - a * c) * (d * d - c * e)


# -- Toeplitz determinants -------------------------------------------------


def toeplitz_matrix(n: int, k: int, cache: OverpartitionCache | None = None) -> list[list[int]]:
    """The ``k x k`` matrix with entry ``(i, j) = pbar(n - i + j)``, 1-based."""
    if k < 1:
        raise DomainError(f"order must be >= 1, got {k}")
    if n < k - 1:
        raise DomainError(f"n={n} < k-1={k - 1} would need negative indices")
    return [[overpartition(n - i + j, cache) for j in range(k)] for i in range(k)]


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free Gaussian elimination."""
    m = [list(row) for row in matrix]
    size = len(m)
    if any(len(row) != size for row in m):
        raise ValueError("matrix must be square")
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if m[k][k] == 0:
            for i in range(k + 1, size):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, size):
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, size):
                row_i[j] = (row_i[j] * pivot - row_i[k] * row_k[j]) // prev
        prev = pivot
    return sign * m[-1][-1]


def det3_cofactor(n: int, cache: OverpartitionCache | None = None) -> int:
    """``det M_3`` by first-row cofactor expansion (independent of Bareiss)."""
    a, b, c, d, e = (overpartition(m, cache) for m in range(n - 2, n + 3))
    return c * (c * c - b * d) - d * (b * c - a * d) + e * (b * b - a * c)


@dataclass(frozen=True)
class ToeplitzReport:
    n: int
    k: int
    det: int
    # ((rows), (cols), determinant) for every 2x2 minor, filled for k = 3
    minors: tuple[tuple[tuple[int, int], tuple[int, int], int], ...] = ()

    @property
    def minor_signs(self) -> tuple[int, ...]:
        return tuple((m > 0) - (m < 0) for _, _, m in self.minors)

    @property
    def sign(self) -> int:
        return (self.det > 0) - (self.det < 0)


def toeplitz_det(n: int, k: int, cache: OverpartitionCache | None = None) -> ToeplitzReport:
    mat = toeplitz_matrix(n, k, cache)
    minors = ()
    if k == 3:
        minors = tuple(
            (rows, cols, mat[rows[0]][cols[0]] * mat[rows[1]][cols[1]] - mat[rows[0]][cols[1]] * mat[rows[1]][cols[0]])
            for rows in combinations(range(3), 2)
            for cols in combinations(range(3), 2)
        )
    det = mat[0][0] if k == 1 else bareiss_det(mat)
    return ToeplitzReport(n=n, k=k, det=det, minors=minors)


# -- polynomial helpers -------------------------------------------------------


def alpha(t):
    """``t^6 - t^5 + 1``."""
    return t**6 - t**5 + 1


def beta(t):
    """``t^6 - t^5 - 1``."""
    return t**6 - t**5 - 1


_INV_FACT = [Fraction(1, 1), Fraction(1, 1), Fraction(1, 2), Fraction(1, 6), Fraction(1, 24),
             Fraction(1, 120), Fraction(1, 720), Fraction(1, 5040)]  # fmt: skip


def _horner(coeffs: Sequence[Fraction], t):
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * t + c
    return acc


def taylor_upper6(t):
    """Degree-6 Taylor polynomial of ``exp``; exceeds ``e^t`` for ``t < 0``."""
    return _horner(_INV_FACT[:7], t if isinstance(t, CertifiedReal) else Fraction(t))


def taylor_lower7(t):
    """Degree-7 Taylor polynomial of ``exp``; below ``e^t`` for ``t < 0``."""
    return _horner(_INV_FACT[:8], t if isinstance(t, CertifiedReal) else Fraction(t))


def phi_root(t, precision_bits: int = DEFAULT_PRECISION) -> CertifiedReal:
    """``(1 - sqrt(1 - t)) / t``, the smaller root of ``t X^2 - 2X + 1``."""
    if isinstance(t, CertifiedReal):
        if not (t.is_positive() and t.certainly_lt(1)):
            raise DomainError("phi_root needs an enclosure strictly inside (0, 1)")
        x = t
    else:
        t = Fraction(t)
        if not 0 < t < 1:
            raise DomainError(f"phi_root needs 0 < t < 1, got {t}")
        x = CertifiedReal.exact(t, precision_bits)
    return (1 - sqrt(1 - x)) / x


# -- analytic bounds on u_n ------------------------------------------------------


@dataclass(frozen=True)
class FivePoint:
    r: CertifiedReal
    x: CertifiedReal
    y: CertifiedReal
    z: CertifiedReal
    w: CertifiedReal


@lru_cache(maxsize=8192)
def five_point(n: int, precision_bits: int = DEFAULT_PRECISION) -> FivePoint:
    if n < 3:
        raise DomainError(f"five_point needs n >= 3, got {n}")
    return FivePoint(*(mu(m, precision_bits) for m in range(n - 2, n + 3)))


def h_factor(n: int, precision_bits: int = DEFAULT_PRECISION) -> CertifiedReal:
    """Rational part of ``f(n)``: ``beta(x) y^16 beta(z) / (x^8 alpha(y)^2 z^8)``."""
    x, y, z = (mu(m, precision_bits) for m in (n - 1, n, n + 1))
    return beta(x) * y**16 * beta(z) / (x**8 * alpha(y) ** 2 * z**8)


def q_factor(n: int, precision_bits: int = DEFAULT_PRECISION) -> CertifiedReal:
    """Rational part of ``g(n)``: ``alpha(x) y^16 alpha(z) / (x^8 beta(y)^2 z^8)``."""
    x, y, z = (mu(m, precision_bits) for m in (n - 1, n, n + 1))
    return alpha(x) * y**16 * alpha(z) / (x**8 * beta(y) ** 2 * z**8)


def _second_difference(n: int, precision_bits: int) -> CertifiedReal:
    x, y, z = (mu(m, precision_bits) for m in (n - 1, n, n + 1))
    return exp(x - 2 * y + z)


@lru_cache(maxsize=8192)
def f(n: int, precision_bits: int = DEFAULT_PRECISION) -> CertifiedReal:
    """Lower bound for ``u_n``, ``e^(x-2y+z) h(n)``; equals ``B1(n-1) B1(n+1) / B2(n)^2``."""
    if n < 2:
        raise DomainError(f"f(n) needs n >= 2, got {n}")
    return _second_difference(n, precision_bits) * h_factor(n, precision_bits)


@lru_cache(maxsize=8192)
def g(n: int, precision_bits: int = DEFAULT_PRECISION) -> CertifiedReal:
    if n < 2:
        raise DomainError(f"g(n) needs n >= 2, got {n}")
    return _second_difference(n, precision_bits) * q_factor(n, precision_bits)


def s1(n: int, precision_bits: int = DEFAULT_PRECISION) -> CertifiedReal:
    if n < 3:
        raise DomainError(f"s1(n) needs n >= 3, got {n}")
    return f(n - 1, precision_bits) + f(n + 1, precision_bits) - g(n - 1, precision_bits) * g(n + 1, precision_bits)


def s2(n: int, precision_bits: int = DEFAULT_PRECISION) -> CertifiedReal:
    if n < 3:
        raise DomainError(f"s2(n) needs n >= 3, got {n}")
    return g(n - 1, precision_bits) + g(n + 1, precision_bits) - f(n - 1, precision_bits) * f(n + 1, precision_bits)


# -- truncated expansions of r, x, z, w in y -------------------------------------
#
# Each bracket is y * (1 + sum_j c_j t^j) with t = pi^2 / y^2. The coefficients
# are the binomial series of sqrt(1 + a t) for a = -2, -1, 1, 2, with the
# last term altered (r1, x1) or dropped (z1, w1) to give a one-sided bound.

_F = Fraction
_R = [_F(-1), _F(-1, 2), _F(-1, 2), _F(-5, 8), _F(-7, 8), _F(-21, 16), _F(-33, 16)]
_X = [_F(-1, 2), _F(-1, 8), _F(-1, 16), _F(-5, 128), _F(-7, 256), _F(-21, 1024), _F(-33, 2048)]
_Z = [_F(1, 2), _F(-1, 8), _F(1, 16), _F(-5, 128), _F(7, 256), _F(-21, 1024), _F(33, 2048)]
_W = [_F(1), _F(-1, 2), _F(1, 2), _F(-5, 8), _F(7, 8), _F(-21, 16), _F(33, 16)]

BRACKET_COEFFS: dict[str, list[Fraction]] = {
    "r1": _R[:6] + [_F(-34, 16)],
    "r2": list(_R),
    "x1": _X[:6] + [_F(-34, 2048)],
    "x2": list(_X),
    "z1": _Z[:6] + [_F(0)],
    "z2": list(_Z),
    "w1": _W[:6] + [_F(0)],
    "w2": list(_W),
}


def _combine(*terms: tuple[int, str | None]) -> list[Fraction]:
    # exact coefficient list of sum(weight * bracket); None stands for y itself
    out = [_F(0)] * 7
    lead = 0
    for weight, name in terms:
        lead += weight
        if name is not None:
            out = [a + weight * b for a, b in zip(out, BRACKET_COEFFS[name])]
    return [_F(lead)] + out


def _eval_series(coeffs: Sequence[Fraction], y: CertifiedReal, t: CertifiedReal) -> CertifiedReal:
    # y * (c0 + c1 t + ... + c7 t^7)
    return y * _horner(list(coeffs), t)


def _y_and_t(n: int, precision_bits: int) -> tuple[CertifiedReal, CertifiedReal]:
    y = mu(n, precision_bits)
    return y, pi(precision_bits) ** 2 / y**2


@dataclass(frozen=True)
class Brackets:
    r1: CertifiedReal
    r2: CertifiedReal
    x1: CertifiedReal
    x2: CertifiedReal
    z1: CertifiedReal
    z2: CertifiedReal
    w1: CertifiedReal
    w2: CertifiedReal

    def check(self, point: FivePoint) -> dict[str, bool]:
        """Which of the eight strict inequalities are certainly true."""
        return {
            "r1<r": self.r1.certainly_lt(point.r),
            "r<r2": point.r.certainly_lt(self.r2),
            "x1<x": self.x1.certainly_lt(point.x),
            "x<x2": point.x.certainly_lt(self.x2),
            "z1<z": self.z1.certainly_lt(point.z),
            "z<z2": point.z.certainly_lt(self.z2),
            "w1<w": self.w1.certainly_lt(point.w),
            "w<w2": point.w.certainly_lt(self.w2),
        }


@lru_cache(maxsize=8192)
def brackets(n: int, precision_bits: int = DEFAULT_PRECISION) -> Brackets:
    """The eight truncated expansions bracketing ``r, x, z, w`` (for n >= 59)."""
    if n < 3:
        raise DomainError(f"brackets need n >= 3, got {n}")
    y, t = _y_and_t(n, precision_bits)
    return Brackets(**{name: _eval_series([_F(1)] + c, y, t) for name, c in BRACKET_COEFFS.items()})


def exponent_sums(n: int, precision_bits: int = DEFAULT_PRECISION) -> dict[str, CertifiedReal]:
    """Exact-coefficient combinations of brackets used as Taylor arguments."""
    if n < 2:
        raise DomainError(f"exponent sums need n >= 2, got {n}")
    y, t = _y_and_t(n, precision_bits)
    combos = {
        "r2-2x1+y": _combine((1, "r2"), (-2, "x1"), (1, None)),
        "r1-2x2+y": _combine((1, "r1"), (-2, "x2"), (1, None)),
        "y-2z1+w2": _combine((1, None), (-2, "z1"), (1, "w2")),
        "y-2z2+w1": _combine((1, None), (-2, "z2"), (1, "w1")),
        "r2+w2-2y": _combine((1, "r2"), (1, "w2"), (-2, None)),
        "w1+2x1-3y": _combine((1, "w1"), (2, "x1"), (-3, None)),
        "x2-2y+z2": _combine((1, "x2"), (-2, None), (1, "z2")),
        "r1+2z1-3y": _combine((1, "r1"), (2, "z1"), (-3, None)),
    }
    return {name: _eval_series(c, y, t) for name, c in combos.items()}


@dataclass(frozen=True)
class RBounds:
    """``R1 > g(n-1)``, ``R2 > g(n+1)``, ``R3 < f(n-1)``, ``R4 < f(n+1)``."""

    R1: CertifiedReal
    R2: CertifiedReal
    R3: CertifiedReal
    R4: CertifiedReal

    def combination(self) -> CertifiedReal:
        """``R1 + R2 - R3 R4 - 1``, negative when ``s2(n) < 1`` follows."""
        return self.R1 + self.R2 - self.R3 * self.R4 - 1


def r_bounds(n: int, precision_bits: int = DEFAULT_PRECISION) -> RBounds:
    if n < 59:
        raise DomainError(f"r_bounds are only claimed for n >= 59, got {n}")
    p = precision_bits
    pt = five_point(n, p)
    r, x, y, z, w = pt.r, pt.x, pt.y, pt.z, pt.w
    b = brackets(n, p)
    e = exponent_sums(n, p)
    y8 = y**8
    # bounds on alpha(.)^2 and beta(.)^2 with t^5 replaced by a bracket times t^4
    alpha_sq_upper = lambda v, v1: v**12 - 2 * v1 * v**10 + v**10 + 2 * v**6 - 2 * v1 * v**4 + 1  # noqa: E731
    beta_sq_lower = lambda v, v1, v2: v**12 - 2 * v2 * v**10 + v**10 - 2 * v**6 + 2 * v1 * v**4 + 1  # noqa: E731

    R1 = (
        (r**6 - b.r1 * r**4 + 1) * x**16 * alpha(y) * taylor_upper6(e["r2-2x1+y"])
        / (r**8 * y8 * beta_sq_lower(x, b.x1, b.x2))
    )
    R2 = (
        (w**6 - b.w1 * w**4 + 1) * z**16 * alpha(y) * taylor_upper6(e["y-2z1+w2"])
        / (w**8 * y8 * beta_sq_lower(z, b.z1, b.z2))
    )
    R3 = (
        (r**6 - b.r2 * r**4 - 1) * x**16 * beta(y) * taylor_lower7(e["r1-2x2+y"])
        / (r**8 * y8 * alpha_sq_upper(x, b.x1))
    )
    R4 = (
        (w**6 - b.w2 * w**4 - 1) * z**16 * beta(y) * taylor_lower7(e["y-2z2+w1"])
        / (w**8 * y8 * alpha_sq_upper(z, b.z1))
    )
    return RBounds(R1, R2, R3, R4)


# -- per-n summary ---------------------------------------------------------


@dataclass(frozen=True)
class BoundProfile:
    n: int
    u: Fraction
    s: Fraction
    f: CertifiedReal
    g: CertifiedReal
    s1: CertifiedReal
    s2: CertifiedReal
    phi_of_s: CertifiedReal | None
    precision_bits: int

    def u_enclosure(self) -> CertifiedReal:
        return CertifiedReal.exact(self.u, self.precision_bits)

    def s_enclosure(self) -> CertifiedReal:
        return CertifiedReal.exact(self.s, self.precision_bits)


def bound_profile(
    n: int, precision_bits: int = DEFAULT_PRECISION, cache: OverpartitionCache | None = None
) -> BoundProfile:
    if n < 3:
        raise DomainError(f"bound profile needs n >= 3, got {n}")
    s_n = s(n, cache)
    try:
        phi = phi_root(s_n, precision_bits)
    except DomainError:
        phi = None
    return BoundProfile(
        n=n,
        u=u(n, cache),
        s=s_n,
        f=f(n, precision_bits),
        g=g(n, precision_bits),
        s1=s1(n, precision_bits),
        s2=s2(n, precision_bits),
        phi_of_s=phi,
        precision_bits=precision_bits,
    )

