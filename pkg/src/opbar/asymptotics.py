"""Analytic approximations to the overpartition function.

Everything here returns :class:`~opbar.certified_real.CertifiedReal`
enclosures. ``mu(n)`` is ``pi * sqrt(n)``, the variable all of the bounds
are written in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .certified_real import (
    DEFAULT_PRECISION,
    CertifiedReal,
    DomainError,
    cos_pi,
    cosh,
    enclose_pi,
    exp,
    sin_pi,
    sinh,
    sqrt,
)
from .exact_seq import OverpartitionCache, overpartition

__all__ = [
    "OmegaPhase",
    "ZuckermanEstimate",
    "b1",
    "b2",
    "omega_phase",
    "mu",
    "pi",
    "ttilde_bound",
    "ttilde_exact",
    "zuckerman_derivative",
    "zuckerman_estimate",
]


def _require_positive(n: int) -> None:
    if n < 1:
        raise DomainError(f"index must be >= 1, got {n}")


@lru_cache(maxsize=64)
def pi(precision_bits: int = DEFAULT_PRECISION) -> CertifiedReal:
    return enclose_pi(precision_bits)


@lru_cache(maxsize=65536)
def mu(n: int, precision_bits: int = DEFAULT_PRECISION) -> CertifiedReal:
    """Enclosure of ``pi * sqrt(n)``."""
    _require_positive(n)
    return pi(precision_bits) * sqrt(CertifiedReal.exact(n, precision_bits))


def _b_common(n: int, precision_bits: int) -> tuple[CertifiedReal, CertifiedReal, CertifiedReal]:
    m = mu(n, precision_bits)
    lead = exp(m) / (8 * n)
    return lead, 1 - 1 / m, 1 / m**6


def b1(n: int, precision_bits: int = DEFAULT_PRECISION) -> CertifiedReal:
    """Lower bound ``e^mu/(8n) * (1 - 1/mu - 1/mu^6)`` for pbar(n), valid from n = 94."""
    _require_positive(n)
    lead, main, tail = _b_common(n, precision_bits)
    return lead * (main - tail)


def b2(n: int, precision_bits: int = DEFAULT_PRECISION) -> CertifiedReal:
    """Upper bound ``e^mu/(8n) * (1 - 1/mu + 1/mu^6)`` for pbar(n), valid from n = 94."""
    _require_positive(n)
    lead, main, tail = _b_common(n, precision_bits)
    return lead * (main + tail)


def ttilde_bound(n: int, precision_bits: int = DEFAULT_PRECISION) -> CertifiedReal:
    """``10 * exp(-mu(n)/2)``, the bound on the relative error term."""
    _require_positive(n)
    return 10 * exp(-mu(n, precision_bits) / 2)


def ttilde_exact(
    n: int, precision_bits: int = DEFAULT_PRECISION, cache: OverpartitionCache | None = None
) -> CertifiedReal:
    """The error term ``T(n)`` solved from ``pbar(n) = e^mu/(8n) (1 - 1/mu + T(n))``."""
    _require_positive(n)
    m = mu(n, precision_bits)
    return overpartition(n, cache) * 8 * n / exp(m) - 1 + 1 / m


# -- Zuckerman's series ---------------------------------------------------


@dataclass(frozen=True)
class OmegaPhase:
    """``omega(h, k) = exp(pi * i * phase)`` with ``phase`` reduced into [0, 2)."""

    h: int
    k: int
    phase: Fraction


@lru_cache(maxsize=4096)
def omega_phase(h: int, k: int) -> OmegaPhase:
    """Exact phase of the multiplier ``omega(h, k)`` for odd ``k``.

    >>> omega_phase(1, 3).phase
    Fraction(1, 18)
    """
    if k < 1 or k % 2 == 0:
        raise DomainError(f"k must be a positive odd integer, got {k}")
    if not 0 <= h < k:
        raise DomainError(f"h must satisfy 0 <= h < k, got h={h}, k={k}")
    if math.gcd(h, k) != 1:
        raise DomainError(f"gcd({h}, {k}) != 1")
    total = Fraction(0)
    for r in range(1, k):
        frac = Fraction(h * r % k, k)
        total += Fraction(r, k) * (frac - Fraction(1, 2))
    return OmegaPhase(h, k, total % 2)


def zuckerman_derivative(n: int, k: int, precision_bits: int = DEFAULT_PRECISION) -> CertifiedReal:
    """``d/dn [sinh(pi sqrt(n)/k) / sqrt(n)]`` in closed form."""
    _require_positive(n)
    arg = mu(n, precision_bits) / k
    p = pi(precision_bits)
    rn = sqrt(CertifiedReal.exact(n, precision_bits))
    return p * cosh(arg) / (2 * k * n) - sinh(arg) / (2 * n * rn)


def _term_phase(h: int, k: int, n: int) -> Fraction:
    # omega(h,k)^2 / omega(2h,k) * exp(-2 pi i n h / k) as a multiple of pi, mod 2
    two_h = 2 * h % k
    phase = 2 * omega_phase(h, k).phase - omega_phase(two_h, k).phase - Fraction(2 * n * h, k)
    return phase % 2


@dataclass(frozen=True)
class ZuckermanEstimate:
    n: int
    terms_used: int
    value: CertifiedReal
    error_bound: CertifiedReal
    imaginary: CertifiedReal

    def lower(self) -> CertifiedReal:
        return self.value - self.error_bound

    def upper(self) -> CertifiedReal:
        return self.value + self.error_bound

    def contains(self, exact: int) -> bool:
        """True when ``exact`` lies in ``value +- error_bound`` for certain."""
        return self.lower().lo_fraction() <= exact <= self.upper().hi_fraction()


def engel_error_bound(n: int, N: int, precision_bits: int = DEFAULT_PRECISION) -> CertifiedReal:
    """``N^(5/2) / (pi n^(3/2)) * sinh(pi sqrt(n) / N)``."""
    _require_positive(n)
    if N < 1:
        raise DomainError(f"truncation N must be >= 1, got {N}")
    rn = sqrt(CertifiedReal.exact(n, precision_bits))
    rN = sqrt(CertifiedReal.exact(N, precision_bits))
    return N * N * rN / (pi(precision_bits) * n * rn) * sinh(mu(n, precision_bits) / N)


def zuckerman_estimate(n: int, N: int, precision_bits: int = DEFAULT_PRECISION) -> ZuckermanEstimate:
    """Truncate Zuckerman's series at odd ``k <= N`` and attach Engel's error bound.

    The sum over ``h`` includes ``h = 0`` only for ``k = 1`` (the coprimality
    condition rules it out otherwise). Each term's phase is combined exactly
    before a single cosine/sine enclosure.
    """
    _require_positive(n)
    if N < 1:
        raise DomainError(f"truncation N must be >= 1, got {N}")
    real = CertifiedReal.exact(0, precision_bits)
    imag = CertifiedReal.exact(0, precision_bits)
    for k in range(1, N + 1, 2):
        weight = sqrt(CertifiedReal.exact(k, precision_bits)) * zuckerman_derivative(n, k, precision_bits)
        c = CertifiedReal.exact(0, precision_bits)
        s = CertifiedReal.exact(0, precision_bits)
        for h in range(k):
            if math.gcd(h, k) != 1:
                continue
            phase = _term_phase(h, k, n)
            c = c + cos_pi(phase, precision_bits)
            s = s + sin_pi(phase, precision_bits)
        real = real + weight * c
        imag = imag + weight * s
    two_pi = 2 * pi(precision_bits)
    return ZuckermanEstimate(
        n=n,
        terms_used=N,
        value=real / two_pi,
        error_bound=engel_error_bound(n, N, precision_bits),
        imaginary=imag / two_pi,
    )
