"""Outward-rounded interval enclosures on top of mpmath's binary floats.

Endpoints are raw mpmath ``mpf`` tuples. The field operations and ``sqrt``
use mpmath's directed rounding, which is exact-then-rounded. The elementary
transcendental functions are evaluated at a higher internal precision and
the endpoints are then pushed outward by a few units in the last place of
that precision before rounding back, so an error of several ulp inside
mpmath still leaves the true value enclosed.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from numbers import Rational
from typing import Callable, Union

from mpmath import libmp, mpf
from mpmath.libmp import (
    fone,
    from_int,
    from_rational,
    fzero,
    mpf_abs,
    mpf_add,
    mpf_cmp,
    mpf_cos_pi,
    mpf_cosh_sinh,
    mpf_div,
    mpf_exp,
    mpf_log,
    mpf_mul,
    mpf_neg,
    mpf_pi,
    mpf_shift,
    mpf_sin_pi,
    mpf_sqrt,
    mpf_sub,
    round_ceiling,
    round_floor,
    round_nearest,
)

__all__ = [
    "DEFAULT_PRECISION",
    "ESCALATION_START",
    "MAX_PRECISION",
    "CertifiedReal",
    "Comparison",
    "DomainError",
    "arith",
    "compare",
    "cos_pi",
    "cosh",
    "enclose_pi",
    "exp",
    "fn",
    "ln",
    "precision_ladder",
    "sin_pi",
    "sinh",
    "sqrt",
]

DEFAULT_PRECISION = 256
ESCALATION_START = 128
MAX_PRECISION = 8192

# extra bits used internally for transcendental functions
_GUARD = 24
# ulps (at the internal precision) added on each side of a transcendental result
_SLACK_BITS = 4

Exact = Union[int, Fraction]


class DomainError(ValueError):
    """An operation was applied outside its mathematical domain."""


class Comparison(enum.Enum):
    LESS = "Less"
    GREATER = "Greater"
    UNDECIDED = "Undecided"

    def __str__(self) -> str:
        return self.value


def _exact_to_mpf(value: Exact, prec: int, rnd: str):
    if isinstance(value, int):
        return from_int(value, prec, rnd)
    return from_rational(value.numerator, value.denominator, prec, rnd)


def _push_down(x, wp: int, prec: int):
    slack = mpf_shift(mpf_abs(x), _SLACK_BITS - wp)
    return mpf_sub(x, slack, prec, round_floor)


def _push_up(x, wp: int, prec: int):
    slack = mpf_shift(mpf_abs(x), _SLACK_BITS - wp)
    return mpf_add(x, slack, prec, round_ceiling)


def _le(a, b) -> bool:
    return mpf_cmp(a, b) <= 0


class CertifiedReal:
    """A closed interval ``[lo, hi]`` known to contain some exact real number.

    ``precision_bits`` is the mantissa width used for the endpoints and for
    every operation producing a new enclosure from this one.
    """

    __slots__ = ("_lo", "_hi", "precision_bits")

    def __init__(self, lo, hi, precision_bits: int):
        if mpf_cmp(lo, hi) > 0:
            raise ValueError("enclosure with lo > hi")
        self._lo = lo
        self._hi = hi
        self.precision_bits = precision_bits

    # -- construction -----------------------------------------------------

    @classmethod
    def exact(cls, value: Exact | Rational, precision_bits: int = DEFAULT_PRECISION) -> "CertifiedReal":
        """Tightest enclosure of an integer or rational at the given precision."""
        if not isinstance(value, (int, Fraction)):
            value = Fraction(value)
        return cls(
            _exact_to_mpf(value, precision_bits, round_floor),
            _exact_to_mpf(value, precision_bits, round_ceiling),
            precision_bits,
        )

    @classmethod
    def from_bounds(cls, lo: Exact, hi: Exact, precision_bits: int = DEFAULT_PRECISION) -> "CertifiedReal":
        return cls(
            _exact_to_mpf(Fraction(lo), precision_bits, round_floor),
            _exact_to_mpf(Fraction(hi), precision_bits, round_ceiling),
            precision_bits,
        )

    # -- views ------------------------------------------------------------

    @property
    def lo(self) -> mpf:
        return mpf(self._lo)

    @property
    def hi(self) -> mpf:
        return mpf(self._hi)

    @property
    def width(self) -> mpf:
        return mpf(mpf_sub(self._hi, self._lo, self.precision_bits + 8, round_ceiling))

    @property
    def mid(self) -> mpf:
        return mpf(mpf_shift(mpf_add(self._lo, self._hi, self.precision_bits + 1, round_nearest), -1))

    def lo_fraction(self) -> Fraction:
        return _mpf_to_fraction(self._lo)

    def hi_fraction(self) -> Fraction:
        return _mpf_to_fraction(self._hi)

    def __float__(self) -> float:
        return float(self.mid)

    def __repr__(self) -> str:
        return f"CertifiedReal([{libmp.to_str(self._lo, 20)}, {libmp.to_str(self._hi, 20)}], bits={self.precision_bits})"

    def contains(self, value: Exact | "CertifiedReal") -> bool:
        if isinstance(value, CertifiedReal):
            return _le(self._lo, value._lo) and _le(value._hi, self._hi)
        value = Fraction(value)
        return self.lo_fraction() <= value <= self.hi_fraction()

    def overlaps(self, other: "CertifiedReal") -> bool:
        return _le(self._lo, other._hi) and _le(other._lo, self._hi)

    def contains_zero(self) -> bool:
        return _le(self._lo, fzero) and _le(fzero, self._hi)

    def is_positive(self) -> bool:
        return mpf_cmp(self._lo, fzero) > 0

    def is_negative(self) -> bool:
        return mpf_cmp(self._hi, fzero) < 0

    def certainly_lt(self, other: "CertifiedReal | Exact") -> bool:
        other = self._coerce(other)
        return mpf_cmp(self._hi, other._lo) < 0

    def certainly_gt(self, other: "CertifiedReal | Exact") -> bool:
        other = self._coerce(other)
        return mpf_cmp(self._lo, other._hi) > 0

    def with_precision(self, precision_bits: int) -> "CertifiedReal":
        """Re-round the endpoints outward (never tightens the enclosure)."""
        return CertifiedReal(
            mpf_add(self._lo, fzero, precision_bits, round_floor),
            mpf_add(self._hi, fzero, precision_bits, round_ceiling),
            precision_bits,
        )

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "CertifiedReal":
        if isinstance(other, CertifiedReal):
            return other
        if isinstance(other, (int, Fraction)):
            return CertifiedReal.exact(other, self.precision_bits)
        return NotImplemented

    def _prec(self, other: "CertifiedReal") -> int:
        return min(self.precision_bits, other.precision_bits)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self._prec(other)
        return CertifiedReal(
            mpf_add(self._lo, other._lo, p, round_floor),
            mpf_add(self._hi, other._hi, p, round_ceiling),
            p,
        )

    __radd__ = __add__

    def __neg__(self):
        return CertifiedReal(mpf_neg(self._hi), mpf_neg(self._lo), self.precision_bits)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self._prec(other)
        return CertifiedReal(
            mpf_sub(self._lo, other._hi, p, round_floor),
            mpf_sub(self._hi, other._lo, p, round_ceiling),
            p,
        )

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self._prec(other)
        a, b, c, d = self._lo, self._hi, other._lo, other._hi
        pairs = ((a, c), (a, d), (b, c), (b, d))
        lows = [mpf_mul(x, y, p, round_floor) for x, y in pairs]
        highs = [mpf_mul(x, y, p, round_ceiling) for x, y in pairs]
        return CertifiedReal(_mpf_min(lows), _mpf_max(highs), p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.contains_zero():
            raise DomainError("division by an enclosure containing 0")
        p = self._prec(other)
        a, b, c, d = self._lo, self._hi, other._lo, other._hi
        pairs = ((a, c), (a, d), (b, c), (b, d))
        lows = [mpf_div(x, y, p, round_floor) for x, y in pairs]
        highs = [mpf_div(x, y, p, round_ceiling) for x, y in pairs]
        return CertifiedReal(_mpf_min(lows), _mpf_max(highs), p)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        if k == 0:
            return CertifiedReal(fone, fone, self.precision_bits)
        p = self.precision_bits
        if k % 2 == 0 and self.contains_zero():
            top = _mpf_max([mpf_abs(self._lo), mpf_abs(self._hi)])
            return CertifiedReal(fzero, _pow_nonneg(top, k, p, round_ceiling), p)
        if self.is_negative() or mpf_cmp(self._lo, fzero) < 0:
            # odd k straddling 0 or any k on a negative interval: use symmetry
            if k % 2:
                lo_mag = _pow_nonneg(mpf_neg(self._lo), k, p, round_ceiling)
                hi = (
                    _pow_nonneg(self._hi, k, p, round_ceiling)
                    if mpf_cmp(self._hi, fzero) >= 0
                    else mpf_neg(_pow_nonneg(mpf_neg(self._hi), k, p, round_floor))
                )
                return CertifiedReal(mpf_neg(lo_mag), hi, p)
            return CertifiedReal(
                _pow_nonneg(mpf_neg(self._hi), k, p, round_floor),
                _pow_nonneg(mpf_neg(self._lo), k, p, round_ceiling),
                p,
            )
        return CertifiedReal(
            _pow_nonneg(self._lo, k, p, round_floor),
            _pow_nonneg(self._hi, k, p, round_ceiling),
            p,
        )

    def square(self) -> "CertifiedReal":
        return self**2


def _pow_nonneg(x, k: int, prec: int, rnd):
    # every partial product is nonnegative, so rounding each one in the same
    # direction bounds the exact power on that side
    result = fone
    base = x
    while k:
        if k & 1:
            result = mpf_mul(result, base, prec, rnd)
        k >>= 1
        if k:
            base = mpf_mul(base, base, prec, rnd)
    return result


def _mpf_min(xs):
    best = xs[0]
    for x in xs[1:]:
        if mpf_cmp(x, best) < 0:
            best = x
    return best


def _mpf_max(xs):
    best = xs[0]
    for x in xs[1:]:
        if mpf_cmp(x, best) > 0:
            best = x
    return best


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = x
    if sign:
        man = -man
    if exp >= 0:
        return Fraction(man << exp)
    return Fraction(man, 1 << -exp)


def _as_real(x, precision_bits: int | None = None) -> CertifiedReal:
    if isinstance(x, CertifiedReal):
        return x
    return CertifiedReal.exact(x, precision_bits or DEFAULT_PRECISION)


# -- constants and elementary functions -----------------------------------


def enclose_pi(precision_bits: int = DEFAULT_PRECISION) -> CertifiedReal:
    """Enclosure of pi; width at most ``2**(4 - precision_bits)``."""
    wp = precision_bits + _GUARD
    lo = mpf_pi(wp, round_floor)
    hi = mpf_pi(wp, round_ceiling)
    return CertifiedReal(_push_down(lo, wp, precision_bits), _push_up(hi, wp, precision_bits), precision_bits)


def _monotone(x: CertifiedReal, f) -> CertifiedReal:
    p = x.precision_bits
    wp = p + _GUARD
    lo = f(x._lo, wp, round_floor)
    hi = f(x._hi, wp, round_ceiling)
    return CertifiedReal(_push_down(lo, wp, p), _push_up(hi, wp, p), p)


def sqrt(x) -> CertifiedReal:
    x = _as_real(x)
    if mpf_cmp(x._lo, fzero) < 0:
        raise DomainError("sqrt of an enclosure reaching below 0")
    p = x.precision_bits
    return CertifiedReal(mpf_sqrt(x._lo, p, round_floor), mpf_sqrt(x._hi, p, round_ceiling), p)


def exp(x) -> CertifiedReal:
    return _monotone(_as_real(x), mpf_exp)


def ln(x) -> CertifiedReal:
    x = _as_real(x)
    if mpf_cmp(x._lo, fzero) <= 0:
        raise DomainError("ln of an enclosure reaching 0 or below")
    return _monotone(x, mpf_log)


def _sinh(v, wp, rnd):
    return mpf_cosh_sinh(v, wp, rnd)[1]


def _cosh(v, wp, rnd):
    return mpf_cosh_sinh(v, wp, rnd)[0]


def sinh(x) -> CertifiedReal:
    x = _as_real(x)
    p = x.precision_bits
    wp = p + _GUARD
    lo = _sinh(x._lo, wp, round_floor)
    hi = _sinh(x._hi, wp, round_ceiling)
    # the relative slack is zero at an exact 0 result, which sinh(0) = 0 makes safe
    return CertifiedReal(_push_down(lo, wp, p), _push_up(hi, wp, p), p)


def cosh(x) -> CertifiedReal:
    x = _as_real(x)
    p = x.precision_bits
    wp = p + _GUARD
    if x.contains_zero():
        top = _mpf_max([_cosh(x._lo, wp, round_ceiling), _cosh(x._hi, wp, round_ceiling)])
        return CertifiedReal(fone, _push_up(top, wp, p), p)
    a, b = (x._lo, x._hi) if x.is_positive() else (mpf_neg(x._hi), mpf_neg(x._lo))
    lo = _cosh(a, wp, round_floor)
    hi = _cosh(b, wp, round_ceiling)
    return CertifiedReal(_push_down(lo, wp, p), _push_up(hi, wp, p), p)


def _trig_pi(q: Fraction, precision_bits: int, f) -> CertifiedReal:
    q = Fraction(q) % 2
    wp = precision_bits + _GUARD
    if q.denominator <= 2:
        # multiples of pi/2 give exactly 0 or +-1
        v = f(from_rational(q.numerator, q.denominator, wp, round_nearest), wp, round_nearest)
        return CertifiedReal(v, v, precision_bits)
    # |q - qq| <= 2^-(wp+1) * 2 and the derivative is at most pi, so an absolute
    # slack of 2^(4 - wp) covers argument and evaluation error
    qq = from_rational(q.numerator, q.denominator, wp, round_nearest)
    v = f(qq, wp, round_nearest)
    slack = mpf_shift(fone, 4 - wp)
    return CertifiedReal(
        mpf_sub(v, slack, precision_bits, round_floor),
        mpf_add(v, slack, precision_bits, round_ceiling),
        precision_bits,
    )


def cos_pi(q: Exact, precision_bits: int = DEFAULT_PRECISION) -> CertifiedReal:
    """Enclosure of ``cos(pi * q)`` for an exact rational ``q``."""
    return _trig_pi(Fraction(q), precision_bits, mpf_cos_pi)


def sin_pi(q: Exact, precision_bits: int = DEFAULT_PRECISION) -> CertifiedReal:
    """Enclosure of ``sin(pi * q)`` for an exact rational ``q``."""
    return _trig_pi(Fraction(q), precision_bits, mpf_sin_pi)


_ARITH = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "−": lambda a, b: a - b,
    "*": lambda a, b: a * b,
    "×": lambda a, b: a * b,
    "/": lambda a, b: a / b,
    "÷": lambda a, b: a / b,
}

_FUNCS = {"sqrt": sqrt, "exp": exp, "sinh": sinh, "cosh": cosh, "ln": ln}


def arith(a, b, op: str) -> CertifiedReal:
    """Apply a field operation by name, e.g. ``arith(a, b, "/")``."""
    try:
        f = _ARITH[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    return f(_as_real(a), b)


def fn(a, name: str) -> CertifiedReal:
    try:
        f = _FUNCS[name]
    except KeyError:
        raise ValueError(f"unknown function {name!r}") from None
    return f(a)


# -- deciding strict inequalities ----------------------------------------

Evaluator = Callable[[int], Union[CertifiedReal, int, Fraction]]


def precision_ladder(max_precision_bits: int = MAX_PRECISION, start: int = ESCALATION_START) -> list[int]:
    """Precisions tried by :func:`compare`: ``start, 2*start, ...`` up to the cap."""
    ladder = []
    p = start
    while p <= max_precision_bits:
        ladder.append(p)
        p *= 2
    if not ladder:
        ladder.append(max_precision_bits)
    return ladder


def _evaluate(side, precision_bits: int) -> CertifiedReal:
    if callable(side):
        side = side(precision_bits)
    return _as_real(side, precision_bits)


def compare(a, b, max_precision_bits: int = MAX_PRECISION, start_bits: int = ESCALATION_START) -> Comparison:
    """Decide ``a < b`` or ``a > b`` by re-evaluating at doubling precision.

    ``a`` and ``b`` are callables mapping a precision in bits to an enclosure
    (or an exact number), or fixed values. Fixed enclosures are only tried
    once, since raising the precision cannot tighten them.
    """
    static = not callable(a) and not callable(b)
    for p in precision_ladder(max_precision_bits, start_bits):
        ea = _evaluate(a, p)
        eb = _evaluate(b, p)
        if mpf_cmp(ea._hi, eb._lo) < 0:
            return Comparison.LESS
        if mpf_cmp(ea._lo, eb._hi) > 0:
            return Comparison.GREATER
        if static:
            break
    return Comparison.UNDECIDED
