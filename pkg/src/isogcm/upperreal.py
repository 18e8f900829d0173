"""Directed-rounding reals: every stored value is an exact rational >= the true quantity.

All bound arithmetic goes through this type so that computed enumeration bounds
can only overshoot, never undershoot.  Overshoot costs runtime, not correctness.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil, isqrt

import mpmath

# relative/absolute slack added on top of high-precision evaluations
_MARGIN = Fraction(1, 1 << 40)
_WORK_PREC = 160

# 3.14159265358979323846264338327950288419716939937510 (truncated, so < pi)
PI_LOWER = Fraction(314159265358979323846264338327950288419716939937510,
                    10 ** 50)


class UpperReal:
    """A real known only through an upper bound; ops preserve the bound direction."""

    __slots__ = ("sup",)

    def __init__(self, sup):
        self.sup = Fraction(sup)

    def __repr__(self):
        return f"UpperReal({float(self.sup)!r})"

    def __float__(self):
        return float(self.sup)

    def __add__(self, other):
        if isinstance(other, UpperReal):
            return UpperReal(self.sup + other.sup)
        return UpperReal(self.sup + Fraction(other))

    __radd__ = __add__

    def scale(self, c) -> "UpperReal":
        """Multiply by a nonnegative exact rational."""
        c = Fraction(c)
        if c < 0:
            raise ValueError("scaling an upper bound by a negative constant")
        return UpperReal(self.sup * c)

    def square(self) -> "UpperReal":
        if self.sup < 0:
            raise ValueError("square of an upper bound only valid when >= 0")
        return UpperReal(self.sup * self.sup)

    def ceil(self) -> int:
        return int(ceil(self.sup))

    def __le__(self, other):
        return self.sup <= (other.sup if isinstance(other, UpperReal) else Fraction(other))

    def __lt__(self, other):
        return self.sup < (other.sup if isinstance(other, UpperReal) else Fraction(other))


def upper_min(a: UpperReal, b: UpperReal) -> UpperReal:
    # min of two upper bounds is an upper bound of the min
    return a if a.sup <= b.sup else b


def _mpf_to_fraction(x) -> Fraction:
    # binary mpf -> exact rational (mantissa may be gmpy2.mpz; force int)
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    if man == 0:
        return Fraction(0)
    val = Fraction(int(man)) * (Fraction(2) ** int(exp))
    return -val if sign else val


def _pad_up(approx: Fraction) -> Fraction:
    return approx + _MARGIN * (1 + abs(approx))


def log_upper(x) -> UpperReal:
    """ln(x) rounded toward +inf; error at most 2^-30 * max(1, ln x)."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("log of a nonpositive value")
    if x == 1:
        return UpperReal(0)
    with mpmath.workprec(_WORK_PREC):
        approx = _mpf_to_fraction(mpmath.ln(x.numerator)) - _mpf_to_fraction(
            mpmath.ln(x.denominator))
    return UpperReal(_pad_up(approx))


def sqrt_upper(n: int) -> UpperReal:
    """sqrt(n) rounded up, exact integer arithmetic."""
    if n < 0:
        raise ValueError("sqrt of a negative value")
    shift = 40
    scaled = n << (2 * shift)
    root = isqrt(scaled)
    if root * root < scaled:
        root += 1
    return UpperReal(Fraction(root, 1 << shift))


def exp_ceil(u: UpperReal) -> int:
    """Smallest integer >= an upper bound of e**u."""
    x = u.sup
    if x <= 0:
        return 1
    with mpmath.workprec(max(_WORK_PREC, 64 + int(float(x) * 1.5))):
        approx = _mpf_to_fraction(mpmath.exp(mpmath.mpf(x.numerator) / x.denominator))
    return int(ceil(_pad_up(approx)))


def log2_upper() -> UpperReal:
    return log_upper(2)
