"""Exact scalars: reduced fractions, canonical keys for ``s**2 + log2(a)``,
and rational-endpoint intervals for fractional powers.

Set elements are :class:`fractions.Fraction` throughout the package.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable

Rational = Fraction

DEFAULT_PRECISION_BITS = 64
MAX_PRECISION_BITS = 4096
PRECISION_ENV = "EXPANDER_LAB_PRECISION_BITS"


class DomainError(ValueError):
    """Input outside the domain of an operation (zero denominator, log of a
    nonpositive number, ...)."""


class ValidationError(ValueError):
    """A witness or side condition failed an exact check."""


def precision_cap() -> int:
    """Interval refinement cap in bits, read from the environment."""
    raw = os.environ.get(PRECISION_ENV)
    if raw is None or raw == "":
        return DEFAULT_PRECISION_BITS
    try:
        bits = int(raw)
    except ValueError:
        raise DomainError(f"{PRECISION_ENV} must be an integer, got {raw!r}") from None
    if not 1 <= bits <= MAX_PRECISION_BITS:
        raise DomainError(f"{PRECISION_ENV} must lie in [1, {MAX_PRECISION_BITS}], got {bits}")
    return bits


def normalize(num: int, den: int) -> Fraction:
    if den == 0:
        raise DomainError("zero denominator")
    return Fraction(num, den)


def to_rational(value) -> Fraction:
    """Coerce an int, Fraction or rational string ("p/q", "p") to a Fraction.

    Floats are rejected: set elements must be exact.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise DomainError(f"not an exact rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise DomainError(f"not a rational string: {value!r}")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise DomainError(f"not a rational string: {value!r}") from None
    raise DomainError(f"cannot interpret {value!r} as a rational")


def rational_str(q: Fraction) -> str:
    """``"p/q"`` in lowest terms, ``"p"`` when the denominator is 1."""
    return str(q)


def _two_adic(n: int) -> int:
    return (n & -n).bit_length() - 1


def dyadic_split(u: Fraction) -> tuple[int, Fraction]:
    """Write ``u = 2**e * u0`` with odd numerator and denominator in ``u0``."""
    u = to_rational(u)
    if u <= 0:
        raise DomainError(f"dyadic_split needs a positive rational, got {u}")
    en = _two_adic(u.numerator)
    ed = _two_adic(u.denominator)
    u0 = Fraction(u.numerator >> en, u.denominator >> ed)
    return en - ed, u0


@dataclass(frozen=True, order=True)
class LogKey:
    """Canonical form ``r + log2(u0)`` of the real number ``s**2 + log2(a)``.

    ``u0`` has odd numerator and denominator. Since log2 of a positive
    rational is rational only for integer powers of two, two keys denote the
    same real number exactly when both components agree.
    """

    r: Fraction
    u0: Fraction

    def __post_init__(self):
        if self.u0 <= 0 or self.u0.numerator % 2 == 0 or self.u0.denominator % 2 == 0:
            raise DomainError(f"u0 must be a positive odd/odd rational, got {self.u0}")

    @classmethod
    def _trusted(cls, r: Fraction, u0: Fraction) -> "LogKey":
        # u0 already canonical (from dyadic_split); skip validation
        key = object.__new__(cls)
        object.__setattr__(key, "r", r)
        object.__setattr__(key, "u0", u0)
        return key

    def __str__(self) -> str:
        return f"{rational_str(self.r)}+log2({rational_str(self.u0)})"

    @classmethod
    def parse(cls, text: str) -> "LogKey":
        head, sep, tail = text.rpartition("+log2(")
        if not sep or not tail.endswith(")"):
            raise DomainError(f"malformed LogKey string: {text!r}")
        return cls(to_rational(head), to_rational(tail[:-1]))

    def approx(self) -> float:
        from math import log2

        return float(self.r) + log2(self.u0.numerator) - log2(self.u0.denominator)


def logkey_make(s: Fraction, a: Fraction) -> LogKey:
    a = to_rational(a)
    if a <= 0:
        raise DomainError(f"log2 undefined for nonpositive {a}")
    s = to_rational(s)
    e, u0 = dyadic_split(a)
    return LogKey(s * s + e, u0)


# -- intervals ------------------------------------------------------------


@dataclass(frozen=True)
class Interval:
    """Closed interval with rational endpoints, ``lo <= hi``."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "Interval":
        x = Fraction(x)
        return cls(x, x)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __add__(self, other) -> "Interval":
        other = _as_interval(other)
        return Interval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __mul__(self, other) -> "Interval":
        other = _as_interval(other)
        cands = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return Interval(min(cands), max(cands))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Interval":
        if k < 0:
            raise DomainError("negative interval powers are not supported")
        if k % 2 == 1 or self.lo >= 0:
            return Interval(self.lo**k, self.hi**k)
        if self.hi <= 0:
            return Interval(self.hi**k, self.lo**k)
        return Interval(Fraction(0), max(-self.lo, self.hi) ** k)

    def __str__(self) -> str:
        if self.is_point:
            return rational_str(self.lo)
        return f"[{rational_str(self.lo)}, {rational_str(self.hi)}]"


def _as_interval(x) -> Interval:
    return x if isinstance(x, Interval) else Interval.point(x)


def sqrt_interval(x: Fraction, bits: int) -> Interval:
    """Enclosure of ``sqrt(x)`` of width at most ``2**-bits``; exact when
    ``x`` is a square of a rational."""
    x = to_rational(x)
    if x < 0:
        raise DomainError(f"square root of negative {x}")
    p, q = x.numerator, x.denominator
    rp, rq = isqrt(p), isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Interval.point(Fraction(rp, rq))
    # sqrt(p/q) = sqrt(p*q)/q
    scale = 1 << bits
    m = isqrt(p * q * scale * scale)
    return Interval(Fraction(m, q * scale), Fraction(m + 1, q * scale))


def interval_sum(terms: Iterable[Interval]) -> Interval:
    lo = Fraction(0)
    hi = Fraction(0)
    for t in terms:
        lo += t.lo
        hi += t.hi
    return Interval(lo, hi)


def compare_le(lhs: Interval | Fraction | int, rhs: Interval | Fraction | int) -> str:
    """Certified comparison ``lhs <= rhs``: ``"pass"``, ``"fail"`` or
    ``"indeterminate"`` when the enclosures overlap."""
    lhs, rhs = _as_interval(lhs), _as_interval(rhs)
    if lhs.hi <= rhs.lo:
        return "pass"
    if lhs.lo > rhs.hi:
        return "fail"
    return "indeterminate"
