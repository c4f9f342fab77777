"""Finite rational sets and the expander images built from them."""

from __future__ import annotations

from bisect import bisect_left
from collections.abc import Sequence
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator

from .exact import DomainError, LogKey, dyadic_split, rational_str, to_rational

BINARY_OPS = ("sum", "difference", "product", "ratio")
COMPOSITE_KINDS = ("A(A-A)", "A(A+A)", "(A+A)(A+A)", "A(A+A+A+A)")


class RSet(Sequence):
    """Immutable, strictly sorted set of Fractions."""

    __slots__ = ("_elems",)

    def __init__(self, elems: Iterable = ()):
        self._elems = tuple(sorted({to_rational(x) for x in elems}))

    def __getitem__(self, i):
        return self._elems[i]

    def __len__(self) -> int:
        return len(self._elems)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self._elems)

    def __contains__(self, x) -> bool:
        i = bisect_left(self._elems, x)
        return i < len(self._elems) and self._elems[i] == x

    def __eq__(self, other) -> bool:
        if isinstance(other, RSet):
            return self._elems == other._elems
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._elems)

    def __repr__(self) -> str:
        return "RSet([" + ", ".join(rational_str(x) for x in self._elems) + "])"

    @property
    def elems(self) -> tuple:
        return self._elems

    def is_positive(self) -> bool:
        return bool(self._elems) and self._elems[0] > 0

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self._elems)

    def to_strings(self) -> list[str]:
        return [rational_str(x) for x in self._elems]

    def inverse(self) -> "RSet":
        if 0 in self:
            raise DomainError("cannot invert a set containing 0")
        return RSet(1 / x for x in self._elems)

    def scaled(self, c) -> "RSet":
        c = to_rational(c)
        return RSet(c * x for x in self._elems)


def as_rset(A) -> RSet:
    return A if isinstance(A, RSet) else RSet(A)


class KeySet:
    """Deduplicated collection of :class:`LogKey` values."""

    __slots__ = ("keys",)

    def __init__(self, keys: Iterable[LogKey] = ()):
        self.keys = frozenset(keys)

    def __len__(self) -> int:
        return len(self.keys)

    def __iter__(self):
        return iter(sorted(self.keys))

    def __contains__(self, key) -> bool:
        return key in self.keys

    def __eq__(self, other) -> bool:
        if isinstance(other, KeySet):
            return self.keys == other.keys
        return NotImplemented

    def to_strings(self) -> list[str]:
        return [str(k) for k in sorted(self.keys)]


def binary_image(A, B, op: str) -> RSet:
    """``{a o b : a in A, b in B}`` for ``op`` in sum, difference, product,
    ratio."""
    A, B = as_rset(A), as_rset(B)
    if op == "sum":
        return RSet(a + b for a in A for b in B)
    if op == "difference":
        return RSet(a - b for a in A for b in B)
    if op == "product":
        return RSet(a * b for a in A for b in B)
    if op == "ratio":
        if 0 in B:
            raise DomainError("ratio image with 0 in the denominator set")
        return _ratio_image((a, b) for a in A for b in B)
    raise DomainError(f"unknown binary op {op!r}")


def _ratio_image(pairs: Iterable[tuple[Fraction, Fraction]]) -> RSet:
    # Reduce each p/q over integers; cheaper than building a Fraction per pair.
    seen: set[tuple[int, int]] = set()
    add = seen.add
    for p, q in pairs:
        n = p.numerator * q.denominator
        d = q.numerator * p.denominator
        if d < 0:
            n, d = -n, -d
        g = gcd(n, d)
        add((n // g, d // g))
    return RSet(Fraction(n, d) for n, d in seen)


def sumset(A, k: int = 2) -> RSet:
    """k-fold sumset ``A + ... + A`` by repeated doubling."""
    A = as_rset(A)
    if k < 1:
        raise DomainError("k-fold sumset needs k >= 1")
    result = None
    power = A
    while k:
        if k & 1:
            result = power if result is None else binary_image(result, power, "sum")
        k >>= 1
        if k:
            power = binary_image(power, power, "sum")
    return result


def composite_image(A, kind: str) -> RSet:
    A = as_rset(A)
    if len(A) < 1:
        raise DomainError("composite images need a nonempty set")
    if kind == "A(A-A)":
        return binary_image(A, binary_image(A, A, "difference"), "product")
    if kind == "A(A+A)":
        return binary_image(A, sumset(A, 2), "product")
    if kind == "(A+A)(A+A)":
        S = sumset(A, 2)
        return binary_image(S, S, "product")
    if kind == "A(A+A+A+A)":
        return binary_image(A, sumset(A, 4), "product")
    raise DomainError(f"unknown composite kind {kind!r}")


def ungar_image(A) -> RSet:
    """``{(a-b)/(c-d) : c != d}``, computed from the difference set."""
    A = as_rset(A)
    if len(A) < 2:
        raise DomainError("ungar image needs |A| >= 2")
    D = binary_image(A, A, "difference")
    nonzero = [d for d in D if d != 0]
    return _ratio_image((p, q) for p in D for q in nonzero)


def balog_image(A) -> RSet:
    """``{(a+b)/(c+d)}`` over a set of positive rationals."""
    A = as_rset(A)
    if not A.is_positive():
        raise DomainError("balog image requires all elements strictly positive")
    S = sumset(A, 2)
    return _ratio_image((p, q) for p in S for q in S)


def jones_image(A) -> RSet:
    """``{(a-c)/(a-b) : a != b}``."""
    A = as_rset(A)
    if len(A) < 2:
        raise DomainError("jones image needs |A| >= 2")
    pairs = []
    for a in A:
        num = [a - c for c in A]
        den = [a - b for b in A if b != a]
        pairs.extend((p, q) for p in num for q in den)
    return _ratio_image(pairs)


def distance_image(A) -> RSet:
    """``{(a-b)**2 + (c-d)**2}``."""
    A = as_rset(A)
    squares = RSet(d * d for d in binary_image(A, A, "difference"))
    return binary_image(squares, squares, "sum")


def shift_square_image(A, B) -> RSet:
    """``A + (B+B)**2 = {a + (b1+b2)**2}``."""
    A, B = as_rset(A), as_rset(B)
    squares = RSet(s * s for s in sumset(B, 2))
    return binary_image(A, squares, "sum")


def five_var_image(A) -> KeySet:
    """Distinct values of ``(a1+a2+a3+a4)**2 + log2(a5)`` as canonical keys.

    Built from the four-fold sumset, so the work is ``|4A| * |A|``.
    """
    A = as_rset(A)
    if not A.is_positive():
        raise DomainError("five-variable image requires all elements strictly positive")
    squares = [s * s for s in sumset(A, 4)]
    by_odd_part: dict[Fraction, set[int]] = {}
    for a in A:
        e, u0 = dyadic_split(a)
        by_odd_part.setdefault(u0, set()).add(e)
    keys = []
    for u0, exps in by_odd_part.items():
        # distinct values of sq + e for this odd part; sq + e stays exact
        rs = {sq + e for e in exps for sq in squares}
        keys.extend(LogKey._trusted(r, u0) for r in rs)
    return KeySet(keys)
