"""Representation functions, energies and quartic solution counts.

Additive tables are computed on integers after clearing a common
denominator; integer sets small enough for int64 go through numpy.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

import numpy as np

from .exact import DomainError, Interval, interval_sum, precision_cap, sqrt_interval
from .setops import as_rset

_INT64_SAFE = 1 << 61


class MultiplicityTable(Mapping):
    """A representation function as data: value -> number of generating tuples."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping):
        self._entries = {k: int(v) for k, v in entries.items() if v}

    def __getitem__(self, key):
        return self._entries[key]

    def get(self, key, default=0):
        return self._entries.get(key, default)

    def __iter__(self):
        return iter(sorted(self._entries))

    def __len__(self) -> int:
        return len(self._entries)

    def __repr__(self) -> str:
        return f"MultiplicityTable({len(self)} values, total={self.total()})"

    def total(self) -> int:
        return sum(self._entries.values())

    def moment(self, k: int) -> int:
        return sum(c**k for c in self._entries.values())

    def counts(self) -> list[int]:
        return list(self._entries.values())

    def superlevel(self, tau) -> int:
        return sum(1 for c in self._entries.values() if c >= tau)

    def to_json(self) -> dict[str, str]:
        return {str(k): str(self._entries[k]) for k in self}


@dataclass(frozen=True)
class EnergyValue:
    """Exact energy (``lo == hi``) or a certified enclosure of it."""

    lo: Fraction
    hi: Fraction

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def exact(self) -> Fraction:
        if not self.is_exact:
            raise DomainError("energy is only known to an interval")
        return self.lo

    @property
    def interval(self) -> Interval:
        return Interval(self.lo, self.hi)

    def __str__(self) -> str:
        return str(self.interval)


# -- integer kernels --------------------------------------------------------


def _common_scale(*sets) -> tuple[int, list[list[int]]]:
    L = 1
    for S in sets:
        for x in S:
            L = lcm(L, x.denominator)
    return L, [[x.numerator * (L // x.denominator) for x in S] for S in sets]


def _pair_counts_numpy(xs: list[int], ys: list[int], sign: int) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(xs, dtype=np.int64)
    b = np.asarray(ys, dtype=np.int64)
    vals = (a[:, None] + sign * b[None, :]).ravel()
    lo, hi = int(vals.min()), int(vals.max())
    if hi - lo <= 8 * vals.size + 1024:
        counts = np.bincount(vals - lo)
        keys = np.nonzero(counts)[0]
        return keys + lo, counts[keys]
    return np.unique(vals, return_counts=True)


def _additive_counts(A, B, sign: int) -> tuple[int, dict[int, int] | tuple[np.ndarray, np.ndarray]]:
    """Counts of ``a + sign*b`` keyed by integers at scale ``L``."""
    L, (xs, ys) = _common_scale(A, B)
    if xs and ys and max(map(abs, xs + ys)) < _INT64_SAFE:
        return L, _pair_counts_numpy(xs, ys, sign)
    return L, Counter(x + sign * y for x in xs for y in ys)


def _ratio_counts(A, B) -> Counter:
    out: Counter = Counter()
    for a in A:
        for b in B:
            n = a.numerator * b.denominator
            d = b.numerator * a.denominator
            if d < 0:
                n, d = -n, -d
            g = gcd(n, d)
            out[(n // g, d // g)] += 1
    return out


def _sum_squares(counts) -> int:
    if isinstance(counts, np.ndarray):
        if counts.size == 0:
            return 0
        if int(counts.max()) * int(counts.sum()) < (1 << 63):
            return int(np.dot(counts, counts))
        counts = counts.tolist()
    return sum(c * c for c in counts)


def _combine(t1: Mapping[int, int], t2: Mapping[int, int], op: str) -> Counter:
    out: Counter = Counter()
    items2 = list(t2.items())
    if op == "sum":
        for k1, c1 in t1.items():
            for k2, c2 in items2:
                out[k1 + k2] += c1 * c2
    elif op == "difference":
        for k1, c1 in t1.items():
            for k2, c2 in items2:
                out[k1 - k2] += c1 * c2
    elif op == "product":
        for k1, c1 in t1.items():
            for k2, c2 in items2:
                out[k1 * k2] += c1 * c2
    else:
        raise DomainError(f"unknown combine op {op!r}")
    return out


def _as_dict(result) -> dict[int, int]:
    if isinstance(result, tuple):
        keys, counts = result
        return dict(zip(keys.tolist(), counts.tolist()))
    return dict(result)


# -- public operations ------------------------------------------------------


def rep_table(A, B, op: str = "difference") -> MultiplicityTable:
    """Full representation function of ``a o b`` over ``A x B``."""
    A, B = as_rset(A), as_rset(B)
    if op in ("difference", "sum"):
        L, res = _additive_counts(A, B, -1 if op == "difference" else 1)
        return MultiplicityTable({Fraction(k, L): c for k, c in _as_dict(res).items()})
    if op == "ratio":
        if 0 in B:
            raise DomainError("ratio representation with 0 in the denominator set")
        return MultiplicityTable({Fraction(n, d): c for (n, d), c in _ratio_counts(A, B).items()})
    if op == "product":
        return MultiplicityTable(Counter(a * b for a in A for b in B))
    raise DomainError(f"unknown op {op!r}")


def _rep_counts(A, B, op: str):
    """Counts only (no keys), on the fastest available path."""
    if op in ("difference", "sum"):
        _, res = _additive_counts(A, B, -1 if op == "difference" else 1)
        if isinstance(res, tuple):
            return res[1]
        return list(res.values())
    return rep_table(A, B, op).counts()


def energy(A, B=None, op: str = "difference") -> EnergyValue:
    """``sum_x r(x)**2``, the number of solution quadruples of
    ``a1 o b1 = a2 o b2``. ``op="difference"`` gives the additive energy,
    ``op="ratio"`` the multiplicative one."""
    A = as_rset(A)
    B = A if B is None else as_rset(B)
    if op == "ratio" and 0 in B:
        raise DomainError("multiplicative energy with 0 in the denominator set")
    value = Fraction(_sum_squares(_rep_counts(A, B, op)))
    return EnergyValue(value, value)


def additive_energy(A, B=None) -> int:
    return int(energy(A, B, "difference").exact)


def multiplicative_energy(A, B=None) -> int:
    return int(energy(A, B, "ratio").exact)


def energy_k(A, k, bits: int | None = None) -> EnergyValue:
    """``E_k(A) = sum_x r_{A-A}(x)**k`` for k in {1.5, 2, 3}.

    For k = 1.5 the result is an enclosure of width at most ``2**-bits``
    (default: the configured precision cap).
    """
    A = as_rset(A)
    if len(A) < 1:
        raise DomainError("energy of the empty set")
    k = Fraction(k)
    if k not in (Fraction(3, 2), 2, 3):
        raise DomainError(f"unsupported energy exponent {k}")
    counts = _rep_counts(A, A, "difference")
    if k.denominator == 1:
        if k == 2:
            value = Fraction(_sum_squares(counts))
        else:
            value = Fraction(sum(int(c) ** 3 for c in counts))
        return EnergyValue(value, value)
    if bits is None:
        bits = precision_cap()
    hist = Counter(int(c) for c in counts)
    # each term's width is at most mult * 2**-(bits + extra) <= 2**-bits in total
    extra = sum(hist.values()).bit_length()
    enclosure = interval_sum(m * sqrt_interval(Fraction(r**3), bits + extra) for r, m in hist.items())
    return EnergyValue(enclosure.lo, enclosure.hi)


def quartic_count_squares(A) -> int:
    """Solutions of ``(a1-a2)^2 + (a3-a4)^2 = (a5-a6)^2 + (a7-a8)^2`` in A^8."""
    A = as_rset(A)
    L, res = _additive_counts(A, A, -1)
    squares: Counter = Counter()
    for d, c in _as_dict(res).items():
        squares[d * d] += c
    return _sum_squares(_combine(squares, squares, "sum").values())


def quartic_count_products(A) -> int:
    """Solutions of ``(a1-a2)(a3-a4) = (a5-a6)(a7-a8)`` in A^8."""
    A = as_rset(A)
    L, res = _additive_counts(A, A, -1)
    diffs = _as_dict(res)
    return _sum_squares(_combine(diffs, diffs, "product").values())


@dataclass(frozen=True)
class ShiftSquareCount:
    """Solution count S of ``a1 + (b1+b2)^2 = a2 + (b3+b4)^2`` together with
    both comparands from the double-counting argument around it."""

    solutions: int
    image_size: int
    lower_comparand: Fraction  # |A|^2 |B|^4 / |A + (B+B)^2|, must be <= S
    additive_energy_A: int
    square_difference_energy: int  # sum_x r^2_{(B+B)^2 - (B+B)^2}(x)
    size_A: int
    size_B: int

    @property
    def upper_comparand(self) -> int:
        """``E+(A) * sum_x r^2_{(B+B)^2-(B+B)^2}(x)``, must be >= S**2."""
        return self.additive_energy_A * self.square_difference_energy

    @property
    def lower_holds(self) -> bool:
        return self.size_A**2 * self.size_B**4 <= self.image_size * self.solutions

    @property
    def upper_holds(self) -> bool:
        return self.solutions**2 <= self.upper_comparand


def shift_square_solutions(A, B) -> ShiftSquareCount:
    A, B = as_rset(A), as_rset(B)
    L, (xs, ys) = _common_scale(A, B)
    # (b1+b2)^2 lives at scale L^2, so shift each a to a*L at the same scale
    squares = Counter((y1 + y2) ** 2 for y1 in ys for y2 in ys)
    shifted = Counter(x * L for x in xs)
    T = _combine(shifted, squares, "sum")
    image_size = len(T)
    return ShiftSquareCount(
        solutions=_sum_squares(T.values()),
        image_size=image_size,
        lower_comparand=Fraction(len(A) ** 2 * len(B) ** 4, image_size),
        additive_energy_A=additive_energy(A),
        square_difference_energy=_sum_squares(_combine(squares, squares, "difference").values()),
        size_A=len(A),
        size_B=len(B),
    )
