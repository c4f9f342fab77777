"""Structured set generators and a hill-climbing search for sets with small
normalized expander images."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import log2

from . import setops as so
from .exact import DomainError, to_rational
from .setops import RSet
from .verify import ADIFF_EXPONENT, ASUM_EXPONENT, fmt_ratio

GEN_KINDS = ("ap", "gp", "random_int", "convex", "perturbed_ap")


@dataclass(frozen=True)
class GenSpec:
    kind: str
    n: int
    start: Fraction = Fraction(1)
    step: Fraction = Fraction(1)
    base: Fraction = Fraction(2)
    lo: int = 1
    hi: int = 100
    width: Fraction = Fraction(1, 4)
    seed: int = 0


def generate(spec: GenSpec) -> RSet:
    """Build the set described by ``spec``; deterministic for a fixed seed."""
    n = spec.n
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    kind = spec.kind
    if kind == "ap":
        start, step = to_rational(spec.start), to_rational(spec.step)
        if step == 0 and n > 1:
            raise DomainError("ap with step 0 is not a set of n distinct elements")
        return RSet(start + i * step for i in range(n))
    if kind == "gp":
        base = to_rational(spec.base)
        if base in (0, 1, -1) and n > 1:
            raise DomainError(f"gp with base {base} does not give n distinct elements")
        if base == 0:
            raise DomainError("gp base must be nonzero")
        return RSet(base**i for i in range(n))
    if kind == "convex":
        return RSet(i * i for i in range(1, n + 1))
    rng = random.Random(spec.seed)
    if kind == "random_int":
        if spec.hi - spec.lo + 1 < n:
            raise DomainError(f"range [{spec.lo}, {spec.hi}] holds fewer than {n} integers")
        return RSet(rng.sample(range(spec.lo, spec.hi + 1), n))
    if kind == "perturbed_ap":
        start, step, width = to_rational(spec.start), to_rational(spec.step), to_rational(spec.width)
        grid = 16
        for _ in range(100):
            pts = [start + i * step + width * Fraction(rng.randint(-grid, grid), grid) for i in range(n)]
            if len(set(pts)) == n:
                return RSet(pts)
        raise DomainError("perturbed_ap kept producing collisions; widen the step or shrink the width")
    raise DomainError(f"unknown generator kind {kind!r}")


# -- objectives -------------------------------------------------------------


def five_var_ratio(A: RSet) -> float:
    n = len(A)
    return len(so.five_var_image(A)) * log2(n) / n**2


def a_adiff_ratio(A: RSet) -> float:
    return len(so.composite_image(A, "A(A-A)")) / len(A) ** float(ADIFF_EXPONENT)


def a_asum_ratio(A: RSet) -> float:
    return len(so.composite_image(A, "A(A+A)")) / len(A) ** float(ASUM_EXPONENT)


def ungar_ratio(A: RSet) -> float:
    return len(so.ungar_image(A)) / len(A) ** 2


OBJECTIVES = {
    "five_var_ratio": five_var_ratio,
    "a_adiff_ratio": a_adiff_ratio,
    "a_asum_ratio": a_asum_ratio,
    "ungar_ratio": ungar_ratio,
}


@dataclass
class SearchResult:
    best_set: RSet
    objective_value: str
    seed: int
    trace: list[tuple[int, str]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "best_set": self.best_set.to_strings(),
            "objective_value": self.objective_value,
            "seed": self.seed,
            "trace": [[i, v] for i, v in self.trace],
        }

    def trace_csv(self) -> str:
        return "iteration,value\n" + "".join(f"{i},{v}\n" for i, v in self.trace)


def search_minimize(objective: str, n: int, iters: int, seed: int = 0, window: int = 16) -> SearchResult:
    """Hill climbing over n-element sets of integers in ``[1, window*n]``.

    Starts from ``{1, ..., n}``; each step moves one element to a fresh
    integer and is accepted only if it strictly lowers the objective. The
    trace records the start and every accepted step.
    """
    if objective not in OBJECTIVES:
        raise DomainError(f"unknown objective {objective!r}")
    if n < 2:
        raise DomainError("search needs n >= 2")
    if iters < 0:
        raise DomainError("iters must be nonnegative")
    f = OBJECTIVES[objective]
    rng = random.Random(seed)
    top = window * n
    current = list(range(1, n + 1))
    best = f(RSet(current))
    trace = [(0, fmt_ratio(best))]
    for it in range(1, iters + 1):
        i = rng.randrange(n)
        new = rng.randint(1, top)
        if new in current:
            continue
        proposal = current.copy()
        proposal[i] = new
        value = f(RSet(proposal))
        if value < best:
            current, best = proposal, value
            trace.append((it, fmt_ratio(value)))
    return SearchResult(RSet(current), fmt_ratio(best), seed, trace)
