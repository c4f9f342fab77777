"""Upper bounds for the characteristics d(A) and d_*(A), and the two-stage
dyadic pigeonholing that extracts a subset with a certified d_* bound from a
set with large multiplicative energy.

d_*(A) itself is never computed: every value returned here is an upper bound
certified by an explicit witness.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .energy import rep_table
from .exact import DomainError, ValidationError, rational_str, to_rational
from .setops import RSet, as_rset, binary_image


@dataclass(frozen=True)
class DstarWitness:
    Q: RSet
    R: RSet
    t: Fraction
    bound: Fraction


@dataclass(frozen=True)
class DyadicWitness:
    tau: Fraction
    S_tau: RSet
    t: Fraction
    A_prime: RSet
    dstar_bound: Fraction
    class_count_tau: int
    class_count_t: int
    # bookkeeping for the pigeonhole inequalities
    energy: int
    retained_mass: int
    class_mass_tau: int
    total_mass_t: int
    class_mass_t: int

    def to_json(self) -> dict:
        return {
            "tau": rational_str(self.tau),
            "S_tau": self.S_tau.to_strings(),
            "t": rational_str(self.t),
            "A_prime": self.A_prime.to_strings(),
            "dstar_bound": rational_str(self.dstar_bound),
            "class_count_tau": self.class_count_tau,
            "class_count_t": self.class_count_t,
            "energy": str(self.energy),
            "retained_mass": str(self.retained_mass),
            "class_mass_tau": str(self.class_mass_tau),
            "total_mass_t": str(self.total_mass_t),
            "class_mass_t": str(self.class_mass_t),
        }


def d_upper(A, candidates) -> tuple[Fraction, RSet]:
    """``min |AC|^2 / (|A||C|)`` over the supplied candidates C.

    An upper bound for d(A), hence for d_*(A). Ties keep the first candidate.
    """
    A = as_rset(A)
    candidates = [as_rset(C) for C in candidates]
    if not candidates:
        raise DomainError("d_upper needs at least one candidate set")
    best = None
    for C in candidates:
        if len(C) == 0:
            raise DomainError("candidate sets must be nonempty")
        if 0 in C:
            raise DomainError("candidate sets must not contain 0")
        value = Fraction(len(binary_image(A, C, "product")) ** 2, len(A) * len(C))
        if best is None or value < best[0]:
            best = (value, C)
    return best


def default_candidates(A) -> list[RSet]:
    """Cheap candidate sets for :func:`d_upper`: ``{1}``, ``A`` and ``A^-1``
    (only the nonzero part of A)."""
    A = as_rset(A)
    nonzero = RSet(a for a in A if a != 0)
    out = [RSet([1])]
    if len(nonzero):
        out += [nonzero, nonzero.inverse()]
    return out


def dstar_upper(A) -> Fraction | None:
    """Best cheap certified upper bound for d_*(A); ``None`` when 0 is in A
    (no admissible witness exists since Q avoids 0)."""
    A = as_rset(A)
    if 0 in A:
        return None
    return d_upper(A, default_candidates(A))[0]


def dstar_witness_check(A, Q, R, t) -> Fraction:
    """Check a witness for d_*(A) exactly and return ``|Q|^2|R|^2/(|A| t^3)``.

    Raises :class:`ValidationError` naming the first violated condition.
    """
    A, Q, R = as_rset(A), as_rset(Q), as_rset(R)
    t = to_rational(t)
    if t <= 0:
        raise DomainError(f"t must be positive, got {t}")
    if 0 in R or 0 in Q:
        raise DomainError("Q and R must avoid 0")
    if len(Q) == 0 or len(R) == 0:
        raise ValidationError("Q and R must be nonempty")
    if max(len(Q), len(R)) < len(A):
        raise ValidationError(f"size condition fails: max(|Q|, |R|) = {max(len(Q), len(R))} < |A| = {len(A)}")
    for a in A:
        hits = sum(1 for r in R if a / r in Q)
        if hits < t:
            raise ValidationError(f"|Q ∩ aR^-1| = {hits} < t = {rational_str(t)} at a = {rational_str(a)}")
    return Fraction(len(Q) ** 2 * len(R) ** 2) / (len(A) * t**3)


def dyadic_class(value) -> int:
    """Index j with ``2**(j-1) <= value < 2**j`` for ``value >= 1``."""
    value = Fraction(value)
    j = 0
    while value >= 2**j:
        j += 1
    return j


def _lower(j: int) -> Fraction:
    return Fraction(2) ** (j - 1)


def dyadic_pigeonhole(A) -> DyadicWitness:
    """Two-stage dyadic pigeonholing on ``r(x) = |A ∩ xA|``.

    Stage 1 drops x with ``r(x) < E*(A)/(2|A|^2)``, groups the rest into
    classes ``[2^(j-1), 2^j)`` and keeps the class of largest ``sum r^2``
    (lowest j on ties); tau is its lower endpoint and
    ``S_tau = {x : tau <= r(x) < 2 tau}``. Stage 2 does the same with the
    counts ``|A ∩ a S_tau|`` over ``a in A`` (mass ``sum`` instead of
    ``sum r^2``), yielding t and A'. The certified bound is the one obtained
    from ``Q = A`` and ``R = S_tau^-1`` in the definition of d_*(A').
    """
    A = as_rset(A)
    n = len(A)
    if n < 1:
        raise DomainError("dyadic pigeonholing needs a nonempty set")
    if 0 in A:
        raise DomainError("dyadic pigeonholing needs 0 not in A")
    # |A ∩ xA| counts pairs (a, b) with b = x a, i.e. the ratio representation
    r = rep_table(A, A, "ratio")
    E = r.moment(2)
    threshold = Fraction(E, 2 * n * n)
    retained = {x: c for x, c in r.items() if c >= threshold}

    mass_tau: Counter = Counter()
    for c in retained.values():
        mass_tau[dyadic_class(c)] += c * c
    j_tau = max(sorted(mass_tau), key=lambda j: mass_tau[j])
    tau = _lower(j_tau)
    S_tau = RSet(x for x, c in r.items() if tau <= c < 2 * tau)

    A_set = set(A)
    hits = {a: sum(1 for x in S_tau if a * x in A_set) for a in A}
    mass_t: Counter = Counter()
    for c in hits.values():
        if c >= 1:
            mass_t[dyadic_class(c)] += c
    j_t = max(sorted(mass_t), key=lambda j: mass_t[j])
    t = _lower(j_t)
    A_prime = RSet(a for a, c in hits.items() if t <= c < 2 * t)

    bound = Fraction(n * n * len(S_tau) ** 2) / (len(A_prime) * t**3)
    return DyadicWitness(
        tau=tau,
        S_tau=S_tau,
        t=t,
        A_prime=A_prime,
        dstar_bound=bound,
        class_count_tau=len(mass_tau),
        class_count_t=len(mass_t),
        energy=E,
        retained_mass=sum(c * c for c in retained.values()),
        class_mass_tau=sum(r[x] ** 2 for x in S_tau),
        total_mass_t=sum(hits.values()),
        class_mass_t=sum(hits[a] for a in A_prime),
    )


def tail_count(A, B, tau) -> int:
    """``|{x : r_{A-B}(x) >= tau}|``."""
    tau = to_rational(tau)
    if tau < 1:
        raise DomainError(f"tau must be at least 1, got {tau}")
    return rep_table(A, B, "difference").superlevel(tau)
