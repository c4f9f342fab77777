"""Brute-force oracles and the shared test corpus.

Everything here enumerates tuples directly with Fractions and never calls
into the fast paths of the package (except the RSet container).
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from fractions import Fraction as F

from expander_lab.gensearch import GenSpec, generate
from expander_lab.setops import RSet


def fr(xs):
    return [F(x) for x in xs]


def native(xs):
    """Plain ints when every element is integral (much faster to enumerate)."""
    xs = fr(xs)
    return [int(x) for x in xs] if all(x.denominator == 1 for x in xs) else xs


def random_int_set(rng: random.Random, lo: int = -20, hi: int = 20, max_size: int = 8, min_size: int = 1):
    n = rng.randint(min_size, max_size)
    return RSet(rng.sample(range(lo, hi + 1), n))


def random_sets(count: int, seed: int, **kw):
    rng = random.Random(seed)
    return [random_int_set(rng, **kw) for _ in range(count)]


def generator_sets(max_n: int = 10):
    out = []
    for n in range(2, max_n + 1):
        out.append(generate(GenSpec("ap", n)))
        out.append(generate(GenSpec("ap", n, start=F(-3), step=F(2, 3))))
        out.append(generate(GenSpec("gp", n, base=F(2))))
        out.append(generate(GenSpec("gp", n, base=F(3, 2))))
        out.append(generate(GenSpec("convex", n)))
        out.append(generate(GenSpec("random_int", n, lo=-30, hi=30, seed=n)))
        out.append(generate(GenSpec("perturbed_ap", n, seed=n)))
    return out


def full_corpus():
    """100 seeded random sets plus every generator family, |A| <= 10."""
    return random_sets(100, seed=2024, max_size=10, min_size=2) + generator_sets(10)


# -- images -------------------------------------------------------------


def image_binary(A, B, op):
    f = {
        "sum": lambda a, b: a + b,
        "difference": lambda a, b: a - b,
        "product": lambda a, b: a * b,
        "ratio": lambda a, b: F(a) / b,
    }[op]
    return {f(F(a), F(b)) for a in A for b in B}


def image_a_adiff(A):
    return {a * (b - c) for a, b, c in itertools.product(fr(A), repeat=3)}


def image_a_asum(A):
    return {a * (b + c) for a, b, c in itertools.product(fr(A), repeat=3)}


def image_rectangles(A):
    return {(a + b) * (c + d) for a, b, c, d in itertools.product(fr(A), repeat=4)}


def image_a_4a(A):
    return {a * (b + c + d + e) for a, b, c, d, e in itertools.product(fr(A), repeat=5)}


def image_ungar(A):
    return {(a - b) / (c - d) for a, b, c, d in itertools.product(fr(A), repeat=4) if c != d}


def image_balog(A):
    return {(a + b) / (c + d) for a, b, c, d in itertools.product(fr(A), repeat=4) if c + d != 0}


def image_jones(A):
    return {(a - c) / (a - b) for a, b, c in itertools.product(fr(A), repeat=3) if a != b}


def image_distance(A):
    return {(a - b) ** 2 + (c - d) ** 2 for a, b, c, d in itertools.product(fr(A), repeat=4)}


def image_shift_square(A, B):
    return {a + (b1 + b2) ** 2 for a in fr(A) for b1 in fr(B) for b2 in fr(B)}


def _odd_part(a: F):
    """Independent 2-adic split by repeated halving/doubling."""
    e = 0
    while a.numerator % 2 == 0:
        a /= 2
        e += 1
    while a.denominator % 2 == 0:
        a *= 2
        e -= 1
    return e, a


def image_five_var(A):
    keys = set()
    for a1, a2, a3, a4, a5 in itertools.product(fr(A), repeat=5):
        e, u0 = _odd_part(a5)
        keys.add(((a1 + a2 + a3 + a4) ** 2 + e, u0))
    return keys


# -- counts -------------------------------------------------------------


def quadruple_count(A, B, op):
    """Solutions of a1 o b1 = a2 o b2 by enumerating all quadruples."""
    f = {
        "difference": lambda a, b: a - b,
        "ratio": lambda a, b: a / b,
        "sum": lambda a, b: a + b,
        "product": lambda a, b: a * b,
    }[op]
    A, B = fr(A), fr(B)
    return sum(1 for a1, a2 in itertools.product(A, repeat=2) for b1, b2 in itertools.product(B, repeat=2) if f(a1, b1) == f(a2, b2))


def rep_oracle(A, B, op):
    f = {"difference": lambda a, b: a - b, "ratio": lambda a, b: a / b, "sum": lambda a, b: a + b, "product": lambda a, b: a * b}[op]
    return Counter(f(a, b) for a in fr(A) for b in fr(B))


def moment_oracle(A, k):
    return sum(c**k for c in rep_oracle(A, A, "difference").values())


def quartic_squares_8tuple(A):
    A = native(A)
    return sum(
        1
        for t in itertools.product(A, repeat=8)
        if (t[0] - t[1]) ** 2 + (t[2] - t[3]) ** 2 == (t[4] - t[5]) ** 2 + (t[6] - t[7]) ** 2
    )


def quartic_products_8tuple(A):
    A = native(A)
    return sum(
        1 for t in itertools.product(A, repeat=8) if (t[0] - t[1]) * (t[2] - t[3]) == (t[4] - t[5]) * (t[6] - t[7])
    )


def shift_square_6tuple(A, B):
    A, B = fr(A), fr(B)
    return sum(
        1
        for a1, a2 in itertools.product(A, repeat=2)
        for b1, b2, b3, b4 in itertools.product(B, repeat=4)
        if a1 + (b1 + b2) ** 2 == a2 + (b3 + b4) ** 2
    )


def tail_oracle(A, B, tau):
    return sum(1 for c in rep_oracle(A, B, "difference").values() if c >= tau)


def e_plus_closed_form(n: int) -> int:
    return n * n + n * (n - 1) * (2 * n - 1) // 3


# -- straight-line dyadic pigeonholing --------------------------------------


def pigeonhole_oracle(A):
    """Direct transcription of the two pigeonhole stages with plain loops."""
    A = fr(A)
    n = len(A)
    r = {}
    for a in A:
        for b in A:
            x = a / b
            r[x] = sum(1 for c in A if c * x in A) if x not in r else r[x]
    E = sum(v * v for v in r.values())
    threshold = F(E, 2 * n * n)
    classes = {}
    for x, v in r.items():
        if v >= threshold:
            j = v.bit_length()  # 2^(j-1) <= v < 2^j for integer v >= 1
            classes[j] = classes.get(j, 0) + v * v
    best_j = min(j for j in classes if classes[j] == max(classes.values()))
    tau = F(2) ** (best_j - 1)
    S = sorted(x for x, v in r.items() if tau <= v < 2 * tau)
    hits = {a: sum(1 for x in S if a * x in A) for a in A}
    tclasses = {}
    for a, h in hits.items():
        if h >= 1:
            j = h.bit_length()
            tclasses[j] = tclasses.get(j, 0) + h
    best_t = min(j for j in tclasses if tclasses[j] == max(tclasses.values()))
    t = F(2) ** (best_t - 1)
    A_prime = sorted(a for a, h in hits.items() if t <= h < 2 * t)
    bound = F(n * n * len(S) ** 2) / (len(A_prime) * t**3)
    return {"tau": tau, "S_tau": S, "t": t, "A_prime": A_prime, "bound": bound, "E": E,
            "class_count_tau": len(classes), "class_count_t": len(tclasses)}
