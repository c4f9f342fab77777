"""Checkers for the exact inequalities, ratio reports for the asymptotic ones.

Asymptotic bounds carry unknown constants and are never asserted: each
report holds ``LHS / RHS`` with the constant set to 1, so a family of sets
(arithmetic progressions, say) shows how the quotient moves with |A|.
Logarithms are base 2 and ratios are computed in floating point for
reporting only.
"""

from __future__ import annotations

import csv
import io
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import cached_property
from math import ceil, floor, log2

from . import energy as en
from . import setops as so
from .exact import Interval, compare_le, precision_cap, rational_str
from .setops import RSet, as_rset
from .structure import dstar_upper, tail_count

CSV_COLUMNS = ("statement_id", "kind", "pass", "lhs", "rhs", "ratio", "notes")

ADIFF_EXPONENT = Fraction(3, 2) + Fraction(1, 34)
ASUM_EXPONENT = Fraction(3, 2) + Fraction(5, 242)


@dataclass(frozen=True)
class VerificationReport:
    statement_id: str
    kind: str  # exact | ratio | interval
    status: str | None  # pass | fail | indeterminate | skipped; None for ratios
    lhs: str = ""
    rhs: str = ""
    ratio: str = ""
    notes: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def row(self) -> dict[str, str]:
        d = asdict(self)
        return {
            "statement_id": d["statement_id"],
            "kind": d["kind"],
            "pass": d["status"] or "",
            "lhs": d["lhs"],
            "rhs": d["rhs"],
            "ratio": d["ratio"],
            "notes": d["notes"],
        }


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in reports:
        writer.writerow(r.row())
    return buf.getvalue()


def reports_to_json(reports) -> list[dict[str, str]]:
    return [r.row() for r in reports]


def fmt_ratio(x: float) -> str:
    return format(x, ".12g")


def _outward(iv: Interval) -> str:
    """Integer-rounded enclosure: still certified, much shorter to print."""
    if iv.is_point and iv.lo.denominator == 1:
        return str(iv.lo.numerator)
    return f"[{floor(iv.lo)}, {ceil(iv.hi)}]"


def _skip(statement_id: str, kind: str, why: str) -> VerificationReport:
    return VerificationReport(statement_id, kind, "skipped", notes=why)


# -- exact statements -------------------------------------------------------


def verify_exact(A) -> list[VerificationReport]:
    """The two bounds with explicit constants: at least ``|A|^2 - 2``
    quotients of differences, at least ``2|A|^2 - 1`` quotients of sums."""
    A = as_rset(A)
    n = len(A)
    if n < 2:
        return [
            _skip("balog_quotients", "exact", "|A| < 2"),
            _skip("ungar_quotients", "exact", "|A| < 2"),
        ]
    out = []
    if A.is_positive():
        size = len(so.balog_image(A))
        bound = 2 * n * n - 1
        out.append(VerificationReport("balog_quotients", "exact", "pass" if size >= bound else "fail", str(size), str(bound)))
    else:
        out.append(_skip("balog_quotients", "exact", "nonpositive element; bound only known for positive sets"))
    size = len(so.ungar_image(A))
    bound = n * n - 2
    out.append(VerificationReport("ungar_quotients", "exact", "pass" if size >= bound else "fail", str(size), str(bound)))
    return out


# -- ratio reports ----------------------------------------------------------


class _Quantities:
    """Lazily computed sizes and energies of one set, shared across reports."""

    def __init__(self, A: RSet):
        self.A = A
        self.n = len(A)
        self.log_n = log2(self.n)

    @cached_property
    def sumset(self) -> RSet:
        return so.sumset(self.A, 2)

    @cached_property
    def diffset(self) -> RSet:
        return so.binary_image(self.A, self.A, "difference")

    @cached_property
    def mult_energy(self) -> int:
        return en.multiplicative_energy(self.A)

    @cached_property
    def dstar(self) -> Fraction | None:
        return dstar_upper(self.A)

    @cached_property
    def a_adiff(self) -> int:
        return len(so.composite_image(self.A, "A(A-A)"))

    @cached_property
    def a_asum(self) -> int:
        return len(so.composite_image(self.A, "A(A+A)"))


def _ratio_report(statement_id: str, lhs, rhs: float, lhs_text: str | None = None, notes: str = "") -> VerificationReport:
    return VerificationReport(
        statement_id,
        "ratio",
        None,
        lhs=lhs_text if lhs_text is not None else str(lhs),
        rhs=fmt_ratio(rhs),
        ratio=fmt_ratio(float(lhs) / rhs),
        notes=notes,
    )


_UB = "upper-bound-based: d_* replaced by a certified upper bound"


def verify_ratio_suite(A) -> list[VerificationReport]:
    """One normalized-ratio report per asymptotic statement, sorted by id."""
    A = as_rset(A)
    ids = (
        "a_times_4a", "a_times_difference_set", "a_times_sumset", "difference_set_dstar",
        "difference_set_energy", "difference_tail", "distance_sums", "energy_times_a_sumset",
        "five_variable", "jones_quotients", "mixed_energy", "product_quadruples",
        "rectangle_products", "solymosi_energy", "square_quadruples", "sumset_dstar",
        "sumset_dstar_easy", "sumset_energy", "third_energy",
    )
    if len(A) < 2:
        return [_skip(i, "ratio", "|A| < 2") for i in ids]
    q = _Quantities(A)
    n, L = q.n, q.log_n
    nonzero = 0 not in A
    out: list[VerificationReport] = []

    out.append(_ratio_report("jones_quotients", len(so.jones_image(A)), n * n / L))
    out.append(_ratio_report("distance_sums", len(so.distance_image(A)), n * n / L))
    out.append(_ratio_report("rectangle_products", len(so.composite_image(A, "(A+A)(A+A)")), n * n / L))
    out.append(_ratio_report("a_times_4a", len(so.composite_image(A, "A(A+A+A+A)")), n * n / L))
    if A.is_positive():
        out.append(_ratio_report("five_variable", len(so.five_var_image(A)), n * n / L))
    else:
        out.append(_skip("five_variable", "ratio", "log needs a positive set"))

    if nonzero:
        E = q.mult_energy
        out.append(_ratio_report("solymosi_energy", E, len(q.sumset) ** 2 * L, notes="upper-type bound: ratio should stay bounded above"))
        out.append(
            _ratio_report(
                "energy_times_a_sumset", E * q.a_asum**2, n**6 / L, notes="B = C = A"
            )
        )
        K = Fraction(n**3, E)
        out.append(_ratio_report("difference_set_energy", len(q.diffset), n ** 1.6 / float(K) ** 1.2, notes=f"K = {rational_str(K)}"))
        out.append(
            _ratio_report("sumset_energy", len(q.sumset), n ** (58 / 37) / float(K) ** (42 / 37), notes=f"K = {rational_str(K)}")
        )
    else:
        for i in ("difference_set_energy", "energy_times_a_sumset", "solymosi_energy", "sumset_energy"):
            out.append(_skip(i, "ratio", "0 in A: multiplicative energy undefined"))

    out.append(_ratio_report("product_quadruples", en.quartic_count_products(A), n**6 * L, notes="upper-type bound"))
    out.append(_ratio_report("square_quadruples", en.quartic_count_squares(A), n**6 * L, notes="upper-type bound"))

    d = q.dstar
    if d is None:
        for i in ("difference_set_dstar", "difference_tail", "mixed_energy", "sumset_dstar", "sumset_dstar_easy", "third_energy"):
            out.append(_skip(i, "ratio", "0 in A: no admissible d_* witness"))
    else:
        df = float(d)
        dnote = f"{_UB}; d_* <= {rational_str(d)}"
        best = None
        tau = 1
        while tau <= n:
            count = tail_count(A, A, tau)
            rhs = n**3 / tau**3 * df
            if best is None or count / rhs > best[0]:
                best = (count / rhs, tau, count, rhs)
            tau *= 2
        _, tau, count, rhs = best
        out.append(_ratio_report("difference_tail", count, rhs, notes=f"{dnote}; B = A; max over dyadic tau, attained at tau = {tau}"))
        out.append(_ratio_report("third_energy", int(en.energy_k(A, 3).exact), n**3 * df * L, notes=dnote))
        F = q.diffset
        out.append(
            _ratio_report("mixed_energy", en.additive_energy(A, F), n * len(F) ** 1.5 * df**0.5, notes=f"{dnote}; F = A-A")
        )
        out.append(_ratio_report("difference_set_dstar", len(q.diffset), n**1.6 / (df**0.6 * L**0.4), notes=dnote))
        out.append(_ratio_report("sumset_dstar", len(q.sumset), n ** (58 / 37) / df ** (21 / 37), notes=dnote))
        out.append(_ratio_report("sumset_dstar_easy", len(q.sumset), n ** (14 / 9) / (df ** (5 / 9) * L ** (2 / 9)), notes=dnote))

    out.append(_ratio_report("a_times_difference_set", q.a_adiff, n ** float(ADIFF_EXPONENT)))
    out.append(_ratio_report("a_times_sumset", q.a_asum, n ** float(ASUM_EXPONENT)))
    return sorted(out, key=lambda r: r.statement_id)


# -- interval-certified inequalities ----------------------------------------


def _escalate(check, cap: int):
    """Run ``check(bits)`` with doubling precision until it is decided or
    the cap is reached."""
    bits = min(16, cap)
    while True:
        status, lhs, rhs = check(bits)
        if status != "indeterminate" or bits >= cap:
            return status, lhs, rhs, bits
        bits = min(2 * bits, cap)


def li_inequality_sides(A, B, bits: int, size_factor: int) -> tuple[Interval, int]:
    """Sixth powers of both sides of
    ``m^2 E_1.5(A)^2 <= E_3(A)^(2/3) E_3(B)^(1/3) E(A, A-B)`` with ``m = size_factor``."""
    A, B = as_rset(A), as_rset(B)
    e15 = en.energy_k(A, Fraction(3, 2), bits).interval
    rhs = int(en.energy_k(A, 3).exact) ** 4 * int(en.energy_k(B, 3).exact) ** 2
    rhs *= en.additive_energy(A, so.binary_image(A, B, "difference")) ** 6
    return size_factor**12 * e15**12, rhs


def verify_interval_suite(A, B=None, cap: int | None = None) -> list[VerificationReport]:
    """Constant-free inequalities involving fractional energies and the
    double-counting steps for ``a1 + (b1+b2)^2 = a2 + (b3+b4)^2``.

    The energy inequality is checked with ``|B|^2`` on the left. With
    ``|A|^2`` there instead it is false in general (A = {0, 1}, B = {0});
    both readings agree when B = A.
    """
    A = as_rset(A)
    B = A if B is None else as_rset(B)
    if cap is None:
        cap = precision_cap()
    n = len(A)
    out = []

    def li(bits):
        # both sides raised to the 6th power to clear the 2/3 and 1/3 exponents
        lhs, rhs = li_inequality_sides(A, B, bits, len(B))
        return compare_le(lhs, rhs), lhs, rhs

    status, lhs, rhs, bits = _escalate(li, cap)
    out.append(
        VerificationReport(
            "li_energy_inequality", "interval", status, _outward(lhs), str(rhs),
            notes=f"sixth powers: |B|^12 E_1.5(A)^12 <= E_3(A)^4 E_3(B)^2 E(A,A-B)^6; {bits} bits",
        )
    )

    diff_size = len(so.binary_image(A, A, "difference"))

    def holder(bits):
        e15 = en.energy_k(A, Fraction(3, 2), bits).interval
        rhs = e15**2 * diff_size
        return compare_le(n**6, rhs), n**6, rhs

    status, lhs, rhs, bits = _escalate(holder, cap)
    out.append(
        VerificationReport(
            "holder_step", "interval", status, str(lhs), _outward(rhs),
            notes=f"|A|^6 <= E_1.5(A)^2 |A-A|; {bits} bits",
        )
    )

    s = en.shift_square_solutions(A, B)
    out.append(
        VerificationReport(
            "shift_square_lower", "exact", "pass" if s.lower_holds else "fail",
            str(s.size_A**2 * s.size_B**4), str(s.image_size * s.solutions),
            notes=f"|A|^2|B|^4 <= |A+(B+B)^2| * S with S = {s.solutions}",
        )
    )
    out.append(
        VerificationReport(
            "shift_square_upper", "exact", "pass" if s.upper_holds else "fail",
            str(s.solutions**2), str(s.upper_comparand),
            notes="S^2 <= E+(A) * sum_x r^2_{(B+B)^2-(B+B)^2}(x)",
        )
    )
    return sorted(out, key=lambda r: r.statement_id)


# -- case split -------------------------------------------------------------


@dataclass(frozen=True)
class CaseSplit:
    K: Fraction
    adiff_case: int
    asum_case: int
    adiff_bound: float
    asum_bound: float
    adiff_measured: int
    asum_measured: int


def case_split(A) -> CaseSplit:
    """Write ``E*(A) = |A|^3 / K`` and decide which branch of each argument
    applies: the energy branch when ``K >= |A|^(1/17)`` (resp.
    ``|A|^(5/121)``), the small-energy branch otherwise."""
    A = as_rset(A)
    n = len(A)
    K = Fraction(n**3, en.multiplicative_energy(A))
    # K^17 >= n  <=>  K >= n^(1/17), compared exactly
    adiff_case = 1 if K**17 >= n else 2
    asum_case = 1 if K**121 >= n**5 else 2
    k = float(K)
    if adiff_case == 1:
        adiff_bound = n**1.5 * k**0.5
    else:
        adiff_bound = n**1.6 / k**1.2
    if asum_case == 1:
        asum_bound = n**1.5 * k**0.5
    else:
        asum_bound = n ** (58 / 37) / k ** (42 / 37)
    return CaseSplit(
        K=K,
        adiff_case=adiff_case,
        asum_case=asum_case,
        adiff_bound=adiff_bound,
        asum_bound=asum_bound,
        adiff_measured=len(so.composite_image(A, "A(A-A)")),
        asum_measured=len(so.composite_image(A, "A(A+A)")),
    )


def case_split_trace(A) -> VerificationReport:
    A = as_rset(A)
    n = len(A)
    if n < 2 or 0 in A:
        return _skip("case_split", "exact", "needs |A| >= 2 and 0 not in A")
    cs = case_split(A)
    ok = 1 <= cs.K <= n
    notes = (
        f"A(A-A): case {cs.adiff_case}, bound {fmt_ratio(cs.adiff_bound)}, measured {cs.adiff_measured}; "
        f"A(A+A): case {cs.asum_case}, bound {fmt_ratio(cs.asum_bound)}, measured {cs.asum_measured}"
    )
    return VerificationReport(
        "case_split", "exact", "pass" if ok else "fail", rational_str(cs.K), f"[1, {n}]", notes=notes
    )
