"""Command-line entry point: ``expander-lab <command> ...``."""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from . import energy as en
from . import setops as so
from .exact import MAX_PRECISION_BITS, DomainError, ValidationError, precision_cap, rational_str, to_rational
from .gensearch import GEN_KINDS, OBJECTIVES, GenSpec, generate, search_minimize
from .io import dump_json, read_set, write_output
from .structure import dstar_witness_check, dyadic_pigeonhole
from .verify import (
    case_split_trace,
    reports_to_csv,
    reports_to_json,
    verify_exact,
    verify_interval_suite,
    verify_ratio_suite,
)

IMAGE_KINDS = (
    "sum", "difference", "product", "ratio",
    "A(A-A)", "A(A+A)", "(A+A)(A+A)", "A(A+A+A+A)",
    "ungar", "balog", "jones", "distance", "shiftsquare", "fivevar",
)


def _rational_arg(text: str):
    try:
        return to_rational(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _bits_arg(text: str) -> int:
    bits = int(text)
    if not 1 <= bits <= MAX_PRECISION_BITS:
        raise argparse.ArgumentTypeError(f"precision must lie in [1, {MAX_PRECISION_BITS}]")
    return bits


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    common.add_argument("--format", choices=("json", "csv"), default=None, help="report format")
    common.add_argument("--threads", default="auto", help="accepted for compatibility; output never depends on it")
    common.add_argument("--precision-bits", type=_bits_arg, default=None, help="interval refinement cap in bits")

    parser = argparse.ArgumentParser(prog="expander-lab", description="Exact sum-product and expander computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate a structured set")
    p.add_argument("--kind", choices=GEN_KINDS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--start", type=_rational_arg, default=to_rational(1))
    p.add_argument("--step", type=_rational_arg, default=to_rational(1))
    p.add_argument("--base", type=_rational_arg, default=to_rational(2))
    p.add_argument("--lo", type=int, default=1)
    p.add_argument("--hi", type=int, default=100)
    p.add_argument("--width", type=_rational_arg, default=to_rational("1/4"))
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("image", parents=[common], help="compute a set image")
    p.add_argument("--kind", choices=IMAGE_KINDS, required=True)
    p.add_argument("--in", dest="inp", required=True, help="set file A")
    p.add_argument("--in2", default=None, help="set file B (binary images; defaults to A)")
    p.add_argument("--size", action="store_true", help="print only the cardinality")

    p = sub.add_parser("energy", parents=[common], help="energies and representation tables")
    p.add_argument("--kind", choices=("additive", "multiplicative", "moment", "rep"), required=True)
    p.add_argument("--k", default="2", help="exponent for --kind moment: 1.5, 2 or 3")
    p.add_argument("--op", choices=so.BINARY_OPS, default="difference", help="operation for --kind rep")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--in2", default=None)

    p = sub.add_parser("count", parents=[common], help="quartic and shifted-square solution counts")
    p.add_argument("--kind", choices=("squares", "products", "shiftsquare"), required=True)
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--in2", default=None)

    p = sub.add_parser("witness", parents=[common], help="dyadic pigeonhole witness, or check an explicit d_* witness")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--Q", default=None, help="set file Q for an explicit witness")
    p.add_argument("--R", default=None, help="set file R for an explicit witness")
    p.add_argument("--t", type=_rational_arg, default=None)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", choices=("exact", "ratio", "interval", "casesplit"), required=True)
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--in2", default=None)

    p = sub.add_parser("search", parents=[common], help="hill-climb for small normalized images")
    p.add_argument("--objective", choices=sorted(OBJECTIVES), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--iters", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--window", type=int, default=16)
    p.add_argument("--trace-out", default=None, help="write the trace as CSV here")

    p = sub.add_parser("bench", parents=[common], help="time core operations on arithmetic progressions")
    p.add_argument("--sizes", default="64,128,256,512,1024", help="comma-separated set sizes")
    p.add_argument("--ops", default="additive_energy,quartic_squares,five_var_image", help="comma-separated operations")
    return parser


def _second(args, A):
    return read_set(args.in2) if args.in2 else A


def _cmd_gen(args) -> str:
    spec = GenSpec(args.kind, args.n, args.start, args.step, args.base, args.lo, args.hi, args.width, args.seed)
    return dump_json(generate(spec).to_strings())


def _cmd_image(args) -> str:
    A = read_set(args.inp)
    kind = args.kind
    if kind in so.BINARY_OPS:
        out = so.binary_image(A, _second(args, A), kind)
    elif kind in so.COMPOSITE_KINDS:
        out = so.composite_image(A, kind)
    elif kind == "shiftsquare":
        out = so.shift_square_image(A, _second(args, A))
    else:
        fn = {
            "ungar": so.ungar_image,
            "balog": so.balog_image,
            "jones": so.jones_image,
            "distance": so.distance_image,
            "fivevar": so.five_var_image,
        }[kind]
        out = fn(A)
    if args.size:
        return f"{len(out)}\n"
    return dump_json(out.to_strings())


def _cmd_energy(args, bits: int) -> str:
    A = read_set(args.inp)
    B = _second(args, A)
    if args.kind == "rep":
        return dump_json(en.rep_table(A, B, args.op).to_json())
    if args.kind == "moment":
        try:
            k = Fraction(args.k)
        except ValueError:
            raise DomainError(f"unsupported energy exponent {args.k!r}") from None
        value = en.energy_k(A, k, bits)
    else:
        value = en.energy(A, B, "difference" if args.kind == "additive" else "ratio")
    if value.is_exact:
        return dump_json({"value": rational_str(value.lo)})
    return dump_json({"lo": rational_str(value.lo), "hi": rational_str(value.hi)})


def _cmd_count(args) -> str:
    A = read_set(args.inp)
    if args.kind == "squares":
        return f"{en.quartic_count_squares(A)}\n"
    if args.kind == "products":
        return f"{en.quartic_count_products(A)}\n"
    s = en.shift_square_solutions(A, _second(args, A))
    return dump_json(
        {
            "solutions": str(s.solutions),
            "image_size": str(s.image_size),
            "lower_comparand": rational_str(s.lower_comparand),
            "upper_comparand": str(s.upper_comparand),
            "lower_holds": s.lower_holds,
            "upper_holds": s.upper_holds,
        }
    )


def _cmd_witness(args) -> str:
    A = read_set(args.inp)
    if args.Q or args.R or args.t is not None:
        if not (args.Q and args.R and args.t is not None):
            raise DomainError("an explicit witness needs --Q, --R and --t together")
        bound = dstar_witness_check(A, read_set(args.Q), read_set(args.R), args.t)
        return dump_json({"dstar_upper_bound": rational_str(bound)})
    w = dyadic_pigeonhole(A)
    check = dstar_witness_check(w.A_prime, A, w.S_tau.inverse(), w.t)
    out = w.to_json()
    out["witness_check"] = "pass" if check == w.dstar_bound else "fail"
    return dump_json(out)


def _cmd_verify(args, bits: int) -> str:
    A = read_set(args.inp)
    if args.suite == "exact":
        reports = verify_exact(A)
    elif args.suite == "ratio":
        reports = verify_ratio_suite(A)
    elif args.suite == "interval":
        reports = verify_interval_suite(A, _second(args, A), cap=bits)
    else:
        reports = [case_split_trace(A)]
    if args.format == "json":
        return dump_json(reports_to_json(reports))
    return reports_to_csv(reports)


def _cmd_search(args) -> str:
    result = search_minimize(args.objective, args.n, args.iters, args.seed, args.window)
    if args.trace_out:
        write_output(result.trace_csv(), args.trace_out)
    return dump_json(result.to_json())


_BENCH_OPS = {
    "additive_energy": en.additive_energy,
    "multiplicative_energy": en.multiplicative_energy,
    "quartic_squares": en.quartic_count_squares,
    "quartic_products": en.quartic_count_products,
    "five_var_image": lambda A: len(so.five_var_image(A)),
    "sumset": lambda A: len(so.sumset(A, 2)),
}


def _cmd_bench(args) -> str:
    sizes = [int(s) for s in args.sizes.split(",") if s]
    ops = [o for o in args.ops.split(",") if o]
    for op in ops:
        if op not in _BENCH_OPS:
            raise DomainError(f"unknown bench op {op!r}; choose from {', '.join(sorted(_BENCH_OPS))}")
    lines = ["n,operation,seconds,value"]
    for n in sizes:
        A = generate(GenSpec("ap", n))
        for op in ops:
            t0 = time.perf_counter()
            value = _BENCH_OPS[op](A)
            lines.append(f"{n},{op},{time.perf_counter() - t0:.6f},{value}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        bits = args.precision_bits if args.precision_bits is not None else precision_cap()
        if args.command == "gen":
            text = _cmd_gen(args)
        elif args.command == "image":
            text = _cmd_image(args)
        elif args.command == "energy":
            text = _cmd_energy(args, bits)
        elif args.command == "count":
            text = _cmd_count(args)
        elif args.command == "witness":
            text = _cmd_witness(args)
        elif args.command == "verify":
            text = _cmd_verify(args, bits)
        elif args.command == "search":
            text = _cmd_search(args)
        else:
            text = _cmd_bench(args)
        write_output(text, args.out)
    except (DomainError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
