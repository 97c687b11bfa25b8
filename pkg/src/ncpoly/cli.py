"""Command-line front end: parse, minimize, count, factor, evaluate.

Exit codes: 0 success, 2 parse/format/input error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Optional

import numpy as np

from . import families
from .errors import FormatError, ParseError
from .evaluator import (
    complexity_bounds,
    count_n,
    count_ns,
    count_nt,
    evaluate_left,
    evaluate_right,
    load_matrix_tuple,
    random_rational_tuple,
)
from .factorizer import factor_atoms, load_factors, verify_block_factorization
from .freepoly import Alphabet, NcPolynomial, naive_evaluate, naive_mult_count, parse
from .minimizer import build_als, is_minimal, minimize, rank_of
from .realization import Als, als_mul, dump_als, format_system, load_als

OK, INPUT_ERROR, VERIFY_ERROR = 0, 2, 3


@dataclass(frozen=True)
class SessionConfig:
    alphabet: Optional[Alphabet]
    seed: int
    fmt: str


def _infer_alphabet(text: str) -> Alphabet:
    """Letters in order of first appearance; explicit --alphabet overrides.

    Multi-character identifiers are taken verbatim, so juxtaposed input
    like "xy" needs an explicit single-letter alphabet.
    """
    names: list[str] = []
    for name in re.findall(r"[A-Za-z][A-Za-z0-9_]*", text):
        if name not in names:
            names.append(name)
    if not names:
        names = ["x"]  # scalar input: any alphabet will do
    return Alphabet(names)


def _session(args) -> SessionConfig:
    alphabet = None
    if args.alphabet:
        alphabet = Alphabet([x.strip() for x in args.alphabet.split(",")])
    return SessionConfig(alphabet, args.seed, args.format)


def _parse_poly(config: SessionConfig, text: str) -> NcPolynomial:
    alphabet = config.alphabet or _infer_alphabet(text)
    return parse(text, alphabet)


def _summary(als: Als) -> dict:
    n = als.n
    lo, hi = complexity_bounds(n) if n >= 2 else (0, 0)
    return {
        "dim": n,
        "ns": count_ns(als),
        "nt": count_nt(als),
        "n": count_n(als),
        "bounds": [lo, hi],
    }


def _print_summary(info: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(info))
    else:
        lo, hi = info["bounds"]
        print(
            f"dim={info['dim']} Ns={info['ns']} Nt={info['nt']} "
            f"N={info['n']} bounds=[{lo},{hi}]"
        )


def _matrix_lines(mat: np.ndarray, exact: bool) -> list[str]:
    if exact:
        return [
            " ".join(f"{x.numerator}/{x.denominator}" for x in row) for row in mat
        ]
    return [" ".join(repr(float(x)) for x in row) for row in mat]


def cmd_rank(args) -> int:
    config = _session(args)
    value = rank_of(_parse_poly(config, args.polynomial))
    print(json.dumps({"rank": value}) if config.fmt == "json" else value)
    return OK


def cmd_compile(args) -> int:
    config = _session(args)
    als = build_als(_parse_poly(config, args.polynomial))
    if args.output:
        with open(args.output, "w") as handle:
            handle.write(dump_als(als))
    _print_summary(_summary(als), config.fmt)
    return OK


def cmd_minimize(args) -> int:
    config = _session(args)
    with open(args.input) as handle:
        als = load_als(handle.read())
    reduced = minimize(als)
    if args.output:
        with open(args.output, "w") as handle:
            handle.write(dump_als(reduced))
    else:
        print(format_system(reduced))
    _print_summary(_summary(reduced), config.fmt)
    return OK


def cmd_eval(args) -> int:
    config = _session(args)
    with open(args.system) as handle:
        als = load_als(handle.read())
    with open(args.matrices) as handle:
        tup = load_matrix_tuple(handle.read())
    sides = ("left", "right") if args.side == "both" else (args.side,)
    reports = {}
    for side in sides:
        evaluate = evaluate_left if side == "left" else evaluate_right
        reports[side] = evaluate(als, tup)
    if config.fmt == "json":
        print(
            json.dumps(
                {
                    side: {
                        "mults": rep.mult_count,
                        "matrix": [
                            line.split() for line in _matrix_lines(rep.result, tup.is_exact)
                        ],
                    }
                    for side, rep in reports.items()
                }
            )
        )
    else:
        for side, rep in reports.items():
            print(f"side={side} mults={rep.mult_count}")
            for line in _matrix_lines(rep.result, tup.is_exact):
                print(line)
    if len(reports) == 2:
        left, right = reports["left"].result, reports["right"].result
        same = (
            bool(np.array_equal(left, right))
            if tup.is_exact
            else bool(np.allclose(left, right, rtol=1e-9, atol=1e-12))
        )
        if not same:
            print("error: left and right evaluations disagree", file=sys.stderr)
            return VERIFY_ERROR
    return OK


def cmd_factor(args) -> int:
    config = _session(args)
    p = _parse_poly(config, args.polynomial)
    rng = random.Random(config.seed) if args.shuffle else None
    atoms = factor_atoms(p, rng)
    if config.fmt == "json":
        print(json.dumps({"atoms": [str(a) for a in atoms]}))
    else:
        print(f"atoms: {len(atoms)}")
        for atom in atoms:
            print(f"  {atom}")
        if len(atoms) == 1:
            print("no split found (not a proof of irreducibility)")
        else:
            staircase = minimize(reduce(als_mul, (build_als(a) for a in atoms)))
            print("block system (zero blocks mark the factors):")
            print(format_system(staircase))
    return OK


def cmd_verify_block(args) -> int:
    config = _session(args)
    with open(args.factors) as handle:
        bf = load_factors(handle.read())
    p = parse(args.polynomial, bf.alphabet)
    if verify_block_factorization(bf, p):
        print("ok: block product equals the polynomial")
        return OK
    print("mismatch: block product differs from the polynomial", file=sys.stderr)
    return VERIFY_ERROR


def _table_rows(kmax_p: int, kmax_q: int) -> list[dict]:
    rows = []
    for family, kmax, poly_of, system_of in (
        ("p", kmax_p, families.power_polynomial, families.power_system),
        ("q", kmax_q, families.convolution_polynomial, families.convolution_system),
    ):
        for k in range(kmax + 1):
            poly = poly_of(k)
            system = minimize(system_of(k))
            if system.polynomial() != poly:
                raise RuntimeError(f"family {family} system does not match at k={k}")
            rows.append(
                {
                    "family": family,
                    "k": k,
                    "rank": system.n,
                    "terms": len(poly),
                    "naive": naive_mult_count(poly),
                    "N": count_n(system),
                }
            )
    return rows


def cmd_table(args) -> int:
    config = _session(args)
    rows = _table_rows(args.kmax_p, args.kmax_q)
    columns = ["family", "k", "rank", "terms", "naive", "N"]
    if config.fmt == "json":
        print(json.dumps(rows))
    elif config.fmt == "csv":
        print(",".join(columns))
        for row in rows:
            print(",".join(str(row[c]) for c in columns))
    else:
        widths = [
            max(len(c), max(len(str(row[c])) for row in rows)) for c in columns
        ]
        print("  ".join(c.rjust(w) for c, w in zip(columns, widths)))
        for row in rows:
            print("  ".join(str(row[c]).rjust(w) for c, w in zip(columns, widths)))
    return OK


def cmd_selftest(args) -> int:
    config = _session(args)
    rng = random.Random(config.seed)
    failures = 0

    def check(name: str, passed: bool) -> None:
        nonlocal failures
        print(f"{'ok' if passed else 'FAIL'} {name}")
        failures += 0 if passed else 1

    alphabet = Alphabet(("x", "y", "z"))
    p = parse("x - x*y*x", alphabet)
    check("rank x - x*y*x == 4", rank_of(p) == 4)
    check("rank 1 + x - y*x == 3", rank_of(parse("1 + x - y*x", alphabet)) == 3)
    product = parse("(x*y + 1)*(z*x - 3)", alphabet)
    check("rank (x*y+1)(z*x-3) == 5", rank_of(product) == 5)
    anticommutator = parse("x*y + y*x", alphabet)
    system = build_als(anticommutator)
    check("anticommutator has a 4-dim minimal system", system.n == 4)
    check("minimal systems certify minimal", is_minimal(system))
    check("atoms of x*y*z", len(factor_atoms(parse("x*y*z", alphabet))) == 3)
    check("x*y + y*x has no split", len(factor_atoms(anticommutator)) == 1)
    equal = True
    for _ in range(args.rounds):
        words = [
            tuple(rng.randrange(3) for _ in range(rng.randrange(5)))
            for _ in range(rng.randrange(1, 7))
        ]
        q = NcPolynomial(
            alphabet,
            {w: Fraction(rng.choice([-3, -2, -1, 1, 2, 3])) for w in words},
        )
        tup = random_rational_tuple(rng, 3, args.size)
        reference = naive_evaluate(q, tup.mats)
        als = build_als(q)
        left = evaluate_left(als, tup).result
        right = evaluate_right(als, tup).result
        if not (np.array_equal(left, reference) and np.array_equal(right, reference)):
            equal = False
            break
    check(f"oracle equivalence on {args.rounds} random polynomials", equal)
    return OK if failures == 0 else VERIFY_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncpoly",
        description=(
            "Represent non-commutative polynomials as linear systems, "
            "minimize and factor them, and evaluate on matrix tuples "
            "with counted matrix products."
        ),
    )
    parser.add_argument(
        "--alphabet",
        help='comma-separated letters, e.g. "x,y,z" (default: inferred)',
    )
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized runs")
    parser.add_argument(
        "--format", choices=("text", "csv", "json"), default="text"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("rank", help="rank of a polynomial (minimal system dimension)")
    s.add_argument("polynomial")
    s.set_defaults(func=cmd_rank)

    s = sub.add_parser("compile", help="build a minimal system and report its counts")
    s.add_argument("polynomial")
    s.add_argument("-o", "--output", help="write the system to this file")
    s.set_defaults(func=cmd_compile)

    s = sub.add_parser("minimize", help="minimize a system from a file")
    s.add_argument("input")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_minimize)

    s = sub.add_parser("eval", help="evaluate.als on matrices.txt")
    s.add_argument("system")
    s.add_argument("matrices")
    s.add_argument("--side", choices=("left", "right", "both"), default="left")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("factor", help="factor a polynomial into atoms")
    s.add_argument("polynomial")
    s.add_argument(
        "--shuffle",
        action="store_true",
        help="randomize the split-position order (seeded)",
    )
    s.set_defaults(func=cmd_factor)

    s = sub.add_parser("verify-block", help="check a block factorization file")
    s.add_argument("factors")
    s.add_argument("polynomial")
    s.set_defaults(func=cmd_verify_block)

    s = sub.add_parser("table", help="multiplication counts for two families")
    s.add_argument("--kmax-p", type=int, default=6)
    s.add_argument("--kmax-q", type=int, default=5)
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("selftest", help="quick built-in verification")
    s.add_argument("--rounds", type=int, default=25)
    s.add_argument("--size", type=int, default=3, help="matrix size m")
    s.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, FormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
