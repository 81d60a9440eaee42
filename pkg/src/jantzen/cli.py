"""Command line front end: ``jantzen <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .arith import ConsistencyError, QuantumSpec
from .chars import _json_coord, display_coords, expand_combination, expand_weights, format_coords
from .rootsets import s_set, u_set, v_set
from .rootsys import FAMILIES, RootSystem, Weight, build_root_system, parse_weight
from .sumformulas import (TiltingCharacter, divT_Q, euler_delta, euler_q, jantzen_sum, jantzen_sum_quantum,
                          tilting_sum, tilting_sum_quantum)
from .verify import SUITES, verify_suite
from .weylact import EnumerationCapExceeded

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CONSISTENCY = 3


class UsageError(ValueError):
    pass


# -- argument parsing ------------------------------------------------------------

def _add_system(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True, type=str.upper, choices=FAMILIES)
    p.add_argument("--rank", required=True, type=int)
    p.add_argument("--rho-shifted", action="store_true",
                   help="read every weight argument as lambda+rho instead of lambda")
    p.add_argument("--json", action="store_true", help="emit JSON")


def _add_weight(p: argparse.ArgumentParser, name: str) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument(f"--{name}", metavar="COORDS", help="comma separated coordinates, e.g. 7 or 5/2,3/2,1/2")
    g.add_argument(f"--{name}-rho", metavar="COORDS", help=f"{name}+rho instead of {name}")


def _add_quantum(p: argparse.ArgumentParser) -> None:
    p.add_argument("--l", type=int, required=True, help="odd order parameter l >= 3")
    p.add_argument("--char", type=int, default=0, help="characteristic of the ground field (default 0)")


def _add_prime(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p", type=int, required=True, help="prime")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jantzen", description="Jantzen-type sum formulas for classical groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sum-weyl", help="sum of the Jantzen layers of a Weyl module")
    _add_system(p)
    _add_weight(p, "weight")
    _add_prime(p)
    p.add_argument("--expand", action="store_true", help="also list weight multiplicities")

    p = sub.add_parser("sum-weyl-q", help="quantum version of sum-weyl")
    _add_system(p)
    _add_weight(p, "weight")
    _add_quantum(p)
    p.add_argument("--expand", action="store_true")

    for name, quantum in (("sum-tilting", False), ("sum-tilting-q", True)):
        p = sub.add_parser(name, help="quantum version of sum-tilting" if quantum
                           else "dimension sum of the filtration layers of a tilting module")
        _add_system(p)
        _add_weight(p, "lambda")
        if quantum:
            _add_quantum(p)
        else:
            _add_prime(p)
        p.add_argument("--factors", required=True,
                       help='Weyl factors with multiplicities, e.g. "4:1,0:1" or "3/1/0:1,2/2/0:2"')
        p.add_argument("--route", choices=("direct", "euler", "both"), default="both")

    p = sub.add_parser("euler", help="Euler coefficients e_lambda(Delta(mu)) and e_lambda(Q(mu))")
    _add_system(p)
    _add_weight(p, "lambda")
    _add_weight(p, "mu")
    p.add_argument("--route", choices=("V", "U", "both"), default="both")
    p.add_argument("--oracle", action="store_true", help="brute-force the root sets")

    p = sub.add_parser("divt", help="div_T of the cokernel of Delta(mu) -> nabla(mu) in the chi basis")
    _add_system(p)
    _add_weight(p, "weight")

    p = sub.add_parser("rootsets", help="the sets S, U and V for a pair of dominant weights")
    _add_system(p)
    _add_weight(p, "lambda")
    _add_weight(p, "mu")
    p.add_argument("--oracle", action="store_true", help="enumerate the Weyl group instead of the fast routine")

    p = sub.add_parser("expand", help="weight multiplicities of chi(lambda)")
    _add_system(p)
    _add_weight(p, "weight")

    p = sub.add_parser("verify", help="randomized differential checks")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-rank", type=int, default=4)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--json", action="store_true")
    return parser


# -- input conversion -------------------------------------------------------------

def _system(args) -> RootSystem:
    try:
        return build_root_system(args.family, args.rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _weight(args, rs: RootSystem, name: str) -> Weight:
    attr = name.replace("-", "_")
    shifted_text = getattr(args, f"{attr}_rho")
    text = shifted_text if shifted_text is not None else getattr(args, attr)
    shifted = shifted_text is not None or args.rho_shifted
    w = rs.weight(parse_weight(text), shifted=shifted)
    return rs.unshift(w)


def parse_factors(text: str, rs: RootSystem, shifted: bool = False) -> TiltingCharacter:
    """``"4:1,0:1"``; coordinates of one weight are separated by ``/``.

    Half-integral coordinates are written in decimal (``4.5/3.5``) because
    the slash is taken.
    """
    factors: dict[Weight, int] = {}
    for item in text.replace(" ", "").split(","):
        if not item:
            continue
        try:
            wtext, _, mult = item.rpartition(":")
            if not wtext:
                wtext, mult = mult, "1"
            coords = tuple(Fraction(c) for c in wtext.split("/"))
            k = int(mult)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"malformed factor {item!r}") from exc
        w = rs.unshift(rs.weight(coords, shifted=shifted))
        factors[w] = factors.get(w, 0) + k
    if not factors:
        raise UsageError("no factors given")
    return TiltingCharacter.from_mapping(rs, factors)


def _spec(args, rs: RootSystem) -> QuantumSpec:
    return QuantumSpec(args.l, args.char)


# -- rendering ------------------------------------------------------------------

def _weight_label(rs: RootSystem, coords: tuple) -> str:
    if rs.family == "A" and rs.rank == 1:
        return str(_json_coord(coords[0]))
    return "(" + format_coords(tuple(_json_coord(c) for c in coords)) + ")"


def _weight_json(rs: RootSystem, coords: tuple) -> list:
    if rs.family == "A" and rs.rank == 1:
        return [_json_coord(coords[0])]
    return [_json_coord(c) for c in coords]


def _expansion_lines(rs: RootSystem, ms) -> list[str]:
    return [f"  {_weight_label(rs, k)}: {v}" for k, v in sorted(ms.items(), reverse=True)]


def _expansion_json(rs: RootSystem, ms) -> list[dict]:
    return [{"weight": _weight_json(rs, k), "mult": v} for k, v in sorted(ms.items(), reverse=True)]


def _emit(args, text_lines: list[str], payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print("\n".join(text_lines))


def _label(rs: RootSystem, w: Weight) -> str:
    return format_coords(display_coords(rs, w))


# -- subcommands ----------------------------------------------------------------

def cmd_sum_weyl(args) -> int:
    rs = _system(args)
    mu = _weight(args, rs, "weight")
    if args.command == "sum-weyl":
        res = jantzen_sum(mu, args.p, rs)
    else:
        res = jantzen_sum_quantum(mu, _spec(args, rs), rs)
    lines = [res.to_text()]
    payload = res.to_json()
    if args.expand:
        ms = expand_combination(res.combo)
        lines += ["weights:"] + _expansion_lines(rs, ms)
        payload["expansion"] = _expansion_json(rs, ms)
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_sum_tilting(args) -> int:
    rs = _system(args)
    lam = _weight(args, rs, "lambda")
    Q = parse_factors(args.factors, rs, args.rho_shifted)
    if args.command == "sum-tilting":
        res = tilting_sum(lam, Q, args.p, rs, args.route)
    else:
        res = tilting_sum_quantum(lam, Q, _spec(args, rs), rs, args.route)
    _emit(args, [res.to_text()], res.to_json())
    return EXIT_OK


def cmd_euler(args) -> int:
    rs = _system(args)
    lam, mu = _weight(args, rs, "lambda"), _weight(args, rs, "mu")
    d = euler_delta(lam, mu, rs, args.route, args.oracle)
    q = euler_q(lam, mu, rs, args.oracle)
    lines = [f"e_lambda(Delta(mu)) = {d}", f"e_lambda(Q(mu)) = {q}"]
    _emit(args, lines, {"euler_delta": d.to_json(), "euler_q": q.to_json(), "route": args.route})
    return EXIT_OK


def cmd_divt(args) -> int:
    rs = _system(args)
    mu = _weight(args, rs, "weight")
    res = divT_Q(mu, rs)
    _emit(args, [res.to_text()], res.to_json())
    return EXIT_OK


def _entry_line(e) -> str:
    w = ",".join(f"{'-' if s < 0 else ''}{i + 1}" for i, s in zip(e.w.perm, e.w.signs))
    return f"  {e.gamma}  n={e.n}  det={e.det:+d}  w=[{w}]"


def cmd_rootsets(args) -> int:
    rs = _system(args)
    lam, mu = _weight(args, rs, "lambda"), _weight(args, rs, "mu")
    S = sorted(s_set(lam, mu, rs, args.oracle), key=lambda e: e.gamma.coords, reverse=True)
    U = u_set(lam, mu, rs, args.oracle)
    V = v_set(lam, mu, rs, args.oracle)
    lines = [f"S(lambda, mu): {len(S)} root{'s' if len(S) != 1 else ''}"]
    for e in S:
        ns = ", ".join(str(n) for _, n in e.sorted_solutions())
        lines.append(f"  {e.gamma}  n in {{{ns}}}")
    lines.append(f"U(lambda, mu): {len(U)} entries")
    lines += [_entry_line(e) for e in U]
    lines.append(f"V(lambda, mu): {len(V)} entries")
    lines += [_entry_line(e) for e in V]
    payload = {
        "lambda": [_json_coord(x) for x in lam.coords],
        "mu": [_json_coord(x) for x in mu.coords],
        "S": [{"gamma": list(e.gamma.coords), "n": [n for _, n in e.sorted_solutions()]} for e in S],
        "U": [e.to_json() for e in U],
        "V": [e.to_json() for e in V],
    }
    _emit(args, lines, payload)
    return EXIT_OK


def cmd_expand(args) -> int:
    rs = _system(args)
    lam = _weight(args, rs, "weight")
    ms = expand_weights(lam, rs)
    lines = [f"chi({_label(rs, lam)}): dimension {ms.total()}"] + _expansion_lines(rs, ms)
    _emit(args, lines, {"lambda": [_json_coord(x) for x in display_coords(rs, lam)],
                        "dimension": ms.total(), "weights": _expansion_json(rs, ms)})
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify_suite(args.suite, args.seed, args.max_rank, args.trials)
    if args.json:
        print(json.dumps(report.to_json(), sort_keys=True))
    else:
        print(report.to_text())
    return EXIT_OK if report.ok else EXIT_FAIL


COMMANDS = {
    "sum-weyl": cmd_sum_weyl,
    "sum-weyl-q": cmd_sum_weyl,
    "sum-tilting": cmd_sum_tilting,
    "sum-tilting-q": cmd_sum_tilting,
    "euler": cmd_euler,
    "divt": cmd_divt,
    "rootsets": cmd_rootsets,
    "expand": cmd_expand,
    "verify": cmd_verify,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except ConsistencyError as exc:
        print(f"jantzen: internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except (ValueError, TypeError, EnumerationCapExceeded) as exc:
        print(f"jantzen: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
