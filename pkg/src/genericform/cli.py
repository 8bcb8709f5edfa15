"""Command-line front end.

    genericform analyze PATTERN [--json]
    genericform check PATTERN [ASSIGNMENT] [--values "v1 v2 ..."] [--field gf:5]
    genericform verify PATTERN [--trials N] [--seed S] [--workers W]
    genericform oracle PATTERN [--max-exhaustive K]

Exit codes: 0 success, 1 verification failure, 2 input error, 3 guard exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .analysis import Analysis, analyze
from .canonical import ranks as matrix_ranks
from .canonical import reduce_numeric
from .fields import parse_field
from .graph import LEFT, MIXED, RIGHT
from .matrix import ExactMatrix, render_grid
from .oracle import (DEFAULT_EXHAUSTIVE_LIMIT, DEFAULT_SAMPLE_RANGE, GuardExceeded,
                     compare_with_oracle, verify_theorem)
from .pattern import PatternError, instantiate, parse_assignment, parse_pattern, render_pattern
from .poly import evaluate, render, to_json

SCHEMA_VERSION = 1
DEFAULT_SEED = 20240229

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


class InputError(Exception):
    pass


def _grid(M: ExactMatrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in M.entries]


def _provenance(raw: bytes) -> dict:
    return {"tool": "genericform", "version": __version__,
            "inputSha256": hashlib.sha256(raw).hexdigest()}


def _poly_json(f) -> dict:
    return {"text": render(f), "terms": to_json(f)}


def analysis_json(an: Analysis, raw: bytes) -> dict:
    pat, g = an.pattern, an.graph
    return {
        "schemaVersion": SCHEMA_VERSION,
        "command": "analyze",
        "provenance": _provenance(raw),
        "pattern": {"m": pat.m, "p": pat.p, "q": pat.q, "n": pat.n,
                    "text": render_pattern(pat)},
        "genericRanks": {"rA": an.ranks.rA, "rB": an.ranks.rB, "rM": an.ranks.rM},
        "pair": {"A": an.A.to_json(), "B": an.B.to_json(), "v": an.v,
                 "merged": an.merged.to_json(),
                 "labels": {"A": an.A.describe(g), "B": an.B.describe(g),
                            "merged": an.merged.describe(g)}},
        "triple": {"r": an.triple.r, "s": an.triple.s, "t": an.triple.t},
        "genericForm": _grid(an.mgen),
        "blockForm": {"permutations": an.permutation.to_json(),
                      "matrix": _grid(an.block_form)},
        "minors": {"A": _poly_json(an.mu_A), "B": _poly_json(an.mu_B),
                   "merged": _poly_json(an.mu_merged)},
        "f": _poly_json(an.f),
    }


def analysis_text(an: Analysis, raw: bytes) -> str:
    g = an.graph
    perm = an.permutation.to_json()
    lines = [
        f"genericform {__version__}  input sha256 {hashlib.sha256(raw).hexdigest()}",
        "",
        render_pattern(an.pattern).rstrip(),
        "",
        f"generic ranks: rA={an.ranks.rA} rB={an.ranks.rB} rM={an.ranks.rM}",
        f"left matchbox A:  {an.A.describe(g)}  edges {an.A.sorted_edges()}",
        f"right matchbox B: {an.B.describe(g)}  edges {an.B.sorted_edges()}",
        f"common vertices v = {an.v}",
        f"merged matchbox:  {an.merged.describe(g)}  edges {an.merged.sorted_edges()}",
        f"triple (r, s, t) = ({an.triple.r}, {an.triple.s}, {an.triple.t})",
        "",
        "generic form M(eps_{A u B}):",
        render_grid(an.mgen) or "(empty)",
        "",
        f"row order {perm['rows']}, A columns {perm['colsA']}, B columns {perm['colsB']}:",
        render_grid(an.block_form) or "(empty)",
        "",
        f"mu_A      = {render(an.mu_A)}",
        f"mu_B      = {render(an.mu_B)}",
        f"mu_merged = {render(an.mu_merged)}",
        f"f         = {render(an.f)}",
    ]
    return "\n".join(lines) + "\n"


def _read_pattern(path: str):
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise InputError(f"{path}: not valid UTF-8") from None
    try:
        return parse_pattern(text), raw
    except PatternError as exc:
        raise InputError(f"{path}: {exc}") from None


def _sample_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(v) for v in text.replace(",", ":").split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError("expected LO:HI") from None
    if lo > hi:
        raise argparse.ArgumentTypeError("LO must not exceed HI")
    return lo, hi


def _field(text: str):
    try:
        return parse_field(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    pat, raw = _read_pattern(args.pattern)
    an = analyze(pat)
    _emit(args, analysis_json(an, raw), analysis_text(an, raw))
    return EXIT_OK


def cmd_check(args) -> int:
    pat, raw = _read_pattern(args.pattern)
    if (args.assignment is None) == (args.values is None):
        raise InputError("give exactly one of an assignment file or --values")
    try:
        if args.assignment is not None:
            values = parse_assignment(Path(args.assignment).read_text(encoding="utf-8"), pat.n)
        else:
            values = parse_assignment("a = " + args.values, pat.n)
        a = [args.field(v) for v in values]
    except OSError as exc:
        raise InputError(f"cannot read {args.assignment}: {exc.strerror}") from None
    except (PatternError, ValueError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from None

    an = analyze(pat)
    fa = evaluate(an.f, a, args.field)
    M = instantiate(pat, a, args.field)
    cert = reduce_numeric(M)
    in_family = fa != 0
    matches = cert.triple == an.triple
    rk = matrix_ranks(M)
    payload = {
        "schemaVersion": SCHEMA_VERSION,
        "command": "check",
        "provenance": _provenance(raw),
        "field": args.field.name,
        "assignment": [str(x) for x in a],
        "f": render(an.f),
        "fValue": str(fa),
        "inFamily": in_family,
        "genericTriple": list(an.triple.as_tuple()),
        "observedTriple": list(cert.triple.as_tuple()),
        "ranks": {"A": rk[0], "B": rk[1], "M": rk[2]},
        "tripleMatches": matches,
        "certificate": cert.to_json(),
        "certificateValid": cert.check(M),
    }
    lines = [
        f"field {args.field.name}",
        f"a = {' '.join(payload['assignment'])}",
        f"f(a) = {fa}",
        "f(a) != 0: inside M_f" if in_family else "f(a) = 0: outside M_f",
        f"ranks of A(a), B(a), M(a): {rk[0]}, {rk[1]}, {rk[2]}",
        f"reduced triple (r, s, t) = {cert.triple.as_tuple()}, generic {an.triple.as_tuple()}"
        + (" (match)" if matches else " (differs)"),
        "", "S =", render_grid(cert.S) or "(empty)",
        "", "R1 =", render_grid(cert.R1) or "(empty)",
        "", "R2 =", render_grid(cert.R2) or "(empty)",
        "", "[S A R1 | S B R2] =", render_grid(cert.apply(M)) or "(empty)",
        f"certificate valid: {payload['certificateValid']}",
    ]
    _emit(args, payload, "\n".join(lines) + "\n")
    if in_family and not matches:
        return EXIT_FAILED
    return EXIT_OK


def cmd_verify(args) -> int:
    pat, raw = _read_pattern(args.pattern)
    rep = verify_theorem(pat, trials=args.trials, seed=args.seed, field=args.field,
                         sample_range=args.sample_range, workers=args.workers)
    payload = {"schemaVersion": SCHEMA_VERSION, "command": "verify",
               "provenance": _provenance(raw), **rep.to_json()}
    lines = [
        f"seed {rep.rng_seed}, field {rep.field}, sample range {rep.sample_range}",
        f"trials {rep.trials}: {rep.successes} passed, {rep.failures} failed, "
        f"{rep.skipped} skipped (f(a) = 0)",
    ]
    if rep.first_failure is not None:
        lines.append("first failure: " + json.dumps(rep.first_failure, sort_keys=True))
    if args.field.name != "rational":
        lines.append("note: over a small finite field most samples may be skipped")
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_FAILED if rep.failures else EXIT_OK


def cmd_oracle(args) -> int:
    pat, raw = _read_pattern(args.pattern)
    try:
        cmp = compare_with_oracle(pat, args.max_exhaustive, keep_matchboxes=True)
    except GuardExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    payload = {
        "schemaVersion": SCHEMA_VERSION,
        "command": "oracle",
        "provenance": _provenance(raw),
        "ranksFast": list(cmp.ranks_fast),
        "ranksBruteForce": list(cmp.ranks_brute),
        "vFast": cmp.v_fast,
        "vBruteForce": cmp.v_brute,
        "largest": {k: [mb.sorted_edges() for mb in v] for k, v in cmp.largest.items()},
        "agrees": cmp.agrees,
    }
    lines = []
    for kind in (LEFT, RIGHT, MIXED):
        boxes = cmp.largest[kind]
        lines.append(f"largest {kind} matchboxes ({len(boxes)}):")
        lines.extend(f"  {mb.sorted_edges()}" for mb in boxes)
    lines += [
        f"ranks: fast {cmp.ranks_fast}, brute force {cmp.ranks_brute}",
        f"minimal v: fast {cmp.v_fast}, brute force {cmp.v_brute}",
        "agrees" if cmp.agrees else "DISAGREES",
    ]
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_OK if cmp.agrees else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--field", type=_field, default=parse_field("rational"),
                        help="rational (default) or gf:<p>")

    ap = argparse.ArgumentParser(prog="genericform",
                                 description="Generic canonical forms of zero-pattern matrix pairs.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="optimal pair, generic form and f(x)")
    p.add_argument("pattern")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("check", parents=[common], help="reduce one member M(a) of the family")
    p.add_argument("pattern")
    p.add_argument("assignment", nargs="?", help="file with one line 'a = v1 ... vn'")
    p.add_argument("--values", help="inline values, e.g. '1 2 -1/3'")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", parents=[common], help="sample members of the family and reduce each one")
    p.add_argument("pattern")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--sample-range", type=_sample_range, default=DEFAULT_SAMPLE_RANGE,
                   metavar="LO:HI", help="integer sample range over the rationals")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", parents=[common], help="brute-force cross-check of the fast path")
    p.add_argument("pattern")
    p.add_argument("--max-exhaustive", type=int, default=DEFAULT_EXHAUSTIVE_LIMIT)
    p.set_defaults(func=cmd_oracle)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
