"""Command line front end.

Exit status: 0 when the command evaluated (whatever the verdict), 1 when
``xval`` found a mismatch, 2 on any error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import Prime, check_level
from .criteria import DEFAULT_A0_READING, A0Reading, Method, check_minimal
from .dynamics import minimal_decomposition, orbit
from .errors import PadicMinError
from .harness import DEFAULT_CAP, FamilySpec, cross_validate, find_minimal, identity_suite
from .polytext import parse_poly
from .serialize import document

_GLOBAL_DEFAULTS = {"format": "text", "seed": 0, "cap": DEFAULT_CAP}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common() -> argparse.ArgumentParser:
    c = _Parser(add_help=False)
    c.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS)
    c.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    c.add_argument("--cap", type=int, default=argparse.SUPPRESS, help="largest family size allowed")
    return c


def _family_args(sp):
    sp.add_argument("--prime", type=int, required=True)
    sp.add_argument("--max-degree", type=int, required=True)
    sp.add_argument("--coeff-modulus", type=int, default=None, help="default p^delta")
    sp.add_argument("--coeff-min", type=int, default=0)
    sp.add_argument("--constant-term", type=int, default=1)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--exhaustive", action="store_true")
    g.add_argument("--samples", type=int)


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = _Parser(prog="padicmin", description=__doc__, parents=[common])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("check", parents=[common], help="decide minimality on Z_p")
    sp.add_argument("--prime", type=int, required=True)
    sp.add_argument("--poly", required=True)
    sp.add_argument("--mode", choices=[m.value for m in Method], default=None)
    sp.add_argument("--a0-reading", choices=[r.value for r in A0Reading], default=DEFAULT_A0_READING.value)

    sp = sub.add_parser("orbit", parents=[common], help="orbit of a point mod p^level")
    sp.add_argument("--prime", type=int, required=True)
    sp.add_argument("--level", type=int, required=True)
    sp.add_argument("--start", type=int, default=0)
    sp.add_argument("--poly", required=True)

    sp = sub.add_parser("decompose", parents=[common], help="components of f mod p^level")
    sp.add_argument("--prime", type=int, required=True)
    sp.add_argument("--level", type=int, required=True)
    sp.add_argument("--poly", required=True)
    sp.add_argument("--max-members", type=int, default=50, help="hide member lists of larger components")

    sp = sub.add_parser("xval", parents=[common], help="closed form vs oracle over a family")
    _family_args(sp)
    sp.add_argument("--workers", type=int, default=1)

    sp = sub.add_parser("find", parents=[common], help="list minimal members of a family")
    _family_args(sp)
    sp.add_argument("--limit", type=int, default=10)

    sp = sub.add_parser("identities", parents=[common], help="structural identity suite")
    sp.add_argument("--prime", type=int, required=True)
    sp.add_argument("--samples", type=int, default=1000)
    return ap


def _family(args) -> FamilySpec:
    return FamilySpec(
        p=Prime(args.prime),
        max_degree=args.max_degree,
        coeff_modulus=args.coeff_modulus,
        constant_term=args.constant_term,
        samples=args.samples,
        seed=args.seed,
        coeff_min=args.coeff_min,
        cap=args.cap,
    )


# --- text rendering ----------------------------------------------------------


def _render_check(r) -> list[str]:
    lines = [
        f"polynomial: {r['poly']['text']}  (p = {r['p']})",
        f"verdict: {r['verdict']}  [method: {r['method']}]",
    ]
    if r["normalized"] and r["normalized"]["coeffs"] != r["poly"]["coeffs"]:
        lines.append(f"normalized: {r['normalized']['text']}")
    if r["matched_case"]:
        lines.append(f"case: {r['matched_case']}")
    terms = r.get("terms")
    if terms and terms.get("alpha") is not None:
        lines.append("alpha: (" + ", ".join(map(str, terms["alpha"])) + ") mod 5")
    for c in r["conditions"]:
        mark = "pass" if c["passed"] else "FAIL"
        lines.append(f"  [{mark}] {c['name']}: {c['congruence']}  (value {c['value']})")
    if r["closed_form_verdict"]:
        lines.append(f"closed form: {r['closed_form_verdict']}")
    if r["oracle_verdict"]:
        w = r["witness"]
        lines.append(
            f"oracle: {r['oracle_verdict']}  (orbit of 0 mod {w['p']}^{w['n']}: "
            f"preperiod {w['preperiod']}, period {w['period']})"
        )
    lines += [f"note: {n}" for n in r["notes"]]
    return lines


def _render_orbit(r) -> list[str]:
    return [
        " -> ".join(map(str, r["sequence"])) + f" -> {r['sequence'][r['preperiod']]}",
        f"preperiod {r['preperiod']}, period {r['period']}",
    ]


def _render_decompose(r, max_members) -> list[str]:
    comps = r["components"]
    lines = [f"{len(comps)} component(s) mod {r['p']}^{r['n']}"]
    for i, c in enumerate(comps):
        lines.append(f"  #{i}: cycle length {len(c['cycle'])}, tails {len(c['tails'])}")
        if len(c["cycle"]) + len(c["tails"]) <= max_members:
            lines.append(f"      cycle: {c['cycle']}")
            if c["tails"]:
                lines.append(f"      tails: {c['tails']}")
    return lines


def _render_xval(r) -> list[str]:
    fam = r["family"]
    kind = "exhaustive" if fam["samples"] is None else f"{fam['samples']} samples, seed {fam['seed']}"
    lines = [
        f"p = {fam['p']}, degree <= {fam['max_degree']}, coefficients mod {fam['coeff_modulus']} ({kind})",
        f"checked: {r['total']}",
        f"minimal (oracle): {r['minimal_count']}",
        f"mismatches: {r['mismatch_count']}",
    ]
    if r["p3_reading_scores"] is not None:
        for name, n in r["p3_reading_scores"].items():
            lines.append(f"  A0 reading {name}: {n} mismatches")
        lines.append(f"resolved A0 reading: {r['resolved_reading'] or 'none'}")
    for m in r["mismatches"][:20]:
        tag = f" [{m['a0_reading']}]" if m["a0_reading"] else ""
        lines.append(f"  {m['poly']['list']}: closed form {m['closed_form']}, oracle {m['oracle']}{tag}")
    lines.append(f"runtime: {r['runtime']:.2f} s")
    return lines


def _render_identities(r) -> list[str]:
    lines = [f"p = {r['p']}, {r['samples']} samples, seed {r['seed']}"]
    for name, n in r["violations"].items():
        lines.append(f"  {name}: {n} violations in {r['checked'][name]} checks")
    for name, n in r["informational"].items():
        lines.append(f"  (info) {name}: {n}")
    return lines


# --- commands ----------------------------------------------------------------


def run(args) -> tuple[str, object, int]:
    cmd = args.command
    if cmd == "check":
        f = parse_poly(args.poly)
        rep = check_minimal(f, Prime(args.prime), args.mode, A0Reading(args.a0_reading))
        return "check", rep, 0
    if cmd == "orbit":
        p, n = Prime(args.prime), check_level(args.level)
        if not 0 <= args.start < p**n:
            raise UsageError(f"start must lie in [0, {p**n})")
        return "orbit", orbit(parse_poly(args.poly), args.start, p, n), 0
    if cmd == "decompose":
        p, n = Prime(args.prime), check_level(args.level)
        return "decompose", minimal_decomposition(parse_poly(args.poly), p, n), 0
    if cmd == "xval":
        rep = cross_validate(_family(args), workers=args.workers)
        return "xval", rep, (0 if rep.exact else 1)
    if cmd == "find":
        return "find", find_minimal(_family(args), args.limit), 0
    if cmd == "identities":
        rep = identity_suite(Prime(args.prime), args.samples, args.seed)
        return "identities", rep, 0
    raise UsageError(f"unknown command {cmd}")


def render_text(kind: str, result, args) -> str:
    if kind == "check":
        lines = _render_check(result)
    elif kind == "orbit":
        lines = _render_orbit(result)
    elif kind == "decompose":
        lines = _render_decompose(result, args.max_members)
    elif kind == "xval":
        lines = _render_xval(result)
    elif kind == "find":
        lines = [f"{len(result)} minimal polynomial(s)"] + [f"  {f['text']}   [{f['list']}]" for f in result]
    else:
        lines = _render_identities(result)
    return "\n".join(lines)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        for k, v in _GLOBAL_DEFAULTS.items():
            if not hasattr(args, k):
                setattr(args, k, v)
        kind, result, status = run(args)
    except (UsageError, PadicMinError, ValueError) as exc:
        print(f"padicmin: error: {exc}", file=sys.stderr)
        return 2

    doc = document(kind, result)
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print(render_text(kind, doc["result"], args))
    return status


if __name__ == "__main__":
    sys.exit(main())
