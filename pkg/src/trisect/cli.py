"""Command-line front end.

Exit codes: 0 for success (or a Consistent verdict), 1 for an Obstructed
verdict or a failed check, 2 for invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import TrisectError
from .forms import parse_form
from .heegaard import heegaard_homology, triple_from_json
from .johnson import spans_wedge_cube, tab_tc_generators
from .linking import enhancement_divergence, linking_form
from .rohlin import regluing_campaign, rohlin_obstruction
from .trisection import (
    intersection_form,
    make_diagram,
    standard_pseudotrisection,
    standardize_basis,
)

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2
DEFAULT_SEED = 20240101


class InputError(Exception):
    pass


def _seed(args) -> int:
    env = os.environ.get("TRISECT_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"TRISECT_SEED is not an integer: {env!r}") from None
    return args.seed


def _load_diagram(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return make_diagram(triple_from_json(text))


def _emit(args, payload: dict, lines) -> None:
    text = json.dumps(payload, indent=2) if args.json else "\n".join(lines)
    if args.out and args.command != "construct":
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text)


def _matrix_lines(m) -> list:
    return ["  " + " ".join(f"{x:3d}" for x in row) for row in m] or ["  (empty)"]


def cmd_form(args) -> int:
    d = _load_diagram(args.path).require_valid()
    f = intersection_form(d)
    payload = f.to_json()
    lines = [
        f"rank {f.rank}, signature {f.signature}, {'even' if f.even else 'odd'}, "
        f"{'unimodular' if f.unimodular else 'not unimodular'}",
        f"label: {f.label}",
    ] + _matrix_lines(f.matrix)
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_construct(args) -> int:
    q = parse_form(args.form)
    d = standard_pseudotrisection(q, args.k)
    if intersection_form(d).matrix != q:
        print("round trip failed", file=sys.stderr)
        return EXIT_FAIL
    doc = d.to_json()
    doc["name"] = f"standard {args.form} k={args.k}"
    doc["expected_form"] = [list(r) for r in q]
    text = json.dumps(doc)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        print(f"wrote genus-{d.genus} diagram to {args.out} (round trip verified)")
    else:
        print(text)
    return EXIT_OK


def cmd_homology(args) -> int:
    d = _load_diagram(args.path)
    reports = {p: heegaard_homology(d.triple.pair(p)).to_json() for p in ("ab", "bc", "ca")}
    payload = {"genus": d.genus, "k": d.k, "pairs": reports, "flags": d.flags.to_json()}
    lines = [f"{p.upper()}: H1 = {r['H1']}" for p, r in reports.items()]
    lines.append(f"valid pseudotrisection: {d.flags.valid}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_johnson_span(args) -> int:
    q = parse_form(args.form)
    tab, tc = tab_tc_generators(q, args.k)
    cert = spans_wedge_cube([tab, tc], tab.genus)
    payload = cert.to_json()
    payload.update({"genus": tab.genus, "tab_size": len(tab), "tc_size": len(tc)})
    lines = [
        f"genus {tab.genus}: {len(tab)} TAB + {len(tc)} TC generators in dimension {cert.dimension}",
        f"invariant factors: {cert.summary()}",
        f"spans over Z: {cert.spans_over_Z}",
    ]
    _emit(args, payload, lines)
    return EXIT_OK if cert.spans_over_Z else EXIT_FAIL


def cmd_linking(args) -> int:
    d = _load_diagram(args.path).require_valid()
    l2, l3 = linking_form(d, "l2"), linking_form(d, "l3")
    q2, q3 = l2.enhancement().basis_values, l3.enhancement().basis_values
    payload = {
        "l2": l2.to_json(),
        "l3": l3.to_json(),
        "q2": list(q2),
        "q3": list(q3),
        "symmetry_ok": l2.satisfies_symmetry() and l3.satisfies_symmetry(),
    }
    lines = ["l2:"] + _matrix_lines(l2.matrix) + ["l3:"] + _matrix_lines(l3.matrix)
    lines += [f"q2 = {''.join(map(str, q2))}", f"q3 = {''.join(map(str, q3))}"]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_rohlin(args) -> int:
    rep = rohlin_obstruction(parse_form(args.form))
    lines = [
        f"form {rep.form_label or 'unlabelled'}: signature {rep.signature} "
        f"({rep.sigma_mod16} mod 16), {'even' if rep.even else 'odd'}",
        f"verdict: {rep.verdict}",
    ]
    _emit(args, rep.to_json(), lines)
    return EXIT_FAIL if rep.verdict == "Obstructed" else EXIT_OK


def cmd_verify(args) -> int:
    seed = _seed(args)
    try:
        d = _load_diagram(args.path)
    except TrisectError as exc:
        payload = {"seed": seed, "runs": args.runs, "ok": False,
                   "checks": [{"check": "parse", "ok": False, "invariant": exc.invariant, "detail": str(exc)}]}
        _emit(args, payload, [f"seed {seed}", f"[FAIL] parse: {exc}"])
        return EXIT_INVALID
    checks = []

    def record(name, ok, detail=""):
        checks.append({"check": name, "ok": bool(ok), "detail": detail})

    record("validity", d.flags.valid, "; ".join(d.flags.failures()))
    if d.flags.valid:
        f = intersection_form(d)
        record("form symmetric unimodular", f.unimodular, f"label {f.label}")
        record("standardization keeps form", intersection_form(standardize_basis(d)).matrix == f.matrix)
        l2, l3 = linking_form(d, "l2"), linking_form(d, "l3")
        record("l2 symmetry", l2.satisfies_symmetry())
        record("l3 symmetry", l3.satisfies_symmetry())
        diverge = enhancement_divergence(d)
        if f.even:
            record("q2 = q3", not diverge)
            camp = regluing_campaign(d, args.runs, seed)
            record("regluing invariance", camp["ok"], f"{args.runs} scripts, base mu sum {camp['base_mu_sum']}")
        else:
            # odd forms are expected to split the two enhancements
            record("q2 != q3 (odd form, expected)", bool(diverge), f"differs at basis {diverge}")
    ok = all(c["ok"] for c in checks)
    payload = {"seed": seed, "runs": args.runs, "checks": checks, "ok": ok}
    lines = [f"seed {seed}"] + [
        f"[{'pass' if c['ok'] else 'FAIL'}] {c['check']}" + (f": {c['detail']}" if c["detail"] else "")
        for c in checks
    ]
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="PRNG seed (TRISECT_SEED overrides)")
    common.add_argument("--runs", type=int, default=100, help="random scripts for verify")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--out", help="also write output to this path")

    parser = argparse.ArgumentParser(prog="trisect", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("form", parents=[common], help="intersection form of a diagram file")
    p.add_argument("path")
    p.set_defaults(func=cmd_form)

    p = sub.add_parser("construct", parents=[common], help="standard diagram for a form")
    p.add_argument("form", help='e.g. "E8", "3E8+2H", "1" or a JSON matrix')
    p.add_argument("--k", type=int, default=0, help="number of stabilizations")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("homology", parents=[common], help="H1 of the three glued 3-manifolds")
    p.add_argument("path")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("johnson-span", parents=[common], help="spanning certificate for the generator families")
    p.add_argument("form")
    p.add_argument("--k", type=int, default=0)
    p.set_defaults(func=cmd_johnson_span)

    p = sub.add_parser("linking", parents=[common], help="linking forms l2, l3 and their enhancements")
    p.add_argument("path")
    p.set_defaults(func=cmd_linking)

    p = sub.add_parser("rohlin", parents=[common], help="Rohlin obstruction for a form")
    p.add_argument("form")
    p.set_defaults(func=cmd_rohlin)

    p = sub.add_parser("verify", parents=[common], help="run the invariant suite on a diagram file")
    p.add_argument("path")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (TrisectError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
