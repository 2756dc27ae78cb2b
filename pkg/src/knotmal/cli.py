"""Command-line interface.

Exit status: 0 when a question is decided, 2 when only bounded evidence is
available, 1 on any error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .census import default_census, load_census
from .diagram import to_diagram, writhe
from .engine.alexander import alexander_polynomial
from .errors import KnotmalError
from .malnormality import (
    Decision,
    JsjSummary,
    classify,
    decide_malnormality,
    decide_peripheral_malnormality_jsj,
    document,
    synthesize_witness,
    verify_witness,
    witness_document,
    witness_expression,
    witness_from_document,
)
from .notation import FromDiagram, parse_knot_expr, parse_knot_file, render
from .presentation import abelianization_check, present, to_text
from .probe import ProbeBounds, probe_malnormality

EXIT_DECIDED, EXIT_ERROR, EXIT_EVIDENCE = 0, 1, 2
VERIFY_DEGREE = 7


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _census(args):
    return load_census(args.census) if args.census else default_census()


def _knots(args, census):
    if Path(args.input).is_file():
        return parse_knot_file(args.input, census)
    return [parse_knot_expr(args.input, census)]


def _probe_bounds(args) -> ProbeBounds:
    default = ProbeBounds()
    return ProbeBounds(g_length=args.g_length, p_exponent=args.p_exp, quotients=args.quotients,
                       degree_cap=args.degree_cap or default.degree_cap, seed=args.seed)


def _verify_degree(args) -> int:
    return args.degree_cap or VERIFY_DEGREE


def _decision_json(k, klass, d: Decision) -> dict:
    knot, cert = render(k), None
    if d.malnormal == "no-with-witness":
        group, pair = present(witness_expression(k, klass))
        cert = witness_document(d.certificate, group, pair)
    elif d.malnormal == "evidence-only":
        group, pair = present(k)
        cert = document(knot, klass, group, pair, bounds=d.certificate.bounds_json(),
                        survivors=d.certificate.survivors_json())
    return {"knot": knot, "class": str(klass), "malnormal": d.malnormal,
            "rationale": d.rationale, "certificate": cert}


def cmd_parse(args, census):
    out = []
    for k in _knots(args, census):
        item = {"knot": render(k), "kind": type(k).__name__.lower()}
        if isinstance(k, FromDiagram):
            d = to_diagram(k.source)
            item.update(crossings=d.arcs, writhe=writhe(d))
        out.append(item)
    return out, EXIT_DECIDED


def cmd_present(args, census):
    out = []
    for k in _knots(args, census):
        group, pair = present(k)
        abelianization_check(group, pair)
        if args.format == "text":
            out.append(to_text(group, pair))
        else:
            out.append({"knot": render(k), "generators": list(group.generators),
                        "relators": [str(r) for r in group.relators], "mu": str(pair.mu),
                        "lambda": str(pair.lam), "structure": group.structure.get("kind"),
                        "abelianization": group.abelianization})
    return out, EXIT_DECIDED


def cmd_classify(args, census):
    return [{"knot": render(k), "class": str(classify(k, census))} for k in _knots(args, census)], EXIT_DECIDED


def cmd_decide(args, census):
    out, status = [], EXIT_DECIDED
    for k in _knots(args, census):
        klass = classify(k, census)
        d = decide_malnormality(k, census, quotient_budget=args.quotients, seed=args.seed,
                                degree_cap=_verify_degree(args), probe_bounds=_probe_bounds(args))
        if d.malnormal == "evidence-only":
            status = EXIT_EVIDENCE
        out.append(_decision_json(k, klass, d))
    return out, status


def cmd_witness(args, census):
    out = []
    for k in _knots(args, census):
        klass = classify(k, census)
        w = synthesize_witness(k, census)
        group, pair = present(witness_expression(k, klass))
        w = verify_witness(group, pair, w, args.quotients, seed=args.seed, degree_cap=_verify_degree(args))
        out.append(witness_document(w, group, pair))
    return out, EXIT_DECIDED


def cmd_verify(args, census):
    text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text(encoding="utf-8")
    docs = json.loads(text)
    docs = docs if isinstance(docs, list) else [docs]
    out = []
    for doc in docs:
        if "malnormal" in doc:  # a decide report
            doc = doc["certificate"] or {}
        k = parse_knot_expr(doc["knot"], census)
        klass = classify(k, census)
        group, pair = present(witness_expression(k, klass))
        if (doc["generators"] != list(group.generators)
                or doc["relators"] != [str(r) for r in group.relators]
                or doc["mu"] != str(pair.mu) or doc["lambda"] != str(pair.lam)):
            raise KnotmalError(f"{doc['knot']}: presentation in the certificate does not match the knot")
        w = verify_witness(group, pair, witness_from_document(doc), args.quotients,
                           seed=args.seed, degree_cap=_verify_degree(args))
        out.append(witness_document(w, group, pair))
    return out, EXIT_DECIDED


def cmd_probe(args, census):
    out = []
    for k in _knots(args, census):
        group, pair = present(k)
        report = probe_malnormality(group, pair, _probe_bounds(args))
        out.append(document(render(k), classify(k, census), group, pair,
                            bounds=report.bounds_json(), survivors=report.survivors_json()))
    return out, EXIT_DECIDED


def cmd_alexander(args, census):
    out = []
    for k in _knots(args, census):
        group, _ = present(k)
        poly = alexander_polynomial(group).normalized()
        out.append({"knot": render(k), "alexander": str(poly), "coefficients": poly.to_list()})
    return out, EXIT_DECIDED


def cmd_jsj(args, census):
    j = JsjSummary(args.seifert, args.piece, args.solid_torus, args.thickened_torus)
    d = decide_peripheral_malnormality_jsj(j)
    return [{"malnormal": d.malnormal, "rationale": d.rationale}], EXIT_DECIDED


COMMANDS = {
    "parse": (cmd_parse, "parse a knot expression"),
    "present": (cmd_present, "knot group presentation with peripheral pair"),
    "classify": (cmd_classify, "structural class (torus, cable, composite or none)"),
    "decide": (cmd_decide, "decide peripheral malnormality"),
    "witness": (cmd_witness, "build and verify a non-malnormality witness"),
    "verify": (cmd_verify, "re-verify a witness certificate (JSON file or -)"),
    "probe": (cmd_probe, "bounded search for witnesses through finite quotients"),
    "alexander": (cmd_alexander, "Alexander polynomial by Fox calculus"),
    "jsj-decide": (cmd_jsj, "decide from a declared JSJ summary"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--census", metavar="PATH", help="knot table CSV (default: bundled table)")
    common.add_argument("--quotients", type=int, default=50, metavar="N", help="quotient budget")
    common.add_argument("--degree-cap", type=int, default=None, metavar="D",
                        help="largest permutation degree searched")
    common.add_argument("--g-length", type=int, default=ProbeBounds.g_length, metavar="L")
    common.add_argument("--p-exp", type=int, default=ProbeBounds.p_exponent, metavar="E")
    common.add_argument("--seed", type=int, default=0, metavar="S")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")

    parser = _Parser(prog="knotmal", description="Peripheral malnormality of knot groups.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        if name == "jsj-decide":
            kind = p.add_mutually_exclusive_group(required=True)
            kind.add_argument("--seifert", dest="seifert", action="store_true",
                              help="the JSJ piece containing the boundary is Seifert fibred")
            kind.add_argument("--not-seifert", dest="seifert", action="store_false")
            p.add_argument("--solid-torus", action="store_true")
            p.add_argument("--thickened-torus", action="store_true")
            p.add_argument("--piece", default="", help="description of the boundary piece")
        else:
            p.add_argument("input", help="knot expression, a file of expressions, or (verify) a JSON file")
    return parser


def _render_text(item) -> str:
    if isinstance(item, str):
        return item.rstrip("\n")
    return "\n".join(f"{k}: {json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v}"
                     for k, v in sorted(item.items()))


def emit(results: list, fmt: str) -> str:
    if fmt == "text":
        return "\n\n".join(_render_text(r) for r in results) + "\n"
    payload = results[0] if len(results) == 1 else results
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        census = _census(args)
        results, status = COMMANDS[args.command][0](args, census)
    except (KnotmalError, ValueError, OSError, KeyError) as exc:
        print(f"knotmal {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    text = emit(results, args.format)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
