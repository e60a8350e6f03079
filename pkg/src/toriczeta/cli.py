"""Command-line front end.

Exit codes: 0 success; 2 bad input (field, polynomial); 3 budget or field-size
overflow; 4 geometry (not a simplex, degenerate); 5 not regular; 6 p divides
det(a_ij) (polygon claims refused); 7 zeta recovery failure; 9 regularity
inconclusive; 64 + bitmask when a verdict of ``analyze``/``zeta`` is false
(1 degree, 2 integrality, 4 product identity, 8 NP above HP, 16 endpoints).
"""

import argparse
import json
import sys

from . import counting
from .counting import count_table
from .cy import DworkInstance, dwork_trace_formula_check, sweep
from .errors import NotRegular, ToricZetaError
from .ff import parse_field_spec
from .geometry import newton_polytope
from .koszul import hodge_numbers, hodge_polygon, regularity_check
from .laurent import parse_laurent
from .zeta import VERDICTS, analyze

VERDICT_BITS = {name: 1 << i for i, name in enumerate(VERDICTS)}
EXIT_INCONCLUSIVE = 9
EXIT_VERDICT = 64


def _common(suppress=False):
    """Shared flags. Subcommand copies use SUPPRESS so values given before the subcommand survive."""
    common = argparse.ArgumentParser(add_help=False)

    def flag(name, default, **kw):
        common.add_argument(name, default=argparse.SUPPRESS if suppress else default, **kw)

    flag("--field", "7", help='"p", "p^a" or a prime power q')
    flag("--modulus", None, help="base modulus as F_p coefficients, low degree first")
    flag("--poly", None, help="Laurent polynomial, e.g. 'x1 + x2 + x1^-1*x2^-1 + 3'")
    flag("--json", False, action="store_true", help="emit JSON")
    flag("--threads", None, type=int, help="worker threads for point counting")
    flag("--budget", counting.DEFAULT_BUDGET, type=int, help="point-evaluation budget")
    flag("--seed", 0, type=int, help="seed recorded with the run")
    return common


def build_parser():
    common = _common(suppress=True)
    parser = argparse.ArgumentParser(prog="toriczeta", description=__doc__.splitlines()[0], parents=[_common()])
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("analyze", "zeta"):
        p = sub.add_parser(name, parents=[common], help="full pipeline report" if name == "analyze" else "ZetaReport as JSON")
        p.add_argument("--slack", type=int, default=2)
        p.add_argument("--margin", type=int, default=None, help="degree margin for the regularity window")

    p = sub.add_parser("count", parents=[common], help="torus, face and closure counts")
    p.add_argument("--ext", type=int, default=1, help="count over F_{q^k} for k = 1..ext")
    p.add_argument("--faces", action="store_true", help="include the per-face table")

    sub.add_parser("hodge", parents=[common], help="Hodge numbers and polygon")

    p = sub.add_parser("regularity", parents=[common], help="facewise regularity verdict")
    p.add_argument("--margin", type=int, default=None)

    p = sub.add_parser("cy", parents=[common], help="Dwork pencil sweep")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--lambda", dest="lam", default="all", help="an integer or 'all'")
    p.add_argument("--check", choices=("congruence", "zeta", "all"), default="all")
    p.add_argument("--slack", type=int, default=2)

    sub.add_parser("geometry", parents=[common], help="Newton polytope data")
    return parser


def _load(args):
    tower = parse_field_spec(args.field, modulus=args.modulus)
    if args.command != "cy" and args.poly is None:
        raise SystemExit("--poly is required")
    f = parse_laurent(args.poly, tower.base) if args.poly is not None else None
    return tower, f


def _emit(args, payload, lines):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in lines:
            print(line)


def cmd_analyze(args, tower, f, force_json=False):
    report = analyze(f, tower, slack=args.slack, degree_margin=args.margin, threads=args.threads,
                     budget=args.budget, text=args.poly)
    payload = report.to_json()
    payload["seed"] = args.seed
    if force_json:
        args.json = True
    lines = [
        f"f = {report.poly} over F_{report.q}",
        f"regularity: {report.regularity}",
        f"D = {report.D}",
        "closure counts: " + ", ".join(f"N_{k}={v}" for k, v in report.counts.closure.items()),
        f"P(t) = {report.P}" + ("" if report.exponent == 1 else "  (enters the zeta function inverted)"),
    ]
    if report.h is not None:
        lines.append(f"h = {report.h}, v = {report.v}")
    for name in VERDICTS:
        lines.append(f"{name}: {report.verdicts[name]}")
    lines += [f"note: {n}" for n in report.notes]
    _emit(args, payload, lines)
    if report.regularity == "NotRegular":
        return NotRegular.exit_code
    if report.regularity == "Inconclusive":
        return EXIT_INCONCLUSIVE
    if report.p_divides_det:
        return 6
    bits = sum(bit for name, bit in VERDICT_BITS.items() if report.verdicts.get(name) is False)
    return EXIT_VERDICT | bits if bits else 0


def cmd_count(args, tower, f):
    geo = newton_polytope(f)
    table = count_table(f, args.ext, tower, geo, args.threads, args.budget)
    payload = table.to_json()
    if not args.faces:
        payload.pop("faces")
    lines = [f"k={k}: torus {table.torus[k]} / {table.torus_sizes[k]}, closure {table.closure[k]}" for k in table.torus]
    if args.faces:
        for verts, row in table.faces.items():
            lines.append(f"  face {list(verts)}: " + ", ".join(f"k={k}: {v}" for k, v in row.items()))
    _emit(args, payload, lines)
    return 0


def cmd_hodge(args, tower, f):
    h, v = hodge_numbers(f, tower=tower)
    poly = hodge_polygon(h)
    payload = {"h": [str(x) for x in h], "v": str(v), "hodge": poly.to_json()}
    lines = [f"h = {h}", f"v = {v}", "HP: " + " - ".join(f"({x},{y})" for x, y in poly.vertices)]
    _emit(args, payload, lines)
    return 0


def cmd_regularity(args, tower, f):
    verdict = regularity_check(f, tower, degree_margin=args.margin, budget=args.budget)
    lines = [f"verdict: {verdict.status}"]
    for rep in verdict.faces:
        lines.append(f"  face {list(rep.vertices)} dim {rep.dim} vol {rep.volume}: dims {rep.dims} {'ok' if rep.passed else 'FAIL'}")
    if verdict.witness:
        lines.append(f"witness: {verdict.witness}")
    _emit(args, verdict.to_json(), lines)
    return {"Regular": 0, "NotRegular": NotRegular.exit_code}.get(verdict.status, EXIT_INCONCLUSIVE)


def cmd_cy(args, tower):
    F = tower.base
    if args.lam == "all":
        lambdas = list(range(tower.q))
    else:
        lam = int(args.lam)
        lambdas = [F.scalar(lam) if F.d == 1 else lam]
    rows = sweep(args.n, tower, lambdas, args.check, args.slack, args.threads, args.budget)
    if args.check in ("zeta", "all"):
        for row in rows:
            if row.get("regular") == "Regular":
                ok, _ = dwork_trace_formula_check(DworkInstance(args.n, row["lambda"], tower), args.slack,
                                                  args.threads, args.budget)
                row["trace_formula"] = ok
    payload = {"n": args.n, "q": str(tower.q), "rows": [
        {k: (str(v) if isinstance(v, int) and not isinstance(v, bool) else v) for k, v in r.items()} for r in rows
    ]}
    for r in payload["rows"]:
        if "P" in r:
            r["P"] = [str(c) for c in r["P"]]
    cols = ["lambda", "X", "Y", "congruent", "regular", "P"]
    lines = ["\t".join(cols)] + ["\t".join(str(r.get(c, "-")) for c in cols) for r in rows]
    _emit(args, payload, lines)
    bad = any(r.get("congruent") is False or r.get("trace_formula") is False for r in rows)
    return EXIT_VERDICT if bad else 0


def cmd_geometry(args, tower, f):
    geo = newton_polytope(f)
    payload = geo.to_json()
    lines = [f"{k}: {v}" for k, v in payload.items() if k != "faces"]
    lines.append(f"faces: {len(payload['faces'])}")
    _emit(args, payload, lines)
    return 0


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        tower, f = _load(args)
        if args.command == "analyze":
            return cmd_analyze(args, tower, f)
        if args.command == "zeta":
            return cmd_analyze(args, tower, f, force_json=True)
        if args.command == "count":
            return cmd_count(args, tower, f)
        if args.command == "hodge":
            return cmd_hodge(args, tower, f)
        if args.command == "regularity":
            return cmd_regularity(args, tower, f)
        if args.command == "cy":
            return cmd_cy(args, tower)
        if args.command == "geometry":
            return cmd_geometry(args, tower, f)
    except ToricZetaError as exc:
        if args.json:
            print(json.dumps(exc.to_json()))
        else:
            print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return exc.exit_code
    return 1


if __name__ == "__main__":
    sys.exit(main())
