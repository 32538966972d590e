"""Command-line front end.

Exit codes: 0 success, 1 verification failure or algebraic precondition
failure, 2 parse/validation error, 3 resource cap exceeded, 4 verify found
only discrepancies against published claims.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .catalog import BUILTIN_IDS, DISCREPANCY, FAIL, builtin, verify
from .errors import ValidationError, WorkbenchError
from .formats import (
    parse_group_file,
    parse_point,
    parse_polynomial_file,
    polynomial_to_json,
)
from .groups import (
    DEFAULT_BRUTEFORCE_CAP,
    DEFAULT_CLOSURE_CAP,
    center,
    exponent,
    is_abelian,
    min_generators,
    min_generators_bruteforce,
    p_power_exponent,
)
from .lattice import invariant_sublattice, is_cyclic
from .matrices import DEFAULT_ELEMENT_ORDER_CAP
from .projective import (
    ProjElement,
    fixed_subspaces,
    orbit,
    pgl_image,
    scalar_elements,
    semi_invariant,
)


def _prime(order: int) -> int | None:
    for p in range(2, order + 1):
        if order % p == 0:
            return p if p_power_exponent(order, p) is not None else None
    return None


def _fmt_vector(v) -> str:
    return "(" + " : ".join(str(x) for x in v) + ")"


def cmd_closure(args, desc):
    G = desc.group(args.max_order, args.max_element_order)
    p = _prime(G.order)
    rec = {
        "name": desc.name,
        "dimension": desc.dimension,
        "projective": desc.projective,
        "order": G.order,
        "exponent": exponent(G),
        "abelian": is_abelian(G),
        "center_order": center(G).order,
        "p": p,
    }
    if desc.ring == "integer":
        rec["cyclic"] = is_cyclic(G)
    text = [f"order {rec['order']}", f"exponent {rec['exponent']}", f"abelian {rec['abelian']}",
            f"center order {rec['center_order']}"]
    return rec, "\n".join(text)


def cmd_rank(args, desc):
    G = desc.group(args.max_order, args.max_element_order)
    p = args.prime or _prime(G.order) or 2
    d = min_generators(G, p)
    rec = {"name": desc.name, "order": G.order, "p": p, "min_generators": d}
    text = str(d)
    if args.brute:
        b = min_generators_bruteforce(G, args.brute_cap)
        rec["bruteforce"] = b
        rec["agree"] = b == d
        text += f"\nbrute force {b} ({'agree' if b == d else 'DISAGREE'})"
    return rec, text


def cmd_pgl(args, desc):
    G = desc.matrix_group(args.max_order, args.max_element_order)
    P = pgl_image(G, cap=args.max_order) if not isinstance(G.identity, ProjElement) else G
    p = _prime(P.order)
    rec = {
        "name": desc.name,
        "order": G.order,
        "scalar_order": len(scalar_elements(G)),
        "pgl_order": P.order,
        "pgl_exponent": exponent(P),
        "pgl_abelian": is_abelian(P),
        "pgl_min_generators": min_generators(P, p) if p else None,
    }
    text = "\n".join(f"{k} {v}" for k, v in rec.items() if k != "name")
    return rec, text


def cmd_fixed_points(args, desc):
    if desc.ring == "integer":
        raise ValidationError("fixed-points needs a cyclotomic group")
    subs = fixed_subspaces(desc.generators or desc.matrix_group(args.max_order), args.max_element_order)
    rec = {"name": desc.name, "count": len(subs), "fixed_subspaces": [s.to_json() for s in subs]}
    if not subs:
        text = "no fixed points"
    else:
        text = "\n".join(
            f"dim {s.dim}: " + ", ".join(_fmt_vector(v) for v in s.basis) for s in subs
        )
    return rec, text


def cmd_semi_invariant(args, desc):
    if desc.ring == "integer":
        raise ValidationError("semi-invariant needs a cyclotomic group")
    poly = parse_polynomial_file(args.poly, desc.cyclotomic_order)
    res = semi_invariant(poly, desc.generators)
    rec = {"group": desc.name, "polynomial": polynomial_to_json(poly), **res.to_json()}
    if res.witness is None:
        chi = ", ".join(str(m) for m in res.multipliers)
        text = ("invariant" if res.is_invariant else "semi-invariant") + f"; character ({chi})"
    else:
        w = res.witness
        text = (
            f"not semi-invariant: generator {w.generator + 1} scales monomial "
            f"{list(w.reference_monomial)} by {w.reference_multiplier} but "
            f"{list(w.monomial)} by {w.multiplier}"
        )
    return rec, text


def cmd_invariant_lattice(args, desc):
    if desc.ring != "integer":
        raise ValidationError("invariant-lattice needs a group file with ring 'integer'")
    lat = invariant_sublattice(desc.generators, args.max_element_order, dimension=desc.dimension)
    rec = {"name": desc.name, **lat.to_json()}
    text = f"rank {lat.rank}" + "".join(f"\n{list(b)}" for b in lat.basis)
    return rec, text


def cmd_orbit(args, desc):
    if desc.ring == "integer":
        raise ValidationError("orbit needs a cyclotomic group")
    G = desc.matrix_group(args.max_order, args.max_element_order)
    point = parse_point(args.point, desc.cyclotomic_order)
    pts = orbit(point, G)
    rec = {"name": desc.name, "length": len(pts), "points": [[x.to_json() for x in v] for v in pts]}
    text = f"orbit length {len(pts)}\n" + "\n".join(_fmt_vector(v) for v in pts)
    return rec, text


def cmd_verify(args):
    results = verify(args.check, threads=args.threads)
    verdicts = [r.verdict for r in results]
    summary = {v: verdicts.count(v) for v in ("PASS", "FAIL", "DISCREPANCY")}
    rec = {"results": [r.to_json() for r in results], "summary": summary}
    width = max(len(r.id) for r in results)
    lines = [f"{'check'.ljust(width)}  verdict      provenance  computed"]
    for r in results:
        lines.append(f"{r.id.ljust(width)}  {r.verdict.ljust(11)}  {r.provenance.ljust(10)}  "
                     f"{json.dumps(r.computed, sort_keys=True)}")
    lines.append(", ".join(f"{k} {v}" for k, v in summary.items()))
    if FAIL in verdicts:
        code = 1
    elif DISCREPANCY in verdicts:
        code = 4
    else:
        code = 0
    return rec, "\n".join(lines), code


def cmd_export(args):
    entry = builtin(args.id)
    if entry.kind == "polynomial":
        data = polynomial_to_json(entry.polynomial)
    else:
        from .formats import builtin_description

        data = builtin_description(args.id).to_json()
    return data


def _add_globals(parser, suppress: bool = False):
    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--max-order", type=int, default=default(DEFAULT_CLOSURE_CAP),
                        help="closure cap (default 3^12; env PGROUP_WORKBENCH_MAX_ORDER)")
    parser.add_argument("--max-element-order", type=int, default=default(DEFAULT_ELEMENT_ORDER_CAP),
                        help="element order cap (default 3^8)")
    parser.add_argument("--json", action="store_true", default=default(False), help="emit a JSON record")
    parser.add_argument("--threads", type=int, default=default(1), help="worker threads for verify")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pgroup-workbench",
        description="Exact computations with finite p-groups of matrices.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    _add_globals(parser)
    # the same flags are accepted after the subcommand; SUPPRESS keeps the top-level value
    common = argparse.ArgumentParser(add_help=False)
    _add_globals(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("closure", parents=[common], help="order, exponent, abelian, center order")
    p.add_argument("file")
    p = sub.add_parser("rank", parents=[common], help="minimal number of generators d(G)")
    p.add_argument("file")
    p.add_argument("--brute", action="store_true", help="cross-check by exhaustive search")
    p.add_argument("--brute-cap", type=int, default=DEFAULT_BRUTEFORCE_CAP)
    p.add_argument("--prime", type=int, default=None)
    p = sub.add_parser("pgl", parents=[common], help="image in PGL_n")
    p.add_argument("file")
    p = sub.add_parser("fixed-points", parents=[common], help="subspaces of projective space fixed pointwise")
    p.add_argument("file")
    p = sub.add_parser("semi-invariant", parents=[common], help="character of a polynomial, or a witness")
    p.add_argument("group")
    p.add_argument("poly")
    p = sub.add_parser("invariant-lattice", parents=[common], help="sublattice fixed by an integer group")
    p.add_argument("file")
    p = sub.add_parser("orbit", parents=[common], help="orbit of a projective point")
    p.add_argument("file")
    p.add_argument("--point", required=True, help="e.g. 1,1,1,1 or a JSON list of entries")
    p = sub.add_parser("verify", parents=[common], help="run the built-in claim checks")
    p.add_argument("check", nargs="?", default="all")
    p = sub.add_parser("export", parents=[common], help="print a catalog object as a description file")
    p.add_argument("id", help="one of: " + ", ".join(BUILTIN_IDS))
    return parser


COMMANDS = {
    "closure": cmd_closure,
    "rank": cmd_rank,
    "pgl": cmd_pgl,
    "fixed-points": cmd_fixed_points,
    "semi-invariant": cmd_semi_invariant,
    "invariant-lattice": cmd_invariant_lattice,
    "orbit": cmd_orbit,
}


def emit(record) -> str:
    return json.dumps(record, sort_keys=True, indent=2)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = 0
        if args.command == "verify":
            rec, text, code = cmd_verify(args)
        elif args.command == "export":
            rec = cmd_export(args)
            text = emit(rec)
        else:
            desc = parse_group_file(args.group if args.command == "semi-invariant" else args.file)
            rec, text = COMMANDS[args.command](args, desc)
    except WorkbenchError as exc:
        name = type(exc).__name__
        if args.json:
            print(emit({"error": name, "message": str(exc)}))
        print(f"error: {name}: {exc}", file=sys.stderr)
        return exc.exit_code
    print(emit(rec) if args.json else text)
    return code


if __name__ == "__main__":
    sys.exit(main())
