"""Command line interface: ``smoothfano <command> ...``.

Exit codes: 0 success or positive verdict, 1 negative verdict, 2 usage or
input error, 3 internal inconsistency (for example an incomplete catalog).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import __version__
from .catalog import (Catalog, enumerate_low_dim, enumerate_with_escalation, format_polytope,
                      load_bundled, parse_catalog, read_polytope, serialize_catalog)
from .classes import base_node, build_graph, export_dot, export_json, is_f_isolated, is_i_isolated, report
from .constructions import (FamilyParams, isolated_params, make_family, make_isolated_pic3,
                            make_remark_example_7d, make_T, make_V, make_V_tilde)
from .errors import CatalogIncompleteError, InconsistencyError, SmoothFanoError
from .moves import f_neighbors, i_addition_search, i_removal_neighbors
from .polytope import (free_sum, is_pseudo_symmetric, is_reflexive, is_simplicial, is_smooth_fano,
                       require_smooth_fano)
from .primitive import (classify_pic2, classify_pic3, format_relation, match_family_pattern,
                        match_isolated_pattern, primitive_collections, role_names)

OK, NEGATIVE, USAGE, INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _flag(b: bool) -> str:
    return "true" if b else "false"


def cmd_verify(args, out) -> int:
    p = read_polytope(args.file)
    verdicts = {
        "dim": p.dim,
        "vertices": p.nverts,
        "reflexive": is_reflexive(p),
        "simplicial": is_simplicial(p),
        "smooth_fano": is_smooth_fano(p),
        "pseudo_symmetric": is_smooth_fano(p) and is_pseudo_symmetric(p),
    }
    if args.json:
        out.write(json.dumps(verdicts, sort_keys=True) + "\n")
    else:
        for k, v in verdicts.items():
            out.write(f"{k}: {_flag(v) if isinstance(v, bool) else v}\n")
    return OK if verdicts["smooth_fano"] else NEGATIVE


def _pattern(p, kind):
    """Matched parameters as text, or None."""
    extra = p.nverts - p.dim
    if kind == "pic2":
        if extra != 2:
            return None
        m = classify_pic2(p)
        return f"pic2 k={m.k} zero_part={list(m.zero_part)} a={list(m.a)}"
    if kind == "pic3":
        if extra != 3:
            return None
        m = classify_pic3(p)
        if m.case == "three-disjoint":
            return "pic3 three-disjoint"
        return f"pic3 five-collections p={list(m.p)} c={list(m.c)} d={list(m.d)}"
    if kind == "isolated":
        ab = match_isolated_pattern(p) if extra == 3 else None
        return None if ab is None else f"isolated (a,b)=({ab[0]},{ab[1]})"
    fp = match_family_pattern(p)
    if fp is None:
        return None
    alpha = ";".join(",".join(block) for block in fp.alpha)
    return f"family a={fp.a} b={fp.b} k={fp.k} l={list(fp.l)} alpha={alpha or '-'}"


def cmd_relations(args, out) -> int:
    p = require_smooth_fano(read_polytope(args.file))
    names = role_names(p)
    for pc in primitive_collections(p):
        out.write(f"{format_relation(pc, names)}, degree {pc.degree}\n")
    if not args.pattern:
        return OK
    text = _pattern(p, args.pattern)
    out.write((text or "no match") + "\n")
    return OK if text else NEGATIVE


def _construct(name, params):
    ints = []
    try:
        ints = [int(x) for x in params]
    except ValueError:
        if name != "freesum":
            raise UsageError(f"parameters of {name} must be integers") from None

    def need(k):
        if len(ints) != k:
            raise UsageError(f"{name} takes {k} integer parameter(s)")

    if name == "T":
        need(1)
        return make_T(ints[0])
    if name in ("V", "Vt"):
        need(1)
        return (make_V if name == "V" else make_V_tilde)(ints[0])
    if name == "pic3":
        need(2)
        return make_isolated_pic3(*ints)
    if name == "family":
        if len(ints) < 3 or len(ints) != 3 + ints[2]:
            raise UsageError("family takes a b k l_1 .. l_k")
        return make_family(FamilyParams(ints[0], ints[1], tuple(ints[3:])))
    if name == "cor45":
        need(2)
        return make_family(isolated_params(*ints))
    if name == "remark7d":
        need(0)
        return make_remark_example_7d()
    if name == "freesum":
        if len(params) != 2:
            raise UsageError("freesum takes two polytope files")
        return free_sum(read_polytope(params[0]), read_polytope(params[1]))
    raise UsageError(f"unknown construction {name!r}")


def cmd_construct(args, out) -> int:
    p = _construct(args.name, args.params)
    out.write(format_polytope(p))
    return OK


def _catalog_for(args, dim) -> Catalog:
    if args.catalog:
        cat = parse_catalog(args.catalog)
    else:
        cat = load_bundled(dim if args.bundled is True else args.bundled)
    if cat.dim != dim:
        raise UsageError(f"catalog has dimension {cat.dim}, polytope has {dim}")
    return cat


def cmd_isolate(args, out) -> int:
    p = require_smooth_fano(read_polytope(args.file))
    if args.box is None:
        cat = _catalog_for(args, p.dim)
        if cat.find(p) is None:
            raise CatalogIncompleteError("the polytope is missing from a catalog used as complete")
        f_iso = is_f_isolated(p, cat)
        i_iso = is_i_isolated(p, cat)
        out.write(f"F-isolated: {_flag(f_iso)} (exact)\n")
        out.write(f"I-isolated: {_flag(i_iso)} (exact)\n")
        return OK if (i_iso if args.relation == "I" else f_iso) else NEGATIVE
    removals = i_removal_neighbors(p)
    additions = i_addition_search(p, args.box)
    out.write("removals: " + (", ".join(str(r) for _, r in removals) or "none") + "\n")
    out.write("additions <= box: " + (", ".join(str(r) for _, r in additions) or "none") + "\n")
    if args.relation == "F":
        fn = f_neighbors(p)
        out.write("F-moves: " + (", ".join(str(r) for _, r in fn) or "none") + "\n")
        out.write(f"F-isolated: {_flag(not fn)} (exact)\n")
        return OK if not fn else NEGATIVE
    if removals or additions:
        out.write("I-isolated: false (exact)\n")
        return NEGATIVE
    out.write(f"I-isolated: true (bounded({args.box}))\n")
    return OK


def cmd_moves(args, out) -> int:
    p = require_smooth_fano(read_polytope(args.file))
    recs = [r for _, r in f_neighbors(p)] + [r for _, r in i_removal_neighbors(p)]
    if args.box:
        recs += [r for _, r in i_addition_search(p, args.box)]
    for r in recs:
        out.write(f"{r}\n")
    return OK


def cmd_graph(args, out) -> int:
    if args.catalog:
        cat = parse_catalog(args.catalog)
    elif args.bundled:
        cat = load_bundled(args.bundled)
    else:
        raise UsageError("graph needs --catalog FILE or --bundled N")
    g = build_graph(cat, args.relation)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(export_dot(g))
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(export_json(g))
    rep = report(g, base_node(cat))
    out.write(f"catalog: dim {cat.dim}, {len(cat)} entries\n")
    out.write(f"edges: {len(g.edges)}\n")
    if args.report:
        out.write(str(rep) + "\n")
    else:
        out.write(f"components: {rep.n_components}\n")
    return OK


def cmd_enumerate(args, out) -> int:
    if args.n > 4 and not args.force:
        raise UsageError("enumeration is meant for n <= 4; pass --force to run anyway")
    if args.box is None:
        cat, history = enumerate_with_escalation(args.n)
        boxes = " ".join(f"B={b}:{c}" for b, c in history)
    else:
        cat = enumerate_low_dim(args.n, args.box)
        boxes = f"B={args.box}:{len(cat)}"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(serialize_catalog(cat))
    out.write(f"dim {args.n}: {len(cat)} classes ({boxes})\n")
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="smoothfano",
                                 description="Exact computations with smooth Fano polytopes.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", help="reflexive / simplicial / smooth Fano / pseudo-symmetric")
    s.add_argument("file")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("relations", help="primitive collections and relations")
    s.add_argument("file")
    s.add_argument("--pattern", choices=["pic2", "pic3", "isolated", "family"])
    s.set_defaults(func=cmd_relations)

    s = sub.add_parser("construct", help="write a named polytope in catalog format")
    s.add_argument("name", choices=["T", "V", "Vt", "pic3", "family", "cor45", "remark7d", "freesum"])
    s.add_argument("params", nargs="*")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("isolate", help="F-/I-isolation, exact (catalog) or bounded (box)")
    s.add_argument("file")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--catalog")
    g.add_argument("--bundled", nargs="?", const=True, type=int,
                   help="use the shipped catalog (of the polytope's dimension by default)")
    g.add_argument("--box", type=int)
    s.add_argument("--relation", choices=["F", "I"], default="I",
                   help="which verdict sets the exit code")
    s.set_defaults(func=cmd_isolate)

    s = sub.add_parser("moves", help="list F-moves, I-removals and boxed I-additions")
    s.add_argument("file")
    s.add_argument("--box", type=int, default=0)
    s.set_defaults(func=cmd_moves)

    s = sub.add_parser("graph", help="equivalence graph of a complete catalog")
    s.add_argument("--catalog")
    s.add_argument("--bundled", type=int)
    s.add_argument("--relation", choices=["F", "I"], required=True)
    s.add_argument("--dot")
    s.add_argument("--json")
    s.add_argument("--report", action="store_true")
    s.set_defaults(func=cmd_graph)

    s = sub.add_parser("enumerate", help="I-closure of T^n")
    s.add_argument("n", type=int)
    s.add_argument("--box", type=int, help="fixed box; default escalates until stable")
    s.add_argument("--out")
    s.add_argument("--force", action="store_true")
    s.set_defaults(func=cmd_enumerate)
    return ap


def main(argv: Optional[list] = None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    try:
        return args.func(args, out)
    except (CatalogIncompleteError, InconsistencyError) as e:
        sys.stderr.write(f"error: {e}\n")
        return INTERNAL
    except (UsageError, SmoothFanoError, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return USAGE


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
