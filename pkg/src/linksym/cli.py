"""Command line front end.

Every verb prints one JSON report to stdout.  Exit status is 0 when the
checked claim holds, 1 when it is falsified, and 2 on bad input (with a
one-line message on stderr).
"""

from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from . import schemas
from .cache import Cache, cached_subgroups, resolve_dir
from .groups import (
    EnumerationTooLarge,
    GroupDomainError,
    alternating,
    check_perm,
    closure,
    cyclic,
    isomorphic,
    simple_nonabelian_quotients,
    subgroup_group,
    symmetric,
)
from .link_model import LinkingMatrix, random_linking_matrix, stabilizer, sym_upper_bound
from .rotation import binary_group, projection_lemma_check, so4_model, verify_a5_only
from .schemas import SCHEMA_VERSION, InputError
from .seifert import AttachData, InvariantViolation, check_transposition, fiber_intersection, sweep
from .trees import (
    LabeledTree,
    check_branch_structure,
    edge_contradiction,
    invariant_locus,
    requires_vertex,
    tree_action,
    validate_action,
)
from .whitten import (
    MAX_COMPONENTS,
    MISSING_GAMMA2_GENERATORS,
    MISSING_GAMMA2_TYPES,
    abstract_type,
    from_perm,
    gamma2_missing_subgroups,
    gamma_group,
)

MAX_SUBGROUP_N = 4
DEFAULT_SEED = 20240101
CLAIMED_MISSING_ORDERS = [4, 4, 4, 4, 8]
LEMMA_POOL = ("C2", "S3", "A4", "S4", "A5")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _report(command: str, flag: bool, **fields) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, "flag": bool(flag), **fields}


def _gamma_elements(n: int) -> list[dict]:
    G = gamma_group(n)
    return [from_perm(G.element(i), n).to_json() for i in range(G.order)]


# -- verbs ------------------------------------------------------------------


def cmd_gamma_order(args) -> dict:
    G = gamma_group(args.n)
    expected = 2 ** (args.n + 1) * int(np.prod(range(1, args.n + 1)))
    return _report("gamma-order", G.order == expected, n=args.n, order=G.order, expected=expected)


def cmd_gamma_subgroups(args) -> dict:
    if not 1 <= args.n <= MAX_SUBGROUP_N:
        raise InputError(f"--n must lie in 1..{MAX_SUBGROUP_N} for subgroup enumeration")
    G = gamma_group(args.n)
    records = cached_subgroups(G, Cache(resolve_dir(args.cache_dir)))
    n_classes = max(r.class_id for r in records) + 1
    out = _report("gamma-subgroups", True, n=args.n, order=G.order, subgroup_count=len(records),
                  class_count=n_classes, elements=_gamma_elements(args.n))
    if args.up_to_conjugacy:
        classes = []
        for cid in range(n_classes):
            members = [r for r in records if r.class_id == cid]
            classes.append({"class_id": cid, "order": members[0].order, "size": len(members),
                            "representative": list(members[0].members)})
        out["classes"] = classes
    else:
        out["subgroups"] = [{"order": r.order, "class_id": r.class_id, "members": list(r.members)}
                            for r in records]
    return out


def cmd_gamma2_missing(args) -> dict:
    G = gamma_group(2)
    records = gamma2_missing_subgroups()
    entries = []
    for gens, kind, rec in zip(MISSING_GAMMA2_GENERATORS, MISSING_GAMMA2_TYPES, records):
        entries.append({"generators": [g.to_json() for g in gens], "type": kind, "order": rec.order,
                        "type_verified": isomorphic(subgroup_group(G, rec.indices()), abstract_type(kind)),
                        "members": list(rec.members)})
    orders = [e["order"] for e in entries]
    flag = orders == CLAIMED_MISSING_ORDERS and all(e["type_verified"] for e in entries)
    return _report("gamma2-missing", flag, subgroups=entries, orders=orders,
                   claimed_orders=CLAIMED_MISSING_ORDERS)


def cmd_link_stabilizer(args) -> dict:
    if args.input:
        lk = LinkingMatrix.from_json(schemas.load("link", args.input))
    elif args.random_n:
        if not 1 <= args.random_n <= MAX_COMPONENTS:
            raise InputError(f"--random-n must lie in 1..{MAX_COMPONENTS}")
        lk = random_linking_matrix(np.random.default_rng(args.seed), args.random_n)
    else:
        raise InputError("link-stabilizer needs --input or --random-n")
    rec = stabilizer(lk)
    G = gamma_group(lk.n)
    sym = sym_upper_bound(lk)
    return _report("link-stabilizer", True, link=lk.to_json(), order=rec.order,
                   elements=[from_perm(G.element(i), lk.n).to_json() for i in rec.members],
                   sym_upper_bound=[[x + 1 for x in p] for p in sym.elements])


def _tree_and_group(path) -> tuple[LabeledTree, object]:
    data = schemas.load("tree", path)
    T = LabeledTree.from_json(data)
    n = len(T.labels)
    if sorted(T.components) != list(range(n)):
        raise InputError("labels must be exactly the components 1..n")
    if "group" in data:
        desc = data["group"]
        if desc["degree"] != n:
            raise InputError("group degree must equal the number of components")
        G = closure(n, [check_perm(g, n) for g in desc["generators"]])
    else:
        G = alternating(n) if n >= 3 else symmetric(n)
    return T, G


def cmd_tree_invariant(args) -> dict:
    T, G = _tree_and_group(args.input)
    A = tree_action(T, G)
    validate_action(A)
    locus = invariant_locus(T, A)
    contradiction = edge_contradiction(T, A)
    return _report("tree-invariant", not contradiction, tree=T.to_json(), group_order=G.order,
                   locus=locus.to_json(), requires_vertex=requires_vertex(A), contradiction=contradiction)


def cmd_tree_structure(args) -> dict:
    data = schemas.load("tree", args.input)
    T = LabeledTree.from_json(data)
    n = len(T.labels)
    return _report("tree-structure", True, tree=T.to_json(), n=n, accepts=check_branch_structure(T, n))


def _lemma_group(name: str):
    return {"C2": lambda: cyclic(2), "S3": lambda: symmetric(3), "A4": lambda: alternating(4),
            "S4": lambda: symmetric(4), "A5": lambda: alternating(5)}[name]()


def cmd_rotation_verify(args) -> dict:
    a5 = verify_a5_only(args.max_n)
    so4 = {}
    for kind in ("BinaryTetrahedral", "BinaryIcosahedral"):
        H = binary_group(kind)
        M = so4_model(H, H)
        so4[kind] = {"order": M.order, "quotients": [q.name for q in simple_nonabelian_quotients(M)]}
    flag = a5["flag"] and so4["BinaryTetrahedral"]["quotients"] == [] \
        and so4["BinaryIcosahedral"]["quotients"] == ["A5"]
    out = _report("rotation-verify", flag, a5_only=a5, so4=so4)
    if args.pairs:
        pairs = []
        for a in LEMMA_POOL:
            for b in LEMMA_POOL:
                r = projection_lemma_check(_lemma_group(a), _lemma_group(b), names=(a, b))
                pairs.append(r)
        out["projection_lemma"] = pairs
        out["flag"] = flag and all(r["flag"] for r in pairs)
    return out


def cmd_seifert_check(args) -> dict:
    if args.sweep:
        r = sweep(args.bound, args.w_bound)
        return _report("seifert-check", r["flag"], sweep=r)
    missing = [k for k in ("alpha", "beta", "delta", "gamma") if getattr(args, k) is None]
    if missing:
        raise InputError("seifert-check needs --sweep or all of --alpha --beta --delta --gamma")
    a = AttachData(args.alpha, args.beta, args.delta, args.gamma)
    ok = check_transposition(a, args.w)
    return _report("seifert-check", ok, attach=a.to_json(), w=args.w, fiber_intersection=fiber_intersection(a))


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized inputs")
    common.add_argument("--cache-dir", default=None,
                        help="directory for cached enumerations (default: $LINKSYM_CACHE_DIR, else off)")

    p = _Parser(prog="linksym", description="Link symmetry group computations.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("gamma-order", parents=[common], help="order of the Whitten group")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_gamma_order)

    s = sub.add_parser("gamma-subgroups", parents=[common], help="subgroups of the Whitten group")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--up-to-conjugacy", action="store_true")
    s.set_defaults(func=cmd_gamma_subgroups)

    s = sub.add_parser("gamma2-missing", parents=[common], help="the five unrealized two-component subgroups")
    s.set_defaults(func=cmd_gamma2_missing)

    s = sub.add_parser("link-stabilizer", parents=[common], help="stabilizer of a linking matrix")
    s.add_argument("--input")
    s.add_argument("--random-n", type=int, help="use a random linking matrix with this many components")
    s.set_defaults(func=cmd_link_stabilizer)

    s = sub.add_parser("tree-invariant", parents=[common], help="invariant vertex or edge of a tree action")
    s.add_argument("--input", required=True)
    s.set_defaults(func=cmd_tree_invariant)

    s = sub.add_parser("tree-structure", parents=[common], help="check the hub-and-equal-branches shape")
    s.add_argument("--input", required=True)
    s.set_defaults(func=cmd_tree_structure)

    s = sub.add_parser("rotation-verify", parents=[common], help="simple quotients of rotation groups")
    s.add_argument("--max-n", type=int, default=30)
    s.add_argument("--pairs", action="store_true", help="also run the projection lemma on all pairs")
    s.set_defaults(func=cmd_rotation_verify)

    s = sub.add_parser("seifert-check", parents=[common], help="torus transposition algebra")
    for k in ("alpha", "beta", "delta", "gamma"):
        s.add_argument(f"--{k}", type=int)
    s.add_argument("--w", type=int, default=0)
    s.add_argument("--sweep", action="store_true")
    s.add_argument("--bound", type=int, default=5)
    s.add_argument("--w-bound", type=int, default=5)
    s.set_defaults(func=cmd_seifert_check)
    return p


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        report = args.func(args)
    except (InputError, GroupDomainError, EnumerationTooLarge, InvariantViolation, KeyError) as exc:
        msg = str(exc).strip("'\"").splitlines()[0] if str(exc) else type(exc).__name__
        print(f"error: {msg}", file=err)
        return 2
    schemas.validate("report", report)
    out.write(schemas.dumps(report))
    return 0 if report["flag"] else 1


def main() -> None:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()
