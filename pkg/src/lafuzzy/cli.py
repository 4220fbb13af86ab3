"""Command-line front end.

Exit status: 0 success, 1 the check returned false, 2 input error,
3 capacity error. Elements are printed 1-based; fractions as p/q.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .crisp import CrispKind, enumerate_crisp, is_crisp
from .enumeration import EnumerationConstraints, enumerate_groupoids, enumerate_homs
from .errors import CapacityError, InputError
from .fuzzy import parse_fraction, parse_fuzzy
from .groupoid import LAWS, check_law, format_subset, format_table, left_identities, parse_subset, parse_table, regularity
from .ideals import FuzzyKind, is_fuzzy_quantified, is_fuzzy_threshold
from .lab import GROUPOID_HYPOTHESES, Scope, run_suite, search_counterexamples, theorem_ids

OK, FALSE, INPUT, CAPACITY = 0, 1, 2, 3


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _table(path: str):
    try:
        return parse_table(_read(path))
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None


def _fraction(text: str):
    return parse_fraction(text)


def _k_list(text: str):
    return tuple(parse_fraction(tok) for tok in text.split(","))


def _witness(tup) -> str:
    return "(" + ",".join(str(e + 1) for e in tup) + ")"


def cmd_check_laws(args, out) -> int:
    G = _table(args.table)
    laws = args.law or list(LAWS)
    failed = False
    for law in laws:
        v = check_law(G, law)
        out.write(f"{law}: holds\n" if v else f"{law}: fails at {_witness(v.witness)}\n")
        failed |= not v
    if not args.law:
        # without a selection the verdict is whether the table is right modular
        return OK if check_law(G, "left_invertive") else FALSE
    return FALSE if failed else OK


def cmd_classify(args, out) -> int:
    G = _table(args.table)
    prof = regularity(G)
    ids = left_identities(G)
    out.write(f"order: {G.n}\n")
    out.write(f"left_invertive: {'true' if check_law(G, 'left_invertive') else 'false'}\n")
    out.write("left_identities: " + (format_subset(ids).strip() or "none") + "\n")
    for name, flag in prof.flags().items():
        out.write(f"{name}: {'true' if flag else 'false'}\n")
    return OK


def cmd_ideals(args, out) -> int:
    G = _table(args.table)
    kind = CrispKind.parse(args.kind)
    if args.subset is not None:
        A = parse_subset(args.subset, G.n)
        v = is_crisp(G, A, kind)
        if v:
            out.write("pass\n")
            return OK
        label, e = v.witness
        out.write(f"fail: {label} contains {e + 1}, which is outside the subset\n")
        return FALSE
    found = enumerate_crisp(G, kind)
    for A in found:
        out.write(format_subset(A))
    return OK if found else FALSE


def cmd_fuzzy_check(args, out) -> int:
    G = _table(args.table)
    try:
        F = parse_fuzzy(_read(args.fuzzy))
    except InputError as exc:
        raise InputError(f"{args.fuzzy}: {exc}") from None
    kind = FuzzyKind.parse(args.kind)
    k = _fraction(args.k)
    if args.quantified:
        v = is_fuzzy_quantified(G, F, kind, k, args.grid)
    else:
        if args.grid is not None:
            raise InputError("--grid only applies with --quantified")
        v = is_fuzzy_threshold(G, F, kind, k)
    if v:
        out.write("pass\n")
        return OK
    out.write("fail: " + v.witness.describe() + "\n")
    return FALSE


def cmd_enumerate(args, out) -> int:
    c = EnumerationConstraints(
        args.order,
        up_to_isomorphism=args.iso,
        require_left_identity=args.left_identity,
        require_completely_regular=args.completely_regular,
    )
    count = 0
    for G in enumerate_groupoids(c, workers=args.workers):
        if args.count:
            count += 1
            continue
        if count:
            out.write("\n")
        out.write(format_table(G))
        count += 1
    if args.count:
        out.write(f"{count}\n")
    return OK


def cmd_verify(args, out) -> int:
    scope = Scope(
        orders=tuple(range(1, args.order + 1)),
        grid=args.grid,
        exhaustive_order=args.exhaustive_order,
        samples=args.samples,
        sample_grid=args.sample_grid,
        k_values=_k_list(args.k_list),
        seed=args.seed,
        max_combos=args.max_combos,
    )
    report = run_suite(scope, args.theorem or None)
    text = report.to_json() if args.format == "json" else report.to_text()
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        out.write(text)
    return FALSE if report.counterexamples else OK


def cmd_search(args, out) -> int:
    r = search_counterexamples(args.theorem, args.max_order, drop=args.drop, add=args.add,
                               grid=args.grid, k_values=_k_list(args.k_list), seed=args.seed)
    out.write(f"{r.id}: {r.status} ({r.instances_checked} instances, {r.hypotheses_met} meeting hypotheses)\n")
    if r.witness is not None:
        out.write(json.dumps(r.witness, sort_keys=True, ensure_ascii=False) + "\n")
    return FALSE if r.witness is not None else OK


def cmd_hom(args, out) -> int:
    G, H = _table(args.source), _table(args.target)
    homs = enumerate_homs(G, H)
    if args.onto:
        homs = [h for h in homs if h.is_onto]
    for h in homs:
        out.write(" ".join(str(y + 1) for y in h.mapping) + "\n")
    return OK if homs else FALSE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lafuzzy", description="Right modular groupoids and their fuzzy ideals.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check-laws", help="test algebraic laws on a Cayley table")
    s.add_argument("table")
    s.add_argument("--law", action="append", choices=LAWS, help="law to test (repeatable; default: all)")
    s.set_defaults(func=cmd_check_laws)

    s = sub.add_parser("classify", help="left identities and regularity profile")
    s.add_argument("table")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("ideals", help="list crisp ideals of a kind, or test one subset")
    s.add_argument("table")
    s.add_argument("--kind", required=True, choices=[k.value for k in CrispKind])
    s.add_argument("--subset", help="space-separated ascending elements, e.g. '1 4'")
    s.set_defaults(func=cmd_ideals)

    s = sub.add_parser("fuzzy-check", help="decide a fuzzy ideal kind")
    s.add_argument("table")
    s.add_argument("fuzzy")
    s.add_argument("--kind", required=True, choices=[k.value for k in FuzzyKind])
    s.add_argument("--k", default="0", help="parameter k as p/q (default 0)")
    s.add_argument("--quantified", action="store_true", help="use the fuzzy-point form")
    s.add_argument("--grid", type=int, help="level grid denominator for --quantified")
    s.set_defaults(func=cmd_fuzzy_check)

    s = sub.add_parser("enumerate", help="stream right modular groupoids of an order")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--iso", action="store_true", help="one representative per isomorphism class")
    s.add_argument("--left-identity", action="store_true")
    s.add_argument("--completely-regular", action="store_true")
    s.add_argument("--count", action="store_true", help="print only the number of tables")
    s.add_argument("--workers", type=int, help="parallel search processes (default LAFUZZY_WORKERS)")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("verify", help="run the theorem suite")
    s.add_argument("--order", type=int, default=4, help="largest groupoid order (default 4)")
    s.add_argument("--grid", type=int, default=2, help="exhaustive fuzzy grid denominator")
    s.add_argument("--exhaustive-order", type=int, default=3)
    s.add_argument("--samples", type=int, default=1000, help="fuzzy samples per larger groupoid")
    s.add_argument("--sample-grid", type=int, default=4)
    s.add_argument("--k-list", default="0,1/4,1/2", help="comma-separated p/q values")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-combos", type=int, default=4000)
    s.add_argument("--theorem", action="append", help="restrict to a theorem id (repeatable)")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.add_argument("--output", help="write the report here instead of stdout")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="exhaustive counterexample search with altered hypotheses")
    s.add_argument("theorem", choices=theorem_ids(), metavar="THEOREM")
    s.add_argument("--max-order", type=int, default=3)
    s.add_argument("--drop", action="append", default=[], choices=GROUPOID_HYPOTHESES)
    s.add_argument("--add", action="append", default=[], choices=GROUPOID_HYPOTHESES)
    s.add_argument("--grid", type=int, default=2)
    s.add_argument("--k-list", default="0,1/2")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("hom", help="list homomorphisms between two tables")
    s.add_argument("source")
    s.add_argument("target")
    s.add_argument("--onto", action="store_true")
    s.set_defaults(func=cmd_hom)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"lafuzzy: error: {exc}", file=sys.stderr)
        return INPUT
    except CapacityError as exc:
        print(f"lafuzzy: capacity: {exc}", file=sys.stderr)
        return CAPACITY


if __name__ == "__main__":
    sys.exit(main())
