"""Command-line front end: list and inspect catalog groups, compute obstruction
condition sets, regenerate and diff the reference tables, and run the
verification suites.

Exit codes: 0 success, 1 usage error, 2 data error, 3 table/oracle mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import __version__, extension, groups, local_oracle, obstructions
from .catalog import CatalogError, enumerate_instances, gold_row, lookup
from .groups import EnumerationBoundError, PresentationError
from .obstructions import ObstructionError, spec_for_instance
from .symbols import (
    ExpressionError,
    SymbolBasis,
    normalize,
    parse,
    render,
    root_label,
    root_level_of,
)

USAGE_ERROR, DATA_ERROR, MISMATCH_ERROR = 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        sys.exit(USAGE_ERROR)


def _add_common(sub):
    sub.add_argument("--p", type=int, action="append", help="odd prime (repeatable)")
    sub.add_argument("--order", choices=["5", "6", "both"], default="both")
    sub.add_argument("--format", choices=["text", "csv", "machine"], default="text")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--trials", type=int, default=200)
    sub.add_argument("--bound", type=int, default=groups.DEFAULT_ENUMERATION_BOUND)
    sub.add_argument("--gold", default=None, help="override path of the reference table file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="galemb", description=__doc__)
    parser.add_argument("--version", action="version", version=f"galemb {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("list", help="list catalog instances")
    _add_common(sub)

    sub = subs.add_parser("show", help="dump one group presentation")
    sub.add_argument("group")
    _add_common(sub)

    sub = subs.add_parser("obstruct", help="obstruction conditions for one group")
    sub.add_argument("group")
    sub.add_argument("--root-level", type=int, default=None)
    _add_common(sub)

    sub = subs.add_parser("table", help="regenerate one reference table")
    sub.add_argument("table_id", type=int, choices=range(1, 7))
    _add_common(sub)

    sub = subs.add_parser("check-tables", help="diff every generated row against the reference data")
    _add_common(sub)

    sub = subs.add_parser("selfcheck", help="group-engine consistency sweep")
    sub.add_argument("--triples", type=int, default=100_000)
    _add_common(sub)

    sub = subs.add_parser("eval", help="numeric tame-symbol values of an expression")
    sub.add_argument("expression")
    _add_common(sub)

    return parser


def _primes(args, default=(3,)) -> list[int]:
    return list(args.p) if args.p else list(default)


def _orders(args) -> list[int]:
    return {"5": [5], "6": [6], "both": [5, 6]}[args.order]


def _instances(args, p):
    out = []
    for order_exp in _orders(args):
        out.extend(enumerate_instances(p, order_exp=order_exp))
    return out


def _machine_row(inst, result, minimal):
    return {
        "label": inst.label,
        "p": inst.p,
        "params": list(inst.id.params) if inst.id.params else None,
        "root_level": result.root_level,
        "minimal_root_level": minimal,
        "torsion_level": result.torsion_level,
        "conditions": result.texts(),
        "solvability": result.solvability_kind,
    }


def cmd_list(args) -> int:
    for p in _primes(args):
        for inst in _instances(args, p):
            if args.format == "machine":
                print(json.dumps({"label": inst.label, "p": p, "order_exp": inst.id.order_exp,
                                  "family": inst.id.family, "table": inst.template.table}))
            else:
                print(f"{inst.label:26s} p={p} order=p^{inst.id.order_exp} table={inst.template.table}")
    return 0


def cmd_show(args) -> int:
    for p in _primes(args):
        inst = lookup(args.group, p)
        P = inst.presentation
        print(f"{inst.label} at p={p}: order p^{inst.id.order_exp} = {groups.group_order(P)}")
        print(f"  generators: " + ", ".join(
            f"{n} (relative order p^{e})" for n, e in zip(P.names, P.order_exps)))
        for i, tail in enumerate(P.power_tails):
            if tail is not None:
                word = "*".join(f"{P.names[t]}^{c}" if c != 1 else P.names[t]
                                for t, c in enumerate(tail) if c)
                print(f"  {P.names[i]}^{P.orders[i]} = {word}")
        for j, i, word in P.comm:
            w = "*".join(f"{P.names[t]}^{c}" if c != 1 else P.names[t]
                         for t, c in enumerate(word) if c)
            print(f"  [{P.names[j]}, {P.names[i]}] = {w}")
        print(f"  kernel(s): {', '.join(inst.kernels)} (order p^{inst.kernel_level})")
        print(f"  pre-images: {', '.join(inst.preimages)}")
        print(f"  assumed root of unity: level p^{gold_row(inst, args.gold).root_level}")
    return 0


def cmd_obstruct(args) -> int:
    for p in _primes(args):
        inst = lookup(args.group, p)
        result = obstructions.obstruction_for_instance(inst, args.root_level)
        minimal = extension.minimal_root_level(spec_for_instance(inst, result.root_level))
        if args.format == "machine":
            print(json.dumps(_machine_row(inst, result, minimal)))
        else:
            conds = ", ".join(result.texts()) or "1"
            print(f"{inst.label} p={p} root=p^{result.root_level} "
                  f"[{result.solvability_kind}]: {conds}")
    return 0


def cmd_table(args) -> int:
    for p in _primes(args):
        rows = obstructions.generate_table(args.table_id, p, args.gold)
        if args.format == "csv":
            print("label,p,independents,root_level,solvability,conditions")
            for r in rows:
                conds = " ".join(r.result.texts())
                print(f"{r.label},{p},{len(r.instance.preimages)},{r.result.root_level},"
                      f"{r.result.solvability_kind},{conds}")
        elif args.format == "machine":
            for r in rows:
                print(json.dumps(_machine_row(r.instance, r.result, r.minimal_root_level)))
        else:
            print(f"table {args.table_id}, p={p}")
            for r in rows:
                labels = ",".join(f"a{i}" for i in range(1, len(r.instance.preimages) + 1))
                conds = ", ".join(r.result.texts()) or "1"
                print(f"  {r.label:26s} | {labels:17s} | {root_label(r.result.root_level):3s} | {conds}")
    return 0


def cmd_check_tables(args) -> int:
    status = 0
    for p in _primes(args, default=(3, 5, 7)):
        start = time.perf_counter()
        bad = 0
        flagged = 0
        nrows = 0
        for diff in obstructions.all_tables(p, args.gold):
            nrows += len(diff.rows)
            for r in diff.rows:
                if r.match and r.minimal_root_level == r.gold_root_level:
                    continue
                kind = []
                if not r.match:
                    kind.append("conditions differ")
                if r.minimal_root_level != r.gold_root_level:
                    kind.append(
                        f"minimal root level {r.minimal_root_level} != {r.gold_root_level}")
                tag = "FLAGGED" if r.flagged else "MISMATCH"
                if r.flagged:
                    flagged += 1
                else:
                    bad += 1
                print(f"{tag} table {diff.table_id} p={p} {r.label}: {'; '.join(kind)}")
                print(f"  engine: {', '.join(r.result.texts())}")
        elapsed = time.perf_counter() - start
        verdict = "OK" if bad == 0 else f"{bad} mismatches"
        print(f"p={p}: {nrows} rows, {verdict}"
              + (f", {flagged} flagged" if flagged else "")
              + f" ({elapsed:.2f}s)")
        if bad:
            status = MISMATCH_ERROR
    return status


def cmd_selfcheck(args) -> int:
    rng = np.random.default_rng(args.seed)
    failures = 0
    for p in _primes(args):
        start = time.perf_counter()
        for inst in _instances(args, p):
            P = inst.presentation
            checks = []
            checks.append(("order", groups.group_order(P) == p**inst.id.order_exp))
            if groups.group_order(P) <= min(243, args.bound):
                checks.append(("assoc-exhaustive", groups.associativity_exhaustive(P)))
            else:
                checks.append(("assoc-random",
                               groups.associativity_random(P, args.triples,
                                                           seed=int(rng.integers(2**31)))))
            ok_kernels = all(
                groups.is_central_element(P, P.generator(k))
                and groups.element_order(P, P.generator(k)) == p**inst.kernel_level
                for k in inst.kernels)
            checks.append(("kernels-central", ok_kernels))
            checks.append(("quotient-abelian", groups.is_abelian_quotient(P, list(inst.kernels))))
            bad = [name for name, ok in checks if not ok]
            if bad:
                failures += 1
                print(f"FAIL {inst.label} p={p}: {', '.join(bad)}")
        elapsed = time.perf_counter() - start
        print(f"p={p}: selfcheck {'OK' if not failures else 'FAILED'} ({elapsed:.2f}s)")
    return DATA_ERROR if failures else 0


def cmd_eval(args) -> int:
    p = _primes(args)[0]
    expr = parse(args.expression)
    labels = sorted({lbl for f in expr.factors for lbl, _ in f.left + f.right
                     if lbl.startswith("a")})
    root = max([root_level_of(lbl) for f in expr.factors for lbl, _ in f.left + f.right
                if lbl.startswith("z")] + [expr.torsion_level or 1])
    basis = SymbolBasis(p=p, labels=tuple(labels) or ("a1",),
                        root_level=root, torsion_level=expr.torsion_level or 1)
    nf = normalize(expr, basis)
    print(f"normal form: {render(nf)}")
    values = []
    ells = set()
    for assignment in local_oracle._trial_assignments(basis, args.trials, args.seed):
        ells.add(assignment.ell)
        values.append(local_oracle.eval_expression(expr, assignment, basis))
    counts = {v: values.count(v) for v in sorted(set(values))}
    print(f"{len(values)} assignments over ell in {sorted(ells)}; value counts: {counts}")
    verdict = local_oracle.check_raw_vs_normal(expr, nf, trials=args.trials, seed=args.seed)
    print(f"raw vs normal form: {'agree' if verdict.equal else 'DISAGREE'} "
          f"({verdict.trials} trials)")
    return 0 if verdict.equal else MISMATCH_ERROR


_COMMANDS = {
    "list": cmd_list,
    "show": cmd_show,
    "obstruct": cmd_obstruct,
    "table": cmd_table,
    "check-tables": cmd_check_tables,
    "selfcheck": cmd_selfcheck,
    "eval": cmd_eval,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    for p in args.p or []:
        if p == 2:
            print("error: p must be an odd prime", file=sys.stderr)
            return USAGE_ERROR
    try:
        return _COMMANDS[args.command](args)
    except (CatalogError, PresentationError, EnumerationBoundError, ObstructionError,
            ExpressionError, extension.ExtensionError, local_oracle.OracleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
