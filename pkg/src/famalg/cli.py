"""Command-line entry point.

Exit codes: 0 when every check passed or the construction succeeded, 1 when
violations were found (or a search came up empty), 2 on bad input.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .constructions import (
    CONSTRUCTIONS, circ_identity_check, cyclic_sum_check, derive, family_commutator, family_sum,
    left_pre_lie_family, pre_lie_commutator, relative_commutator, relative_pre_lie,
    relative_right_pre_lie, relative_sum, right_pre_lie_family,
)
from .errors import BudgetExhausted, FamalgError
from .identities import ViolationReport, check
from .io import parse_algebra, parse_operators, serialize_algebra, algebra_hash
from .kinds import IdentityKind, as_kind
from .operators import (
    RBVariant, check_grb, check_rb_lie, check_rb_relative, check_rb_weighted, induce_relative_paf,
    lie_rb_pipeline,
)
from .search import SearchConfig, find_witnesses
from .tensorization import equivalence_verify

K = IdentityKind
THEOREMS = ("2.4", "2.8", "2.10", "2.13", "3.3", "3.5", "3.8", "3.9", "3.10", "4.3", "4.6",
            "tensor-2.5", "tensor-3.6")


class InputError(Exception):
    pass


class Run:
    """Collects the JSON report of one invocation."""

    def __init__(self, command, fmt):
        self.fmt = fmt
        self.doc = {"tool": "famalg", "version": __version__, "command": command, "inputs": []}
        self.text: list[str] = []
        self.equations: list[str] = []
        self.field = None

    def read(self, role, path):
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
        self.doc["inputs"].append({"role": role, "sha256": hashlib.sha256(data).hexdigest()})
        return data

    def algebra(self, path, role="algebra"):
        a = parse_algebra(self.read(role, path))
        self.field = a.field
        return a

    def report(self, key, rep: ViolationReport, fld=None):
        fld = fld or self.field
        self.equations.extend(rep.identity_ids)
        self.doc.setdefault("reports", {})[key] = rep.to_json(fld)
        self.text.append(f"[{key}]")
        self.text.append(rep.to_text(fld))
        return rep.empty

    def stage(self, name, ok, **extra):
        self.doc.setdefault("stages", []).append({"stage": name, "pass": ok, **extra})
        self.text.append(f"{name}: {'pass' if ok else 'FAIL'}")
        return ok

    def emit(self, code):
        self.doc["equations"] = sorted(set(self.equations))
        self.doc["exitCode"] = code
        if self.fmt == "json":
            sys.stdout.write(json.dumps(self.doc, sort_keys=True, indent=1) + "\n")
        else:
            sys.stdout.write("\n".join(self.text + [f"exit {code}"]) + "\n")
        return code


def _write(path, data: bytes):
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


def cmd_validate(args, run):
    a = run.algebra(args.algebra)
    run.doc["algebra"] = {"hash": algebra_hash(a), "kind": a.kind, "dimension": a.dimension,
                          "order": a.order, "entries": a.entry_count()}
    run.text.append(f"valid: dim={a.dimension} order={a.order} kind={a.kind} entries={a.entry_count()}")
    return 0


def cmd_check(args, run):
    a = run.algebra(args.algebra)
    kind = args.kind or a.kind
    if kind is None:
        raise InputError("no --kind given and the file declares none")
    rep = check(kind, a, max_records=args.max_records, workers=args.workers)
    run.doc["kind"] = as_kind(kind).value
    return 0 if run.report("check", rep) else 1


def cmd_derive(args, run):
    a = run.algebra(args.algebra)
    d = derive(args.construction, a)
    data = serialize_algebra(d.result)
    if args.output:
        _write(args.output, data)
    run.doc["derived"] = {"construction": d.construction, "hash": algebra_hash(d.result),
                          "source": algebra_hash(a), "kind": d.result.kind}
    run.text.append(f"derived {d.construction}: kind={d.result.kind} hash={algebra_hash(d.result)}")
    if not args.output:
        run.doc["algebra"] = json.loads(data)
    return 0


def cmd_tensor(args, run):
    a = run.algebra(args.algebra)
    eq = equivalence_verify(a, max_records=args.max_records)
    if args.output:
        _write(args.output, serialize_algebra(eq.expansion.result))
    run.report("family", eq.family_report)
    run.report("expanded", eq.expanded_report)
    run.doc["agree"] = eq.agree
    run.doc["expandedHash"] = algebra_hash(eq.expansion.result)
    run.text.append(f"agree: {eq.agree}")
    return 0 if eq.family_report.empty and eq.expanded_report.empty else 1


def cmd_rb(args, run):
    a = run.algebra(args.algebra)
    ops = parse_operators(run.read("operators", args.operators), a.field, a.semigroup)
    variant = RBVariant(args.variant)
    if variant is RBVariant.WEIGHTED:
        rep = check_rb_weighted(a, ops, a.field.parse(args.weight), args.max_records)
    elif variant is RBVariant.RELATIVE:
        rep = check_rb_relative(a, ops, args.max_records)
    elif variant is RBVariant.GENERALIZED:
        rep = check_grb(a, ops, args.max_records)
    else:
        lie = a if "bracket" in a.products else family_commutator(a)
        rep = check_rb_lie(lie, ops, args.max_records)
    ok = run.report(variant.value, rep)
    if args.induce:
        induced = induce_relative_paf(a, ops)
        _write(args.induce, serialize_algebra(induced))
        ok = run.report("induced", check(K.RELATIVE_PRE_ANTI_FLEXIBLE, induced, args.max_records)) and ok
    return 0 if ok else 1


def cmd_search(args, run):
    cfg = SearchConfig(args.kind, args.field, args.dim, args.semigroup_order, args.sparsity, args.samples,
                       args.seed, args.mode, nontrivial=args.nontrivial, max_witnesses=args.max_witnesses)
    try:
        found = find_witnesses(cfg)
    except BudgetExhausted as exc:
        run.doc["witnesses"] = []
        run.doc["tried"] = exc.tried
        run.text.append(str(exc))
        return 1
    hashes = []
    if args.emit_dir:
        Path(args.emit_dir).mkdir(parents=True, exist_ok=True)
    for pos, a in enumerate(found):
        hashes.append(algebra_hash(a))
        if args.emit_dir:
            _write(Path(args.emit_dir) / f"witness_{pos:03d}.json", serialize_algebra(a))
        run.text.append(f"witness {pos}: entries={a.entry_count()} table={list(map(list, a.semigroup.table))} "
                        f"hash={hashes[-1][:16]}")
    run.doc["witnesses"] = hashes
    run.doc["config"] = {k: v for k, v in vars(cfg).items() if k != "semigroup"}
    return 0


def _pipeline(run, a, hyp_kind, steps):
    ok = run.stage("hypothesis", run.report("hypothesis", check(hyp_kind, a)))
    for name, fn in steps:
        ok = run.stage(name, fn()) and ok
    return 0 if ok else 1


def _theorem_family(run, a, thm):
    fam, rel = K.PRE_ANTI_FLEXIBLE_FAMILY, K.RELATIVE_PRE_ANTI_FLEXIBLE

    def kind_of(name, builder, kind):
        return lambda: run.report(name, check(kind, builder(a)))

    if thm == "2.4":
        steps = [("sum", kind_of("sum", family_sum, K.RELATIVE_ANTI_FLEXIBLE))]
    elif thm == "2.8":
        steps = [("left-pre-lie", kind_of("left-pre-lie", left_pre_lie_family, K.LEFT_PRE_LIE_FAMILY)),
                 ("right-pre-lie", kind_of("right-pre-lie", right_pre_lie_family, K.RIGHT_PRE_LIE_FAMILY))]
    elif thm == "2.10":
        def agree():
            br = family_commutator(a).tensor("bracket")
            left = pre_lie_commutator(a, "left").tensor("bracket")
            right = pre_lie_commutator(a, "right").tensor("bracket")
            return bool(np.all(left == br) and np.all(right == br.transpose(1, 0, 2, 3, 4)))
        steps = [("commutator", kind_of("commutator", family_commutator, K.RELATIVE_LIE)),
                 ("pre-lie-commutators-agree", agree)]
    elif thm == "2.13":
        steps = [("circ", lambda: run.report("circ", circ_identity_check(a))),
                 ("cyclic", lambda: run.report("cyclic", cyclic_sum_check(a)))]
    elif thm == "3.3":
        return _pipeline(run, a, rel, [("sum", kind_of("sum", relative_sum, K.RELATIVE_ANTI_FLEXIBLE))])
    elif thm == "3.5":
        return _pipeline(run, a, rel, [("pre-lie", kind_of("pre-lie", relative_pre_lie, K.RELATIVE_PRE_LIE))])
    elif thm == "3.8":
        def literal():
            # the statement names this structure pre-Lie; reported, not gated
            rep = check(K.RELATIVE_PRE_LIE, relative_right_pre_lie(a))
            run.doc["literalPreLie"] = rep.summary()
            return True
        return _pipeline(run, a, rel, [
            ("right-symmetric", kind_of("right-symmetric", relative_right_pre_lie, K.RELATIVE_RIGHT_SYMMETRIC)),
            ("literal-pre-lie-info", literal)])
    elif thm == "3.9":
        return _pipeline(run, a, rel, [("commutator", kind_of("commutator", relative_commutator, K.RELATIVE_LIE))])
    elif thm == "3.10":
        return _pipeline(run, a, rel, [("circ", lambda: run.report("circ", circ_identity_check(a))),
                                       ("cyclic", lambda: run.report("cyclic", cyclic_sum_check(a)))])
    else:
        raise InputError(f"unknown theorem {thm}")
    return _pipeline(run, a, fam, steps)


def cmd_verify(args, run):
    thm = args.theorem
    a = run.algebra(args.algebra)
    run.doc["theorem"] = thm
    if thm.startswith("tensor-"):
        eq = equivalence_verify(a)
        run.report("family", eq.family_report)
        run.report("expanded", eq.expanded_report)
        return 0 if run.stage("equivalence", eq.agree, familyValid=eq.family_report.empty,
                              expandedValid=eq.expanded_report.empty) else 1
    if thm in ("4.3", "4.6"):
        if not args.operators:
            raise InputError(f"theorem {thm} needs --operators")
        ops = parse_operators(run.read("operators", args.operators), a.field, a.semigroup)
        hyp = run.stage("hypothesis", run.report("hypothesis", check(K.RELATIVE_ANTI_FLEXIBLE, a)))
        if thm == "4.3":
            grb = run.report("generalized", check_grb(a, ops))
            induced = run.report("induced", check(K.RELATIVE_PRE_ANTI_FLEXIBLE, induce_relative_paf(a, ops)))
            ok = run.stage("iff", grb == induced, generalized=grb, inducedValid=induced)
        else:
            out = lie_rb_pipeline(a, ops)
            run.report("centrality", out.centrality)
            run.report("induced", out.induced)
            run.report("lie", out.lie)
            run.doc["lieRB"] = out.to_json()
            ok = run.stage("iff", out.iff_holds is True, iffHolds=out.iff_holds)
        return 0 if hyp and ok else 1
    return _theorem_family(run, a, thm)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="famalg", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, algebra=True):
        p = sub.add_parser(name)
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--max-records", type=int, default=1000)
        if algebra:
            p.add_argument("algebra")
        p.set_defaults(fn=fn)
        return p

    add("validate", cmd_validate)
    p = add("check", cmd_check)
    p.add_argument("--kind", choices=[k.value for k in IdentityKind])
    p.add_argument("--workers", type=int, default=None)
    p = add("derive", cmd_derive)
    p.add_argument("--construction", required=True, choices=sorted(CONSTRUCTIONS))
    p.add_argument("-o", "--output")
    p = add("tensor", cmd_tensor)
    p.add_argument("-o", "--output")
    p = add("rb", cmd_rb)
    p.add_argument("--operators", required=True)
    p.add_argument("--variant", choices=[v.value for v in RBVariant], default="relative")
    p.add_argument("--weight", default="0")
    p.add_argument("--induce")
    p = add("search", cmd_search, algebra=False)
    p.add_argument("--kind", required=True, choices=[k.value for k in IdentityKind])
    p.add_argument("--field", default="F2", choices=("Q", "F2", "F3", "F5"))
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--semigroup-order", type=int, default=1)
    p.add_argument("--sparsity", type=int, default=3)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("random", "exhaustive"), default="random")
    p.add_argument("--nontrivial", action="store_true")
    p.add_argument("--max-witnesses", type=int, default=50)
    p.add_argument("--emit-dir")
    p = add("verify-theorem", cmd_verify)
    p.add_argument("--theorem", required=True, choices=THEOREMS)
    p.add_argument("--operators")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    run = Run(args.command, args.format)
    try:
        code = args.fn(args, run)
    except (InputError, FamalgError, ValueError) as exc:
        run.doc["error"] = f"{type(exc).__name__}: {exc}"
        run.text.append(f"error: {run.doc['error']}")
        return run.emit(2)
    return run.emit(code)


if __name__ == "__main__":
    sys.exit(main())
