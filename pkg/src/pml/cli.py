"""Command-line front end.

Exit codes: 0 success / predicate true; 1 predicate false; 2 validation or
parse error; 3 usage error; 4 budget exceeded.  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from pml import catalog as catalog_mod
from pml import certify as certify_mod
from pml.binary import is_binary
from pml.compress import compress
from pml.core import Polymatroid, is_valid, validate
from pml.natural import NaturalOracle
from pml.textio import DocumentError, parse, serialize

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INVALID = 2
EXIT_USAGE = 3
EXIT_BUDGET = 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # exit 3, not argparse's default 2
        raise _UsageError(message)


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise DocumentError(0, f"cannot read {path!r}: {exc}") from None


def _load(path: str, require_valid: bool = True) -> Polymatroid:
    p = parse(_read_input(path))
    if require_valid:
        report = validate(p)
        if report:
            for axiom, witnesses in report:
                sets = " ".join("{" + ",".join(sorted(w)) + "}" for w in witnesses)
                print(f"axiom violation: {axiom} at {sets}", file=sys.stderr)
            raise DocumentError(0, f"input is not a valid {p.k}-polymatroid")
    return p


def _budget(args) -> int:
    if getattr(args, "budget", None) is not None:
        return args.budget
    env = os.environ.get("PML_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise _UsageError(f"PML_BUDGET must be an integer, got {env!r}") from None
    return certify_mod.DEFAULT_BUDGET


def build_parser() -> _Parser:
    parser = _Parser(prog="pml", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_: str, input_: bool = True) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_)
        if input_:
            sp.add_argument("--input", default="-", metavar="FILE|-",
                            help="polymatroid document (default stdin)")
        return sp

    add("validate", "check the polymatroid axioms")
    add("show", "print the rank table grouped by subset size")
    add("dual", "emit the k-dual")
    sp = add("delete", "emit the deletion minor")
    sp.add_argument("--element", required=True, action="append",
                    help="element to delete (repeatable)")
    sp = add("contract", "emit the contraction minor")
    sp.add_argument("--element", required=True, action="append",
                    help="element to contract (repeatable)")
    add("simplify", "emit the simplification")
    sp = add("compress", "emit the l-compression by an element")
    sp.add_argument("--element", required=True)
    sp.add_argument("--l", type=int, required=True)
    sp = add("natural-rank", "rank of a clone set in the natural matroid")
    sp.add_argument("--clones", required=True,
                    help="comma-separated clone labels like e#1,f#2; '-' for the empty set")
    add("is-binary", "exit 0 iff the natural matroid is binary")
    sp = add("certify", "certify whether the input is an excluded minor")
    sp.add_argument("--machine", action="store_true")
    sp = add("catalog", "emit the excluded-minor catalog", input_=False)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--name", help="emit a single named entry")
    sp.add_argument("--machine", action="store_true")
    sp = add("classify", "enumerate and certify all candidates", input_=False)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--mode", choices=["auto", "full", "restricted"], default="auto")
    sp.add_argument("--machine", action="store_true")
    sp.add_argument("--budget", type=int)
    sp = add("decompress-check", "verify no decompression of an |E|=4 excluded "
             "minor is an excluded minor", input_=False)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--budget", type=int)
    return parser


def _cmd_validate(args) -> int:
    p = parse(_read_input(args.input))
    report = validate(p)
    if not report:
        print(f"valid {p.k}-polymatroid on {p.n} elements, total rank {p.total_rank}")
        return EXIT_OK
    for axiom, witnesses in report:
        sets = " ".join("{" + ",".join(sorted(w)) + "}" for w in witnesses)
        print(f"violation: {axiom} at {sets}")
    return EXIT_FALSE


def _cmd_show(args) -> int:
    p = parse(_read_input(args.input))
    print(f"k={p.k} ground={' '.join(p.labels)}")
    by_size: dict[int, list[int]] = {}
    for mask in range(1 << p.n):
        by_size.setdefault(bin(mask).count("1"), []).append(mask)
    for sz in sorted(by_size, reverse=True):
        row = []
        for mask in by_size[sz]:
            name = ",".join(lab for i, lab in enumerate(p.labels) if mask >> i & 1) or "-"
            row.append(f"{name}:{p.table[mask]}")
        print(f"  [{sz}] " + "  ".join(row))
    return EXIT_OK


def _emit(p: Polymatroid) -> int:
    sys.stdout.write(serialize(p))
    return EXIT_OK


def _cmd_natural_rank(args) -> int:
    p = _load(args.input)
    clones = [] if args.clones == "-" else args.clones.split(",")
    print(NaturalOracle(p).rank(clones))
    return EXIT_OK


def _cmd_is_binary(args) -> int:
    p = _load(args.input)
    decision = is_binary(NaturalOracle(p))
    if decision.binary:
        print("binary")
        return EXIT_OK
    w = decision.witness
    print("nonbinary")
    print(f"witness: contract {w.contracted} keep {','.join(w.points)}")
    return EXIT_FALSE


def _cmd_certify(args) -> int:
    p = _load(args.input)
    cert = certify_mod.is_excluded_minor(p)
    if args.machine:
        print(certify_mod.machine_line(p, cert.verdict))
    else:
        print(f"verdict: {cert.verdict}")
        if cert.witness is not None:
            print(f"witness: contract {cert.witness.contracted} "
                  f"keep {','.join(cert.witness.points)}")
        for c in cert.children:
            print(f"  {c.op} {c.element}: {'in-class' if c.in_class else 'out-of-class'}")
    return EXIT_OK if cert.verdict == "excluded-minor" else EXIT_FALSE


def _cmd_catalog(args) -> int:
    if args.k < 3:
        raise _UsageError(f"catalog requires --k >= 3, got {args.k}")
    if args.name:
        try:
            entry = catalog_mod.build(args.name, args.k)
        except KeyError as exc:
            raise _UsageError(str(exc)) from None
        sys.stdout.write(serialize(entry.polymatroid))
        return EXIT_OK
    entries = catalog_mod.list_for_k(args.k)
    if args.machine:
        for e in entries:
            print(f"entry name={e.name} rankE={e.total_rank} dual={e.dual_name} "
                  f"hash={certify_mod.canonical_hash(e.polymatroid)}")
    else:
        docs = [serialize(e.polymatroid) for e in entries]
        sys.stdout.write("\n".join(docs))
    print(f"{len(entries)} entries for k={args.k}", file=sys.stderr)
    return EXIT_OK


def _cmd_classify(args) -> int:
    if args.k < 3:
        raise _UsageError(f"classify requires --k >= 3, got {args.k}")
    report = certify_mod.classify(args.k, args.n, mode=args.mode, budget=_budget(args))
    if args.machine:
        for line in report.machine_lines():
            print(line)
        print(report.summary(), file=sys.stderr)
    else:
        print(report.summary())
    return EXIT_OK


def _cmd_decompress_check(args) -> int:
    if args.k < 3:
        raise _UsageError(f"decompress-check requires --k >= 3, got {args.k}")
    rep = certify_mod.decompression_report(args.k)
    for name, total, bad in rep.bases:
        print(f"{name}: {total} decompressions, {bad} excluded minors among them")
    print("ok" if rep.ok else "FAILED")
    return EXIT_OK if rep.ok else EXIT_FALSE


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "validate":
            return _cmd_validate(args)
        if args.command == "show":
            return _cmd_show(args)
        if args.command == "dual":
            return _emit(_load(args.input).dual())
        if args.command == "delete":
            return _emit(_load(args.input).delete(args.element))
        if args.command == "contract":
            return _emit(_load(args.input).contract(args.element))
        if args.command == "simplify":
            return _emit(_load(args.input).simplify())
        if args.command == "compress":
            return _emit(compress(_load(args.input), args.element, args.l))
        if args.command == "natural-rank":
            return _cmd_natural_rank(args)
        if args.command == "is-binary":
            return _cmd_is_binary(args)
        if args.command == "certify":
            return _cmd_certify(args)
        if args.command == "catalog":
            return _cmd_catalog(args)
        if args.command == "classify":
            return _cmd_classify(args)
        if args.command == "decompress-check":
            return _cmd_decompress_check(args)
        raise _UsageError(f"unknown command {args.command!r}")
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except certify_mod.BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
