"""Command-line front end.

Exit codes: 0 success, 1 verification mismatch, 2 input or validation error.
"""

from __future__ import annotations

import argparse
import re
import sys
from collections.abc import Sequence

from .bruhat import SchubertUniverse, parse_generators, schubert_universe
from .kclass import (
    enumerate_antichains, format_expansion, mobius_kclass, normalize_components,
    verify_expansion,
)
from .poset import PosetError, format_poset, mobius, read_poset
from .universe import (
    UniverseError, check_antichain, element_ceiling, intersect_decompose_closure,
    read_universe, validate_table,
)

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def split_components(text: str) -> list[str]:
    """Split a component list.

    ``;`` separates when present (needed for comma-separated permutations
    with n > 9); otherwise commas outside parentheses do.
    """
    if ";" in text:
        parts = text.split(";")
    else:
        parts = re.findall(r"\([^)]*\)|[^,()]+", text)
    out = [p.strip() for p in parts if p.strip()]
    if not out:
        raise InputError("no components given")
    return out


def _schubert(args) -> SchubertUniverse:
    if args.n is None:
        raise InputError("--n is required")
    return schubert_universe(args.n, parse_generators(args.parabolic))


def _components(U, text: str) -> list[str]:
    if isinstance(U, SchubertUniverse):
        return [U.label_of(t) for t in split_components(text)]
    labels = split_components(text)
    U.check_labels(labels)
    return labels


def _load_table(path: str, out):
    U = read_universe(path)
    report = validate_table(U)
    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)
    if not report.ok:
        for v in report.violations:
            print(f"violation: {v}", file=sys.stderr)
        raise InputError(f"{path}: universe table failed validation "
                         f"({len(report.violations)} violations)")
    return U


def run_mobius(args, out) -> int:
    P = read_poset(args.file)
    out.write(format_expansion(mobius(P)))
    return EXIT_OK


def run_closure(args, out) -> int:
    U = _load_table(args.file, out)
    if not U.seeds:
        raise InputError(f"{args.file}: no seed lines")
    P = intersect_decompose_closure(U, U.seeds, element_ceiling())
    out.write(f"# closure of {' '.join(sorted(U.seeds))}: {len(P)} elements\n")
    out.write(format_poset(P))
    out.write(format_expansion(mobius(P)))
    return EXIT_OK


def run_kclass(args, out) -> int:
    U = _schubert(args)
    norm = normalize_components(U, _components(U, args.components))
    if norm.changed:
        out.write(f"# normalized: dropped {' '.join(norm.dropped)}\n")
    out.write(format_expansion(mobius_kclass(U, norm.components, element_ceiling())))
    return EXIT_OK


def run_verify(args, out) -> int:
    if args.universe:
        if args.n is not None:
            raise InputError("--universe and --n are mutually exclusive")
        U = _load_table(args.universe, out)
    else:
        U = _schubert(args)
    ceiling = element_ceiling()
    if args.all_antichains:
        targets = list(enumerate_antichains(U))
    elif args.components:
        norm = normalize_components(U, _components(U, args.components))
        if norm.changed:
            out.write(f"# normalized: dropped {' '.join(norm.dropped)}\n")
        targets = [norm.components]
    elif U.seeds:
        targets = [check_antichain(U, U.seeds)]
    else:
        raise InputError("give --components or --all-antichains")

    failed = 0
    for D in targets:
        report = verify_expansion(U, D, ceiling)
        out.write(report.summary() + "\n")
        for msg in report.messages:
            out.write(f"#   {msg}\n")
        failed += not report.passed
    out.write(f"# checked={len(targets)} passed={len(targets) - failed} failed={failed}\n")
    return EXIT_MISMATCH if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kmob", description="Möbius inversion expansions of K-classes "
                     "of unions of irreducible varieties.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("mobius", help="Möbius function of a poset file")
    p.add_argument("file")
    p.set_defaults(func=run_mobius)

    p = sub.add_parser("closure", help="intersect-decompose closure of a universe file")
    p.add_argument("file")
    p.set_defaults(func=run_closure)

    def schubert_opts(p):
        p.add_argument("--n", type=int)
        p.add_argument("--parabolic", default="",
                       help="comma-separated simple reflection indices generating W_P")

    p = sub.add_parser("kclass", help="K-class expansion of a union of Schubert varieties")
    schubert_opts(p)
    p.add_argument("--components", required=True,
                   help="permutations like 231,312 or partitions like (2),(1,1)")
    p.set_defaults(func=run_kclass)

    p = sub.add_parser("verify", help="cross-check Möbius against inclusion-exclusion")
    schubert_opts(p)
    p.add_argument("--universe", help="table universe file instead of a Schubert quotient")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--components")
    mode.add_argument("--all-antichains", action="store_true")
    p.set_defaults(func=run_verify)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except (InputError, PosetError, UniverseError, OSError) as exc:
        print(f"kmob: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # exit codes are part of the contract
        print(f"kmob: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
