"""Command-line entry point: ``kneserham <command> ...``.

Exit codes: 0 success, 1 a check failed, 2 usage, size or parse error.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
from collections import Counter

from .errors import KneserError
from .polygon import catalan


@contextlib.contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


@contextlib.contextmanager
def _input(path):
    if path in (None, "-"):
        yield sys.stdin
    else:
        with open(path, encoding="utf-8") as fh:
            yield fh


def cmd_hamcycle(args):
    from .splicer import build_hamiltonian

    cycle = build_hamiltonian(args.n)
    with _output(args.out) as fh:
        cycle.write(fh, args.format)
    return 0


def _print_report(report):
    print(report.render())
    return 0 if report.passed else 1


def cmd_verify(args):
    from .verification import verify_kneser_cycle

    with _input(args.infile) as fh:
        report = verify_kneser_cycle(fh, args.n)
    return _print_report(report)


def cmd_orbits(args):
    from .orbits import orbit_partition

    part = orbit_partition(args.n)
    poly = part.polygon
    with _output(args.out) as fh:
        for o in part.orbits:
            fh.write(f"orbit {o.id} size={o.size} rep={poly.encode(o.rep)}\n")
    return 0


def cmd_guide(args):
    from .guide import build_guide_cycle

    guide = build_guide_cycle(args.n)
    with _output(args.out) as fh:
        fh.write(f"guide n={args.n} len={len(guide.seq)}\n")
        for text in guide.encodings():
            fh.write(text + "\n")
    return 0


def cmd_bridges(args):
    from .splicer import run_pipeline

    pipe = run_pipeline(args.n)
    if pipe.tree is None:
        print(f"n={args.n}: single orbit, no tree and no bridges")
        return 0
    poly = pipe.partition.polygon
    tree, factor = pipe.tree, pipe.factor
    with _output(args.out) as fh:
        fh.write(f"tree n={args.n} orbits={len(tree.order)} root={tree.root}\n")
        for child in tree.order[1:]:
            wp, wc = tree.witness[child]
            fh.write(f"edge child={child} parent={tree.parent[child]} "
                     f"witness={poly.encode(wp)} / {poly.encode(wc)}\n")
        for k, e in enumerate(factor.bridges, start=2):
            fh.write(f"bridge e{k} child={e.child} {poly.encode(e.a)} / {poly.encode(e.b)}\n")
    return 0


def cmd_lemmas(args):
    from .verification import verify_lemmas

    return _print_report(verify_lemmas(args.n))


def cmd_stats(args):
    from .splicer import run_pipeline

    pipe = run_pipeline(args.n)
    part = pipe.partition
    sizes = Counter(part.sizes())
    print(f"n={args.n}")
    print(f"triangulations={catalan(args.n - 2)}")
    print(f"orbits={len(part.orbits)}")
    print("orbit sizes=" + ",".join(f"{s}x{k}" for s, k in sorted(sizes.items())))
    if pipe.guide is not None:
        deg = pipe.tree.degree()
        print(f"guide length={len(pipe.guide.seq)}")
        print(f"tree edges={len(pipe.tree.edges())} max degree={max(deg.values(), default=0)}")
        print(f"bridges={len(pipe.factor.bridges)}")
    print(f"cycle length={len(pipe.cycle)}")
    return 0


def cmd_perm_hamcycle(args):
    from math import factorial

    from .permutohedron import iter_perm_cycle
    from .verification import PERM_TAG

    with _output(args.out) as fh:
        fh.write(f"{PERM_TAG} n={args.n} len={factorial(args.n)}\n")
        for p in iter_perm_cycle(args.n):
            fh.write(" ".join(map(str, p)) + "\n")
    return 0


def cmd_perm_verify(args):
    from .verification import verify_perm_cycle

    with _input(args.infile) as fh:
        report = verify_perm_cycle(fh, args.n)
    return _print_report(report)


def cmd_perm_density(args):
    from .permutohedron import density_report

    print(density_report(args.n, args.k).render())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kneserham",
        description="Hamiltonian cycles in Kneser graphs of triangulations and of the permutohedron.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hamcycle", help="emit a Hamiltonian cycle of KG(T_n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--format", choices=("compact", "jsonl"), default="compact")
    p.set_defaults(func=cmd_hamcycle)

    p = sub.add_parser("verify", help="certify a cycle listing (stdin by default)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--in", dest="infile", default="-")
    p.set_defaults(func=cmd_verify)

    for name, func, help_ in (("orbits", cmd_orbits, "list rotation orbits"),
                              ("guide", cmd_guide, "emit the guide cycle"),
                              ("bridges", cmd_bridges, "print the orbit tree and bridge edges")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--out")
        p.set_defaults(func=func)

    p = sub.add_parser("lemmas", help="run the structural check suites for one n")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_lemmas)

    p = sub.add_parser("stats", help="summary counts for one n")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_stats)

    perm = sub.add_parser("perm", help="permutohedron commands")
    psub = perm.add_subparsers(dest="perm_command", required=True)
    p = psub.add_parser("hamcycle", help="emit a Hamiltonian cycle of KG(Perm_n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_perm_hamcycle)
    p = psub.add_parser("verify", help="certify a permutation cycle listing")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--in", dest="infile", default="-")
    p.set_defaults(func=cmd_perm_verify)
    p = psub.add_parser("density", help="indecomposable count against the k-th power threshold")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_perm_density)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except KneserError as exc:
        if isinstance(exc, AssertionError):
            raise
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
