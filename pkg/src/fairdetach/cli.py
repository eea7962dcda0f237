"""Command-line frontend: detach, ham, verify, fuzz, export.

Exit codes: 0 success, 1 verification failure, 2 precondition violation,
3 infeasible parameters, 4 malformed input.  All outputs are deterministic
for identical inputs; --seed only drives the fuzz instance generator.
"""

from __future__ import annotations

import argparse
import random
import sys
from typing import List, Optional

from . import document
from .engine import detach_all
from .errors import DocumentError, GraphError, InfeasibleError, PreconditionError
from .bee import bee_coloring, is_balanced, is_equalized, is_equitable
from .evencolor import evenly_equitable_coloring, is_evenly_equitable
from .fuzzgen import (
    random_bipartite,
    random_detach_instance,
    random_even_multigraph,
)
from .hamilton import GddParams, ham_decompose_gdd, ham_decompose_lambda_kn
from .verify import verify_detachment, verify_ham_decomposition

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_PRECONDITION = 2
EXIT_INFEASIBLE = 3
EXIT_MALFORMED = 4


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def cmd_detach(args: argparse.Namespace) -> int:
    try:
        doc = document.loads(_read(args.input))
        cg, eta, _ = document.doc_to_graph(doc)
    except (DocumentError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    if eta is None:
        print("error: document carries no eta map", file=sys.stderr)
        return EXIT_MALFORMED
    try:
        g, psi, trace = detach_all(cg, eta)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    out = document.graph_to_doc(g, psi=psi)
    _write(args.output, document.dumps(out))
    if args.trace:
        lines = []
        for i, rec in enumerate(trace.steps):
            moved = rec.moves.moved_total()
            lines.append(
                document.dumps(
                    {
                        "step": i,
                        "from": rec.y,
                        "new": rec.v_new,
                        "eta_before": rec.eta_y_before,
                        "moved": moved,
                    }
                ).rstrip("\n")
            )
        _write(args.trace, "\n".join(lines) + ("\n" if lines else ""))
    if args.dot:
        _write(args.dot, document.to_dot(out))
    return EXIT_OK


def cmd_ham(args: argparse.Namespace) -> int:
    gdd_flags = [args.parts, args.size, args.sizes, args.l1, args.l2]
    use_gdd = any(v is not None for v in gdd_flags)
    use_kn = args.n is not None or args.lam is not None
    if use_gdd == use_kn:
        print(
            "error: give either --n/--lambda or --parts/--size(s)/--l1/--l2",
            file=sys.stderr,
        )
        return EXIT_MALFORMED
    try:
        if use_kn:
            if args.n is None or args.lam is None:
                print("error: --n and --lambda are both required", file=sys.stderr)
                return EXIT_MALFORMED
            dec = ham_decompose_lambda_kn(args.n, args.lam)
        else:
            if args.parts is None or args.l1 is None or args.l2 is None:
                print(
                    "error: --parts, --l1 and --l2 are all required",
                    file=sys.stderr,
                )
                return EXIT_MALFORMED
            if (args.size is None) == (args.sizes is None):
                print("error: give exactly one of --size or --sizes", file=sys.stderr)
                return EXIT_MALFORMED
            if args.size is not None:
                sizes = [args.size] * args.parts
            else:
                try:
                    sizes = [int(s) for s in args.sizes.split(",")]
                except ValueError:
                    print(f"error: bad --sizes {args.sizes!r}", file=sys.stderr)
                    return EXIT_MALFORMED
                if len(sizes) != args.parts:
                    print(
                        f"error: --sizes lists {len(sizes)} parts, --parts says {args.parts}",
                        file=sys.stderr,
                    )
                    return EXIT_MALFORMED
            dec = ham_decompose_gdd(GddParams(tuple(sizes), args.l1, args.l2))
    except InfeasibleError as exc:
        print(f"infeasible: condition {exc.condition}: {exc.message}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (PreconditionError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    _write(args.output, document.dumps(document.decomposition_to_doc(dec)))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        first = document.loads(_read(args.documents[0]))
        if len(args.documents) == 1:
            if first.get("kind") != "decomposition":
                print(
                    "error: single-document verify expects a decomposition",
                    file=sys.stderr,
                )
                return EXIT_MALFORMED
            dec = document.doc_to_decomposition(first)
            ok, witness = verify_ham_decomposition(dec.host, list(dec.cycles))
            print(f"cycles: {'ok' if ok else 'FAIL'}" + (f"  [{witness}]" if witness else ""))
            return EXIT_OK if ok else EXIT_VERIFY
        if len(args.documents) != 2:
            print("error: verify takes one or two documents", file=sys.stderr)
            return EXIT_MALFORMED
        second = document.loads(_read(args.documents[1]))
        h, eta, _ = document.doc_to_graph(first)
        g, _, psi = document.doc_to_graph(second)
        if eta is None:
            print("error: first document carries no eta map", file=sys.stderr)
            return EXIT_MALFORMED
        if psi is None:
            print("error: second document carries no psi map", file=sys.stderr)
            return EXIT_MALFORMED
        report = verify_detachment(h, eta, psi, g)
    except (DocumentError, GraphError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    for line in report.lines():
        print(line)
    return EXIT_OK if report.ok else EXIT_VERIFY


def _fuzz_one(kind: str, seed: int) -> Optional[str]:
    rng = random.Random(seed)
    if kind == "detach":
        cg, eta = random_detach_instance(rng)
        g, psi, _ = detach_all(cg, eta)
        report = verify_detachment(cg, eta, psi, g)
        if not report.ok:
            name, witness = report.first_failure() or ("?", None)
            return f"seed {seed}: {name} failed: {witness}"
    elif kind == "bee":
        bg = random_bipartite(rng)
        k = rng.randint(1, 5)
        coloring = bee_coloring(bg, k)
        if not (
            is_balanced(coloring)
            and is_equitable(coloring)
            and is_equalized(coloring)
            and coloring.parent() == bg
        ):
            return f"seed {seed}: coloring contract violated"
    elif kind == "evencolor":
        g = random_even_multigraph(rng)
        k = rng.randint(1, 5)
        cg = evenly_equitable_coloring(g, k)
        if not (is_evenly_equitable(cg) and cg.underlying() == g):
            return f"seed {seed}: even coloring contract violated"
    else:
        raise ValueError(f"unknown fuzz kind {kind}")
    return None


def cmd_fuzz(args: argparse.Namespace) -> int:
    kinds = ["detach", "bee", "evencolor"] if args.kind == "all" else [args.kind]
    jobs = []
    for kind in kinds:
        for i in range(args.count):
            jobs.append((kind, args.seed + i))
    failures: List[str] = []
    if args.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            for res in pool.map(_fuzz_one_star, jobs):
                if res:
                    failures.append(res)
    else:
        for kind, seed in jobs:
            res = _fuzz_one(kind, seed)
            if res:
                failures.append(res)
    for line in failures:
        print(f"FAIL {line}")
    print(f"ran {len(jobs)} instances, {len(failures)} failures")
    return EXIT_OK if not failures else EXIT_VERIFY


def _fuzz_one_star(job) -> Optional[str]:
    return _fuzz_one(*job)


def cmd_export(args: argparse.Namespace) -> int:
    try:
        doc = document.loads(_read(args.input))
    except (DocumentError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    _write(args.output, document.to_dot(doc))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fairdetach",
        description="Fair detachments of edge-colored multigraphs and "
        "Hamiltonian decomposition generators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detach", help="detach a colored multigraph per its eta map")
    p.add_argument("input", help="graph document with an eta map ('-' for stdin)")
    p.add_argument("-o", "--output", default="-", help="detached graph document")
    p.add_argument("--trace", help="write step trace (JSON lines) to this path")
    p.add_argument("--dot", help="also write a DOT rendering to this path")
    p.set_defaults(func=cmd_detach)

    p = sub.add_parser("ham", help="generate a Hamiltonian decomposition")
    p.add_argument("--n", type=int, help="complete graph order")
    p.add_argument("--lambda", dest="lam", type=int, help="edge multiplicity")
    p.add_argument("--parts", type=int, help="number of parts")
    p.add_argument("--size", type=int, help="uniform part size")
    p.add_argument("--sizes", help="comma-separated part sizes")
    p.add_argument("--l1", type=int, help="intra-part multiplicity")
    p.add_argument("--l2", type=int, help="inter-part multiplicity")
    p.add_argument("-o", "--output", default="-", help="decomposition document")
    p.set_defaults(func=cmd_ham)

    p = sub.add_parser("verify", help="verify a detachment pair or a decomposition")
    p.add_argument(
        "documents",
        nargs="+",
        help="either HOST_DOC DETACHED_DOC or one decomposition document",
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fuzz", help="run random instances through generator+verifier")
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument(
        "--kind",
        choices=["detach", "bee", "evencolor", "all"],
        default="detach",
    )
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("export", help="render a document as DOT")
    p.add_argument("input", help="document path ('-' for stdin)")
    p.add_argument("-o", "--output", default="-", help="DOT output path")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
