"""Command line front end.

All indices on the command line and in files are 1-based.  Exit status is 0
on success, 1 on a domain error (including a refuted unfolding) and 2 on a
usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Callable, Sequence

from . import io
from .blocks import find_s_decomposition
from .cluster_engine import audit_positivity, check_sign_coherence, laurent_expand
from .core_matrix import Diagram, ExchangeMatrix, diagram_of, format_rows, mutate_matrix
from .errors import MutorbError, NotSDecomposable
from .growth import enumerate_mutation_class, growth_report
from .laurent import format_laurent
from .orbifold import flip, orbifold_of_decomposition, signed_adjacency
from .unfolding import unfold, verify_unfolding

_SEQ = re.compile(r"^[0-9]+(,[0-9]+)*$")


class UsageError(Exception):
    pass


def parse_sequence(text: str, n: int) -> list[int]:
    """Comma-separated 1-based indices, no whitespace; returns 0-based indices."""
    if text == "":
        return []
    if not _SEQ.match(text):
        raise UsageError(f"bad mutation sequence {text!r}: use comma-separated indices without spaces")
    seq = [int(x) for x in text.split(",")]
    for k in seq:
        if not 1 <= k <= n:
            raise UsageError(f"index {k} out of range 1..{n}")
    return [k - 1 for k in seq]


def _load(path: str):
    try:
        return io.load_json(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc.msg}") from exc


def _emit(args: argparse.Namespace, data: object, text: str) -> None:
    sys.stdout.write((io.dumps(data) if args.json else text) + "\n")


def _bool(x: bool) -> str:
    return "true" if x else "false"


def _diagram_text(D: Diagram) -> str:
    lines = [f"vertices: {D.n}"]
    if D.vertex_weights is not None:
        lines.append("weights: " + ",".join(str(w) for w in D.vertex_weights))
    for i, j, w in sorted(D.edge_list()):
        lines.append(f"{i + 1} -> {j + 1}" + (f" weight {w}" if w != 1 else ""))
    return "\n".join(lines)


def _triangulation_text(T) -> str:
    lines = ["triangles: " + " ".join("(" + ",".join(t) + ")" for t in T.triangles)]
    if T.pending_at:
        lines.append(
            "pending: "
            + " ".join(f"{a}->{T.orbifold_weights[p]}" for a, p in sorted(T.pending_at.items()))
        )
    lines.append("arcs: " + ",".join(T.interior_arcs))
    lines.append("matrix: " + format_rows(signed_adjacency(T).b))
    return "\n".join(lines)


# subcommands ----------------------------------------------------------


def cmd_mutate(args: argparse.Namespace) -> int:
    B = io.matrix_from_json(_load(args.matrix))
    for k in parse_sequence(args.seq, B.n):
        B = mutate_matrix(B, k)
    _emit(args, io.matrix_to_json(B), format_rows(B.b))
    return 0


def cmd_diagram(args: argparse.Namespace) -> int:
    B = io.matrix_from_json(_load(args.matrix))
    D = diagram_of(B).with_vertex_weights(None if B.is_skew_symmetric() else B.d)
    _emit(args, io.diagram_to_json(D), _diagram_text(D))
    return 0


def cmd_decompose(args: argparse.Namespace) -> int:
    D = io.diagram_from_json(_load(args.diagram))
    dec = find_s_decomposition(D)
    if dec is None:
        raise NotSDecomposable("no block decomposition found")
    lines = [f"{pl.kind}: " + ",".join(str(v + 1) for v in pl.vertices) for pl in dec.blocks]
    for v, w in sorted(dec.orbifold_weights.items()):
        lines.append(f"orbifold weight at {v + 1}: {w}")
    _emit(args, io.decomposition_to_json(dec), "\n".join(lines))
    return 0


def cmd_triangulate(args: argparse.Namespace) -> int:
    dec = io.decomposition_from_json(_load(args.decomposition))
    sig, T = orbifold_of_decomposition(dec)
    s = sig.to_json()
    head = (
        f"genus {s['genus']}, boundary {s['boundary']}, punctures {s['punctures']}, "
        f"orbifold points [{', '.join(s['orbifold_points'])}]"
    )
    data = io.triangulation_to_json(T)
    data["signature"] = s
    _emit(args, data, head + "\n" + _triangulation_text(T))
    return 0


def cmd_flip(args: argparse.Namespace) -> int:
    T = io.triangulation_from_json(_load(args.triangulation))
    if args.arc not in T.kinds:
        raise UsageError(f"unknown arc {args.arc!r}")
    T2 = flip(T, args.arc)
    _emit(args, io.triangulation_to_json(T2), _triangulation_text(T2))
    return 0


def cmd_class(args: argparse.Namespace) -> int:
    D = io.diagram_from_json(_load(args.diagram))
    mc = enumerate_mutation_class(D, args.cap)
    data = {
        "size": mc.size,
        "complete": mc.complete,
        "reason": mc.reason,
        "representatives": [io.diagram_to_json(R) for R in mc.representatives],
    }
    text = f"size: {mc.size}" + (f" ({mc.reason})" if not mc.complete else "")
    _emit(args, data, text)
    return 0


def cmd_growth(args: argparse.Namespace) -> int:
    D = io.diagram_from_json(_load(args.diagram))
    rep = growth_report(D, args.radius, args.cap)
    _emit(args, rep.to_json(), str(rep))
    return 0


def cmd_laurent(args: argparse.Namespace) -> int:
    B = io.matrix_from_json(_load(args.matrix))
    seq = parse_sequence(args.seq, B.n)
    cluster, flags = laurent_expand(B, seq, principal=args.principal)
    names = [f"x{i + 1}" for i in range(B.n)] + ([f"y{i + 1}" for i in range(B.n)] if args.principal else [])
    text = "\n".join(f"x{i + 1}' = {format_laurent(p, names)}" for i, p in enumerate(cluster))
    data = {"variables": names, "cluster": [p.to_json() for p in cluster], "positive": flags}
    _emit(args, data, text)
    return 0


def cmd_audit(args: argparse.Namespace) -> int:
    B = io.matrix_from_json(_load(args.matrix))
    both = not args.positivity and not args.sign_coherence
    data: dict = {"depth": args.depth}
    lines = []
    if args.positivity or both:
        rep = audit_positivity(B, args.depth)
        data["positivity"] = rep.to_json()
        lines.append(f"positive: {_bool(rep.positive)}")
        lines.append(f"  {rep.seeds} seeds, {rep.variables} cluster variables, depth {args.depth}")
        for seq, i in rep.violations:
            lines.append(f"  violation: x{i + 1} after " + ",".join(str(k + 1) for k in seq))
    if args.sign_coherence or both:
        rep2 = check_sign_coherence(B, args.depth)
        data["sign_coherence"] = rep2.to_json()
        lines.append(f"coherent: {_bool(rep2.coherent)}")
        lines.append(f"  {rep2.states} seeds, depth {args.depth}")
        for seq, j, v in rep2.violations:
            lines.append(f"  violation: c{j + 1}={list(v)} after " + ",".join(str(k + 1) for k in seq))
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_unfold(args: argparse.Namespace) -> int:
    B = io.matrix_from_json(_load(args.matrix))
    cand = unfold(B, args.mode)
    text = "\n".join(
        [
            "B: " + format_rows(cand.B.b),
            "C: " + format_rows(cand.C.b),
            "partition: " + " ".join("{" + ",".join(str(i + 1) for i in blk) + "}" for blk in cand.partition),
        ]
    )
    _emit(args, io.candidate_to_json(cand), text)
    return 0


def cmd_verify_unfolding(args: argparse.Namespace) -> int:
    cand = io.candidate_from_json(_load(args.candidate))
    verdict = verify_unfolding(cand, args.depth, args.samples, args.length, args.seed)
    _emit(args, verdict.to_json(), str(verdict))
    return 0 if verdict.verified else 1


# parser ---------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=_positive, default=1, help="accepted for compatibility; searches run in one thread")

    p = argparse.ArgumentParser(prog="mutorb", description="Cluster algebras from triangulated orbifolds.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, fn: Callable[[argparse.Namespace], int], help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("mutate", cmd_mutate, "mutate an exchange matrix along a sequence")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--seq", required=True)

    sp = add("diagram", cmd_diagram, "diagram of an exchange matrix")
    sp.add_argument("--matrix", required=True)

    sp = add("decompose", cmd_decompose, "block decomposition of a diagram")
    sp.add_argument("--diagram", required=True)

    sp = add("triangulate", cmd_triangulate, "orbifold and triangulation of a block decomposition")
    sp.add_argument("--decomposition", required=True)

    sp = add("flip", cmd_flip, "flip an arc of a triangulation")
    sp.add_argument("--triangulation", required=True)
    sp.add_argument("--arc", required=True)

    sp = add("class", cmd_class, "enumerate the mutation class of a diagram")
    sp.add_argument("--diagram", required=True)
    sp.add_argument("--cap", type=_positive, default=10**5)

    sp = add("growth", cmd_growth, "growth class of the exchange graph")
    sp.add_argument("--diagram", required=True)
    sp.add_argument("--radius", type=_positive, default=0, help="also report ball sizes up to this radius")
    sp.add_argument("--cap", type=_positive, default=10**5)

    sp = add("laurent", cmd_laurent, "cluster variables after a mutation sequence")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--seq", required=True)
    sp.add_argument("--principal", action="store_true", help="use principal coefficients")

    sp = add("audit", cmd_audit, "bounded positivity and sign-coherence checks")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--depth", type=_positive, default=6)
    sp.add_argument("--positivity", action="store_true")
    sp.add_argument("--sign-coherence", action="store_true")

    sp = add("unfold", cmd_unfold, "construct an unfolding of a skew-symmetrizable matrix")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--mode", choices=["auto", "local", "prime"], default="auto")

    sp = add("verify-unfolding", cmd_verify_unfolding, "bounded check of an unfolding candidate")
    sp.add_argument("--candidate", required=True)
    sp.add_argument("--depth", type=_positive, default=6)
    sp.add_argument("--samples", type=_positive, default=200)
    sp.add_argument("--length", type=_positive, default=20)
    sp.add_argument("--seed", type=int, default=0)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"mutorb {args.command}: error: {exc}\n")
        return 2
    except (MutorbError, KeyError, TypeError, ValueError) as exc:
        sys.stderr.write(f"mutorb {args.command}: {type(exc).__name__}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
