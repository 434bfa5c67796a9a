"""Command-line interface.

Every subcommand reads JSON (or PD text), validates all of its inputs
before computing, and writes deterministic JSON to stdout or ``-o``.

Exit codes: 0 success, 1 structural or parse error (including bad usage),
2 failed mathematical verification, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__, formats
from .algebra import (
    RingSpec,
    decompose_over_projection,
    product_quandle,
    search_hquandles,
    verify_hquandle,
    verify_quandle,
)
from .coloring import enumerate_hcolorings, enumerate_qcolorings, count_qcolorings, hcoloring_spectrum
from .cohomology import cohomology, is_cocycle
from .diagram import parse_pd, random_moves, validate
from .errors import HQuandleError, ParseError, StructuralError, VerificationError
from .homology import DEFAULT_CAP_COLUMNS, POSITIVE, STANDARD, boundary_matrix
from .invariant import full_invariant


class _Parser(argparse.ArgumentParser):
    """Argument parser that reports usage errors with exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


class _Context:
    def __init__(self, args):
        self.args = args
        self.cap = getattr(args, "cap_columns", None) or DEFAULT_CAP_COLUMNS
        self.verbose = bool(getattr(args, "verbose", False))

    def log(self, msg):
        if self.verbose:
            print(msg, file=sys.stderr)

    def emit(self, obj):
        formats.write_text(formats.dumps(obj), getattr(self.args, "output", None))


# ---------------------------------------------------------------------------
# validated loaders


def _load_quandle(path, ctx, what="quandle"):
    q = formats.quandle_from_json(formats.load_json(path))
    report = verify_quandle(q)
    if not report.valid:
        raise VerificationError(f"{what} {path} fails axiom(s) {sorted(report.axioms_failed())}",
                                witness=report.to_dict())
    ctx.log(f"{what}: {q.size} elements, valid")
    return q


def _load_hquandle(path, base, ctx):
    h = formats.hquandle_from_json(formats.load_json(path))
    if h.base_size != base.size:
        raise StructuralError(f"hierarchical quandle has base size {h.base_size}, base quandle has {base.size}")
    report = verify_hquandle(h, base)
    if not report.valid:
        raise VerificationError(f"hierarchical quandle {path} fails axiom(s) {sorted(report.axioms_failed())}",
                                witness=report.to_dict())
    ctx.log(f"hierarchical quandle: |Y| = {h.size}, valid")
    return h


def _load_diagram(path, ctx):
    d = formats.diagram_from_json(formats.load_json(path))
    report = validate(d)
    if not report.valid:
        raise StructuralError(f"diagram {path} is invalid: {report.to_dict()['violations'][:4]}")
    ctx.log(f"diagram: {d.arc_count} arcs, {len(d.crossings)} crossings, {d.component_count} components")
    return d


# ---------------------------------------------------------------------------
# subcommands


def cmd_check_quandle(ctx):
    q = formats.quandle_from_json(formats.load_json(ctx.args.file))
    report = verify_quandle(q)
    ctx.emit(report.to_dict())
    return 0 if report.valid else 2


def cmd_check_hquandle(ctx):
    base = _load_quandle(ctx.args.quandle, ctx, "base quandle")
    h = formats.hquandle_from_json(formats.load_json(ctx.args.file))
    if h.base_size != base.size:
        raise StructuralError(f"hierarchical quandle has base size {h.base_size}, base quandle has {base.size}")
    report = verify_hquandle(h, base)
    ctx.emit(report.to_dict())
    return 0 if report.valid else 2


def cmd_parse_pd(ctx):
    a = ctx.args
    if a.file is None or a.file == "-":
        text = sys.stdin.read() if a.file == "-" else ""
    else:
        try:
            with open(a.file) as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {a.file}: {exc.strerror}") from None
    d = parse_pd(text, unknots=a.unknots)
    ctx.log(f"parsed {d.arc_count} arcs, {len(d.crossings)} crossings")
    ctx.emit(formats.diagram_to_json(d))
    return 0


def cmd_moves(ctx):
    a = ctx.args
    d = _load_diagram(a.diagram, ctx)
    if a.r1 < 0 or a.r2 < 0:
        raise StructuralError("move counts must be non-negative")
    out = random_moves(d, r1=a.r1, r2=a.r2, seed=a.seed)
    ctx.log(f"result: {out.arc_count} arcs, {len(out.crossings)} crossings")
    ctx.emit(formats.diagram_to_json(out))
    return 0


def cmd_colorings(ctx):
    a = ctx.args
    d = _load_diagram(a.diagram, ctx)
    q = _load_quandle(a.quandle, ctx)
    if a.count_only:
        ctx.emit({"count": count_qcolorings(d, q)})
    else:
        cols = enumerate_qcolorings(d, q)
        ctx.emit({"count": len(cols), "colorings": [list(c) for c in cols]})
    return 0


def cmd_hcolorings(ctx):
    a = ctx.args
    d = _load_diagram(a.diagram, ctx)
    q = _load_quandle(a.quandle, ctx)
    h = _load_hquandle(a.hquandle, q, ctx)
    bases = enumerate_qcolorings(d, q)
    if a.base_index is not None:
        if not 0 <= a.base_index < len(bases):
            raise StructuralError(f"base index {a.base_index} out of range; there are {len(bases)} base colourings")
        picks = [a.base_index]
    else:
        picks = range(len(bases))
    per = []
    for k in picks:
        cols = enumerate_hcolorings(d, bases[k], q, h)
        per.append({"base_index": k, "base": list(bases[k]), "count": len(cols),
                    "colorings": [list(c) for c in cols]})
    ctx.emit(per[0] if a.base_index is not None else {"per_base": per})
    return 0


def cmd_spectrum(ctx):
    a = ctx.args
    d = _load_diagram(a.diagram, ctx)
    q = _load_quandle(a.quandle, ctx)
    h = _load_hquandle(a.hquandle, q, ctx)
    ctx.emit({"spectrum": hcoloring_spectrum(d, q, h).to_dict()})
    return 0


def cmd_homology_matrix(ctx):
    a = ctx.args
    q = _load_quandle(a.quandle, ctx)
    h = _load_hquandle(a.hquandle, q, ctx)
    bm = boundary_matrix(q, h, a.degree, POSITIVE if a.positive else STANDARD, cap=ctx.cap)
    ctx.log(f"matrix {bm.shape[0]} x {bm.shape[1]}, {bm.matrix.nnz} nonzeros")
    ctx.emit(formats.matrix_to_json(bm))
    return 0


def cmd_cohomology(ctx):
    a = ctx.args
    q = _load_quandle(a.quandle, ctx)
    h = _load_hquandle(a.hquandle, q, ctx)
    ring = RingSpec.parse(a.ring)
    res = cohomology(q, h, a.degree, ring, method=a.method, cap=ctx.cap)
    ctx.emit(res.to_dict(representatives=a.representatives))
    return 0


def cmd_invariant(ctx):
    a = ctx.args
    d = _load_diagram(a.diagram, ctx)
    q = _load_quandle(a.quandle, ctx)
    h = _load_hquandle(a.hquandle, q, ctx)
    omega = formats.cochain_from_json(formats.load_json(a.cocycle))
    if omega.degree != 2:
        raise StructuralError(f"cocycle must have degree 2, got {omega.degree}")
    formats.check_cochain_domain(omega, q.size, h.size)
    if not is_cocycle(omega, q, h, cap=ctx.cap):
        raise VerificationError(f"{a.cocycle} is not a 2-cocycle")
    ctx.emit(full_invariant(omega, d, q, h).to_dict(flatten=a.flatten))
    return 0


def cmd_product(ctx):
    a = ctx.args
    q = _load_quandle(a.quandle, ctx)
    h = _load_hquandle(a.hquandle, q, ctx)
    ctx.emit(formats.quandle_to_json(product_quandle(q, h)))
    return 0


def cmd_decompose(ctx):
    a = ctx.args
    q = _load_quandle(a.file, ctx)
    if a.base_size * a.y_size != q.size:
        raise StructuralError(f"{a.base_size} x {a.y_size} does not match quandle size {q.size}")
    base, h = decompose_over_projection(q, a.base_size, a.y_size)
    ctx.emit({"quandle": formats.quandle_to_json(base), "hquandle": formats.hquandle_to_json(h)})
    return 0


def cmd_search_hquandles(ctx):
    a = ctx.args
    base = _load_quandle(a.quandle, ctx, "base quandle")
    fixed = None
    if a.fix_diagonal:
        yq = _load_quandle(a.fix_diagonal, ctx, "diagonal quandle")
        if yq.size != a.y_size:
            raise StructuralError(f"diagonal quandle has {yq.size} elements, expected {a.y_size}")
        fixed = {(x, x): yq.table for x in range(base.size)}
    found = [formats.hquandle_to_json(h) for h in search_hquandles(base, a.y_size, limit=a.limit, fixed=fixed)]
    ctx.log(f"found {len(found)} hierarchical quandles")
    ctx.emit({"count": len(found), "hquandles": found})
    return 0


# ---------------------------------------------------------------------------
# parser


def _common(p, top=False):
    default = None if top else argparse.SUPPRESS
    p.add_argument("--cap-columns", type=int, default=default, metavar="N",
                   help=f"column cap for chain bases (default {DEFAULT_CAP_COLUMNS})")
    p.add_argument("--verbose", action="store_true", default=False if top else argparse.SUPPRESS,
                   help="print a short summary to stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hquandle", description="Hierarchical quandles, colourings and cocycle invariants.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _common(parser, top=True)
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.set_defaults(func=func)
        _common(p)
        p.add_argument("-o", "--output", help="write JSON here instead of stdout")
        return p

    p = add("check-quandle", cmd_check_quandle, "verify the quandle axioms")
    p.add_argument("file")

    p = add("check-hquandle", cmd_check_hquandle, "verify the hierarchical axioms over a base quandle")
    p.add_argument("file")
    p.add_argument("--quandle", required=True, help="base quandle JSON")

    p = add("parse-pd", cmd_parse_pd, "convert PD text to diagram JSON")
    p.add_argument("file", nargs="?", help="PD text file ('-' for stdin; omit for the empty diagram)")
    p.add_argument("--unknots", type=int, default=0, help="append N crossing-free components")

    p = add("moves", cmd_moves, "apply seeded random R1/R2 moves")
    p.add_argument("diagram")
    p.add_argument("--r1", type=int, default=0)
    p.add_argument("--r2", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)

    p = add("colorings", cmd_colorings, "enumerate quandle colourings")
    p.add_argument("diagram")
    p.add_argument("--quandle", required=True)
    p.add_argument("--count-only", action="store_true")

    p = add("hcolorings", cmd_hcolorings, "enumerate hierarchical colourings")
    p.add_argument("diagram")
    p.add_argument("--quandle", required=True)
    p.add_argument("--hquandle", required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--base-index", type=int, help="only above the k-th base colouring")
    g.add_argument("--all", action="store_true", help="above every base colouring (default)")

    p = add("spectrum", cmd_spectrum, "multiset of hierarchical colouring counts")
    p.add_argument("diagram")
    p.add_argument("--quandle", required=True)
    p.add_argument("--hquandle", required=True)

    p = add("homology-matrix", cmd_homology_matrix, "sparse boundary matrix in one degree")
    p.add_argument("--quandle", required=True)
    p.add_argument("--hquandle", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--positive", action="store_true", help="use l + r instead of l - r")

    p = add("cohomology", cmd_cohomology, "cohomology of the normalized cochain complex")
    p.add_argument("--quandle", required=True)
    p.add_argument("--hquandle", required=True)
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--ring", default="z", help="z or zm:<m>")
    p.add_argument("--method", choices=("snf", "modp"), help="default: modp for prime m, else snf")
    p.add_argument("--representatives", action="store_true")

    p = add("invariant", cmd_invariant, "cocycle invariant of a diagram")
    p.add_argument("diagram")
    p.add_argument("--quandle", required=True)
    p.add_argument("--hquandle", required=True)
    p.add_argument("--cocycle", required=True)
    p.add_argument("--flatten", action="store_true", help="emit only the flattened multiset")

    p = add("product", cmd_product, "product quandle on pairs (x, y) encoded as x*|Y| + y")
    p.add_argument("--quandle", required=True)
    p.add_argument("--hquandle", required=True)

    p = add("decompose", cmd_decompose, "split a quandle over its first-coordinate projection")
    p.add_argument("file")
    p.add_argument("--base-size", type=int, required=True)
    p.add_argument("--y-size", type=int, required=True)

    p = add("search-hquandles", cmd_search_hquandles, "brute-force search for hierarchical quandles")
    p.add_argument("--quandle", required=True, help="base quandle JSON")
    p.add_argument("--y-size", type=int, required=True)
    p.add_argument("--limit", type=int)
    p.add_argument("--fix-diagonal", metavar="Q.json", help="pin every diagonal table to this quandle")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    ctx = _Context(args)
    try:
        return args.func(ctx)
    except HQuandleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        witness = getattr(exc, "witness", None)
        if witness is not None:
            print(f"witness: {witness}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
