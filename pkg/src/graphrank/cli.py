"""The graphrank command line.

    graphrank analyze [--format json|text] INPUT
    graphrank build {nst,efst,rayless,tdecomp} [--out PATH] INPUT
    graphrank verify --artifact PATH [--d N] [--w N] INPUT
    graphrank export [--d N] [--w N] [--format dot|json] [--overlay ART] INPUT

INPUT is a DSL text file (or '-' reads a literal expression argument).
Exit codes: 0 success, 2 parse error, 3 internal invariant violation,
4 construction unavailable, 5 artifact mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .artifacts import ArtifactError, decomposition_from_json, tree_from_json
from .decompositions import rank_to_decomposition
from .ends import all_ends
from .expressions import GraphExpr
from .ideals import normally_spanned
from .parser import ParseError, parse
from .ranks import RankInputError, normal_rank
from .reports import analyze_report, render_text
from .spanning import (
    ConstructionError, end_faithful_spanning_tree, normal_spanning_tree,
    rayless_spanning_tree,
)
from .truncation import to_dot, to_json_doc, truncate
from .trees import instantiate
from .verify import verify_decomposition_artifact, verify_tree

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INTERNAL = 3
EXIT_UNAVAILABLE = 4
EXIT_MISMATCH = 5

HARD_CAP = 8


@dataclass(frozen=True)
class RunConfig:
    input: str
    command: str
    d_max: int = 4
    w_max: int = 4
    ordinal_depth: int = 8
    format: str = "json"
    out: str | None = None
    deterministic: bool = True  # reserved; runs are always seedless

    def __post_init__(self):
        if self.d_max < 1 or self.w_max < 1:
            raise ValueError("sweep bounds must be >= 1")
        if self.d_max > HARD_CAP or self.w_max > HARD_CAP:
            raise ValueError(f"sweep bounds capped at {HARD_CAP}")


def _config(args) -> RunConfig:
    cfg = RunConfig(
        input=args.input,
        command=args.command,
        d_max=min(getattr(args, "d", 4), HARD_CAP),
        w_max=min(getattr(args, "w", 4), HARD_CAP),
        ordinal_depth=getattr(args, "ordinal_depth", 8),
        format=getattr(args, "format", "json"),
        out=getattr(args, "out", None),
    )
    from .ordinals import set_depth_limit
    set_depth_limit(cfg.ordinal_depth)
    return cfg


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_expr(spec: str) -> GraphExpr:
    path = Path(spec)
    if path.exists():
        return parse(path.read_text())
    return parse(spec)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="graphrank", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="ends, cardinality and all ranks")
    p_an.add_argument("--format", choices=("json", "text"), default="json")
    p_an.add_argument("--ordinal-depth", type=int, default=8,
                      dest="ordinal_depth")
    p_an.add_argument("--out")
    p_an.add_argument("input")

    p_b = sub.add_parser("build", help="construct a tree or decomposition")
    p_b.add_argument("target", choices=("nst", "efst", "rayless", "tdecomp"))
    p_b.add_argument("--out")
    p_b.add_argument("input")

    p_v = sub.add_parser("verify", help="run the truncation sweep on an artifact")
    p_v.add_argument("--artifact", required=True)
    p_v.add_argument("--d", type=int, default=4)
    p_v.add_argument("--w", type=int, default=4)
    p_v.add_argument("--out")
    p_v.add_argument("input")

    p_e = sub.add_parser("export", help="export a truncation to DOT or JSON")
    p_e.add_argument("--d", type=int, default=4)
    p_e.add_argument("--w", type=int, default=2)
    p_e.add_argument("--format", choices=("dot", "json"), default="dot")
    p_e.add_argument("--overlay", help="tree artifact whose edges to highlight")
    p_e.add_argument("--out")
    p_e.add_argument("input")

    args = ap.parse_args(argv)
    try:
        _config(args)
        expr = _load_expr(args.input)
    except (ParseError, OSError, ValueError) as exc:
        sys.stderr.write(f"graphrank: parse error: {exc}\n")
        return EXIT_PARSE

    try:
        if args.command == "analyze":
            return _cmd_analyze(expr, args)
        if args.command == "build":
            return _cmd_build(expr, args)
        if args.command == "verify":
            return _cmd_verify(expr, args)
        if args.command == "export":
            return _cmd_export(expr, args)
    except (ArtifactError,) as exc:
        sys.stderr.write(f"graphrank: artifact mismatch: {exc}\n")
        return EXIT_MISMATCH
    except (ConstructionError, RankInputError) as exc:
        sys.stderr.write(f"graphrank: unavailable: {exc}\n")
        return EXIT_UNAVAILABLE
    except Exception as exc:  # invariant violation
        sys.stderr.write(f"graphrank: internal error: {exc}\n")
        return EXIT_INTERNAL
    return EXIT_INTERNAL


def _cmd_analyze(expr: GraphExpr, args) -> int:
    report = analyze_report(expr, source=args.input)
    text = _dump(report) if args.format == "json" else render_text(report)
    _emit(text, args.out)
    return EXIT_OK


def _cmd_build(expr: GraphExpr, args) -> int:
    if args.target == "nst":
        res = normal_spanning_tree(expr)
        if res.status != "Tree":
            _emit(_dump({"schema": 1, "kind": "tree", "status": res.status,
                         "reason": res.reason}), args.out)
            return EXIT_UNAVAILABLE
        _emit(_dump(res.tree.to_json()), args.out)
        return EXIT_OK
    if args.target == "efst":
        tree = end_faithful_spanning_tree(expr)
        _emit(_dump(tree.to_json()), args.out)
        return EXIT_OK
    if args.target == "rayless":
        res = rayless_spanning_tree(expr)
        if res.status != "Tree":
            _emit(_dump({"schema": 1, "kind": "tree", "status": res.status,
                         "undominated_end": res.undominated,
                         "reason": res.reason}), args.out)
            return EXIT_UNAVAILABLE
        _emit(_dump(res.tree.to_json()), args.out)
        return EXIT_OK
    if args.target == "tdecomp":
        r = normal_rank(expr)
        if not r.is_ranked():
            _emit(_dump({"schema": 1, "kind": "tree_decomposition",
                         "status": r.status,
                         "detail": r.to_json()}), args.out)
            return EXIT_UNAVAILABLE
        td = rank_to_decomposition(expr, r.witness, normally_spanned(expr))
        _emit(_dump(td.to_json()), args.out)
        return EXIT_OK
    return EXIT_INTERNAL


def _cmd_verify(expr: GraphExpr, args) -> int:
    doc = json.loads(Path(args.artifact).read_text())
    kind = doc.get("kind")
    if kind == "tree":
        tree = tree_from_json(doc)
        if tree.host.render() != expr.render():
            raise ArtifactError(
                f"artifact host {tree.host.render()!r} is not the input graph")
        psi = all_ends(expr) if tree.covers is None and tree.ends_summary \
            else None
        expect_rayless = True if doc.get("rayless") == "Yes" else None
        report = verify_tree(expr, tree, d_max=args.d, w_max=args.w, psi=psi,
                             expect_rayless=expect_rayless)
    elif kind == "tree_decomposition":
        td = decomposition_from_json(doc)
        if td.host.render() != expr.render():
            raise ArtifactError(
                f"artifact host {td.host.render()!r} is not the input graph")
        report = verify_decomposition_artifact(expr, td, d_max=args.d,
                                               w_max=min(args.w, 3))
    else:
        raise ArtifactError(f"unknown artifact kind {kind!r}")
    _emit(_dump(report.to_json()), args.out)
    return EXIT_OK if report.passed() else 1


def _cmd_export(expr: GraphExpr, args) -> int:
    t = truncate(expr, args.d, args.w)
    if args.format == "json":
        _emit(_dump(to_json_doc(t)), args.out)
        return EXIT_OK
    tree_edges = None
    if args.overlay:
        doc = json.loads(Path(args.overlay).read_text())
        tree = tree_from_json(doc)
        if tree.host.render() != expr.render():
            raise ArtifactError("overlay host is not the input graph")
        inst = instantiate(tree, t)
        tree_edges = list(inst.parent.items())
    _emit(to_dot(t, tree_edges=tree_edges), args.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
