"""The truncation verification sweep.

One entry point runs every applicable check of an artifact (tree or
decomposition) against its host expression over a (d, w) grid: spanning
or coverage, acyclicity, connectivity, normality where claimed, the
reflects check against the ends the artifact claims to realise, and the
decomposition axioms.  The result is a per-cell matrix plus a verdict.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .ends import EndSubset, all_ends, reflects_check
from .expressions import GraphExpr
from .trees import TreeDescriptor, check_normality_on, check_tree_on
from .truncation import truncate

HARD_CAP = 8


def sweep_grid(d_max: int, w_max: int, min_d: int = 1,
               min_w: int = 1) -> List[Tuple[int, int]]:
    cap = int(os.environ.get("GRAPHRANK_MAX_SWEEP", HARD_CAP))
    d_max = min(d_max, cap)
    w_max = min(w_max, cap)
    return [(d, w) for d in range(max(1, min_d), d_max + 1)
            for w in range(max(1, min_w), w_max + 1)]


@dataclass
class SweepReport:
    matrix: Dict[str, Dict[str, bool]] = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)

    def record(self, cell: str, check: str, ok: bool, detail: str = ""):
        self.matrix.setdefault(cell, {})[check] = ok
        if not ok:
            self.failures.append(f"{cell} {check}: {detail}")

    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "kind": "verification",
            "pass": self.passed(),
            "matrix": {cell: dict(sorted(checks.items()))
                       for cell, checks in sorted(self.matrix.items())},
            "failures": list(self.failures),
        }


def verify_tree(e: GraphExpr, tree: TreeDescriptor, d_max: int = 4,
                w_max: int = 4, normality: bool = False,
                psi: Optional[EndSubset] = None,
                expect_rayless: Optional[bool] = None) -> SweepReport:
    report = SweepReport()
    grid = sweep_grid(d_max, w_max, tree.min_d, tree.min_w)
    for d, w in grid:
        cell = f"d={d},w={w}"
        t = truncate(e, d, w)
        basic = check_tree_on(tree, t)
        for name, ok in basic.checks.items():
            report.record(cell, name, ok, "; ".join(basic.details[:2]))
        if normality:
            norm = check_normality_on(tree, t)
            for name, ok in norm.checks.items():
                report.record(cell, f"normal_{name}", ok,
                              "; ".join(norm.details[:2]))
    if psi is not None:
        ref = reflects_check(e, tree, psi,
                             sweep=[g for g in grid if g[0] >= 2])
        report.record("symbolic", "reflects", ref.verdict == "Pass",
                      ref.witness)
    if expect_rayless is not None:
        got = tree.is_rayless() == "Yes"
        report.record("symbolic", "rayless", got == expect_rayless,
                      f"is_rayless = {tree.is_rayless()}")
    return report


def verify_decomposition_artifact(e: GraphExpr, td, d_max: int = 4,
                                  w_max: int = 3) -> SweepReport:
    from .decompositions import verify_decomposition
    report = SweepReport()
    grid = sweep_grid(d_max, w_max)
    check = verify_decomposition(e, td, sweep=grid)
    for cell, checks in check.cells.items():
        for name, ok in checks.items():
            detail = next((f for f in check.failures if f.startswith(cell)), "")
            report.record(cell, name, ok, detail)
    for f in check.failures:
        if not any(f.startswith(c) for c in check.cells):
            report.failures.append(f)
    return report
