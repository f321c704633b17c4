"""Analysis reports: connectivity, cardinality, ends and all three ranks."""

from __future__ import annotations

from typing import Optional

from .cardinality import ALEPH1
from .connectivity import is_connected
from .ends import end_space
from .expressions import GraphExpr, is_rayless_expr, vertices_card
from .ranks import (
    RankResult, RaylessInputError, kappa_rank, normal_rank, schmidt_rank,
)


def rank_json(r: RankResult) -> dict:
    return r.to_json()


def analyze_report(e: GraphExpr, source: str = "") -> dict:
    conn = is_connected(e)
    report = {
        "schema": 1,
        "kind": "analyze",
        "input": source,
        "expr": e.render(),
        "connected": conn,
        "vertices": str(vertices_card(e)),
        "rayless": is_rayless_expr(e),
    }
    if conn == "Yes":
        report["ends"] = end_space(e).to_json()
        report["normal_rank"] = rank_json(normal_rank(e))
    else:
        report["ends"] = None
        report["normal_rank"] = {"status": "Unknown",
                                 "reason": f"connectivity is {conn}"}
    try:
        report["aleph0_rank"] = rank_json(schmidt_rank(e))
    except RaylessInputError as exc:
        report["aleph0_rank"] = {"status": "Undefined", "reason": str(exc)}
    report["aleph1_rank"] = rank_json(kappa_rank(e, ALEPH1))
    return report


def render_text(report: dict) -> str:
    lines = [f"graph: {report['expr']}"]
    lines.append(f"connected: {report['connected']}"
                 f"   vertices: {report['vertices']}"
                 f"   rayless: {report['rayless']}")
    ends = report.get("ends")
    if ends is None:
        lines.append("ends: (not analysed)")
    elif not ends["classes"]:
        lines.append("ends: none")
    else:
        for c in ends["classes"]:
            dom = c["dominated"]
            extra = f" by {c['dominator']}" if c["dominator"] else ""
            lines.append(
                f"end class {c['id']}: count {c['count']}, "
                f"dominated {dom}{extra}")
    for key, label in (("normal_rank", "normal rank"),
                       ("aleph0_rank", "aleph0 rank"),
                       ("aleph1_rank", "aleph1 rank")):
        r = report[key]
        if r["status"] == "Ranked":
            lines.append(f"{label}: {r['rank']}")
        elif r["status"] == "NoRank":
            lines.append(f"{label}: none ({r['certificate']['kind']})")
        else:
            lines.append(f"{label}: {r['status'].lower()} ({r.get('reason','')})")
    return "\n".join(lines) + "\n"
