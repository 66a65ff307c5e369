"""Regenerate fixtures/ from hand-written codes and the KnotInfo tables.

Table codes come from the `database_knotinfo` package (KnotInfo PD
notation); determinant and signature from the same record are stored as
metadata so tests can compare against them.  Run from the repository root.
"""

from __future__ import annotations

import ast
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from kfloer.diagram import parse_diagram, pd_text  # noqa: E402
from kfloer.medial import e8_diagram  # noqa: E402
from kfloer.pdfile import write_pd_file  # noqa: E402

OUT = ROOT / "fixtures"

HAND = {
    "trefoil": dict(
        code="X(4,2,5,1) X(6,4,1,3) X(2,6,3,5)",
        name="right-handed trefoil",
        source="hand-written; all three crossings positive, signature -2",
    ),
    "fig4-unknot": dict(
        code="X(4,1,5,2) X(5,1,6,8) X(7,2,8,3) X(3,6,4,7)",
        name="four-crossing unknot (figure-eight with one crossing switched)",
        source="found by search for the published black Goeritz matrix [[1,-2],[-2,3]] and coloring matrix",
        coloring="unbounded_white",
        mark_label=1,
        mark_crossing=1,
    ),
    "switched-trefoil": dict(
        code="X(1,4,2,5) X(6,4,1,3) X(2,6,3,5)",
        name="trefoil with crossing 0 switched (unknot)",
        source="hand-written from the trefoil fixture",
        mark_label=1,
    ),
    "trefoil-kink": dict(
        code="X(4,2,5,1) X(8,4,1,3) X(2,6,3,5) X(6,8,7,7)",
        name="trefoil with a nugatory kink on edge 6",
        source="hand-written; the kink loop is an unmarked white face",
        coloring="unbounded_white",
    ),
    "hopf": dict(
        code="X(4,1,3,2) X(2,3,1,4)",
        name="Hopf link",
        source="hand-written two-crossing link",
    ),
}

TABLE = ["4_1", "9_47", "9_49", "10_153"]


def knotinfo() -> dict:
    from database_knotinfo import link_list

    return {r["name"]: r for r in link_list() if str(r.get("pd_notation", "")).startswith("[")}


def code_of(rec) -> str:
    return " ".join("X(" + ",".join(map(str, t)) + ")" for t in ast.literal_eval(rec["pd_notation"]))


def main() -> None:
    OUT.mkdir(exist_ok=True)
    (OUT / "alternating").mkdir(exist_ok=True)
    for name, spec in HAND.items():
        spec = dict(spec)
        code = spec.pop("code")
        parse_diagram(code)
        write_pd_file(OUT / f"{name}.pd", code, **spec)
    e8 = e8_diagram()
    write_pd_file(
        OUT / "t35-e8.pd",
        pd_text(e8),
        name="torus knot T(3,5); branched double cover the Poincare sphere",
        source="medial diagram of the E8 plumbing graph (kfloer.medial.e8_graph), mirrored and recolored",
        coloring=e8.convention,
        mark_label=e8.marked_label,
        mark_crossing=e8.marked_crossing,
    )
    recs = knotinfo()
    for name in TABLE:
        r = recs[name]
        write_pd_file(
            OUT / f"{name}.pd", code_of(r), name=name, source="KnotInfo PD notation",
            determinant=r["determinant"], signature=r["signature"],
            quasi_alternating=r.get("quasi_alternating", ""),
        )
    for name, r in recs.items():
        n = int(r["crossing_number"])
        if 3 <= n <= 8 and r["alternating"] == "Y":
            write_pd_file(
                OUT / "alternating" / f"{name}.pd", code_of(r), name=name, source="KnotInfo PD notation",
                determinant=r["determinant"], signature=r["signature"],
            )


if __name__ == "__main__":
    main()
