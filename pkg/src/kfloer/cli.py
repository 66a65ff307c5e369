"""The `kf` command: diagram in, invariants, states, gradings, domains and correction terms out."""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass, field, replace

from . import exact_linalg as la
from .diagram import COLORINGS, UNBOUNDED_BLACK, UNBOUNDED_WHITE, parse_diagram, with_marks
from .errors import ConventionError, InconsistentHints, KFError, MalformedCode
from .floer.arrows import arrows, classify_domain, delta_conjecture_check, e1_page, is_union_of_chains
from .floer.dinv import HFReport, Hints, d_invariants_definite, deduce_corrections, merge_reports, render_report
from .floer.domains import domain
from .floer.model import FloerModel
from .pdfile import read_pd_file
from .tait import classical_invariants, group_presentations

EXIT_OK, EXIT_INPUT, EXIT_CONVENTION = 0, 2, 3
COLORING_ALIASES = {"white": UNBOUNDED_WHITE, "black": UNBOUNDED_BLACK, **{c: c for c in COLORINGS}}


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    code: str | None = None
    mark_label: int | None = None
    mark_crossing: int | None = None
    coloring: str | None = None
    format: str = "text"
    options: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, doc: dict) -> "RunConfig":
        names = {f.name for f in dataclasses.fields(cls)}
        return cls(**{k: v for k, v in doc.items() if k in names})


def load_diagram(cfg: RunConfig):
    coloring = COLORING_ALIASES.get(cfg.coloring, cfg.coloring) if cfg.coloring else None
    if cfg.code:
        return parse_diagram(cfg.code, mark_label=cfg.mark_label, mark_crossing=cfg.mark_crossing,
                             coloring=coloring or UNBOUNDED_WHITE)
    if not cfg.input:
        raise MalformedCode("no input file or --code given")
    return read_pd_file(cfg.input).diagram(cfg.mark_label, cfg.mark_crossing, coloring)


def _fr(x) -> str:
    return str(x)


def marking_sweep(d, hints: Hints | None = None, spin_fill: bool = True) -> tuple[HFReport, list[int]]:
    """Deduce under every marked label on the boundary of the marked white region and merge.

    Keeping the marked white region fixed keeps the white Goeritz matrix, so
    spin^c labels agree across the runs.  For odd order the spin structure is
    the unique self-conjugate class under any presentation, so when it is
    still unknown the remaining labels are tried for it alone (``spin_fill``).
    Returns the merged report and the labels tried.
    """
    def run(lab):
        dm = d if lab == d.marked_label else with_marks(d, lab, None)
        return deduce_corrections(FloerModel(dm), hints)

    labels = sorted(set(d.faces[d.root_white].labels))
    merged = merge_reports([run(lab) for lab in labels])
    if not spin_fill or merged.order % 2 == 0 or merged.complete:
        return merged, labels
    spin = [i for i, e in enumerate(merged.entries) if e.conjugate == e.index]
    i = spin[0]
    if merged.entries[i].d is not None:
        return merged, labels
    found = None
    for lab in sorted(set(d.heads) - set(labels)):
        labels.append(lab)
        e = next(x for x in run(lab).entries if x.conjugate == x.index)
        if e.d is None:
            continue
        if found is not None and found.d != e.d:
            raise InconsistentHints(f"spin class: markings disagree ({found.d} vs {e.d})")
        found = found or e
    if found is None:
        return merged, labels
    entries = list(merged.entries)
    entries[i] = replace(entries[i], d=found.d, provenance=found.provenance)
    note = "spin class value taken from marks outside the marked white region"
    return replace(merged, entries=tuple(entries), notes=merged.notes + (note,)), labels


# --- subcommands: each returns (json-able result, text) ---------------------------


def cmd_invariants(model, opts):
    d = model.d
    inv = classical_invariants(model.tp, d)
    pres = group_presentations(model.tp)
    ab = la.smith_form(pres.exponent_matrix()).nontrivial if pres.relators else ()
    res = {
        **inv.to_dict(),
        "crossings": d.n,
        "mu": list(d.mu),
        "g_black": model.g_black,
        "g_white": model.g_white,
        "coloring_matrix": model.coloring_matrix,
        "relators": list(pres.relator_strings()),
        "abelianization": list(ab),
    }
    snf = "(" + ", ".join(map(str, inv.smith_factors)) + ")" if inv.smith_factors else "trivial"
    text = "\n".join([
        f"crossings {d.n}",
        f"det {inv.determinant}",
        f"signature {inv.gl_signature}",
        f"spanning trees {inv.spanning_tree_count}",
        f"H1 {snf}",
        f"G_B {model.g_black}",
        f"G_W {model.g_white}",
        f"A {model.coloring_matrix}",
        "pi1 relators " + ("; ".join(pres.relator_strings()) or "none"),
    ])
    return res, text


def cmd_states(model, opts):
    states = model.states
    solitary = {sid for pc in model.psi_classes if pc.solitary for sid in pc.members}
    if opts.get("solitary_only"):
        states = [x for x in states if x.sid in solitary]
    if opts.get("count"):
        return {"count": len(states)}, str(len(states))
    rows = []
    for x in states:
        row = x.to_dict()
        row["solitary"] = x.sid in solitary
        rows.append(row)
    text = "\n".join(
        f"{x['id']}: corners {x['assignment']} xi {x['xi']} psi {x['psi']}" + (" solitary" if x["solitary"] else "")
        for x in rows
    )
    return {"states": rows}, text


def cmd_gradings(model, opts):
    gens = model.generators
    rows = [g.to_dict() for g in gens]
    text = "\n".join(f"{g.sid}: gr {g.grading} spinc {g.spinc} delta {g.delta}" for g in gens)
    return {"generators": rows}, text


def cmd_domains(model, opts):
    i, j = opts["pair"]
    if not (0 <= i < len(model.states) and 0 <= j < len(model.states)):
        raise MalformedCode(f"state ids must lie in 0..{len(model.states) - 1}")
    dom = domain(model, model.states[i], model.states[j])
    res = dom.to_dict()
    res["integral"] = dom.is_integral
    lines = [
        "arcs  " + " ".join(map(_fr, dom.arc_coeffs)),
        "black " + " ".join(map(_fr, dom.black_coeffs)),
        "white " + " ".join(map(_fr, dom.white_coeffs)),
    ]
    if dom.is_integral:
        shape = classify_domain(dom, model)
        res["shape"] = shape.to_dict()
        lines.append(f"punctured polygon {shape.is_punctured_polygon} arborescent {shape.is_arborescent}")
    return res, "\n".join(lines)


def cmd_arrows(model, opts):
    arrs = arrows(model)
    res = {"arrows": [a.to_dict() for a in arrs], "linear_chains": is_union_of_chains(arrs)}
    text = "\n".join(f"{a.source} -> {a.target} max {a.max_coefficient} delta gap {a.delta_gap}" for a in arrs)
    return res, text or "no arrows"


def cmd_e1(model, opts):
    page = e1_page(model)
    res = {"classes": {str(k): [str(g) for g in v] for k, v in page.items()}, "rank": sum(map(len, page.values()))}
    text = "\n".join(f"spinc {k}: " + " ".join(map(str, v)) for k, v in page.items())
    return res, text + f"\nrank {res['rank']}"


def cmd_check_delta(model, opts):
    rep = delta_conjecture_check(arrows(model))
    text = "consistent" if rep.consistent else "\n".join(
        f"{a.source} -> {a.target} delta gap {a.delta_gap}" for a in rep.violations
    )
    return rep.to_dict(), text


def cmd_dinv(model, opts):
    hints = Hints(lspace=bool(opts.get("hint_lspace")))
    tried = None
    if opts.get("definite"):
        rep = d_invariants_definite(model)
    elif opts.get("try_markings"):
        rep, tried = marking_sweep(model.d, hints)
    else:
        rep = deduce_corrections(model, hints)
    res = rep.to_dict()
    if tried is not None:
        res["markings"] = tried
    return res, render_report(rep, ascii_=bool(opts.get("ascii")))


COMMANDS = {
    "invariants": cmd_invariants,
    "states": cmd_states,
    "gradings": cmd_gradings,
    "domains": cmd_domains,
    "arrows": cmd_arrows,
    "e1": cmd_e1,
    "check-delta": cmd_check_delta,
    "dinv": cmd_dinv,
}


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute one configuration; returns (exit status, output text)."""
    try:
        if cfg.command not in COMMANDS:
            raise MalformedCode(f"unknown command {cfg.command!r}")
        model = FloerModel(load_diagram(cfg))
        res, text = COMMANDS[cfg.command](model, cfg.options)
    except KFError as e:
        status = EXIT_CONVENTION if isinstance(e, ConventionError) else EXIT_INPUT
        err = {"error": type(e).__name__, "kind": "convention" if status == EXIT_CONVENTION else "input", "message": str(e)}
        if cfg.format == "json":
            return status, json.dumps({"config": cfg.to_dict(), **err}, indent=2, sort_keys=True)
        return status, f"error: {err['error']}: {err['message']}"
    if cfg.format == "json":
        return EXIT_OK, json.dumps({"config": cfg.to_dict(), "result": res}, indent=2, sort_keys=True)
    return EXIT_OK, text


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kf", description="Kauffman-state Heegaard Floer data of branched double covers.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("input", nargs="?", help="PD file (tuples plus optional '# key: value' directives)")
        sp.add_argument("--code", help="inline PD code instead of a file")
        sp.add_argument("--mark-label", "--mark-arc", dest="mark_label", type=int, help="edge label carrying the marked point")
        sp.add_argument("--mark-crossing", type=int, help="marked crossing (index into the code)")
        sp.add_argument("--coloring", choices=sorted(COLORING_ALIASES), help="which face colour is unbounded")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        return sp

    common(sub.add_parser("invariants", help="determinant, signature, Goeritz and coloring matrices, pi_1"))
    sp = common(sub.add_parser("states", help="Kauffman states"))
    sp.add_argument("--count", action="store_true")
    sp.add_argument("--solitary-only", action="store_true")
    common(sub.add_parser("gradings", help="absolute grading, spin^c class and delta of every state"))
    sp = common(sub.add_parser("domains", help="domain connecting two states"))
    sp.add_argument("--pair", nargs=2, type=int, required=True, metavar=("I", "J"))
    common(sub.add_parser("arrows", help="index-one non-negative domains"))
    common(sub.add_parser("e1", help="solitary generators per spin^c class"))
    common(sub.add_parser("check-delta", help="arrows that do not lower delta by one"))
    sp = common(sub.add_parser("dinv", help="correction terms"))
    sp.add_argument("--definite", action="store_true", help="use the negative-definite formula")
    sp.add_argument("--hint-lspace", action="store_true", help="assume the branched double cover is an L-space")
    sp.add_argument("--try-markings", action="store_true", help="rerun under every mark on the marked white region")
    sp.add_argument("--ascii", action="store_true", help="x^2 and '-' instead of superscripts")
    rp = sub.add_parser("replay", help="rerun the configuration embedded in a JSON report")
    rp.add_argument("report")
    return p


_OPTION_KEYS = ("count", "solitary_only", "pair", "definite", "hint_lspace", "try_markings", "ascii")


def config_from_args(ns) -> RunConfig:
    opts = {k: getattr(ns, k) for k in _OPTION_KEYS if getattr(ns, k, None) not in (None, False)}
    return RunConfig(
        command=ns.command,
        input=ns.input,
        code=ns.code,
        mark_label=ns.mark_label,
        mark_crossing=ns.mark_crossing,
        coloring=ns.coloring,
        format=ns.format,
        options=opts,
    )


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    if ns.command == "replay":
        try:
            with open(ns.report) as fh:
                cfg = RunConfig.from_dict(json.load(fh)["config"])
        except (OSError, ValueError, KeyError) as e:
            print(f"error: cannot read report: {e}", file=sys.stderr)
            return EXIT_INPUT
    else:
        cfg = config_from_args(ns)
    status, out = run(cfg)
    print(out, file=sys.stdout if status == EXIT_OK else sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
