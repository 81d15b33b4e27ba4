"""``tgc``: batch checking and querying of theory graphs.

Exit statuses: 0 success, 1 check failure, 2 usage, IO or reference error.
"""
from __future__ import annotations

import sys
from pathlib import Path

import click

from . import __version__
from . import crosscheck as cc
from . import graph as G
from . import morphism as mo
from . import proofdoc as pd
from .frontend import LoadError, elaborate, load
from .frontend.elaborate import Elaboration
from .kernel import format_formula
from .report import Report, input_digest
from .theory import Assumed, Transported, is_flagged, recheck_theorem

OK, FAILED, USAGE = 0, 1, 2


class Abort(Exception):
    """Stop a command with an exit status, keeping the partial report."""

    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status


def _default_paths(paths: tuple[str, ...]) -> tuple[str, ...]:
    if paths:
        return paths
    return ("corpus",) if Path("corpus").is_dir() else (".",)


def _build(report: Report, paths: tuple[str, ...]) -> Elaboration:
    try:
        ast, diags, raw = load(_default_paths(paths))
    except (LoadError, OSError) as e:
        raise Abort(USAGE, str(e)) from e
    report.digest = input_digest(raw)
    elab = elaborate(ast)
    report.diagnostics.extend(diags)
    report.diagnostics.extend(elab.diagnostics)
    report.diagnostics.sort(key=lambda d: (d.span, d.code, d.message))
    return elab


def _obligations(m: mo.Morphism) -> list[dict]:
    return [
        {"axiom": o.axiom_name, "status": mo.status_name(o.status), "translated": format_formula(o.translated)}
        for o in m.obligations
    ]


def _theorem_status(p) -> str:
    match p:
        case Assumed():
            return "assumed"
        case Transported(partial=True):
            return "transported-partial"
        case Transported():
            return "transported"
    return "derived"


def run_check(report: Report, paths: tuple[str, ...]) -> int:
    elab = _build(report, paths)
    g = elab.graph
    failed = any(d.is_error for d in report.diagnostics)
    for t in g.theories.values():
        theorems = {}
        for name, thm in t.theorems.items():
            ok = recheck_theorem(t, name)
            if isinstance(thm.provenance, Transported):
                ok = ok and G.recheck_transported(g, t.id, name)
            failed |= not ok
            theorems[name] = _theorem_status(thm.provenance) if ok else "recheck-failed"
        flagged = sorted(n for n, th in t.theorems.items() if is_flagged(th.provenance))
        report.add(
            "theory", t.id, "ok",
            axioms=len(t.axioms), theorems=theorems,
            note=f"flagged: {', '.join(flagged)}" if flagged else "",
        )
    for m in g.morphisms.values():
        status = mo.verify(m)
        pending = [o.axiom_name for o in m.obligations if isinstance(o.status, mo.Pending)]
        failed |= bool(pending)
        report.add(
            "morphism", m.id, str(status),
            source=m.source, target=m.target, obligations=_obligations(m),
            note=f"pending: {', '.join(pending)}" if pending else "",
        )
    for d in elab.docs.values():
        try:
            r = pd.check_doc(d, g, elab.checks)
        except (pd.ProofDocError, G.GraphError) as e:
            failed = True
            report.add("proofdoc", d.id, "error", note=str(e))
            continue
        failed |= bool(r.errors)
        report.add(
            "proofdoc", d.id, r.thm_status,
            coverage=str(r.coverage), gaps=[gp.describe() for gp in r.gaps],
            flags=list(r.flags), errors=list(r.errors),
            note=f"coverage {r.coverage}" + (f", {len(r.gaps)} gap(s)" if r.gaps else ""),
        )
    failed |= _checks(report, g, elab.checks.values())
    return FAILED if failed else OK


def _checks(report: Report, g: G.TheoryGraph, checks) -> bool:
    """Run ``checks``; True iff any failed."""
    result = cc.run_all(g, checks)
    for o in result.outcomes:
        d = o.as_dict()
        note = o.reason + (f" at {o.locus}" if o.locus else "")
        report.add("crosscheck", o.id, o.status, check=d, note=note)
    return result.count(cc.FAILURE) > 0


def run_paths(report: Report, paths, target: str, max_depth: int) -> int:
    elab = _build(report, paths)
    if target not in elab.graph.theories:
        raise Abort(USAGE, f"unknown theory {target!r}")
    if max_depth < 1:
        raise Abort(USAGE, "--max-depth must be at least 1")
    for source, path in G.backward_reach(elab.graph, target, max_depth):
        status = mo.verify(path.composite)
        report.add(
            "path", ";".join(path.edges), str(status),
            source=source, target=target, edges=list(path.edges),
            note=f"{source} -> {target}",
        )
    return OK


def transport_declaration(res: G.TransportResult, src: str, thm: str, edges) -> str:
    lines = []
    if res.flagged:
        lines.append("# flagged: transported along a path that is not fully verified")
    if res.duplicate_of is not None:
        lines.append(f"# duplicate: {res.theory.id} already states this as {res.duplicate_of}")
    lines += [
        f"theorem {res.name} in {res.theory.id} :",
        f"  {format_formula(res.formula)}",
        f"  by transport {src}.{thm} via {', '.join(edges)}",
    ]
    return "\n".join(lines) + "\n"


def run_transport(report: Report, paths, ref: str, via: str, allow_partial: bool) -> int:
    elab = _build(report, paths)
    g = elab.graph
    if "." not in ref:
        raise Abort(USAGE, f"expected <theory>.<theorem>, got {ref!r}")
    src, thm = ref.split(".", 1)
    edges = [e.strip() for e in via.split(",") if e.strip()]
    try:
        path = G.make_path(g, edges)
        res = G.transport(g, src, thm, path, allow_partial=allow_partial)
    except G.UnverifiedPath as e:
        report.add("transport", ref, "unverified-path", note=str(e))
        return FAILED
    except G.GraphError as e:
        raise Abort(USAGE, str(e)) from e
    status = "duplicate" if res.duplicate_of else ("flagged" if res.flagged else "transported")
    report.add(
        "transport", f"{res.theory.id}.{res.name}", status,
        source=ref, path=edges, formula=format_formula(res.formula),
        note=f"duplicate of {res.duplicate_of}" if res.duplicate_of else "",
    )
    report.output = transport_declaration(res, src, thm, edges)
    return OK


def run_crosscheck(report: Report, paths, ids: tuple[str, ...]) -> int:
    elab = _build(report, paths)
    checks = elab.checks
    if ids:
        unknown = [i for i in ids if i not in checks]
        if unknown:
            raise Abort(USAGE, f"unknown cross check(s): {', '.join(unknown)}")
        checks = {i: checks[i] for i in ids}
    if not checks:
        raise Abort(USAGE, "no cross checks selected")
    failed = _checks(report, elab.graph, checks.values())
    failed |= any(d.is_error for d in report.diagnostics)
    return FAILED if failed else OK


def _emit(ctx: click.Context, report: Report, status: int, message: str = "") -> None:
    report.exit_status = status
    if message:
        report.add("error", report.command, "aborted", note=message)
    fmt = ctx.obj["format"]
    click.echo(report.to_json() if fmt == "json" else report.to_text(), nl=False)
    if message and fmt != "json":
        click.echo(f"tgc: {message}", err=True)
    ctx.exit(status)


def _run(ctx: click.Context, command: str, fn, *args) -> None:
    report = Report(command)
    try:
        status = fn(report, *args)
    except Abort as e:
        _emit(ctx, report, e.status, str(e))
        return
    _emit(ctx, report, status)


paths_arg = click.argument("paths", nargs=-1, type=click.Path())


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", help="Report format.")
@click.option("--allow-partial", is_flag=True, help="Permit transport along paths that are not fully verified.")
@click.version_option(__version__, prog_name="tgc")
@click.pass_context
def main(ctx: click.Context, fmt: str, allow_partial: bool) -> None:
    """Check and query axiomatic theory graphs written in .tg files."""
    ctx.ensure_object(dict)
    ctx.obj.update(format=fmt, allow_partial=allow_partial)


@main.command()
@paths_arg
@click.pass_context
def check(ctx, paths):
    """Elaborate PATHS and run every check."""
    _run(ctx, "check", run_check, paths)


@main.command()
@click.option("--to", "target", required=True, help="Target theory.")
@click.option("--max-depth", default=4, show_default=True, type=int)
@paths_arg
@click.pass_context
def paths(ctx, target, max_depth, paths):
    """List morphism paths that end at a theory."""
    _run(ctx, "paths", run_paths, paths, target, max_depth)


@main.command()
@click.argument("theorem")
@click.option("--via", required=True, help="Comma-separated morphism ids.")
@paths_arg
@click.pass_context
def transport(ctx, theorem, via, paths):
    """Print THEOREM (Theory.name) transported along a morphism path."""
    _run(ctx, "transport", run_transport, paths, theorem, via, ctx.obj["allow_partial"])


@main.command()
@click.option("--id", "ids", multiple=True, help="Only run this check (repeatable).")
@paths_arg
@click.pass_context
def crosscheck(ctx, ids, paths):
    """Run cross checks."""
    _run(ctx, "crosscheck", run_crosscheck, paths, ids)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
