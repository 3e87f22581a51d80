"""
终端报告 (rich)
"""

from typing import Dict, List, Optional, Sequence

from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from ..algebra.fdalgebra import FDAlgebraData, InfiniteAlgebra, QuotientResult
from ..algebra.paths import AlgebraPresentation
from ..algebra.qp import GradedQP
from ..algebra.survey import SurveyResult
from ..algebra.threeprep import HomogeneityReport, RFReport, TiltResult
from ..core.verdict import Verdict
from .exchange import ExchangeGraph
from .verify import SuiteReport

VERDICT_STYLE = {
    Verdict.TRUE: "bold green",
    Verdict.FALSE: "bold red",
    Verdict.INDETERMINATE: "bold yellow",
}


def verdict_text(verdict: Verdict) -> Text:
    return Text(verdict.value, style=VERDICT_STYLE[verdict])


def print_algebra(console: Console, A: AlgebraPresentation) -> None:
    table = Table(title=A.name or "algebra", show_header=True, header_style="bold cyan")
    table.add_column("arrow")
    table.add_column("source")
    table.add_column("target")
    for a in A.quiver.arrows:
        table.add_row(a.name, a.source, a.target)
    console.print(table)
    if A.relations:
        body = "\n".join(f"{k}. {r}" for k, r in enumerate(A.relations, start=1))
        console.print(Panel(body, title="relations", border_style="blue"))


def print_qp(console: Console, P: GradedQP) -> None:
    table = Table(title=P.name or "QP", header_style="bold cyan")
    table.add_column("arrow")
    table.add_column("source")
    table.add_column("target")
    table.add_column("degree", justify="right")
    for a in P.quiver.arrows:
        table.add_row(a.name, a.source, a.target, str(P.degrees[a.name]))
    console.print(table)
    console.print(Panel(str(P.potential), title=f"potential (d = {P.potential_degree})",
                        border_style="blue"))


def print_quotient(console: Console, result: QuotientResult, title: str = "quotient") -> None:
    if isinstance(result, InfiniteAlgebra):
        witness = " -> ".join(str(p) for p in result.witness)
        console.print(Panel(f"[red]infinite-dimensional[/red]\nwitness cycle: {witness}", title=title))
        return
    lines = [f"dimension: {result.dimension}", f"Loewy length: {result.loewy_length}",
             f"truncation: {result.truncation}"]
    if result.degrees is not None:
        lines.append(f"graded dimensions: {result.graded_dims()}")
    console.print(Panel("\n".join(lines), title=title, border_style="green"))
    print_cartan(console, result)


def print_cartan(console: Console, fd: FDAlgebraData) -> None:
    table = Table(title="Cartan matrix dim e_i A e_j", header_style="bold cyan")
    table.add_column("")
    for v in fd.vertices:
        table.add_column(v, justify="right")
    for v, row in zip(fd.vertices, fd.cartan_matrix()):
        table.add_row(v, *[str(n) for n in row])
    console.print(table)


def print_rf(console: Console, report: RFReport, homogeneity: Optional[HomogeneityReport] = None) -> None:
    table = Table(title="2-representation-finiteness", show_header=False)
    table.add_column("key", style="bold")
    table.add_column("value")
    table.add_row("verdict", verdict_text(report.verdict))
    if report.reason:
        table.add_row("reason", report.reason)
    table.add_row("gldim", str(report.gldim))
    table.add_row("dim Pi3", str(report.pi3_dimension))
    table.add_row("graded dims", str(report.graded_dims))
    table.add_row("selfinjective", str(report.selfinjective))
    if report.nakayama:
        perm = ", ".join(f"{k}->{v}" for k, v in report.nakayama.items())
        trivial = all(k == v for k, v in report.nakayama.items())
        table.add_row("Nakayama", f"{'identity' if trivial else perm}")
    if homogeneity is not None:
        table.add_row("2-homogeneous", str(homogeneity.homogeneous))
        table.add_row("Ext^0,1(DA,A) = 0", str(homogeneity.ext_vanishing))
    console.print(table)


def print_tilt(console: Console, result: TiltResult) -> None:
    body = "\n".join(f"{k} = {v}" for k, v in result.witness.items()) or "(no other vertices)"
    console.print(Panel(body, title=f"2-APR {result.side} tilt at {result.vertex}", border_style="blue"))
    print_algebra(console, result.presentation)


def print_trace(console: Console, trace: Sequence, complete: bool) -> None:
    steps = ", ".join(f"({k}, {side})" for k, side in trace) or "(empty)"
    status = "[green]2-homogeneous[/green]" if complete else "[yellow]budget exhausted[/yellow]"
    console.print(Panel(f"trace: {steps}\nresult: {status}", title="2-APR normalization"))


def print_survey(console: Console, result: SurveyResult) -> None:
    table = Table(title=f"tilting sums for {result.w.format()} in "
                        f"[{result.lower.pretty()}, {result.upper.pretty()}]",
                  header_style="bold cyan")
    table.add_column("#", justify="right")
    table.add_column("summands")
    table.add_column("q_i")
    table.add_column("tau^2", justify="center")
    table.add_column("arrows/relations", justify="right")
    table.add_column("2-RF", justify="center")
    table.add_column("2-hom", justify="center")
    for k, entry in enumerate(result.entries, start=1):
        counts = ",".join(str(entry.tube_counts.get(i, 0)) for i in range(1, result.w.t + 1))
        table.add_row(
            str(k), ", ".join(entry.tilting.labels()), counts, "yes" if entry.tau2_stable else "no",
            f"{len(entry.presentation.quiver.arrows)}/{len(entry.presentation.relations)}",
            entry.rf.value if entry.rf is not None else "-",
            "-" if entry.homogeneous is None else str(entry.homogeneous),
        )
    console.print(table)
    console.print(f"[dim]{result.objects} objects, {result.cliques} cliques, "
                  f"{result.tilting_sums} sums up to twist[/dim]")


def print_exchange(console: Console, graph: ExchangeGraph) -> None:
    table = Table(title=f"exchange graph ({graph.policy})", header_style="bold cyan")
    table.add_column("node", justify="right")
    table.add_column("dim", justify="right")
    table.add_column("graded")
    table.add_column("selfinjective", justify="center")
    table.add_column("orbits")
    for node in graph.nodes:
        table.add_row(str(node.id), str(node.dimension), str(node.graded_dims),
                      str(node.selfinjective), " ".join("{" + ",".join(o) + "}" for o in node.orbits))
    console.print(table)
    flag = "[yellow]truncated[/yellow]" if graph.truncated else "[green]closed[/green]"
    console.print(f"{len(graph.nodes)} nodes, {len(graph.edges)} edges, {flag}")


def print_suite(console: Console, report: SuiteReport) -> None:
    table = Table(title=f"verify {report.suite}", header_style="bold cyan")
    table.add_column("criterion")
    table.add_column("verdict", justify="center")
    table.add_column("measured")
    for criterion in report.criteria:
        measured = ", ".join(f"{k}={v}" for k, v in criterion.measured.items())
        if criterion.message:
            measured = f"{measured} ({criterion.message})" if measured else criterion.message
        table.add_row(criterion.name, verdict_text(criterion.verdict), measured)
    console.print(table)
    console.print(Text.assemble("suite: ", verdict_text(report.verdict), f"  ({report.seconds:.1f}s)"))


def print_table(console: Console, title: str, rows: List[Dict[str, str]]) -> None:
    if not rows:
        console.print(f"[dim]{title}: (empty)[/dim]")
        return
    table = Table(title=title, header_style="bold cyan")
    for key in rows[0]:
        table.add_column(key)
    for row in rows:
        table.add_row(*[str(row[k]) for k in rows[0]])
    console.print(table)
