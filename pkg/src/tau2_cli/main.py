#!/usr/bin/env python3
"""
tau2 CLI - 主入口文件
"""

import functools
import logging
import sys
import traceback
from fractions import Fraction
from typing import Any, Callable, Optional

import click
from rich.console import Console

from . import __version__
from .algebra.endalgebra import canonical_algebra, cross_check, end_algebra
from .algebra.lgroup import (WeightType, delta, euler_char, omega, order_of, parse_lvec,
                             parse_weight_type, parse_window)
from .algebra.qp import LEFT, RIGHT, GradedQP, jacobian, mutate
from .algebra.sheaves import euler_form, hom_dim, parse_sum, parse_symbol, slope
from .algebra.survey import annotate, survey_tilting
from .algebra.threeprep import (check_2homogeneous, check_2rf, extended_qp,
                                iterated_2apr_normalize, two_apr_tilt)
from .core.config import Config
from .core.exceptions import CapExceeded, DomainError, Tau2Error
from .core.verdict import Verdict
from .core.workspace import RunWorkspace
from .tools import report
from .tools.catalog import CATALOG_PREFIX, list_entries, resolve_algebra
from .tools.exchange import NAKAYAMA, SINGLETONS, explore
from .tools.formats import load_qp, read_data, save_algebra, save_qp, write_data
from .tools.verify import SUITES, VerifyOptions, run_suite
from .utils.logger import set_console_level, setup_logger

console = Console()
logger = setup_logger()


class AppContext:
    """命令共享的配置与运行目录"""

    def __init__(self, config: Config, debug: bool, workspace: Optional[str]) -> None:
        self.config = config
        self.debug = debug
        self.workspace = RunWorkspace(config, workspace)

    @property
    def cap(self) -> int:
        return self.config.degree_cap

    @property
    def gldim_cap(self) -> int:
        return int(self.config.get("algebra.gldim_cap", 6))

    @property
    def lambda4(self) -> Fraction:
        return self.config.lambda4

    def override(self, cap: Optional[int] = None, lambda4: Optional[str] = None) -> None:
        """子命令上给出的值覆盖全局选项与配置"""
        if cap is not None:
            self.config.set("algebra.degree_cap", cap)
        if lambda4 is not None:
            self.config.set("wpl.lambda4", lambda4)


def handle_errors(func: Callable[..., Any]) -> Callable[..., Any]:
    """Tau2Error 打印为红色信息；上限耗尽退出码 2，其余 1"""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        ctx = click.get_current_context()
        app: Optional[AppContext] = ctx.obj
        try:
            return func(*args, **kwargs)
        except CapExceeded as e:
            console.print(f"[yellow]⚠ 上限内未完成 (cap {e.cap}): {e}[/yellow]")
            logger.error(f"{ctx.command.name}: {e}", exc_info=True)
            sys.exit(2)
        except Tau2Error as e:
            console.print(f"[red]❌ {e}[/red]")
            logger.error(f"{ctx.command.name}: {e}", exc_info=True)
            if app is not None and app.debug:
                console.print(traceback.format_exc())
            sys.exit(1)

    return wrapper


def cap_options(func: Callable[..., Any]) -> Callable[..., Any]:
    """--cap 与 --lambda4 也可写在子命令之后"""

    @click.option('--lambda4', 'lambda4_override', help='第四个参数点 (有理数)')
    @click.option('--cap', 'cap_override', type=int, help='截断长度上限')
    @functools.wraps(func)
    def wrapper(app: AppContext, *args: Any, cap_override: Optional[int] = None,
                lambda4_override: Optional[str] = None, **kwargs: Any) -> Any:
        app.override(cap_override, lambda4_override)
        return func(app, *args, **kwargs)

    return wrapper


@click.group()
@click.option('--config', '-c', help='配置文件路径')
@click.option('--debug', '-d', is_flag=True, help='启用调试模式')
@click.option('--cap', type=int, help='截断长度上限')
@click.option('--lambda4', help='第四个参数点 (有理数)')
@click.option('--workspace', '-w', help='运行输出目录')
@click.version_option(version=__version__)
@click.pass_context
def cli(ctx: click.Context, config: Optional[str], debug: bool, cap: Optional[int],
        lambda4: Optional[str], workspace: Optional[str]) -> None:
    """
    tau2 - 加权射影直线上的 τ²-稳定倾斜与 2-表示有限代数
    """
    config_obj = Config(config_path=config, debug=debug)
    debug = debug or bool(config_obj.get("debug"))
    if debug:
        set_console_level(logging.DEBUG)
    ctx.obj = AppContext(config_obj, debug, workspace)
    ctx.obj.override(cap, lambda4)


def _weight(app: AppContext, text: str) -> WeightType:
    return parse_weight_type(text, app.lambda4)


# L(p) 与层

@cli.command()
@click.argument('weights')
@click.argument('operation', type=click.Choice(
    ['order-omega', 'omega', 'delta', 'normal', 'euler-char', 'rank-k0', 'tubular']))
@click.argument('value', required=False)
@click.pass_obj
@cap_options
@handle_errors
def lgroup(app: AppContext, weights: str, operation: str, value: Optional[str]) -> None:
    """L(p) 上的运算"""
    w = _weight(app, weights)
    if operation in ('delta', 'normal') and value is None:
        raise click.UsageError(f"{operation} 需要一个 L 向量参数")
    if operation == 'order-omega':
        order = order_of(omega(w))
        console.print("infinite" if order is None else order)
    elif operation == 'omega':
        console.print(omega(w).format())
    elif operation == 'delta':
        console.print(delta(parse_lvec(value, w)))
    elif operation == 'normal':
        a = parse_lvec(value, w)
        console.print(f"{a.format()}  ({a.pretty()})")
    elif operation == 'euler-char':
        console.print(str(euler_char(w)))
    elif operation == 'rank-k0':
        console.print(w.rank_k0())
    else:
        console.print(str(w.is_tubular()).lower())


@cli.command()
@click.argument('weights')
@click.argument('source')
@click.argument('target')
@click.pass_obj
@cap_options
@handle_errors
def homdim(app: AppContext, weights: str, source: str, target: str) -> None:
    """dim Hom(X, Y)"""
    w = _weight(app, weights)
    console.print(hom_dim(parse_symbol(source, w), parse_symbol(target, w)))


@cli.command(name='slope')
@click.argument('weights')
@click.argument('symbol')
@click.pass_obj
@cap_options
@handle_errors
def slope_cmd(app: AppContext, weights: str, symbol: str) -> None:
    """μ(X) = deg / rk"""
    w = _weight(app, weights)
    console.print(str(slope(parse_symbol(symbol, w))))


@cli.command()
@click.argument('weights')
@click.argument('source')
@click.argument('target')
@click.pass_obj
@cap_options
@handle_errors
def euler(app: AppContext, weights: str, source: str, target: str) -> None:
    """Euler 形式 <X, Y>"""
    w = _weight(app, weights)
    console.print(euler_form(parse_symbol(source, w), parse_symbol(target, w)))


@cli.command()
@click.argument('weights')
@click.option('--sum', 'summands', help='倾斜直和，缺省为典范倾斜丛')
@click.pass_obj
@cap_options
@handle_errors
def canonical(app: AppContext, weights: str, summands: Optional[str]) -> None:
    """典范代数 (或给定直和的自同态代数) 的表示文件"""
    w = _weight(app, weights)
    if summands:
        T = parse_sum(summands, w)
        A = end_algebra(T, name=f"End({T.format()})")
        warning = cross_check(T, app.config.check_lambda, A.name)
        if warning:
            console.print(f"[yellow]⚠ {warning}[/yellow]")
    else:
        A = canonical_algebra(w)
    app.workspace.create_run("canonical", {"weights": w.format(), "sum": summands})
    path = save_algebra(A, app.workspace.output_path("algebra.yaml"))
    app.workspace.record_output(path, {"vertices": len(A.quiver.vertices), "arrows": len(A.quiver.arrows),
                                       "relations": len(A.relations)})
    report.print_algebra(console, A)
    console.print(f"[green]✅ {path}[/green]")


# 代数

@cli.command(name='pi3')
@click.argument('source')
@click.pass_obj
@cap_options
@handle_errors
def pi3_cmd(app: AppContext, source: str) -> None:
    """Π₃(Λ) 的带势箭图与维数"""
    A = resolve_algebra(source, app.lambda4)
    ext = extended_qp(A, app.cap, app.gldim_cap)
    with console.status("[bold green]计算 Π₃ ...[/bold green]"):
        result = jacobian(ext.qp, app.cap, ext.weights)
    app.workspace.create_run("pi3", {"source": source})
    path = save_qp(ext.qp, app.workspace.output_path("pi3_qp.yaml"))
    app.workspace.record_output(path, result.summary())
    report.print_qp(console, ext.qp)
    report.print_quotient(console, result, title="Π₃")
    console.print(f"[green]✅ {path}[/green]")


@cli.command()
@click.argument('source')
@click.option('--homogeneous/--no-homogeneous', default=True, help='同时检查 2-齐次性')
@click.pass_obj
@cap_options
@handle_errors
def check2rf(app: AppContext, source: str, homogeneous: bool) -> None:
    """2-表示有限性判定；退出码 0 真、1 假、2 未定"""
    A = resolve_algebra(source, app.lambda4)
    with console.status("[bold green]计算 Π₃ ...[/bold green]"):
        result = check_2rf(A, app.cap, app.gldim_cap)
        hom = None
        if homogeneous and result.verdict is Verdict.TRUE:
            hom = check_2homogeneous(A, app.cap, app.gldim_cap, result)
    app.workspace.create_run("check2rf", {"source": source, "homogeneous": homogeneous})
    path = save_algebra(A, app.workspace.output_path("algebra.yaml"))
    app.workspace.record_output(path)
    try:
        ext = extended_qp(A, app.cap, app.gldim_cap)
    except (DomainError, CapExceeded) as e:
        logger.debug(f"No Pi3 QP to save: {e}")
    else:
        path = save_qp(ext.qp, app.workspace.output_path("pi3_qp.yaml"))
        app.workspace.record_output(path)
    data = {"rf": result.to_dict(), "homogeneity": hom.to_dict() if hom is not None else None}
    path = write_data(data, app.workspace.output_path("rf.yaml"))
    app.workspace.record_output(path, {"verdict": result.verdict.value})
    report.print_rf(console, result, hom)
    sys.exit(result.verdict.exit_code)


@cli.command(name='2apr')
@click.argument('source')
@click.option('--vertex', '-k', help='倾斜的顶点')
@click.option('--left/--right', default=True, help='左 (汇点) 或右 (源点)')
@click.option('--normalize', is_flag=True, help='贪心迭代到 2-齐次')
@click.option('--budget', default=8, show_default=True, help='迭代步数上限')
@click.pass_obj
@cap_options
@handle_errors
def apr(app: AppContext, source: str, vertex: Optional[str], left: bool, normalize: bool,
        budget: int) -> None:
    """2-APR 倾斜"""
    A = resolve_algebra(source, app.lambda4)
    app.workspace.create_run("2apr", {"source": source, "vertex": vertex, "left": left,
                                      "normalize": normalize, "budget": budget})
    if normalize:
        result = iterated_2apr_normalize(A, budget, app.cap, app.gldim_cap)
        path = save_algebra(result.presentation, app.workspace.output_path("normalized.yaml"))
        app.workspace.record_output(path, {"trace": result.trace, "complete": result.complete})
        report.print_trace(console, result.trace, result.complete)
        report.print_algebra(console, result.presentation)
    else:
        if vertex is None:
            raise click.UsageError("需要 --vertex 或 --normalize")
        tilt = two_apr_tilt(A, vertex, LEFT if left else RIGHT, app.cap, app.gldim_cap)
        path = save_algebra(tilt.presentation, app.workspace.output_path("tilted.yaml"))
        app.workspace.record_output(path, {"witness": tilt.witness})
        report.print_tilt(console, tilt)
    console.print(f"[green]✅ {path}[/green]")


@cli.command(name='mutate')
@click.argument('qp_file')
@click.option('--vertex', '-k', required=True, help='变换的顶点')
@click.option('--left/--right', default=True, help='左变换或右变换')
@click.pass_obj
@handle_errors
def mutate_cmd(app: AppContext, qp_file: str, vertex: str, left: bool) -> None:
    """分次带势箭图的变换"""
    P = load_qp(qp_file)
    cap = int(app.config.get("algebra.potential_cap", 24))
    Q = mutate(P, vertex, LEFT if left else RIGHT, cap)
    app.workspace.create_run("mutate", {"qp": qp_file, "vertex": vertex, "left": left})
    path = save_qp(Q, app.workspace.output_path("mutated_qp.yaml"))
    app.workspace.record_output(path)
    report.print_qp(console, Q)
    console.print(f"[green]✅ {path}[/green]")


def _start_qp(app: AppContext, source: str) -> GradedQP:
    """QP 文件，或代数 (目录名/记录文件) 的 Π₃ 带势箭图"""
    if not source.startswith(CATALOG_PREFIX) and "degree" in read_data(source):
        return load_qp(source)
    return extended_qp(resolve_algebra(source, app.lambda4), app.cap, app.gldim_cap).qp


@cli.command()
@click.argument('source')
@click.option('--policy', type=click.Choice([NAKAYAMA, SINGLETONS]), default=NAKAYAMA,
              show_default=True, help='变换轨道')
@click.option('--max-nodes', type=int, help='节点数上限')
@click.option('--graded', is_flag=True, help='按分次箭图与分次维数去重')
@click.pass_obj
@cap_options
@handle_errors
def exchange(app: AppContext, source: str, policy: str, max_nodes: Optional[int], graded: bool) -> None:
    """交换图的广度优先闭包 (YAML + DOT)"""
    settings = app.config.exchange_config
    start = _start_qp(app, source)
    max_nodes = max_nodes if max_nodes is not None else int(settings.get("max_nodes", 500))
    with console.status("[bold green]探索交换图 ...[/bold green]"):
        graph = explore(start, policy, max_nodes, app.cap,
                        potential_cap=int(app.config.get("algebra.potential_cap", 24)),
                        max_workers=int(settings.get("max_workers", 4)),
                        graded=graded or bool(settings.get("graded", False)),
                        timeout=settings.get("timeout"))
    app.workspace.create_run("exchange", {"source": source, "policy": policy,
                                          "max_nodes": max_nodes, "graded": graded})
    path = write_data(graph.to_dict(), app.workspace.output_path("exchange.yaml"))
    app.workspace.record_output(path, {"nodes": len(graph.nodes), "edges": len(graph.edges),
                                       "truncated": graph.truncated})
    app.workspace.write_text("exchange.dot", graph.to_dot())
    report.print_exchange(console, graph)
    if graph.truncated:
        console.print("[yellow]⚠ 节点数达到上限，图被截断[/yellow]")
        sys.exit(2)


@cli.command()
@click.argument('weights')
@click.option('--window', help='窗口 lower,upper，例如 -c,2c')
@click.option('--require-tau2', is_flag=True, help='只保留 τ²-稳定的直和')
@click.option('--check', is_flag=True, help='判定 2-RF 与 2-齐次性')
@click.pass_obj
@cap_options
@handle_errors
def survey(app: AppContext, weights: str, window: Optional[str], require_tau2: bool, check: bool) -> None:
    """窗口内的倾斜直和及其自同态代数"""
    w = _weight(app, weights)
    settings = app.config.wpl_config
    window = window or settings.get("window", "-c,2c")
    lower, upper = parse_window(window, w)
    with console.status("[bold green]枚举倾斜直和 ...[/bold green]"):
        result = survey_tilting(w, lower, upper, require_tau2,
                                max_objects=int(settings.get("max_objects", 400)),
                                max_cliques=int(settings.get("max_cliques", 200000)),
                                cap=app.cap,
                                max_workers=int(app.config.get("exchange.max_workers", 4)))
        if check:
            annotate(result, app.cap, app.gldim_cap)
    app.workspace.create_run("survey", {"weights": w.format(), "window": window,
                                        "require_tau2": require_tau2})
    path = write_data(result.to_dict(), app.workspace.output_path("survey.yaml"))
    app.workspace.record_output(path, {"entries": len(result.entries)})
    report.print_survey(console, result)


@cli.command()
@click.argument('suite', type=click.Choice(sorted(SUITES) + ['all']))
@click.option('--seed', type=int, help='随机套件的种子')
@click.option('--iterations', type=int, default=1000, show_default=True, help='随机变换次数')
@click.option('--window', help='survey 窗口')
@click.option('--max-nodes', type=int, help='交换图节点上限')
@click.pass_obj
@cap_options
@handle_errors
def verify(app: AppContext, suite: str, seed: Optional[int], iterations: int, window: Optional[str],
           max_nodes: Optional[int]) -> None:
    """运行验收套件；退出码 0 通过、1 失败、2 未定"""
    options = VerifyOptions(
        cap=app.cap,
        gldim_cap=app.gldim_cap,
        lambda4=app.lambda4,
        window=window or app.config.get("wpl.window", "-c,2c"),
        seed=seed if seed is not None else int(app.config.get("run.seed", 0)),
        iterations=iterations,
        max_nodes=max_nodes if max_nodes is not None else int(app.config.get("exchange.max_nodes", 500)),
        max_workers=int(app.config.get("exchange.max_workers", 4)),
        max_objects=int(app.config.get("wpl.max_objects", 400)),
        max_cliques=int(app.config.get("wpl.max_cliques", 200000)),
    )
    names = sorted(SUITES) if suite == 'all' else [suite]
    app.workspace.create_run("verify", {"suites": names, "seed": options.seed, "window": options.window})
    reports = [run_suite(name, options) for name in names]
    for suite_report in reports:
        report.print_suite(console, suite_report)
    path = write_data({"suites": [r.to_dict() for r in reports]}, app.workspace.output_path("verify.json"))
    app.workspace.record_output(path, {r.suite: r.verdict.value for r in reports})
    verdicts = {r.verdict for r in reports}
    overall = Verdict.FALSE if Verdict.FALSE in verdicts else (
        Verdict.INDETERMINATE if Verdict.INDETERMINATE in verdicts else Verdict.TRUE)
    sys.exit(overall.exit_code)


@cli.command()
@click.pass_obj
@cap_options
@handle_errors
def catalog(app: AppContext) -> None:
    """内置目录"""
    rows = []
    for entry in list_entries():
        A = entry.algebra(app.lambda4)
        rows.append({"name": CATALOG_PREFIX + entry.name, "vertices": len(A.quiver.vertices),
                     "arrows": len(A.quiver.arrows), "relations": len(A.relations),
                     "provenance": entry.provenance})
    report.print_table(console, "catalog", rows)


def main() -> None:
    """控制台入口"""
    try:
        cli(standalone_mode=True)
    except KeyboardInterrupt:
        console.print("\n[yellow]已中断[/yellow]")
        sys.exit(130)


if __name__ == "__main__":
    main()
