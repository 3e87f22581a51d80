"""
验收套件

每个套件返回逐条判定与实测值；失败是报告内容而不是异常。
"""

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional

from ..algebra.endalgebra import end_algebra
from ..algebra.fdalgebra import (FDAlgebraData, fd_quotient, gldim, minimal_relations, require_fd,
                                 same_ideal)
from ..algebra.isomorphism import quivers_isomorphic
from ..algebra.lgroup import (WeightType, c, euler_char, omega, order_of, parse_lvec,
                              parse_window, zero)
from ..algebra.paths import AlgebraPresentation
from ..algebra.qp import (LEFT, RIGHT, GradedQP, graded_dims, jacobian, mutate, mutate_left,
                          mutate_right, relabel, truncated_jacobian)
from ..algebra.sheaves import (ExcSimple, K0Class, LineBundle, canonical_sum, euler_form,
                               hom_dim)
from ..algebra.survey import survey_tilting
from ..algebra.threeprep import check_2homogeneous, check_2rf, extended_qp
from ..core.exceptions import BudgetExceeded, CapExceeded, DomainError
from ..core.verdict import Verdict
from ..utils.logger import get_logger
from .catalog import CATALOG, canonical_quiver_2222, proof_244_algebra
from .exchange import SINGLETONS, explore

logger = get_logger(__name__)

TUBULAR_TYPES = {(2, 2, 2, 2), (3, 3, 3), (2, 4, 4), (2, 3, 6)}


@dataclass
class VerifyOptions:
    cap: int = 32
    gldim_cap: int = 6
    lambda4: Fraction = Fraction(2)
    window: str = "-c,2c"
    seed: int = 0
    iterations: int = 1000
    involution_cap: int = 16
    max_nodes: int = 500
    max_workers: int = 4
    max_objects: int = 400
    max_cliques: int = 200000


@dataclass
class Criterion:
    name: str
    verdict: Verdict
    measured: Dict[str, Any] = field(default_factory=dict)
    message: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "verdict": self.verdict.value, "measured": self.measured,
                "message": self.message}


@dataclass
class SuiteReport:
    suite: str
    criteria: List[Criterion] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def verdict(self) -> Verdict:
        verdicts = {c.verdict for c in self.criteria}
        if Verdict.FALSE in verdicts:
            return Verdict.FALSE
        if Verdict.INDETERMINATE in verdicts:
            return Verdict.INDETERMINATE
        return Verdict.TRUE

    def check(self, name: str, ok: bool, message: str = "", **measured: Any) -> Criterion:
        criterion = Criterion(name, Verdict.of(ok), measured, message)
        self.criteria.append(criterion)
        return criterion

    def undecided(self, name: str, message: str, **measured: Any) -> Criterion:
        criterion = Criterion(name, Verdict.INDETERMINATE, measured, message)
        self.criteria.append(criterion)
        return criterion

    def to_dict(self) -> Dict[str, Any]:
        return {"suite": self.suite, "verdict": self.verdict.value, "seconds": round(self.seconds, 3),
                "criteria": [c.to_dict() for c in self.criteria]}


def _guarded(report: SuiteReport, name: str, func: Callable[[], None]) -> None:
    """上限/预算耗尽记为未定，其余领域错误记为失败"""
    try:
        func()
    except (CapExceeded, BudgetExceeded) as e:
        report.undecided(name, str(e))
    except DomainError as e:
        report.check(name, False, str(e))


# 套件

def suite_tubular_gate(options: VerifyOptions) -> SuiteReport:
    report = SuiteReport("tubular-gate")
    found = set()
    for t in (3, 4):
        for weights in itertools.combinations_with_replacement(range(2, 9), t):
            w = WeightType.create(weights, lambda4=options.lambda4)
            if euler_char(w) == 0:
                found.add(weights)
    report.check("euler-char-zero", found == TUBULAR_TYPES, found=sorted(found))
    for weights in sorted(TUBULAR_TYPES):
        w = WeightType.create(weights, lambda4=options.lambda4)
        order = order_of(omega(w))
        report.check(f"order-omega-{''.join(map(str, weights))}", order == w.p, order=order, p=w.p)

    def no_tau2_on_333() -> None:
        w = WeightType.create((3, 3, 3))
        result = survey_tilting(w, zero(w), c(w), require_tau2=True, cap=options.cap,
                                max_objects=options.max_objects, max_cliques=options.max_cliques)
        report.check("no-tau2-stable-333", not result.entries, found=len(result.entries))

    _guarded(report, "no-tau2-stable-333", no_tau2_on_333)
    return report


def suite_proof_table_244(options: VerifyOptions) -> SuiteReport:
    report = SuiteReport("proof-table-244")
    w = WeightType.create((2, 2, 4))
    S, S2 = ExcSimple(w, 2, 1), ExcSimple(w, 2, 2)
    table = [
        ("z", S, 1), ("z", S2, 0),
        ("x+w", S, 0), ("x+w", S2, 1),
        ("x+3w", S, 0), ("x+3w", S2, 1),
        ("y+2w", S, 0), ("y+2w", S2, 1),
        ("z+2w", S, 1), ("z+2w", S2, 0),
        ("0", S, 1), ("0", S2, 0),
    ]
    for word, simple, expected in table:
        value = hom_dim(LineBundle(parse_lvec(word, w)), simple)
        report.check(f"hom(O({word}),{simple.format()})", value == expected, value=value,
                     expected=expected)
    U = K0Class.symbol(LineBundle(omega(w))) + K0Class.symbol(LineBundle(parse_lvec("z", w)))
    for simple in (S, S2):
        value = euler_form(U, simple)
        report.check(f"euler(U,{simple.format()})", value == 1, value=value, expected=1)
    return report


def suite_canonical(options: VerifyOptions) -> SuiteReport:
    report = SuiteReport("canonical")

    def run() -> None:
        w = WeightType.create((2, 2, 2, 2), lambda4=options.lambda4)
        A = minimal_relations(end_algebra(canonical_sum(w), name="End(T_O)"), options.cap)
        fd = require_fd(fd_quotient(A, options.cap))
        g = gldim(fd, options.gldim_cap)
        report.check("vertices", len(A.quiver.vertices) == 6, value=len(A.quiver.vertices))
        report.check("arrows", len(A.quiver.arrows) == 8, value=len(A.quiver.arrows))
        report.check("relations", len(A.relations) == 2, value=len(A.relations))
        report.check("gldim", g == 2, value=g)
        report.check("quiver", quivers_isomorphic(A.quiver, canonical_quiver_2222().quiver))

    _guarded(report, "canonical", run)
    return report


def suite_2rf(options: VerifyOptions) -> SuiteReport:
    report = SuiteReport("2rf")
    expectations = [("canonical-2222", True), ("proof-244", True),
                    ("canonical-237", False), ("canonical-235", False)]
    for name, expected in expectations:
        A = CATALOG[name].algebra(options.lambda4)
        result = check_2rf(A, options.cap, options.gldim_cap)
        if result.verdict is Verdict.INDETERMINATE:
            report.undecided(name, result.reason)
            continue
        ok = (result.verdict is Verdict.TRUE) == expected
        report.check(name, ok, result.reason, verdict=result.verdict.value,
                     pi3_dimension=result.pi3_dimension)
    return report


def suite_tau2_homogeneous(options: VerifyOptions) -> SuiteReport:
    report = SuiteReport("tau2-homogeneous")

    def check_algebra(label: str, A: AlgebraPresentation) -> None:
        rf = check_2rf(A, options.cap, options.gldim_cap)
        if rf.verdict is Verdict.INDETERMINATE:
            report.undecided(label, rf.reason)
            return
        homogeneous = rf.verdict is Verdict.TRUE and \
            check_2homogeneous(A, options.cap, options.gldim_cap, rf).homogeneous
        report.check(label, homogeneous, rf.reason, two_rf=rf.verdict.value)

    def run() -> None:
        w = WeightType.create((2, 2, 2, 2), lambda4=options.lambda4)
        lower, upper = parse_window(options.window, w)
        result = survey_tilting(w, lower, upper, require_tau2=True, cap=options.cap,
                                max_objects=options.max_objects, max_cliques=options.max_cliques,
                                max_workers=options.max_workers)
        report.check("survey-nonempty", bool(result.entries), found=len(result.entries))
        for entry in result.entries:
            check_algebra(entry.tilting.format(), entry.presentation)
        check_algebra("proof-244", proof_244_algebra())

    _guarded(report, "survey-2222", run)
    return report


def suite_nonexistence(options: VerifyOptions) -> SuiteReport:
    report = SuiteReport("nonexistence")
    for weights in ((3, 3, 3), (2, 3, 7)):
        w = WeightType.create(weights)
        name = "survey-" + "".join(map(str, weights))

        def run(w: WeightType = w, name: str = name) -> None:
            lower, upper = parse_window(options.window, w)
            result = survey_tilting(w, lower, upper, require_tau2=True, cap=options.cap,
                                    max_objects=options.max_objects, max_cliques=options.max_cliques)
            report.check(name, not result.entries, found=len(result.entries), cliques=result.cliques)

        _guarded(report, name, run)
    return report


def roundtrip_holds(A: AlgebraPresentation, cap: int, gldim_cap: int) -> bool:
    """truncated_jacobian(extended_qp(A)) 与 A 的极小表示同箭图同理想"""
    ext = extended_qp(A, cap, gldim_cap)
    back = truncated_jacobian(ext.qp)
    return back.quiver == ext.presentation.quiver and same_ideal(ext.presentation, back, cap)


def suite_roundtrip(options: VerifyOptions) -> SuiteReport:
    report = SuiteReport("roundtrip")
    for name, entry in CATALOG.items():
        A = entry.algebra(options.lambda4)

        def run(A: AlgebraPresentation = A, name: str = name) -> None:
            g = gldim(require_fd(fd_quotient(A, options.cap)), options.gldim_cap)
            if g is None or g > 2:
                logger.debug(f"Roundtrip skips {name} (gldim {g})")
                return
            report.check(name, roundtrip_holds(A, options.cap, options.gldim_cap), gldim=g)

        _guarded(report, name, run)
    return report


def catalog_qps(options: VerifyOptions) -> List[GradedQP]:
    """目录中整体维数恰为 2 的代数的 Π₃ 带势箭图

    没有关系的代数势为零，随机变换下箭头数指数增长，不在其列。
    """
    qps = []
    for name, entry in CATALOG.items():
        A = entry.algebra(options.lambda4)
        try:
            g = gldim(require_fd(fd_quotient(A, options.cap)), options.gldim_cap)
            if g != 2:
                logger.debug(f"No extended QP for {name}: gldim {g}")
                continue
            qps.append(extended_qp(A, options.cap, options.gldim_cap).qp)
        except (DomainError, CapExceeded) as e:
            logger.debug(f"No extended QP for {name}: {e}")
    return qps


def random_mutations(P: GradedQP, steps: int, rng: random.Random,
                     potential_cap: int = 24) -> Dict[str, int]:
    """随机变换，检查每步之后势齐次且无 2-圈"""
    counts = {"done": 0, "skipped": 0, "violations": 0}
    current = P
    for _ in range(steps):
        k = rng.choice(current.quiver.vertices)
        side = rng.choice((LEFT, RIGHT))
        try:
            current = relabel(mutate(current, k, side, potential_cap))
        except (DomainError, CapExceeded):
            counts["skipped"] += 1
            continue
        counts["done"] += 1
        if not current.is_homogeneous() or current.quiver.two_cycles():
            counts["violations"] += 1
    return counts


def _finite_jacobian(P: GradedQP, cap: int) -> bool:
    try:
        return isinstance(jacobian(P, cap), FDAlgebraData)
    except CapExceeded:
        return False


def suite_mutation(options: VerifyOptions) -> SuiteReport:
    report = SuiteReport("mutation")
    rng = random.Random(options.seed)
    qps = catalog_qps(options)
    per_qp = max(1, options.iterations // max(1, len(qps)))
    for P in qps:
        counts = random_mutations(P, per_qp, rng)
        report.check(f"random-{P.name}", counts["violations"] == 0, **counts)
        # 分次维数只对有限维 Jacobian 代数有意义
        if not _finite_jacobian(P, options.involution_cap):
            logger.debug(f"Involution check skips {P.name}: Jacobian not finite at cap")
            continue
        for k in P.quiver.vertices:
            name = f"involution-{P.name}-{k}"

            def run(P: GradedQP = P, k: str = k, name: str = name) -> None:
                try:
                    back = mutate_right(mutate_left(P, k), k)
                except DomainError as e:
                    logger.debug(f"{name} undefined: {e}")
                    return
                before = graded_dims(P, options.involution_cap)
                after = graded_dims(back, options.involution_cap)
                report.check(name, before == after, before=before, after=after)

            _guarded(report, name, run)
    return report


def suite_exchange(options: VerifyOptions) -> SuiteReport:
    """τ² = 1 时 dim Π₃(B) = 2 dim B，总维数随结点变化，0 次与 1 次部分相等"""
    report = SuiteReport("exchange")

    def run() -> None:
        A = CATALOG["canonical-2222"].algebra(options.lambda4)
        start = extended_qp(A, options.cap, options.gldim_cap).qp
        graph = explore(start, SINGLETONS, options.max_nodes, options.cap,
                        max_workers=options.max_workers)
        report.check("closure-finite", not graph.truncated, nodes=len(graph.nodes),
                     edges=len(graph.edges))
        report.check("selfinjective", all(n.selfinjective for n in graph.nodes),
                     failing=[n.id for n in graph.nodes if not n.selfinjective])
        unbalanced = [n.id for n in graph.nodes if not halves_balanced(n.graded_dims)]
        report.check("balanced-halves", not unbalanced, failing=unbalanced,
                     dimensions=sorted({n.dimension for n in graph.nodes if n.dimension is not None}))
        report.check("closed", graph.is_closed())

    _guarded(report, "exchange", run)
    return report


def halves_balanced(dims: Optional[Dict[int, int]]) -> bool:
    """次数只有 0 和 1，且两部分维数相等"""
    if not dims or set(dims) - {0, 1}:
        return False
    return dims.get(0, 0) == dims.get(1, 0)


SUITES: Dict[str, Callable[[VerifyOptions], SuiteReport]] = {
    "tubular-gate": suite_tubular_gate,
    "proof-table-244": suite_proof_table_244,
    "canonical": suite_canonical,
    "2rf": suite_2rf,
    "tau2-homogeneous": suite_tau2_homogeneous,
    "nonexistence": suite_nonexistence,
    "roundtrip": suite_roundtrip,
    "mutation": suite_mutation,
    "exchange": suite_exchange,
}


def run_suite(name: str, options: Optional[VerifyOptions] = None) -> SuiteReport:
    if name not in SUITES:
        raise DomainError(f"未知套件: {name}，可用: {', '.join(SUITES)}")
    options = options or VerifyOptions()
    started = time.perf_counter()
    logger.info(f"Running verification suite {name}")
    report = SUITES[name](options)
    report.seconds = time.perf_counter() - started
    logger.info(f"Suite {name}: {report.verdict.value} in {report.seconds:.1f}s")
    return report
