"""
窗口内倾斜层的枚举

候选对象是窗口中的线丛与全部例外单层。要求 τ²-稳定时以 τ²-轨道为单位选取，
刚性图上的团给出倾斜直和；先按线丛扭转归一化去重，再按自同态代数的同构类去重。
"""

import concurrent.futures
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from ..core.exceptions import BudgetExceeded, DomainError
from ..core.verdict import Verdict
from ..utils.logger import get_logger
from .endalgebra import end_algebra
from .fdalgebra import fd_quotient, require_fd
from .isomorphism import IsoClassifier, presentation_graph
from .lgroup import LVec, WeightType, omega, order_of, window
from .paths import AlgebraPresentation
from .sheaves import (ExcSimple, LineBundle, SheafSum, SheafSymbol, ext1_dim, is_tau2_stable,
                      split, tau_k)
from .threeprep import check_2homogeneous, check_2rf

logger = get_logger(__name__)

Block = Tuple[SheafSymbol, ...]


@dataclass
class SurveyEntry:
    tilting: SheafSum
    presentation: AlgebraPresentation
    tube_counts: Dict[int, int]
    tau2_stable: bool
    class_id: int = -1
    rf: Optional[Verdict] = None
    homogeneous: Optional[bool] = None

    def to_dict(self) -> Dict[str, object]:
        return {
            "tilting": self.tilting.format(),
            "tube_counts": {str(i): n for i, n in sorted(self.tube_counts.items())},
            "tau2_stable": self.tau2_stable,
            "vertices": len(self.presentation.quiver.vertices),
            "arrows": len(self.presentation.quiver.arrows),
            "relations": len(self.presentation.relations),
            "two_rf": self.rf.value if self.rf is not None else None,
            "two_homogeneous": self.homogeneous,
        }


@dataclass
class SurveyResult:
    w: WeightType
    lower: LVec
    upper: LVec
    require_tau2: bool
    entries: List[SurveyEntry] = field(default_factory=list)
    objects: int = 0
    cliques: int = 0
    tilting_sums: int = 0

    def to_dict(self) -> Dict[str, object]:
        return {
            "weight_type": self.w.format(),
            "window": [self.lower.format(), self.upper.format()],
            "require_tau2": self.require_tau2,
            "objects": self.objects,
            "cliques": self.cliques,
            "tilting_sums": self.tilting_sums,
            "entries": [e.to_dict() for e in self.entries],
        }


def twist(X: SheafSymbol, b: LVec) -> SheafSymbol:
    """X ⊗ O(b)；S_{i,m}(b) = S_{i, m - b_i}"""
    if isinstance(X, LineBundle):
        return LineBundle(X.a + b)
    return ExcSimple(X.w, X.i, (X.m - 1 - b.residue(X.i)) % X.p_i + 1)


def twist_key(T: SheafSum) -> Tuple[str, ...]:
    """线丛扭转下的规范代表"""
    keys = []
    for X in T.summands:
        if isinstance(X, LineBundle):
            shifted = SheafSum.of([twist(Y, -X.a) for Y in T.summands], T.w)
            keys.append(tuple(Y.format() for Y in shifted.summands))
    return min(keys) if keys else tuple(Y.format() for Y in T.summands)


def candidate_objects(w: WeightType, lower: LVec, upper: LVec,
                      max_objects: int = 400) -> List[SheafSymbol]:
    lines: List[SheafSymbol] = [LineBundle(a) for a in window(lower, upper)]
    simples: List[SheafSymbol] = [ExcSimple(w, i, m)
                                  for i, p_i in enumerate(w.weights, start=1) if p_i >= 2
                                  for m in range(1, p_i + 1)]
    objects = lines + simples
    if len(objects) > max_objects:
        raise BudgetExceeded(f"窗口内候选对象 {len(objects)} 个，超过上限 {max_objects}",
                             max_objects, partial=len(objects))
    return objects


def _tau2_blocks(objects: Sequence[SheafSymbol]) -> List[Block]:
    """τ²-轨道，只保留完全落在候选集内的有限轨道"""
    allowed = set(objects)
    seen = set()
    blocks = []
    w = objects[0].w if objects else None
    lines_finite = w is not None and order_of(omega(w).scale(2)) is not None
    for X in objects:
        if X in seen:
            continue
        if isinstance(X, LineBundle) and not lines_finite:
            continue
        orbit = [X]
        Y = tau_k(X, 2)
        while Y != X:
            orbit.append(Y)
            Y = tau_k(Y, 2)
        seen.update(orbit)
        if all(Y in allowed for Y in orbit):
            blocks.append(tuple(orbit))
    return blocks


def _compatible(A: Block, B: Block) -> bool:
    return all(ext1_dim(X, Y) == 0 and ext1_dim(Y, X) == 0 for X in A for Y in B)


def rigidity_graph(blocks: Sequence[Block]) -> nx.Graph:
    G = nx.Graph()
    for k, block in enumerate(blocks):
        if _compatible(block, block):
            G.add_node(k, size=len(block))
    nodes = sorted(G.nodes)
    for pos, u in enumerate(nodes):
        for v in nodes[pos + 1:]:
            if _compatible(blocks[u], blocks[v]):
                G.add_edge(u, v)
    return G


def tilting_sums(w: WeightType, lower: LVec, upper: LVec, require_tau2: bool = False,
                 max_objects: int = 400, max_cliques: int = 200000) -> Tuple[List[SheafSum], int, int]:
    """(倾斜直和, 候选对象数, 检查过的团数)"""
    objects = candidate_objects(w, lower, upper, max_objects)
    blocks = _tau2_blocks(objects) if require_tau2 else [(X,) for X in objects]
    G = rigidity_graph(blocks)
    target = w.rank_k0()
    logger.info(f"Survey {w.format()}: {len(objects)} objects, {G.number_of_nodes()} rigid blocks")

    found: Dict[Tuple[str, ...], SheafSum] = {}
    count = 0
    for clique in nx.enumerate_all_cliques(G):
        if len(clique) > target:
            break
        count += 1
        if count > max_cliques:
            raise BudgetExceeded(f"团枚举超过上限 {max_cliques}", max_cliques,
                                 partial=list(found.values()))
        if sum(G.nodes[k]["size"] for k in clique) != target:
            continue
        T = SheafSum.of([X for k in clique for X in blocks[k]], w)
        if not any(isinstance(X, LineBundle) for X in T.summands):
            continue
        found.setdefault(twist_key(T), T)
    logger.info(f"Survey {w.format()}: {count} cliques, {len(found)} tilting sums up to twist")
    ordered = sorted(found.items(), key=lambda item: (len(split(item[1]).torsion), item[0]))
    return [T for _, T in ordered], len(objects), count


def _evaluate(T: SheafSum, cap: int) -> Tuple[AlgebraPresentation, Dict[Tuple[str, str], int]]:
    A = end_algebra(T)
    return A, require_fd(fd_quotient(A, cap)).cartan()


def survey_tilting(w: WeightType, lower: LVec, upper: LVec, require_tau2: bool = False,
                   max_objects: int = 400, max_cliques: int = 200000, cap: int = 32,
                   max_workers: int = 4) -> SurveyResult:
    """窗口内全部基本倾斜直和及其自同态代数，按同构类去重"""
    if lower.w != w or upper.w != w:
        raise DomainError("窗口与权重类型不一致")
    sums, n_objects, n_cliques = tilting_sums(w, lower, upper, require_tau2, max_objects, max_cliques)
    result = SurveyResult(w, lower, upper, require_tau2, objects=n_objects, cliques=n_cliques,
                          tilting_sums=len(sums))
    if not sums:
        return result

    evaluated: Dict[int, Tuple[AlgebraPresentation, Dict[Tuple[str, str], int]]] = {}
    with concurrent.futures.ThreadPoolExecutor(max_workers=max_workers) as executor:
        futures = {executor.submit(_evaluate, T, cap): k for k, T in enumerate(sums)}
        for future in concurrent.futures.as_completed(futures):
            evaluated[futures[future]] = future.result()

    classifier = IsoClassifier()
    for k, T in enumerate(sums):
        A, cartan = evaluated[k]
        is_new, class_id = classifier.register(presentation_graph(A, cartan))
        if not is_new:
            logger.debug(f"{T.format()} duplicates class {class_id}")
            continue
        parts = split(T)
        result.entries.append(SurveyEntry(T, A, dict(parts.tube_counts), is_tau2_stable(T), class_id))
    logger.info(f"Survey {w.format()}: {len(result.entries)} endomorphism algebras up to isomorphism")
    return result


def annotate(result: SurveyResult, cap: int = 32, gldim_cap: int = 6) -> SurveyResult:
    """补充 2-RF 与 2-齐次性判定"""
    for entry in result.entries:
        report = check_2rf(entry.presentation, cap, gldim_cap)
        entry.rf = report.verdict
        if report.verdict is Verdict.TRUE:
            entry.homogeneous = check_2homogeneous(entry.presentation, cap, gldim_cap, report).homogeneous
    return result
