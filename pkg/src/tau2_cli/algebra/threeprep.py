"""
3-预投射代数 Π₃(Λ)、2-表示有限性、2-齐次性与 2-APR 倾斜
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Set, Tuple

from ..core.exceptions import CapExceeded, DomainError
from ..core.verdict import Verdict
from ..utils.logger import get_logger
from .endalgebra import end_algebra
from .fdalgebra import (FDAlgebraData, InfiniteAlgebra, QuotientResult, Representation,
                        ext_between, fd_quotient, gldim, injective, minimal_relations,
                        nakayama_data, projective, require_fd)
from .isomorphism import presentation_graph, signature
from .linalg import zeros
from .paths import AlgebraPresentation, Path, PathPoly, Quiver, path_weight
from .qp import LEFT, RIGHT, GradedQP, jacobian, truncated_jacobian
from .sheaves import SheafSum, cluster_hom_dim

logger = get_logger(__name__)


@dataclass
class ExtendedQP:
    """Q̃ = Q ⊔ {r*}，W = Σ r·r*，r* 的次数为 1"""

    qp: GradedQP
    back_map: Dict[str, PathPoly]
    presentation: AlgebraPresentation
    weights: Optional[Dict[str, int]] = None


def _star_names(existing: Iterable[str], count: int) -> List[str]:
    names, n = [], 1
    taken = set(existing)
    while len(names) < count:
        name = f"r{n}*"
        n += 1
        if name not in taken:
            names.append(name)
            taken.add(name)
    return names


def extended_qp(A: AlgebraPresentation, cap: int = 32, gldim_cap: int = 6,
                minimal: bool = True) -> ExtendedQP:
    A.check_admissible()
    if minimal:
        A = minimal_relations(A, cap)
    fd = require_fd(fd_quotient(A, cap))
    g = gldim(fd, gldim_cap)
    if g is None or g > 2:
        raise DomainError(f"整体维数为 {'>' + str(gldim_cap) if g is None else g}，需要 ≤ 2")
    quiver = A.quiver
    stars = _star_names([a.name for a in quiver.arrows], len(A.relations))
    arrows = [(a.name, a.source, a.target) for a in quiver.arrows]
    back_map: Dict[str, PathPoly] = {}
    for name, r in zip(stars, A.relations):
        s, t = r.endpoints()
        arrows.append((name, t, s))
        back_map[name] = r
    new_quiver = Quiver.build(quiver.vertices, arrows)
    W = PathPoly({})
    for name, r in back_map.items():
        s, t = r.endpoints()
        W = W + r * PathPoly.path(Path(t, s, (name,)))
    degrees = {a.name: 0 for a in quiver.arrows}
    degrees.update({name: 1 for name in stars})

    weights = None
    base = A.effective_weights()
    if base is not None:
        rel_weight = {name: path_weight(next(iter(r.terms)), base) for name, r in back_map.items()}
        top = max(rel_weight.values(), default=0) + 1
        weights = dict(base)
        weights.update({name: top - rel_weight[name] for name in stars})

    two_cycles = new_quiver.two_cycles()
    if two_cycles:
        logger.warning(f"Extended quiver has 2-cycles: {[(a.name, b.name) for a, b in two_cycles]}")
    qp = GradedQP(new_quiver, degrees, W, 1, name=f"Pi3({A.name})" if A.name else "",
                  allow_two_cycles=bool(two_cycles))
    return ExtendedQP(qp, back_map, A, weights)


def pi3(A: AlgebraPresentation, cap: int = 32, gldim_cap: int = 6) -> QuotientResult:
    """Π₃(Λ) 作为分次 Jacobian 代数"""
    ext = extended_qp(A, cap, gldim_cap)
    return jacobian(ext.qp, cap, ext.weights)


@dataclass
class RFReport:
    verdict: Verdict
    reason: str = ""
    gldim: Optional[int] = None
    pi3_dimension: Optional[int] = None
    graded_dims: Dict[int, int] = field(default_factory=dict)
    selfinjective: Optional[bool] = None
    nakayama: Dict[str, str] = field(default_factory=dict)
    pi3: Optional[FDAlgebraData] = None

    def to_dict(self) -> Dict[str, object]:
        return {
            "verdict": self.verdict.value,
            "reason": self.reason,
            "gldim": self.gldim,
            "pi3_dimension": self.pi3_dimension,
            "graded_dims": self.graded_dims,
            "selfinjective": self.selfinjective,
            "nakayama": self.nakayama,
        }


def check_2rf(A: AlgebraPresentation, cap: int = 32, gldim_cap: int = 6) -> RFReport:
    """2-表示有限：gldim 恰为 2 且 Π₃ 有限维自内射"""
    try:
        quotient = fd_quotient(A, cap)
        if isinstance(quotient, InfiniteAlgebra):
            return RFReport(Verdict.FALSE, "代数是无穷维的")
        g = gldim(quotient, gldim_cap)
        if g is None:
            return RFReport(Verdict.FALSE, f"gldim > {gldim_cap}")
        if g != 2:
            return RFReport(Verdict.FALSE, "gldim ≠ 2", gldim=g)
        ext = extended_qp(A, cap, gldim_cap)
        result = jacobian(ext.qp, cap, ext.weights)
    except CapExceeded as e:
        logger.info(f"2-RF check indeterminate: {e}")
        return RFReport(Verdict.INDETERMINATE, f"超过上限 {e.cap}")
    if isinstance(result, InfiniteAlgebra):
        return RFReport(Verdict.FALSE, "Π₃ 是无穷维的", gldim=2)
    ok, perm, why = nakayama_data(result)
    report = RFReport(Verdict.of(ok), "" if ok else why, gldim=2, pi3_dimension=result.dimension,
                      graded_dims=result.graded_dims(), selfinjective=ok,
                      nakayama=perm if ok else {}, pi3=result)
    logger.debug(f"2-RF check: {report.verdict.value} (dim Pi3 = {result.dimension})")
    return report


def is_2rf(A: AlgebraPresentation, cap: int = 32, gldim_cap: int = 6) -> Verdict:
    """2-表示有限性的三值判定

    上限内无法判定时返回 INDETERMINATE 而不是 False。Verdict 只有 TRUE 为真值，
    因此 `if is_2rf(A)` 与布尔判定一致；需要区分假与未定时比较 verdict 本身。
    """
    return check_2rf(A, cap, gldim_cap).verdict


# 2-齐次性

def _degree_one_part(pi: FDAlgebraData, base: FDAlgebraData, i: str) -> Representation:
    """e_i Π₃ 的 1 次部分，作为 Λ 的右模"""
    degree_one = [k for k in range(pi.dimension)
                  if pi.basis[k].source == i and pi.basis_degree(k) == 1]
    by_vertex: Dict[str, List[int]] = {v: [] for v in base.vertices}
    for k in degree_one:
        by_vertex[pi.basis[k].target].append(k)
    dims = {v: len(ks) for v, ks in by_vertex.items()}
    maps = {}
    for a in base.quiver.arrows:
        source_idx, target_idx = by_vertex[a.source], by_vertex[a.target]
        position = {k: r for r, k in enumerate(target_idx)}
        matrix = zeros(len(target_idx), len(source_idx))
        arrow = PathPoly.path(Path(a.source, a.target, (a.name,)))
        for col, k in enumerate(source_idx):
            for idx, c in pi.normal_vector(PathPoly.path(pi.basis[k]) * arrow).items():
                if idx in position:
                    matrix[position[idx]][col] = c
        maps[a.name] = matrix
    return Representation(base, dims, maps, name=f"nu2inv P({i})")


@dataclass
class HomogeneityReport:
    homogeneous: bool
    ext_vanishing: bool
    degrees_ok: bool
    injective_images: Dict[str, Optional[str]]
    ext_dims: Dict[str, Dict[str, List[int]]]

    def to_dict(self) -> Dict[str, object]:
        return {
            "homogeneous": self.homogeneous,
            "ext_vanishing": self.ext_vanishing,
            "degrees_ok": self.degrees_ok,
            "injective_images": self.injective_images,
        }


def check_2homogeneous(A: AlgebraPresentation, cap: int = 32, gldim_cap: int = 6,
                       report: Optional[RFReport] = None) -> HomogeneityReport:
    """ν₂⁻¹(P_i) = e_iΠ₃ 的 1 次部分都是不可分内射模，且 Ext⁰ = Ext¹(DΛ, Λ) = 0"""
    report = report or check_2rf(A, cap, gldim_cap)
    if report.verdict is not Verdict.TRUE or report.pi3 is None:
        raise DomainError(f"代数不是 2-表示有限的: {report.reason}")
    base = require_fd(fd_quotient(minimal_relations(A, cap), cap))
    pi = report.pi3
    degrees_ok = all(d in (0, 1) for d in pi.graded_dims())

    images: Dict[str, Optional[str]] = {}
    for i in base.vertices:
        M = _degree_one_part(pi, base, i)
        images[i] = None
        if M.total_dimension == 0:
            continue
        socle = M.socle_dims()
        if sum(socle.values()) != 1:
            continue
        k = next(v for v, d in socle.items() if d)
        if injective(base, k).dims == M.dims:
            images[i] = k

    ext: Dict[str, Dict[str, List[int]]] = {}
    vanishing = True
    for j in base.vertices:
        I = injective(base, j)
        ext[j] = {}
        for i in base.vertices:
            values = [ext_between(I, projective(base, i), n) for n in (0, 1)]
            ext[j][i] = values
            vanishing = vanishing and not any(values)
    injective_ok = all(v is not None for v in images.values()) and \
        len(set(images.values())) == len(images)
    return HomogeneityReport(degrees_ok and injective_ok and vanishing, vanishing, degrees_ok,
                             images, ext)


def is_2homogeneous(A: AlgebraPresentation, cap: int = 32, gldim_cap: int = 6) -> bool:
    return check_2homogeneous(A, cap, gldim_cap).homogeneous


# 2-APR 倾斜

@dataclass
class TiltResult:
    presentation: AlgebraPresentation
    vertex: str
    side: str
    witness: Dict[str, int]


def _apr_check(A: AlgebraPresentation, k: str, cap: int) -> Dict[str, int]:
    """k 是汇点时 P_k 单投射；返回 Hom(P_j, P_k) 与 Ext¹(I_j, P_k) 的维数 (j ≠ k)"""
    fd = require_fd(fd_quotient(A, cap))
    Pk = projective(fd, k)
    witness = {}
    for j in fd.vertices:
        if j == k:
            continue
        witness[f"Hom(P({j}),P({k}))"] = len(fd.paths_between(k, j))
        witness[f"Ext1(I({j}),P({k}))"] = ext_between(injective(fd, j), Pk, 1)
    return witness


def two_apr_tilt(A: AlgebraPresentation, k: str, side: str = LEFT, cap: int = 32,
                 gldim_cap: int = 6) -> TiltResult:
    """左：k 为汇点；右：k 为源点。对 Q̃ 中与 k 相邻的箭头翻转次数"""
    A = minimal_relations(A, cap)
    quiver = A.quiver
    if k not in quiver.vertices:
        raise DomainError(f"未知顶点: {k}")
    if side == LEFT:
        if not quiver.is_sink(k):
            raise DomainError(f"左 2-APR 倾斜要求 {k} 是汇点")
        witness = _apr_check(A, k, cap)
    elif side == RIGHT:
        if not quiver.is_source(k):
            raise DomainError(f"右 2-APR 倾斜要求 {k} 是源点")
        witness = _apr_check(A.opposite(), k, cap)
    else:
        raise DomainError(f"未知方向: {side}")
    failing = {key: value for key, value in witness.items() if value}
    if failing:
        raise DomainError(f"2-APR 条件不成立: {failing}")

    ext = extended_qp(A, cap, gldim_cap, minimal=False)
    qp = ext.qp
    flipped = {}
    for a in qp.quiver.arrows:
        d = qp.degrees[a.name]
        flipped[a.name] = 1 - d if k in (a.source, a.target) else d
    tilted = truncated_jacobian(qp.regraded(flipped))
    name = f"{A.name}~{side}{k}" if A.name else ""
    logger.info(f"2-APR {side} tilt at {k}: {len(tilted.quiver.arrows)} arrows, {len(tilted.relations)} relations")
    return TiltResult(tilted.renamed(name), k, side, witness)


def fingerprint(A: AlgebraPresentation, cap: int = 32) -> Tuple:
    fd = require_fd(fd_quotient(A, cap))
    return signature(presentation_graph(A, fd.cartan()))


@dataclass
class NormalizeResult:
    presentation: AlgebraPresentation
    trace: List[Tuple[str, str]]
    complete: bool


def iterated_2apr_normalize(A: AlgebraPresentation, budget: int = 8, cap: int = 32,
                            gldim_cap: int = 6) -> NormalizeResult:
    """贪心地做 2-APR 倾斜直到 2-齐次；预算耗尽时返回部分轨迹"""
    current = A
    trace: List[Tuple[str, str]] = []
    visited = {fingerprint(current, cap)}
    for _ in range(budget + 1):
        report = check_2rf(current, cap, gldim_cap)
        if report.verdict is not Verdict.TRUE:
            raise DomainError(f"代数不是 2-表示有限的: {report.reason}")
        if check_2homogeneous(current, cap, gldim_cap, report).homogeneous:
            return NormalizeResult(current, trace, True)
        if len(trace) >= budget:
            break
        step = _next_tilt(current, visited, cap, gldim_cap)
        if step is None:
            break
        current, k, side = step
        trace.append((k, side))
    logger.info(f"2-APR normalization stopped after {len(trace)} steps "
                "without reaching a 2-homogeneous algebra")
    return NormalizeResult(current, trace, False)


def _next_tilt(A: AlgebraPresentation, visited: Set[Tuple], cap: int,
               gldim_cap: int) -> Optional[Tuple[AlgebraPresentation, str, str]]:
    quiver = A.quiver
    for k in quiver.vertices:
        for side, ok in ((LEFT, quiver.is_sink(k)), (RIGHT, quiver.is_source(k))):
            if not ok:
                continue
            try:
                result = two_apr_tilt(A, k, side, cap, gldim_cap)
            except DomainError as e:
                logger.debug(f"Skip 2-APR {side} at {k}: {e}")
                continue
            key = fingerprint(result.presentation, cap)
            if key in visited:
                continue
            visited.add(key)
            return result.presentation, k, side
    return None


def cluster_check(T: SheafSum, A: Optional[AlgebraPresentation] = None,
                  cap: int = 32) -> Tuple[int, int]:
    """(dim Π₃(End T), Σ dim Hom(X,Y) ⊕ Ext¹(X, τ⁻¹Y))"""
    A = A or end_algebra(T)
    expected = sum(cluster_hom_dim(X, Y) for X in T.summands for Y in T.summands)
    result = require_fd(pi3(A, cap))
    return result.dimension, expected
