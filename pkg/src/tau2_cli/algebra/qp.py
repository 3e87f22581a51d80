"""
分次带势箭图：循环导数、Jacobian 代数、截断 Jacobian 代数与分次变换

势是有限的圈组合，每个圈旋转到箭头名元组最小的代表。
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from ..core.exceptions import CapExceeded, DomainError
from ..utils.logger import get_logger
from .fdalgebra import (QuotientResult, ext_table, fd_quotient, gldim, minimal_relations,
                        require_fd)
from .linalg import axpy
from .paths import AlgebraPresentation, Arrow, Path, PathPoly, Quiver

logger = get_logger(__name__)

DEFAULT_POTENTIAL_CAP = 24
MAX_REDUCTION_ROUNDS = 64
MAX_ARROWS = 64
MAX_POTENTIAL_TERMS = 4096

LEFT = "left"
RIGHT = "right"


def _path_of(quiver: Quiver, arrows: Sequence[str]) -> Path:
    arrow_map = quiver.arrow_map
    return Path(arrow_map[arrows[0]].source, arrow_map[arrows[-1]].target, tuple(arrows))


def canonical_potential(W: PathPoly, quiver: Quiver) -> PathPoly:
    """每一项旋转到最小代表并合并"""
    terms: Dict[Path, Fraction] = {}
    for path, coeff in W.terms.items():
        if not path.is_cycle():
            raise DomainError(f"势的项不是圈: {path}")
        arrows = path.arrows
        rotated = min(arrows[k:] + arrows[:k] for k in range(len(arrows)))
        axpy(terms, coeff, {_path_of(quiver, rotated): Fraction(1)})
    return PathPoly(terms)


def cyclic_derivative(W: PathPoly, a: str, quiver: Quiver) -> PathPoly:
    """∂_a(a_1⋯a_d) = Σ_{a_i = a} a_{i+1}⋯a_d a_1⋯a_{i-1}"""
    arrow = quiver.arrow(a)
    terms: Dict[Path, Fraction] = {}
    for path, coeff in W.terms.items():
        arrows = path.arrows
        for i, name in enumerate(arrows):
            if name != a:
                continue
            rest = arrows[i + 1:] + arrows[:i]
            result = _path_of(quiver, rest) if rest else Path.trivial(arrow.target)
            axpy(terms, coeff, {result: Fraction(1)})
    return PathPoly(terms)


def path_degree(path: Path, degrees: Mapping[str, int]) -> int:
    return sum(degrees[a] for a in path.arrows)


@dataclass(frozen=True)
class GradedQP:
    """(Q, W, d)；premutation 的中间结果可以带 2-圈"""

    quiver: Quiver
    degrees: Mapping[str, int]
    potential: PathPoly
    potential_degree: int
    name: str = ""
    allow_two_cycles: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "degrees", {a.name: int(self.degrees[a.name])
                                             for a in self.quiver.arrows
                                             if a.name in self.degrees})
        missing = [a.name for a in self.quiver.arrows if a.name not in self.degrees]
        if missing:
            raise DomainError(f"箭头缺少次数: {missing}")
        if self.quiver.loops():
            raise DomainError(f"箭图含圈边: {[a.name for a in self.quiver.loops()]}")
        if not self.allow_two_cycles and self.quiver.two_cycles():
            pairs = [(a.name, b.name) for a, b in self.quiver.two_cycles()]
            raise DomainError(f"箭图含 2-圈: {pairs}")
        arrow_map = self.quiver.arrow_map
        for path in self.potential.terms:
            if any(a not in arrow_map for a in path.arrows):
                raise DomainError(f"势使用了未知箭头: {path}")
        object.__setattr__(self, "potential", canonical_potential(self.potential, self.quiver))
        for path in self.potential.terms:
            if path_degree(path, self.degrees) != self.potential_degree:
                raise DomainError(f"势的项 {path} 的次数不是 {self.potential_degree}")

    def derivative(self, a: str) -> PathPoly:
        return cyclic_derivative(self.potential, a, self.quiver)

    def arrows_of_degree(self, d: int) -> List[Arrow]:
        return [a for a in self.quiver.arrows if self.degrees[a.name] == d]

    def with_name(self, name: str) -> "GradedQP":
        return GradedQP(self.quiver, self.degrees, self.potential, self.potential_degree, name,
                        self.allow_two_cycles)

    def regraded(self, degrees: Mapping[str, int], name: str = "") -> "GradedQP":
        return GradedQP(self.quiver, degrees, self.potential, self.potential_degree,
                        name or self.name, self.allow_two_cycles)

    def is_homogeneous(self) -> bool:
        return all(path_degree(p, self.degrees) == self.potential_degree for p in self.potential.terms)


def jacobian_presentation(P: GradedQP, weights: Optional[Mapping[str, int]] = None) -> AlgebraPresentation:
    """(Q, {∂_a W})；weights 是使关系齐次的正权重 (可选)"""
    relations = [P.derivative(a.name) for a in P.quiver.arrows]
    return AlgebraPresentation(P.quiver, tuple(r for r in relations if not r.is_zero()),
                               name=f"Jac({P.name})" if P.name else "", weights=weights)


def jacobian(P: GradedQP, cap: int = 32, weights: Optional[Mapping[str, int]] = None) -> QuotientResult:
    """分次 Jacobian 代数 (完备商)，基元的次数按箭头次数求和"""
    return fd_quotient(jacobian_presentation(P, weights), cap, degrees=P.degrees)


def graded_dims(P: GradedQP, cap: int = 32) -> Dict[int, int]:
    return require_fd(jacobian(P, cap)).graded_dims()


def truncated_jacobian(P: GradedQP) -> AlgebraPresentation:
    """Jac 的 0 次部分：0 次箭头，关系 ∂_a W (d(a)=1) 去掉含 1 次箭头的项"""
    if P.potential_degree != 1:
        raise DomainError(f"截断 Jacobian 代数要求 d(W) = 1，当前为 {P.potential_degree}")
    if any(d not in (0, 1) for d in P.degrees.values()):
        raise DomainError("截断 Jacobian 代数要求箭头次数为 0 或 1")
    keep = [a.name for a in P.quiver.arrows if P.degrees[a.name] == 0]
    quiver = P.quiver.without(a.name for a in P.quiver.arrows if P.degrees[a.name] == 1)
    relations = []
    for a in P.arrows_of_degree(1):
        derivative = P.derivative(a.name)
        kept = {p: c for p, c in derivative.terms.items() if all(x in keep for x in p.arrows)}
        relations.append(PathPoly(kept))
    return AlgebraPresentation(quiver, tuple(r for r in relations if not r.is_zero()),
                               name=f"trunc({P.name})" if P.name else "")


def is_algebraic(P: GradedQP, cap: int = 32, gldim_cap: int = 6) -> bool:
    """截断 Jacobian 代数整体维数 ≤ 2，且 {∂_a W : d(a)=1} 是极小关系"""
    A = truncated_jacobian(P)
    relations = [r for r in A.relations]
    if any(r.min_length() < 2 for r in relations):
        return False
    fd = require_fd(fd_quotient(A, cap))
    g = gldim(fd, gldim_cap)
    if g is None or g > 2:
        return False
    if len(P.arrows_of_degree(1)) != len(relations):
        return False
    if len(minimal_relations(A, cap).relations) != len(relations):
        return False
    ext2 = ext_table(fd, 2)
    return ext2 == {pair: n for pair, n in A.relation_counts().items() if n}


# premutation

def _star(name: str) -> str:
    return f"{name}*"


def _composite(b: str, a: str) -> str:
    return f"[{b}.{a}]"


def _premutate(P: GradedQP, k: str, side: str) -> GradedQP:
    quiver = P.quiver
    if k not in quiver.vertices:
        raise DomainError(f"未知顶点: {k}")
    if any(a.source == k or a.target == k for a in quiver.loops()):
        raise DomainError(f"顶点 {k} 处有圈边")
    if any(k in (a.source, a.target) for pair in quiver.two_cycles() for a in pair):
        raise DomainError(f"顶点 {k} 在 2-圈上")
    d, dW = P.degrees, P.potential_degree
    incoming = quiver.in_arrows(k)
    outgoing = quiver.out_arrows(k)
    count = len(quiver.arrows) + len(incoming) * len(outgoing)
    if count > MAX_ARROWS:
        raise CapExceeded(f"顶点 {k} 处变换后箭头数 {count} 超过上限", MAX_ARROWS, partial=count)

    arrows: List[Tuple[str, str, str]] = []
    degrees: Dict[str, int] = {}
    for x in quiver.arrows:
        if x.source != k and x.target != k:
            arrows.append((x.name, x.source, x.target))
            degrees[x.name] = d[x.name]
    for a in incoming:
        for b in outgoing:
            name = _composite(b.name, a.name)
            arrows.append((name, a.source, b.target))
            degrees[name] = d[a.name] + d[b.name]
    for a in incoming:
        arrows.append((_star(a.name), k, a.source))
        degrees[_star(a.name)] = -d[a.name] + (dW if side == LEFT else 0)
    for b in outgoing:
        arrows.append((_star(b.name), b.target, k))
        degrees[_star(b.name)] = -d[b.name] + (dW if side == RIGHT else 0)
    new_quiver = Quiver.build(quiver.vertices, arrows)

    incoming_names = {a.name for a in incoming}
    outgoing_names = {b.name for b in outgoing}
    terms: Dict[Path, Fraction] = {}
    for path, coeff in P.potential.terms.items():
        arrows_in_cycle = path.arrows
        n = len(arrows_in_cycle)
        start = next((s for s in range(n) if quiver.arrow(arrows_in_cycle[s]).source != k), 0)
        rotated = arrows_in_cycle[start:] + arrows_in_cycle[:start]
        replaced: List[str] = []
        s = 0
        while s < n:
            x = rotated[s]
            if x in incoming_names and s + 1 < n and rotated[s + 1] in outgoing_names:
                replaced.append(_composite(rotated[s + 1], x))
                s += 2
            else:
                replaced.append(x)
                s += 1
        axpy(terms, coeff, {_path_of(new_quiver, replaced): Fraction(1)})
    for a in incoming:
        for b in outgoing:
            cycle = (_composite(b.name, a.name), _star(b.name), _star(a.name))
            axpy(terms, Fraction(1), {_path_of(new_quiver, cycle): Fraction(1)})
    return GradedQP(new_quiver, degrees, PathPoly(terms), dW, name=P.name, allow_two_cycles=True)


def premutate_left(P: GradedQP, k: str) -> GradedQP:
    return _premutate(P, k, LEFT)


def premutate_right(P: GradedQP, k: str) -> GradedQP:
    return _premutate(P, k, RIGHT)


# 约化

def _substitute(W: PathPoly, quiver: Quiver, images: Mapping[str, PathPoly], cap: int) -> PathPoly:
    """把箭头替换为给定多项式，丢弃长度超过 cap 的项"""
    result: Dict[Path, Fraction] = {}
    for path, coeff in W.terms.items():
        partial: Dict[Path, Fraction] = {}
        first = images.get(path.arrows[0], PathPoly.path(_path_of(quiver, path.arrows[:1])))
        for p, c in first.terms.items():
            partial[p] = coeff * c
        for a in path.arrows[1:]:
            factor = images.get(a, PathPoly.path(_path_of(quiver, (a,))))
            product: Dict[Path, Fraction] = {}
            for p, c in partial.items():
                for q, e in factor.terms.items():
                    pq = p.then(q)
                    if pq is not None and pq.length <= cap:
                        axpy(product, c * e, {pq: Fraction(1)})
            if len(product) > MAX_POTENTIAL_TERMS:
                raise CapExceeded("代换后势的项数超过上限", MAX_POTENTIAL_TERMS, partial=len(product))
            partial = product
        for p, c in partial.items():
            axpy(result, c, {p: Fraction(1)})
    return PathPoly(result)


def _two_cycle_terms(W: PathPoly) -> List[Tuple[Path, Fraction]]:
    return sorted(((p, c) for p, c in W.terms.items() if p.length == 2), key=lambda t: t[0].arrows)


def reduce(P: GradedQP, cap: int = DEFAULT_POTENTIAL_CAP) -> GradedQP:
    """逐对消去势中的 2-圈项 cd：用 c ↦ c - V/κ, d ↦ d - U/κ 迭代，直到其余项不含 c, d"""
    quiver = P.quiver
    degrees = dict(P.degrees)
    W = canonical_potential(P.potential, quiver)
    rounds = 0
    while True:
        pairs = _two_cycle_terms(W)
        if not pairs:
            break
        cycle, _ = pairs[0]
        c, d = cycle.arrows
        while True:
            kappa = W.terms[cycle]
            rest = W - PathPoly.path(cycle, kappa)
            if not any(c in p.arrows or d in p.arrows for p in rest.terms):
                break
            rounds += 1
            if rounds > MAX_REDUCTION_ROUNDS:
                raise CapExceeded("2-圈消去没有在轮数上限内结束", MAX_REDUCTION_ROUNDS, partial=W)
            U = cyclic_derivative(rest, c, quiver)
            V = cyclic_derivative(rest, d, quiver)
            images = {
                c: PathPoly.path(_path_of(quiver, (c,))) - V.scale(1 / kappa),
                d: PathPoly.path(_path_of(quiver, (d,))) - U.scale(1 / kappa),
            }
            W = canonical_potential(_substitute(W, quiver, images, cap), quiver)
        W = W - PathPoly.path(cycle, W.terms[cycle])
        quiver = quiver.without([c, d])
        degrees.pop(c)
        degrees.pop(d)
        W = canonical_potential(W, quiver)
        logger.debug(f"Removed 2-cycle {c}, {d}")
    return GradedQP(quiver, degrees, W, P.potential_degree, name=P.name, allow_two_cycles=True)


def _finish(R: GradedQP, name: str) -> GradedQP:
    if R.quiver.two_cycles():
        pairs = [(a.name, b.name) for a, b in R.quiver.two_cycles()]
        raise DomainError(f"约化后仍有 2-圈 {pairs}，势退化")
    return GradedQP(R.quiver, R.degrees, R.potential, R.potential_degree, name=name)


def mutate_left(P: GradedQP, k: str, cap: int = DEFAULT_POTENTIAL_CAP) -> GradedQP:
    return _finish(reduce(premutate_left(P, k), cap), P.name)


def mutate_right(P: GradedQP, k: str, cap: int = DEFAULT_POTENTIAL_CAP) -> GradedQP:
    return _finish(reduce(premutate_right(P, k), cap), P.name)


def mutate(P: GradedQP, k: str, side: str = LEFT, cap: int = DEFAULT_POTENTIAL_CAP) -> GradedQP:
    if side == LEFT:
        return mutate_left(P, k, cap)
    if side == RIGHT:
        return mutate_right(P, k, cap)
    raise DomainError(f"未知方向: {side}")


def mutate_orbit(P: GradedQP, orbit: Sequence[str], side: str = LEFT,
                 cap: int = DEFAULT_POTENTIAL_CAP) -> GradedQP:
    """沿两两不相邻的顶点轨道依次变换"""
    for i, u in enumerate(orbit):
        for v in orbit[i + 1:]:
            if u == v or P.quiver.adjacent(u, v):
                raise DomainError(f"轨道中的顶点 {u} 与 {v} 相邻")
    result = P
    for k in orbit:
        result = mutate(result, k, side, cap)
    return result


# 经典比较

def exchange_matrix(quiver: Quiver) -> List[List[int]]:
    """b_ij = #(i→j) - #(j→i)"""
    index = {v: k for k, v in enumerate(quiver.vertices)}
    n = len(index)
    B = [[0] * n for _ in range(n)]
    for a in quiver.arrows:
        B[index[a.source]][index[a.target]] += 1
        B[index[a.target]][index[a.source]] -= 1
    return B


def matrix_mutation(B: Sequence[Sequence[int]], k: int) -> List[List[int]]:
    """斜对称矩阵的 Fomin–Zelevinsky 变换"""
    n = len(B)
    if not 0 <= k < n:
        raise DomainError(f"变换下标越界: {k}")
    out = [list(row) for row in B]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                out[i][j] = -B[i][j]
            elif B[i][k] * B[k][j] > 0:
                sign = 1 if B[i][k] > 0 else -1
                out[i][j] = B[i][j] + sign * B[i][k] * B[k][j]
    return out


def forget_grading(P: GradedQP) -> GradedQP:
    return GradedQP(P.quiver, {a.name: 0 for a in P.quiver.arrows}, P.potential, 0, name=P.name)


def relabel(P: GradedQP, prefix: str = "a") -> GradedQP:
    """箭头按顺序改名为 a1, a2, ...，用于多次变换之后"""
    names = {a.name: f"{prefix}{n}" for n, a in enumerate(P.quiver.arrows, start=1)}
    quiver = Quiver.build(P.quiver.vertices, [(names[a.name], a.source, a.target) for a in P.quiver.arrows])
    potential = PathPoly({Path(p.source, p.target, tuple(names[x] for x in p.arrows)): c
                          for p, c in P.potential.terms.items()})
    return GradedQP(quiver, {names[k]: v for k, v in P.degrees.items()}, potential,
                    P.potential_degree, P.name, P.allow_two_cycles)


def potential_terms(P: GradedQP) -> List[Tuple[Fraction, Tuple[str, ...]]]:
    return [(c, p.arrows) for p, c in P.potential.sorted_terms()]


def qp_from_terms(quiver: Quiver, degrees: Mapping[str, int],
                  terms: Iterable[Tuple[object, Sequence[str]]], potential_degree: int,
                  name: str = "") -> GradedQP:
    W: Dict[Path, Fraction] = {}
    for coeff, arrows in terms:
        axpy(W, Fraction(coeff), {Path.of(quiver, list(arrows)): Fraction(1)})
    return GradedQP(quiver, degrees, PathPoly(W), potential_degree, name=name)
