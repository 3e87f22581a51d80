"""
倾斜层直和的自同态代数 End(T) 的箭图加关系表示

顶点是直和项，箭头是 rad/rad² 的一组基，关系是路径代数到 End(T) 的满射的核中
模去 (箭头·核 + 核·箭头) 后的一组极小生成元。路径 a·b 表示先 a 后 b。
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..core.exceptions import DomainError, InvariantViolation
from ..utils.logger import get_logger
from .lgroup import LVec, WeightType, delta, x
from .linalg import EchelonBasis, axpy, kernel
from .paths import AlgebraPresentation, Path, PathPoly, Quiver
from .ring import RElement, basis, format_monomial
from .sheaves import (ExcSimple, LineBundle, SheafSum, SheafSymbol, canonical_sum,
                      hom_dim, simple_coefficient)

logger = get_logger(__name__)

Vector = Dict[int, Fraction]


@dataclass
class _HomSpace:
    """Hom(X,Y) 的一组基；线丛之间是单项式，到单层的是 φ"""

    source: SheafSymbol
    target: SheafSymbol
    labels: List[str]
    monomials: List[Tuple[int, ...]]

    @property
    def dim(self) -> int:
        return len(self.labels)


def _hom_space(X: SheafSymbol, Y: SheafSymbol) -> _HomSpace:
    if isinstance(X, LineBundle) and isinstance(Y, LineBundle):
        monos = basis(Y.a - X.a)
        return _HomSpace(X, Y, [format_monomial(m) for m in monos], monos)
    n = hom_dim(X, Y)
    if isinstance(Y, ExcSimple):
        return _HomSpace(X, Y, ["phi"] * n, [])
    return _HomSpace(X, Y, ["id"] * n, [])


class _Composer:
    """直和项之间态射的复合，坐标取自 _hom_space 的基"""

    def __init__(self, summands: Sequence[SheafSymbol]) -> None:
        self.summands = list(summands)
        self.spaces: Dict[Tuple[int, int], _HomSpace] = {}
        for s, X in enumerate(self.summands):
            for t, Y in enumerate(self.summands):
                self.spaces[(s, t)] = _hom_space(X, Y)

    def compose(self, s: int, t: int, u: int, f: Vector, g: Vector) -> Vector:
        """先 f: X_s → X_t 再 g: X_t → X_u"""
        X, Y, Z = self.summands[s], self.summands[t], self.summands[u]
        if not f or not g:
            return {}
        if isinstance(Z, ExcSimple):
            if isinstance(Y, ExcSimple):
                # g 是单层上的数乘
                return {k: c * g.get(0, Fraction(0)) for k, c in f.items() if c * g.get(0, 0)}
            if not isinstance(X, LineBundle):
                return {}
            r = self._element(s, t, f)
            kappa = simple_coefficient(r, X.a, Y.a, Z) * g.get(0, Fraction(0))
            return {0: kappa} if kappa and self.spaces[(s, u)].dim else {}
        if isinstance(X, ExcSimple):
            return {}
        if isinstance(Y, ExcSimple):
            return {}
        product = self._element(s, t, f) * self._element(t, u, g)
        monos = self.spaces[(s, u)].monomials
        position = {m: k for k, m in enumerate(monos)}
        out: Vector = {}
        for mono, coeff in product.terms.items():
            if mono not in position:
                raise InvariantViolation(f"乘积单项式 {mono} 不在基中")
            out[position[mono]] = coeff
        return out

    def _element(self, s: int, t: int, v: Vector) -> RElement:
        X, Y = self.summands[s], self.summands[t]
        monos = self.spaces[(s, t)].monomials
        return RElement(Y.a - X.a, {monos[k]: c for k, c in v.items() if c})


def _vertex_name(X: SheafSymbol) -> str:
    return X.label()


def _vertex_weights(summands: Sequence[SheafSymbol]) -> List[int]:
    lines = [delta(X.a) for X in summands if isinstance(X, LineBundle)]
    top = 1 + max(lines, default=0)
    return [delta(X.a) if isinstance(X, LineBundle) else top for X in summands]


def end_algebra(T: SheafSum, name: str = "") -> AlgebraPresentation:
    """End(T) 的 Gabriel 箭图与极小关系"""
    if not T.is_basic():
        raise DomainError(f"直和不是基本的: {T.format()}")
    summands = list(T.summands)
    n = len(summands)
    composer = _Composer(summands)
    potentials = _vertex_weights(summands)
    names = [_vertex_name(X) for X in summands]

    # rad² 与箭头
    arrows: List[Tuple[str, int, int, Vector]] = []
    counter: Dict[str, int] = {}
    order = sorted(range(n), key=lambda k: potentials[k])
    for s in order:
        for u in order:
            if s == u or composer.spaces[(s, u)].dim == 0:
                continue
            square = EchelonBasis()
            for t in range(n):
                if t in (s, u):
                    continue
                for k1 in range(composer.spaces[(s, t)].dim):
                    for k2 in range(composer.spaces[(t, u)].dim):
                        square.add(composer.compose(s, t, u, {k1: Fraction(1)}, {k2: Fraction(1)}))
            labels = composer.spaces[(s, u)].labels
            for k, label in enumerate(labels):
                if square.add({k: Fraction(1)}) is None:
                    counter[label] = counter.get(label, 0) + 1
                    arrows.append((f"{label}_{counter[label]}", s, u, {k: Fraction(1)}))

    quiver = Quiver.build(names, [(a, names[s], names[u]) for a, s, u, _ in arrows])
    if not quiver.is_acyclic():
        raise InvariantViolation("自同态代数的箭图出现了圈")
    values = {a: (s, u, v) for a, s, u, v in arrows}
    index = {v: k for k, v in enumerate(names)}
    max_length = max(n - 1, 1)

    def evaluate(path: Path) -> Vector:
        s = index[path.source]
        first = values[path.arrows[0]]
        current, position = dict(first[2]), first[1]
        for a in path.arrows[1:]:
            _, u, v = values[a]
            current = composer.compose(s, position, u, current, v)
            position = u
        return current

    # 每对顶点处的核
    kernels: Dict[Tuple[int, int], List[PathPoly]] = {}
    for s in order:
        for u in order:
            if s == u:
                continue
            paths = [p for p in quiver.paths(names[s], names[u], max_length) if p.length >= 1]
            if not paths:
                continue
            images = [evaluate(p) for p in paths]
            hom = composer.spaces[(s, u)].dim
            covered = EchelonBasis()
            for img in images:
                covered.add(img)
            if len(covered) != hom:
                raise InvariantViolation(f"路径没有张成 Hom({names[s]}, {names[u]})")
            kernels[(s, u)] = [PathPoly({paths[k]: c for k, c in rel.items()}) for rel in kernel(images)]

    # 极小关系：在 箭头·K + K·箭头 之外线性无关
    relations: List[PathPoly] = []
    for (s, u), rels in sorted(kernels.items(), key=lambda item: (potentials[item[0][0]], item[0])):
        generated = EchelonBasis()
        for a, a_s, a_u, _ in arrows:
            arrow = PathPoly.path(Path(names[a_s], names[a_u], (a,)))
            if a_s == s and (a_u, u) in kernels:
                for r in kernels[(a_u, u)]:
                    generated.add(dict((arrow * r).terms))
            if a_u == u and (s, a_s) in kernels:
                for r in kernels[(s, a_s)]:
                    generated.add(dict((r * arrow).terms))
        for r in rels:
            if generated.add(dict(r.terms)) is None:
                relations.append(_normalized(r))

    weights = {a: potentials[u] - potentials[s] for a, s, u, _ in arrows}
    logger.debug(f"End algebra of {n} summands: {len(arrows)} arrows, {len(relations)} relations")
    return AlgebraPresentation(quiver, tuple(relations), name=name, weights=weights)


def _normalized(r: PathPoly) -> PathPoly:
    """首项系数化为 1"""
    lead, coeff = r.sorted_terms()[0]
    return r.scale(1 / coeff)


def canonical_algebra(w: WeightType, name: str = "") -> AlgebraPresentation:
    """典范代数：p_i 条臂从 O(0) 到 O(c)，关系 arm_i - arm_2 + λ_i arm_1 (i ≥ 3)"""
    for i, p_i in enumerate(w.weights[2:], start=3):
        if p_i < 2:
            raise DomainError(f"第 {i} 个权重为 1 时关系不是容许的")
    T = canonical_sum(w)
    names = {X.a: X.label() for X in T.summands}
    source = names[T.summands[0].a]
    sink = names[T.summands[-1].a]
    arrows = []
    arms: List[Path] = []
    for i, p_i in enumerate(w.weights, start=1):
        chain = [source]
        for j in range(1, p_i):
            chain.append(_arm_vertex(T, i, j))
        chain.append(sink)
        arm = []
        for j in range(1, p_i + 1):
            arrows.append((f"x{i}_{j}", chain[j - 1], chain[j]))
            arm.append(f"x{i}_{j}")
        arms.append(Path(source, sink, tuple(arm)))
    vertex_names = [X.label() for X in T.summands]
    quiver = Quiver.build(vertex_names, arrows)
    relations = []
    for i in range(3, w.t + 1):
        lam = w.parameters[i - 1]
        terms: Dict[Path, Fraction] = {}
        axpy(terms, Fraction(1), {arms[i - 1]: Fraction(1)})
        axpy(terms, Fraction(-1), {arms[1]: Fraction(1)})
        axpy(terms, lam, {arms[0]: Fraction(1)})
        relations.append(PathPoly(terms))
    weights = {a: w.p // w.weights[int(a[1:].split("_")[0]) - 1] for a, _, _ in arrows}
    return AlgebraPresentation(quiver, tuple(relations), name=name or f"canonical-{w.format()}",
                               weights=weights)


def _arm_vertex(T: SheafSum, i: int, j: int) -> str:
    target = x(T.w, i).scale(j)
    for X in T.summands:
        if X.a == target:
            return X.label()
    raise InvariantViolation(f"典范直和缺少 O({target.pretty()})")


def hom_dimension_total(T: SheafSum) -> int:
    """Σ dim Hom(X,Y)，等于 End(T) 的维数"""
    return sum(hom_dim(X, Y) for X in T.summands for Y in T.summands)


def cross_check(T: SheafSum, check_lambda: Fraction, name: str = "") -> Optional[str]:
    """在另一组参数下重算箭头与关系个数，不一致时返回说明"""
    w = T.w
    if w.t <= 3:
        return None
    extra = [Fraction(check_lambda) + k for k in range(w.t - 3)]
    other_w = w.with_parameters(extra)
    moved = SheafSum.of([_rebase(X, other_w) for X in T.summands], other_w)
    A, B = end_algebra(T, name), end_algebra(moved, name)
    first = (len(A.quiver.arrows), len(A.relations), A.relation_counts())
    second = (len(B.quiver.arrows), len(B.relations), B.relation_counts())
    if first[:2] != second[:2] or sorted(first[2].values()) != sorted(second[2].values()):
        message = f"参数 {w.parameters[3:]} 与 {other_w.parameters[3:]} 下的结果不一致"
        logger.warning(f"Non-generic parameters for {T.format()}")
        return message
    return None


def _rebase(X: SheafSymbol, w: WeightType) -> SheafSymbol:
    if isinstance(X, LineBundle):
        return LineBundle(LVec(w, X.a.m, X.a.coords))
    return ExcSimple(w, X.i, X.m)
