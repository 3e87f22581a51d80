"""
箭图、路径多项式与带关系的代数表示

路径按走向书写：a·b 表示先走 a 再走 b。
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from ..core.exceptions import DomainError
from .linalg import axpy


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    """有限箭图，顶点与箭头都有序"""

    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...]

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise DomainError("顶点名重复")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise DomainError("箭头名重复")
        vertex_set = set(self.vertices)
        for a in self.arrows:
            if a.source not in vertex_set or a.target not in vertex_set:
                raise DomainError(f"箭头 {a.name} 的端点不存在")

    @classmethod
    def build(cls, vertices: Iterable[str], arrows: Iterable[Tuple[str, str, str]]) -> "Quiver":
        return cls(tuple(vertices), tuple(Arrow(*a) for a in arrows))

    @property
    def arrow_map(self) -> Dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise DomainError(f"未知箭头: {name}")

    def arrow_index(self) -> Dict[str, int]:
        return {a.name: k for k, a in enumerate(self.arrows)}

    def out_arrows(self, v: str) -> List[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def in_arrows(self, v: str) -> List[Arrow]:
        return [a for a in self.arrows if a.target == v]

    def is_sink(self, v: str) -> bool:
        return not self.out_arrows(v)

    def is_source(self, v: str) -> bool:
        return not self.in_arrows(v)

    def arrows_between(self, u: str, v: str) -> List[Arrow]:
        return [a for a in self.arrows if a.source == u and a.target == v]

    def loops(self) -> List[Arrow]:
        return [a for a in self.arrows if a.source == a.target]

    def two_cycles(self) -> List[Tuple[Arrow, Arrow]]:
        pairs = []
        for a in self.arrows:
            for b in self.arrows:
                if a.source == b.target and a.target == b.source and a.source != a.target:
                    if (a.name, b.name) < (b.name, a.name):
                        pairs.append((a, b))
        return pairs

    def adjacent(self, u: str, v: str) -> bool:
        return bool(self.arrows_between(u, v) or self.arrows_between(v, u))

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, tuple(Arrow(a.name, a.target, a.source) for a in self.arrows))

    def without(self, names: Iterable[str]) -> "Quiver":
        drop = set(names)
        return Quiver(self.vertices, tuple(a for a in self.arrows if a.name not in drop))

    def paths(self, source: str, target: str, max_length: int) -> Iterator["Path"]:
        """source 到 target 的全部路径，长度不超过 max_length"""
        stack = [Path(source, source, ())]
        while stack:
            path = stack.pop()
            if path.target == target:
                yield path
            if path.length < max_length:
                for a in reversed(self.out_arrows(path.target)):
                    stack.append(Path(path.source, a.target, path.arrows + (a.name,)))

    def is_acyclic(self) -> bool:
        indegree = {v: len(self.in_arrows(v)) for v in self.vertices}
        queue = [v for v, d in indegree.items() if d == 0]
        seen = 0
        while queue:
            v = queue.pop()
            seen += 1
            for a in self.out_arrows(v):
                indegree[a.target] -= 1
                if indegree[a.target] == 0:
                    queue.append(a.target)
        return seen == len(self.vertices)


@dataclass(frozen=True, order=True)
class Path:
    """路径；长度为 0 时是顶点处的平凡路径"""

    source: str
    target: str
    arrows: Tuple[str, ...]

    @property
    def length(self) -> int:
        return len(self.arrows)

    @classmethod
    def of(cls, quiver: Quiver, names: Sequence[str]) -> "Path":
        if not names:
            raise DomainError("空箭头序列需要指定顶点")
        arrow_map = quiver.arrow_map
        try:
            arrows = [arrow_map[n] for n in names]
        except KeyError as e:
            raise DomainError(f"未知箭头: {e.args[0]}") from e
        for a, b in zip(arrows, arrows[1:]):
            if a.target != b.source:
                raise DomainError(f"路径不可复合: {a.name}·{b.name}")
        return cls(arrows[0].source, arrows[-1].target, tuple(names))

    @classmethod
    def trivial(cls, vertex: str) -> "Path":
        return cls(vertex, vertex, ())

    def then(self, other: "Path") -> Optional["Path"]:
        """先走 self 再走 other，不可复合时返回 None"""
        if self.target != other.source:
            return None
        return Path(self.source, other.target, self.arrows + other.arrows)

    def reversed(self) -> "Path":
        return Path(self.target, self.source, tuple(reversed(self.arrows)))

    def is_cycle(self) -> bool:
        return self.source == self.target and self.length > 0

    def __str__(self) -> str:
        if not self.arrows:
            return f"e[{self.source}]"
        return "·".join(self.arrows)


@dataclass(frozen=True)
class PathPoly:
    """路径的有理线性组合"""

    terms: Mapping[Path, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", {p: Fraction(c) for p, c in self.terms.items() if c != 0})

    @classmethod
    def of(cls, pairs: Iterable[Tuple[object, Path]]) -> "PathPoly":
        terms: Dict[Path, Fraction] = {}
        for coeff, path in pairs:
            axpy(terms, Fraction(coeff), {path: Fraction(1)})
        return cls(terms)

    @classmethod
    def path(cls, path: Path, coeff: Union[int, Fraction] = 1) -> "PathPoly":
        return cls({path: Fraction(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "PathPoly") -> "PathPoly":
        terms = dict(self.terms)
        axpy(terms, Fraction(1), dict(other.terms))
        return PathPoly(terms)

    def __sub__(self, other: "PathPoly") -> "PathPoly":
        terms = dict(self.terms)
        axpy(terms, Fraction(-1), dict(other.terms))
        return PathPoly(terms)

    def scale(self, k: Union[int, Fraction]) -> "PathPoly":
        k = Fraction(k)
        return PathPoly({p: k * c for p, c in self.terms.items()})

    def __neg__(self) -> "PathPoly":
        return self.scale(-1)

    def __mul__(self, other: "PathPoly") -> "PathPoly":
        """走向乘积，不可复合的项为零"""
        terms: Dict[Path, Fraction] = {}
        for p, a in self.terms.items():
            for q, b in other.terms.items():
                pq = p.then(q)
                if pq is not None:
                    axpy(terms, a * b, {pq: Fraction(1)})
        return PathPoly(terms)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PathPoly) and dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def endpoints(self) -> Optional[Tuple[str, str]]:
        """所有项共同的 (起点, 终点)，不一致时返回 None"""
        ends = {(p.source, p.target) for p in self.terms}
        return ends.pop() if len(ends) == 1 else None

    def min_length(self) -> int:
        return min((p.length for p in self.terms), default=0)

    def max_length(self) -> int:
        return max((p.length for p in self.terms), default=0)

    def arrows_used(self) -> set:
        return {a for p in self.terms for a in p.arrows}

    def sorted_terms(self) -> List[Tuple[Path, Fraction]]:
        return sorted(self.terms.items(), key=lambda item: (item[0].length, item[0].arrows))

    def reversed(self) -> "PathPoly":
        return PathPoly({p.reversed(): c for p, c in self.terms.items()})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for path, coeff in self.sorted_terms():
            if coeff == 1:
                parts.append(str(path))
            elif coeff == -1:
                parts.append(f"-{path}")
            else:
                parts.append(f"{coeff}*{path}")
        return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class AlgebraPresentation:
    """箭图加关系；weights 是使关系齐次的正箭头权重 (可选)"""

    quiver: Quiver
    relations: Tuple[PathPoly, ...]
    name: str = ""
    weights: Optional[Mapping[str, int]] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "relations", tuple(r for r in self.relations if not r.is_zero()))
        arrow_map = self.quiver.arrow_map
        for r in self.relations:
            if r.endpoints() is None:
                raise DomainError(f"关系的项端点不一致: {r}")
            for path in r.terms:
                for a in path.arrows:
                    if a not in arrow_map:
                        raise DomainError(f"关系使用了未知箭头 {a}")
        if self.weights is not None:
            missing = [a.name for a in self.quiver.arrows if a.name not in self.weights]
            if missing or any(self.weights[a] <= 0 for a in self.weights):
                raise DomainError("箭头权重必须为正且覆盖所有箭头")

    def check_admissible(self) -> None:
        """每个关系的项长度至少为 2"""
        for r in self.relations:
            if r.min_length() < 2:
                raise DomainError(f"关系不是容许的: {r}")

    def effective_weights(self) -> Optional[Dict[str, int]]:
        """使所有关系齐次的权重：优先用给定权重，其次路径长度"""
        candidates = []
        if self.weights is not None:
            candidates.append(dict(self.weights))
        candidates.append({a.name: 1 for a in self.quiver.arrows})
        for weights in candidates:
            if all(_is_homogeneous(r, weights) for r in self.relations):
                return weights
        return None

    def opposite(self) -> "AlgebraPresentation":
        return AlgebraPresentation(
            self.quiver.opposite(),
            tuple(r.reversed() for r in self.relations),
            name=f"{self.name}^op" if self.name else "",
            weights=self.weights,
        )

    def relation_counts(self) -> Dict[Tuple[str, str], int]:
        counts: Dict[Tuple[str, str], int] = {}
        for r in self.relations:
            ends = r.endpoints()
            counts[ends] = counts.get(ends, 0) + 1
        return counts

    def with_relations(self, relations: Iterable[PathPoly]) -> "AlgebraPresentation":
        return AlgebraPresentation(self.quiver, tuple(relations), self.name, self.weights)

    def renamed(self, name: str) -> "AlgebraPresentation":
        return AlgebraPresentation(self.quiver, self.relations, name, self.weights)


def path_weight(path: Path, weights: Mapping[str, int]) -> int:
    return sum(weights[a] for a in path.arrows)


def _is_homogeneous(r: PathPoly, weights: Mapping[str, int]) -> bool:
    return len({path_weight(p, weights) for p in r.terms}) <= 1
