"""
路径代数上的非交换标准基

两种序：
- 局部序 (截断完备化)：首项取最短、同长度时字典序最小的词，
  在 kQ/J^N 中计算 I + J^N 的标准基；
- 分次序 (普通完备化)：首项取权重最大的词，同权重时长度大者，
  再同长度时字典序最小者。两种序下 ab - cd 的首项都是 ab。
"""

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from ..core.exceptions import CapExceeded, DomainError
from ..utils.logger import get_logger
from .linalg import axpy
from .paths import AlgebraPresentation, Path, PathPoly, Quiver

logger = get_logger(__name__)

Word = Tuple[int, ...]
Poly = Dict[Word, Fraction]

MONOMIAL_ORDER = "length-lex (leading word lexicographically smallest, arrows in declared order)"


class WordCodec:
    """路径与整数词的互相转换"""

    def __init__(self, quiver: Quiver) -> None:
        self.quiver = quiver
        self.names = [a.name for a in quiver.arrows]
        self.index = {a.name: k for k, a in enumerate(quiver.arrows)}
        self.src = [a.source for a in quiver.arrows]
        self.tgt = [a.target for a in quiver.arrows]

    def word(self, path: Path) -> Word:
        return tuple(self.index[a] for a in path.arrows)

    def path(self, word: Word, vertex: Optional[str] = None) -> Path:
        if not word:
            return Path.trivial(vertex)
        return Path(self.src[word[0]], self.tgt[word[-1]], tuple(self.names[k] for k in word))

    def poly(self, f: PathPoly) -> Poly:
        out: Poly = {}
        for path, c in f.terms.items():
            if path.length == 0:
                raise DomainError(f"关系不能含平凡路径: {f}")
            axpy(out, c, {self.word(path): Fraction(1)})
        return out

    def to_pathpoly(self, f: Poly) -> PathPoly:
        return PathPoly({self.path(w): c for w, c in f.items()})

    def composable(self, u: Word, v: Word) -> bool:
        return not u or not v or self.tgt[u[-1]] == self.src[v[0]]


def _local_key(w: Word) -> Tuple[int, Word]:
    return (len(w), w)


class _RuleSet:
    """首词 -> 首一多项式，按首字母索引"""

    def __init__(self) -> None:
        self.rules: Dict[int, Tuple[Word, Poly]] = {}
        self.by_first: Dict[int, set] = {}
        self._ids = itertools.count()

    def insert(self, lead: Word, poly: Poly) -> int:
        rid = next(self._ids)
        self.rules[rid] = (lead, poly)
        self.by_first.setdefault(lead[0], set()).add(rid)
        return rid

    def remove(self, rid: int) -> Tuple[Word, Poly]:
        lead, poly = self.rules.pop(rid)
        self.by_first[lead[0]].discard(rid)
        return lead, poly

    def find(self, w: Word) -> Optional[Tuple[int, int]]:
        """返回 (规则, 位置)，使规则首词是 w 在该位置的子词"""
        for pos, letter in enumerate(w):
            for rid in sorted(self.by_first.get(letter, ())):
                lead = self.rules[rid][0]
                if w[pos:pos + len(lead)] == lead:
                    return rid, pos
        return None

    def leads(self) -> List[Word]:
        return [lead for lead, _ in self.rules.values()]

    def contained_in(self, lead: Word) -> List[int]:
        """首词包含 lead 作为子词的规则"""
        hits = []
        for rid, (other, _) in self.rules.items():
            n = len(lead)
            if any(other[k:k + n] == lead for k in range(len(other) - n + 1)):
                hits.append(rid)
        return hits


def _overlaps(u: Word, v: Word) -> Iterable[int]:
    """u 的真后缀等于 v 的真前缀时的重叠长度"""
    for l in range(1, min(len(u), len(v))):
        if u[-l:] == v[:l]:
            yield l


def _spoly(lead_u: Word, f: Poly, lead_v: Word, g: Poly, l: int) -> Poly:
    """f·v' - u'·g，其中 u = u'·s, v = s·v'"""
    right = lead_v[l:]
    left = lead_u[:-l]
    out: Poly = {}
    for w, c in f.items():
        axpy(out, c, {w + right: Fraction(1)})
    for w, c in g.items():
        axpy(out, -c, {left + w: Fraction(1)})
    return out


class TruncatedStandardBasis:
    """kQ/J^N 中理想 I + J^N 的标准基 (局部序)"""

    def __init__(self, quiver: Quiver, relations: Sequence[PathPoly], truncation: int,
                 step_cap: int = 200000) -> None:
        if truncation < 1:
            raise DomainError("截断长度至少为 1")
        self.codec = WordCodec(quiver)
        self.N = truncation
        self.rules = _RuleSet()
        self._build([self.codec.poly(r) for r in relations], step_cap)

    def _truncate(self, f: Poly) -> Poly:
        return {w: c for w, c in f.items() if len(w) < self.N}

    def _reduce(self, f: Poly) -> Poly:
        f = self._truncate(f)
        out: Poly = {}
        while f:
            w = min(f, key=_local_key)
            c = f.pop(w)
            hit = self.rules.find(w)
            if hit is None:
                out[w] = c
                continue
            rid, pos = hit
            lead, g = self.rules.rules[rid]
            prefix, suffix = w[:pos], w[pos + len(lead):]
            for gw, gc in g.items():
                if gw == lead:
                    continue
                nw = prefix + gw + suffix
                if len(nw) < self.N:
                    axpy(f, -c * gc, {nw: Fraction(1)})
        return out

    def _build(self, relations: List[Poly], step_cap: int) -> None:
        queue: List[Poly] = list(relations)
        steps = 0
        while queue:
            steps += 1
            if steps > step_cap:
                raise CapExceeded("标准基计算步数超过上限", step_cap, partial=self.rules.leads())
            h = self._reduce(queue.pop(0))
            if not h:
                continue
            lead = min(h, key=_local_key)
            h = {w: c / h[lead] for w, c in h.items()}
            for rid in self.rules.contained_in(lead):
                _, old = self.rules.remove(rid)
                queue.append(old)
            new_id = self.rules.insert(lead, h)
            for rid, (other, g) in list(self.rules.rules.items()):
                pairs = [(lead, h, other, g)]
                if rid != new_id:
                    pairs.append((other, g, lead, h))
                for lu, fu, lv, fv in pairs:
                    for l in _overlaps(lu, lv):
                        if len(lu) + len(lv) - l >= self.N:
                            continue
                        queue.append(_spoly(lu, fu, lv, fv, l))

    def normal_form(self, f: PathPoly) -> PathPoly:
        """平凡路径不参与约化"""
        trivial = {p: c for p, c in f.terms.items() if p.length == 0}
        rest = PathPoly({p: c for p, c in f.terms.items() if p.length > 0})
        reduced = self.codec.to_pathpoly(self._reduce(self.codec.poly(rest)))
        return reduced + PathPoly(trivial)

    def is_normal(self, w: Word) -> bool:
        return len(w) < self.N and self.rules.find(w) is None

    def normal_words(self, limit: Optional[int] = None) -> List[Path]:
        """全部正规路径 (含平凡路径)，超过 limit 时抛出 CapExceeded"""
        leads = set(self.rules.leads())
        quiver = self.codec.quiver
        out: List[Path] = []
        frontier: List[Tuple[str, Word]] = [(v, ()) for v in quiver.vertices]
        while frontier:
            new_frontier = []
            for vertex, w in frontier:
                out.append(self.codec.path(w, vertex))
                if limit is not None and len(out) > limit:
                    raise CapExceeded("正规路径数超过上限", limit, partial=len(out))
                if len(w) + 1 >= self.N:
                    continue
                end = self.codec.tgt[w[-1]] if w else vertex
                for a in quiver.out_arrows(end):
                    nw = w + (self.codec.index[a.name],)
                    if any(nw[k:] in leads for k in range(len(nw))):
                        continue
                    new_frontier.append((vertex, nw))
            frontier = new_frontier
        return out

    def leads(self) -> List[Path]:
        return [self.codec.path(w) for w in self.rules.leads()]


@dataclass
class RewritingSystem:
    """首词 -> 余项 的重写规则"""

    quiver: Quiver
    rules: List[Tuple[Path, PathPoly]]
    confluent: bool
    degree_cap: int
    weights: Dict[str, int]
    order: str = MONOMIAL_ORDER

    def lhs_words(self) -> List[Path]:
        return [lhs for lhs, _ in self.rules]


def _graded_key(weights: Sequence[int]) -> Callable[[Word], Tuple[int, int, Word]]:
    def key(w: Word) -> Tuple[int, int, Word]:
        return (sum(weights[k] for k in w), len(w), tuple(-k for k in w))
    return key


def groebner_complete(A: AlgebraPresentation, degree_cap: int,
                      weights: Optional[Mapping[str, int]] = None) -> RewritingSystem:
    """分次 Buchberger；重叠权重超过 degree_cap 时抛出 CapExceeded (携带部分系统)"""
    codec = WordCodec(A.quiver)
    if weights is None:
        weights = A.effective_weights() or {a.name: 1 for a in A.quiver.arrows}
    wvec = [weights[name] for name in codec.names]
    key = _graded_key(wvec)
    rules = _RuleSet()

    def reduce(f: Poly) -> Poly:
        f = dict(f)
        out: Poly = {}
        while f:
            w = max(f, key=key)
            c = f.pop(w)
            hit = rules.find(w)
            if hit is None:
                out[w] = c
                continue
            rid, pos = hit
            lead, g = rules.rules[rid]
            prefix, suffix = w[:pos], w[pos + len(lead):]
            for gw, gc in g.items():
                if gw != lead:
                    axpy(f, -c * gc, {prefix + gw + suffix: Fraction(1)})
        return out

    def weight(w: Word) -> int:
        return sum(wvec[k] for k in w)

    counter = itertools.count()
    heap: List[Tuple[int, int, Poly]] = []
    for r in A.relations:
        f = codec.poly(r)
        if f:
            heapq.heappush(heap, (max(weight(w) for w in f), next(counter), f))
    confluent = True
    while heap:
        _, _, f = heapq.heappop(heap)
        h = reduce(f)
        if not h:
            continue
        lead = max(h, key=key)
        h = {w: c / h[lead] for w, c in h.items()}
        for rid in rules.contained_in(lead):
            _, old = rules.remove(rid)
            heapq.heappush(heap, (max(weight(w) for w in old), next(counter), old))
        new_id = rules.insert(lead, h)
        for rid, (other, g) in list(rules.rules.items()):
            pairs = [(lead, h, other, g)]
            if rid != new_id:
                pairs.append((other, g, lead, h))
            for lu, fu, lv, fv in pairs:
                for l in _overlaps(lu, lv):
                    overlap_weight = weight(lu) + weight(lv[l:])
                    if overlap_weight > degree_cap:
                        confluent = False
                        continue
                    heapq.heappush(heap, (overlap_weight, next(counter), _spoly(lu, fu, lv, fv, l)))

    system = RewritingSystem(
        quiver=A.quiver,
        rules=[
            (codec.path(lead), codec.to_pathpoly({w: -c for w, c in g.items() if w != lead}))
            for lead, g in sorted(rules.rules.values(), key=lambda item: key(item[0]))
        ],
        confluent=confluent,
        degree_cap=degree_cap,
        weights=dict(weights),
    )
    logger.debug(f"Graded completion: {len(system.rules)} rules, confluent={confluent}")
    if not confluent:
        raise CapExceeded(f"重写系统在权重 {degree_cap} 内未合流", degree_cap, partial=system)
    return system


def growth_witness(system: RewritingSystem) -> Optional[List[Path]]:
    """正规词自动机中的一个圈；无圈 (有限维) 时返回 None"""
    codec = WordCodec(system.quiver)
    leads = {codec.word(p) for p in system.lhs_words()}
    longest = max((len(w) for w in leads), default=1)
    k = max(longest - 1, 0)
    graph = nx.DiGraph()

    def normal(w: Word) -> bool:
        return not any(w[i:j] in leads for i in range(len(w)) for j in range(i + 1, len(w) + 1))

    if k == 0:
        for a in system.quiver.arrows:
            if (codec.index[a.name],) not in leads:
                graph.add_edge(a.source, a.target, word=(codec.index[a.name],))
    else:
        nodes: List[Word] = [(i,) for i in range(len(codec.names)) if normal((i,))]
        for _ in range(k - 1):
            nodes = [w + (a,) for w in nodes for a in range(len(codec.names))
                     if codec.composable(w, (a,)) and normal(w + (a,))]
        by_prefix: Dict[Word, List[Word]] = {}
        for w in nodes:
            by_prefix.setdefault(w[:-1], []).append(w)
        for u in nodes:
            for v in by_prefix.get(u[1:], []):
                if normal(u + v[-1:]):
                    graph.add_edge(u, v, word=u + v[-1:])
    try:
        cycle = nx.find_cycle(graph)
    except nx.NetworkXNoCycle:
        return None
    return [codec.path(graph.edges[u, v]["word"]) for u, v in cycle]
