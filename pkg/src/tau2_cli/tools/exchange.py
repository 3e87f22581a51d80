"""
带势箭图沿 Nakayama 轨道变换的交换图

逐层广度优先：每层的变换与 Jacobian 代数计算交给线程池，
去重与编号在主线程按固定顺序进行，保证输出确定。
"""

import concurrent.futures
from dataclasses import dataclass, field
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

import networkx as nx
from jinja2 import Template

from ..algebra.fdalgebra import InfiniteAlgebra, nakayama_data, permutation_orbits
from ..algebra.isomorphism import IsoClassifier, quiver_graph
from ..algebra.qp import LEFT, RIGHT, GradedQP, jacobian, mutate_orbit, relabel
from ..core.exceptions import CapExceeded, DomainError
from ..utils.logger import get_logger
from .formats import dump_record, qp_to_record

logger = get_logger(__name__)

NAKAYAMA = "nakayama"
SINGLETONS = "singletons"

DOT_TEMPLATE = Template(
    """digraph "{{ name }}" {
  node [shape=box, fontname="Helvetica"];
{% for node in nodes %}  n{{ node.id }} [label="{{ node.id }}: dim {{ node.dimension if node.dimension is not none else '?' }}"{% if node.selfinjective %}, penwidth=2{% endif %}];
{% endfor %}{% for edge in edges %}  n{{ edge.source }} -> n{{ edge.target }} [label="{{ edge.label }}"];
{% endfor %}}
"""
)


@dataclass
class ExchangeNode:
    id: int
    qp: GradedQP
    dimension: Optional[int] = None
    graded_dims: Dict[int, int] = field(default_factory=dict)
    selfinjective: Optional[bool] = None
    orbits: List[List[str]] = field(default_factory=list)
    status: str = "ok"

    def to_dict(self) -> Dict[str, object]:
        return {
            "id": self.id,
            "dimension": self.dimension,
            "graded_dims": {str(k): v for k, v in self.graded_dims.items()},
            "selfinjective": self.selfinjective,
            "orbits": self.orbits,
            "status": self.status,
            "qp": dump_record(qp_to_record(self.qp)),
        }


@dataclass(frozen=True)
class ExchangeEdge:
    source: int
    target: int
    orbit: Tuple[str, ...]
    side: str

    @property
    def label(self) -> str:
        return f"{side_mark(self.side)}{'+'.join(self.orbit)}"


def side_mark(side: str) -> str:
    return "L:" if side == LEFT else "R:"


@dataclass
class ExchangeGraph:
    name: str
    policy: str
    graded: bool
    max_nodes: int
    cap: int
    nodes: List[ExchangeNode] = field(default_factory=list)
    edges: List[ExchangeEdge] = field(default_factory=list)
    truncated: bool = False
    skipped: int = 0

    def to_dict(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "policy": self.policy,
            "dedup": "graded quiver + graded dimensions" if self.graded
                     else "underlying quiver + total dimension",
            "max_nodes": self.max_nodes,
            "cap": self.cap,
            "truncated": self.truncated,
            "skipped_mutations": self.skipped,
            "nodes": [n.to_dict() for n in self.nodes],
            "edges": [{"source": e.source, "target": e.target, "orbit": list(e.orbit), "side": e.side}
                      for e in self.edges],
        }

    def to_dot(self) -> str:
        return DOT_TEMPLATE.render(name=self.name or "exchange", nodes=self.nodes,
                                   edges=[{"source": e.source, "target": e.target, "label": e.label}
                                          for e in self.edges])

    def is_closed(self) -> bool:
        ids = {n.id for n in self.nodes}
        return all(e.source in ids and e.target in ids for e in self.edges)


def evaluate(qp: GradedQP, cap: int) -> Tuple[Optional[int], Dict[int, int], Optional[bool], List[List[str]], str]:
    """(维数, 分次维数, 是否自内射, Nakayama 轨道, 状态)"""
    try:
        result = jacobian(qp, cap)
    except CapExceeded:
        return None, {}, None, [], "cap"
    if isinstance(result, InfiniteAlgebra):
        return None, {}, False, [], "infinite"
    ok, perm, _ = nakayama_data(result)
    orbits = permutation_orbits(perm, qp.quiver.vertices) if ok else []
    return result.dimension, result.graded_dims(), ok, orbits, "ok"


def _orbits_for(node: ExchangeNode, policy: str) -> List[List[str]]:
    if policy == NAKAYAMA and node.selfinjective:
        return node.orbits
    return [[v] for v in node.qp.quiver.vertices]


def _neighbours(node: ExchangeNode, policy: str, sides: Sequence[str],
                potential_cap: int) -> List[Tuple[Tuple[str, ...], str, Optional[GradedQP]]]:
    out = []
    for orbit in _orbits_for(node, policy):
        for side in sides:
            try:
                mutated = relabel(mutate_orbit(node.qp, orbit, side, potential_cap))
            except (DomainError, CapExceeded) as e:
                logger.debug(f"Node {node.id}: mutation at {orbit} ({side}) skipped: {e}")
                mutated = None
            out.append((tuple(orbit), side, mutated))
    return out


def _key(qp: GradedQP, dimension: Optional[int], graded_dims: Dict[int, int],
         graded: bool) -> Tuple[object, Hashable]:
    if graded:
        return quiver_graph(qp.quiver, qp.degrees), tuple(sorted(graded_dims.items()))
    return quiver_graph(qp.quiver), dimension


def explore(start: GradedQP, policy: str = NAKAYAMA, max_nodes: int = 500, cap: int = 32,
            potential_cap: int = 24, max_workers: int = 4, graded: bool = False,
            sides: Sequence[str] = (LEFT, RIGHT), timeout: Optional[float] = None) -> ExchangeGraph:
    """广度优先闭包；节点数达到 max_nodes 时停止并标记 truncated"""
    if policy not in (NAKAYAMA, SINGLETONS):
        raise DomainError(f"未知轨道策略: {policy}")
    limit = max(1, max_nodes)
    graph = ExchangeGraph(start.name, policy, graded, max_nodes, cap)
    classifier = IsoClassifier()
    class_to_node: Dict[int, int] = {}
    seen_edges = set()

    root = ExchangeNode(0, start)
    root.dimension, root.graded_dims, root.selfinjective, root.orbits, root.status = evaluate(start, cap)
    if not root.selfinjective:
        logger.warning("Starting Jacobian algebra is not selfinjective; exploring with singleton orbits")
    G, extra = _key(start, root.dimension, root.graded_dims, graded)
    _, cid = classifier.register(G, extra)
    class_to_node[cid] = 0
    graph.nodes.append(root)

    frontier = [root] if max_nodes > 0 else []
    with concurrent.futures.ThreadPoolExecutor(max_workers=max_workers) as executor:
        while frontier:
            expansions = list(executor.map(
                lambda n: _neighbours(n, policy, sides, potential_cap), frontier, timeout=timeout))
            candidates: List[Tuple[int, Tuple[str, ...], str, GradedQP]] = []
            for node, found in zip(frontier, expansions):
                for orbit, side, qp in found:
                    if qp is None:
                        graph.skipped += 1
                    else:
                        candidates.append((node.id, orbit, side, qp))
            values = list(executor.map(lambda item: evaluate(item[3], cap), candidates, timeout=timeout))

            next_frontier: List[ExchangeNode] = []
            for (source, orbit, side, qp), value in zip(candidates, values):
                dimension, graded_dims, selfinjective, orbits, status = value
                G, extra = _key(qp, dimension, graded_dims, graded)
                if len(graph.nodes) >= limit:
                    target = _lookup(classifier, class_to_node, G, extra)
                    if target is None:
                        graph.truncated = True
                        continue
                else:
                    is_new, cid = classifier.register(G, extra)
                    if is_new:
                        node = ExchangeNode(len(graph.nodes), qp.with_name(f"{start.name}#{len(graph.nodes)}"),
                                            dimension, graded_dims, selfinjective, orbits, status)
                        class_to_node[cid] = node.id
                        graph.nodes.append(node)
                        next_frontier.append(node)
                    target = class_to_node[cid]
                edge = ExchangeEdge(source, target, orbit, side)
                if edge not in seen_edges:
                    seen_edges.add(edge)
                    graph.edges.append(edge)
            logger.info(f"Exchange: {len(graph.nodes)} nodes, frontier {len(next_frontier)}")
            frontier = next_frontier
    if graph.truncated:
        logger.warning(f"Exchange graph truncated at {limit} nodes")
    return graph


def _lookup(classifier: IsoClassifier, class_to_node: Dict[int, int], G: nx.DiGraph,
            extra: Hashable) -> Optional[int]:
    cid = classifier.find(G, extra)
    return None if cid is None else class_to_node.get(cid)
