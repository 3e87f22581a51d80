"""
箭图与代数表示的同构判定和去重

先按廉价签名 (顶点数、边数、度序列、WL 哈希) 分桶，桶内用 DiGraphMatcher 精确比较。
"""

import threading
from collections import Counter, defaultdict
from typing import Dict, Hashable, List, Mapping, Optional, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from ..utils.logger import get_logger
from .paths import AlgebraPresentation, Quiver

logger = get_logger(__name__)

Signature = Tuple[int, int, Tuple[int, ...], Tuple[int, ...], str]


def quiver_graph(quiver: Quiver, degrees: Optional[Mapping[str, int]] = None) -> nx.DiGraph:
    """每对顶点一条边，label 是箭头 (次数) 的多重集"""
    G = nx.DiGraph()
    G.add_nodes_from(quiver.vertices)
    bundles: Dict[Tuple[str, str], List[int]] = defaultdict(list)
    for a in quiver.arrows:
        bundles[(a.source, a.target)].append(degrees[a.name] if degrees is not None else 0)
    for (u, v), degs in bundles.items():
        G.add_edge(u, v, label=str(tuple(sorted(degs))))
    return G


def presentation_graph(A: AlgebraPresentation,
                       cartan: Optional[Mapping[Tuple[str, str], int]] = None) -> nx.DiGraph:
    """带 (箭头数, 关系数, Cartan 值) 标签的有向图"""
    G = nx.DiGraph()
    G.add_nodes_from(A.quiver.vertices)
    arrows = Counter((a.source, a.target) for a in A.quiver.arrows)
    relations = A.relation_counts()
    pairs = set(arrows) | set(relations) | set(cartan or {})
    for u, v in pairs:
        entry = (cartan or {}).get((u, v), 0)
        G.add_edge(u, v, label=f"{arrows.get((u, v), 0)}/{relations.get((u, v), 0)}/{entry}")
    return G


def signature(G: nx.DiGraph) -> Signature:
    n = G.number_of_nodes()
    m = G.number_of_edges()
    indeg = tuple(sorted(d for _, d in G.in_degree()))
    outdeg = tuple(sorted(d for _, d in G.out_degree()))
    return (n, m, indeg, outdeg, nx.weisfeiler_lehman_graph_hash(G, edge_attr="label"))


def _edge_match(e1: Mapping[str, object], e2: Mapping[str, object]) -> bool:
    return e1.get("label") == e2.get("label")


def graphs_isomorphic(G: nx.DiGraph, H: nx.DiGraph) -> bool:
    if signature(G) != signature(H):
        return False
    return DiGraphMatcher(G, H, edge_match=_edge_match).is_isomorphic()


def quivers_isomorphic(Q1: Quiver, Q2: Quiver,
                       d1: Optional[Mapping[str, int]] = None,
                       d2: Optional[Mapping[str, int]] = None) -> bool:
    return graphs_isomorphic(quiver_graph(Q1, d1), quiver_graph(Q2, d2))


class IsoClassifier:
    """线程安全的同构类登记表"""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._buckets: Dict[Hashable, List[Tuple[nx.DiGraph, int]]] = defaultdict(list)
        self.count = 0

    def find(self, G: nx.DiGraph, extra: Hashable = None) -> Optional[int]:
        """已登记的类编号，不存在时返回 None"""
        key = (signature(G), extra)
        with self._lock:
            for H, cid in self._buckets.get(key, []):
                if DiGraphMatcher(G, H, edge_match=_edge_match).is_isomorphic():
                    return cid
        return None

    def register(self, G: nx.DiGraph, extra: Hashable = None) -> Tuple[bool, int]:
        """返回 (是否新类, 类编号)"""
        key = (signature(G), extra)
        with self._lock:
            for H, cid in self._buckets[key]:
                if DiGraphMatcher(G, H, edge_match=_edge_match).is_isomorphic():
                    return False, cid
            cid = self.count
            self.count += 1
            self._buckets[key].append((G, cid))
            return True, cid
