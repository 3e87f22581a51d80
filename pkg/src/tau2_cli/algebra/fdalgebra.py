"""
有限维商代数与其模论数据

模均为右模，即箭图表示：箭头 a: u→v 给出线性映射 M_u → M_v，
投射模 P_i = e_i A 由从 i 出发的路径张成，内射模 I_j = D(A e_j)。
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from ..core.exceptions import CapExceeded, DomainError, NotSelfinjective
from ..utils.logger import get_logger
from .groebner import (MONOMIAL_ORDER, TruncatedStandardBasis, groebner_complete,
                       growth_witness)
from .linalg import EchelonBasis, Matrix, kernel, matrix_apply, rank, sparse, zeros
from .paths import AlgebraPresentation, Path, PathPoly, Quiver, path_weight

logger = get_logger(__name__)

DEFAULT_MAX_DIMENSION = 20000


@dataclass
class FDAlgebraData:
    """有限维商代数：正规路径基、结构常数与 Cartan 数据"""

    presentation: AlgebraPresentation
    standard_basis: TruncatedStandardBasis
    basis: List[Path]
    degrees: Optional[Mapping[str, int]] = None
    _products: Dict[Tuple[int, int], Dict[int, Fraction]] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        self.basis = sorted(self.basis, key=lambda p: (self.vertex_position(p.source),
                                                       self.vertex_position(p.target),
                                                       p.length, p.arrows))
        self.index = {p: k for k, p in enumerate(self.basis)}
        self.by_pair: Dict[Tuple[str, str], List[int]] = {}
        for k, p in enumerate(self.basis):
            self.by_pair.setdefault((p.source, p.target), []).append(k)

    @property
    def quiver(self) -> Quiver:
        return self.presentation.quiver

    @property
    def vertices(self) -> Tuple[str, ...]:
        return self.presentation.quiver.vertices

    def vertex_position(self, v: str) -> int:
        return self.presentation.quiver.vertices.index(v)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def loewy_length(self) -> int:
        """rad^L = 0 的最小 L"""
        return max(p.length for p in self.basis) + 1

    @property
    def truncation(self) -> int:
        return self.standard_basis.N

    def paths_between(self, source: str, target: str) -> List[int]:
        return self.by_pair.get((source, target), [])

    def cartan(self) -> Dict[Tuple[str, str], int]:
        return {pair: len(idx) for pair, idx in self.by_pair.items()}

    def cartan_matrix(self) -> List[List[int]]:
        """C[i][j] = dim e_i A e_j"""
        return [[len(self.paths_between(s, t)) for t in self.vertices] for s in self.vertices]

    def normal_vector(self, f: PathPoly) -> Dict[int, Fraction]:
        reduced = self.standard_basis.normal_form(f)
        out: Dict[int, Fraction] = {}
        for path, c in reduced.terms.items():
            if path not in self.index:
                raise DomainError(f"路径 {path} 不在正规基中")
            out[self.index[path]] = c
        return out

    def multiply(self, i: int, j: int) -> Dict[int, Fraction]:
        """结构常数 b_i · b_j"""
        key = (i, j)
        if key not in self._products:
            pq = self.basis[i].then(self.basis[j])
            self._products[key] = {} if pq is None else self.normal_vector(PathPoly.path(pq))
        return self._products[key]

    def basis_degree(self, k: int) -> int:
        if self.degrees is None:
            return 0
        return path_weight(self.basis[k], self.degrees)

    def graded_dims(self) -> Dict[int, int]:
        """箭头分次下每个次数的维数"""
        dims: Dict[int, int] = {}
        for k in range(self.dimension):
            d = self.basis_degree(k)
            dims[d] = dims.get(d, 0) + 1
        return dict(sorted(dims.items()))

    def summary(self) -> Dict[str, object]:
        return {
            "dimension": self.dimension,
            "truncation": self.truncation,
            "monomial_order": MONOMIAL_ORDER,
            "cartan": self.cartan_matrix(),
            "graded_dims": self.graded_dims() if self.degrees is not None else None,
        }


@dataclass
class InfiniteAlgebra:
    """无穷维判定，witness 是正规词自动机中的一个圈"""

    presentation: AlgebraPresentation
    witness: List[Path]

    def summary(self) -> Dict[str, object]:
        return {"dimension": "infinite", "witness": [str(p) for p in self.witness]}


QuotientResult = Union[FDAlgebraData, InfiniteAlgebra]


def fd_quotient(A: AlgebraPresentation, degree_cap: int = 32, start: int = 2,
                degrees: Optional[Mapping[str, int]] = None,
                max_dimension: int = DEFAULT_MAX_DIMENSION) -> QuotientResult:
    """完备商代数 kQ/closure(I)

    依次计算 kQ/(I + J^N)，维数在 N 与 N+1 处相等时即为完备商。
    未稳定时，若关系对某组正权重齐次，则用分次完备化给出无穷维证据。
    """
    dims: List[int] = []
    previous = None
    try:
        for N in range(max(start, 1), degree_cap + 2):
            tsb = TruncatedStandardBasis(A.quiver, A.relations, N)
            words = tsb.normal_words(limit=max_dimension)
            dims.append(len(words))
            logger.debug(f"Truncation {N}: dimension {len(words)}")
            if previous is not None and len(words) == previous:
                return FDAlgebraData(A, tsb, words, degrees)
            previous = len(words)
    except CapExceeded as e:
        logger.info(f"Quotient dimension exceeded {max_dimension}: {e}")

    weights = A.effective_weights()
    if weights is not None:
        max_weight = max(weights.values(), default=1)
        try:
            system = groebner_complete(A, degree_cap * max_weight, weights)
        except CapExceeded:
            system = None
        if system is not None:
            witness = growth_witness(system)
            if witness is not None:
                logger.info(f"Infinite-dimensional quotient, witness cycle of length {len(witness)}")
                return InfiniteAlgebra(A, witness)
    raise CapExceeded(f"截断到 {degree_cap} 仍未稳定", degree_cap, partial=dims)


def require_fd(result: QuotientResult) -> FDAlgebraData:
    if isinstance(result, InfiniteAlgebra):
        raise DomainError("代数是无穷维的")
    return result


# 模

@dataclass
class Representation:
    """箭图表示：dims[v] 与 maps[a] (行数 = 终点维数)"""

    algebra: FDAlgebraData
    dims: Dict[str, int]
    maps: Dict[str, Matrix]
    name: str = ""

    def dimension_vector(self) -> List[int]:
        return [self.dims.get(v, 0) for v in self.algebra.vertices]

    @property
    def total_dimension(self) -> int:
        return sum(self.dims.values())

    def act(self, vector: Sequence[Fraction], path: Path) -> List[Fraction]:
        """m · path"""
        current = list(vector)
        for a in path.arrows:
            current = matrix_apply(self.maps[a], current)
        return current

    def socle_dims(self) -> Dict[str, int]:
        """每个顶点处被所有出箭头零化的子空间维数"""
        out = {}
        for v in self.algebra.vertices:
            n = self.dims.get(v, 0)
            if n == 0:
                out[v] = 0
                continue
            rows = []
            for a in self.algebra.quiver.out_arrows(v):
                rows.extend(self.maps[a.name])
            columns = [{r: row[k] for r, row in enumerate(rows) if row[k] != 0} for k in range(n)]
            out[v] = len(kernel(columns))
        return out


def projective(A: FDAlgebraData, i: str) -> Representation:
    """P_i = e_i A"""
    dims = {v: len(A.paths_between(i, v)) for v in A.vertices}
    maps = {}
    for a in A.quiver.arrows:
        source_idx = A.paths_between(i, a.source)
        target_idx = A.paths_between(i, a.target)
        position = {k: r for r, k in enumerate(target_idx)}
        matrix = zeros(len(target_idx), len(source_idx))
        arrow = PathPoly.path(Path(a.source, a.target, (a.name,)))
        for col, k in enumerate(source_idx):
            image = A.normal_vector(PathPoly.path(A.basis[k]) * arrow)
            for idx, c in image.items():
                matrix[position[idx]][col] = c
        maps[a.name] = matrix
    return Representation(A, dims, maps, name=f"P({i})")


def injective(A: FDAlgebraData, j: str) -> Representation:
    """I_j = D(A e_j)，(φ·a)(x) = φ(a·x)"""
    dims = {v: len(A.paths_between(v, j)) for v in A.vertices}
    maps = {}
    for a in A.quiver.arrows:
        source_idx = A.paths_between(a.source, j)
        target_idx = A.paths_between(a.target, j)
        position = {k: c for c, k in enumerate(source_idx)}
        matrix = zeros(len(target_idx), len(source_idx))
        arrow = PathPoly.path(Path(a.source, a.target, (a.name,)))
        for row, k in enumerate(target_idx):
            image = A.normal_vector(arrow * PathPoly.path(A.basis[k]))
            for idx, c in image.items():
                matrix[row][position[idx]] = c
        maps[a.name] = matrix
    return Representation(A, dims, maps, name=f"I({j})")


def simple(A: FDAlgebraData, i: str) -> Representation:
    dims = {v: (1 if v == i else 0) for v in A.vertices}
    maps = {a.name: zeros(dims[a.target], dims[a.source]) for a in A.quiver.arrows}
    return Representation(A, dims, maps, name=f"S({i})")


def direct_sum(modules: Sequence[Representation], name: str = "") -> Representation:
    A = modules[0].algebra
    dims = {v: sum(M.dims.get(v, 0) for M in modules) for v in A.vertices}
    maps = {}
    for a in A.quiver.arrows:
        matrix = zeros(dims[a.target], dims[a.source])
        row0 = col0 = 0
        for M in modules:
            block = M.maps[a.name]
            for r, row in enumerate(block):
                for c, value in enumerate(row):
                    matrix[row0 + r][col0 + c] = value
            row0 += M.dims.get(a.target, 0)
            col0 += M.dims.get(a.source, 0)
        maps[a.name] = matrix
    return Representation(A, dims, maps, name=name)


# 极小投射分解

@dataclass
class ProjectiveResolution:
    """terms[k] 是 P_k 的生成元顶点；images[k][g] 是第 g 个生成元在上一项中的像"""

    module: Representation
    terms: List[List[str]]
    images: List[List[List[Fraction]]]
    layouts: List[Dict[str, List[Tuple[int, int]]]]
    complete: bool

    def multiplicity(self, k: int, vertex: str) -> int:
        if k >= len(self.terms):
            return 0
        return sum(1 for v in self.terms[k] if v == vertex)

    @property
    def length(self) -> int:
        """最后一个非零项的下标"""
        nonzero = [k for k, gens in enumerate(self.terms) if gens]
        return nonzero[-1] if nonzero else -1


def _top_generators(M: Representation) -> List[Tuple[str, List[Fraction]]]:
    """M/rad M 的一组提升"""
    A = M.algebra
    gens = []
    for v in A.vertices:
        n = M.dims.get(v, 0)
        if n == 0:
            continue
        basis = EchelonBasis()
        for a in A.quiver.in_arrows(v):
            matrix = M.maps[a.name]
            for col in range(M.dims.get(a.source, 0)):
                basis.add({r: matrix[r][col] for r in range(n) if matrix[r][col] != 0})
        for k in range(n):
            if basis.add({k: Fraction(1)}) is None:
                vector = [Fraction(0)] * n
                vector[k] = Fraction(1)
                gens.append((v, vector))
    return gens


def _free_module(A: FDAlgebraData,
                 gens: Sequence[str]) -> Tuple[Representation, Dict[str, List[Tuple[int, int]]]]:
    """⊕ P_{v_g} 及其每个顶点处的坐标布局 (生成元, 基路径)"""
    layout: Dict[str, List[Tuple[int, int]]] = {v: [] for v in A.vertices}
    for g, vg in enumerate(gens):
        for v in A.vertices:
            for k in A.paths_between(vg, v):
                layout[v].append((g, k))
    cache: Dict[str, Representation] = {}
    blocks = []
    for vg in gens:
        if vg not in cache:
            cache[vg] = projective(A, vg)
        blocks.append(cache[vg])
    P = direct_sum(blocks) if blocks else Representation(
        A, {v: 0 for v in A.vertices}, {a.name: [] for a in A.quiver.arrows})
    return P, layout


def resolve(M: Representation, length: int) -> ProjectiveResolution:
    """极小投射分解，最多计算到第 length 项"""
    A = M.algebra
    terms: List[List[str]] = []
    images: List[List[List[Fraction]]] = []
    layouts: List[Dict[str, List[Tuple[int, int]]]] = []
    current = M
    # 当前模的基向量在上一项中的坐标；第 0 项时是 M 本身
    embedding: Optional[Dict[str, List[List[Fraction]]]] = None
    complete = False
    for level in range(length + 1):
        gens = _top_generators(current)
        vertices = [v for v, _ in gens]
        if embedding is None:
            level_images = [vec for _, vec in gens]
        else:
            level_images = []
            for v, vec in gens:
                lifted = [Fraction(0)] * len(embedding[v][0]) if embedding[v] else []
                for coeff, basis_vec in zip(vec, embedding[v]):
                    if coeff:
                        lifted = [x + coeff * y for x, y in zip(lifted, basis_vec)]
                level_images.append(lifted)
        P, layout = _free_module(A, vertices)
        terms.append(vertices)
        images.append(level_images)
        layouts.append(layout)
        if not gens:
            complete = True
            break
        # 覆盖映射 P → current 的核
        kernel_basis: Dict[str, List[List[Fraction]]] = {}
        kernel_dims: Dict[str, int] = {}
        for v in A.vertices:
            columns = []
            for g, k in layout[v]:
                image = current.act(gens[g][1], A.basis[k])
                columns.append({r: c for r, c in enumerate(image) if c != 0})
            relations = kernel(columns)
            kernel_basis[v] = [[rel.get(c, Fraction(0)) for c in range(len(columns))]
                               for rel in relations]
            kernel_dims[v] = len(relations)
        maps = {}
        for a in A.quiver.arrows:
            target_basis = EchelonBasis()
            for idx, vec in enumerate(kernel_basis[a.target]):
                target_basis.add(sparse(vec), label=idx)
            matrix = zeros(kernel_dims[a.target], kernel_dims[a.source])
            for col, vec in enumerate(kernel_basis[a.source]):
                image = matrix_apply(P.maps[a.name], vec) if P.maps[a.name] else []
                coords = target_basis.coordinates(sparse(image))
                for idx, c in coords.items():
                    matrix[idx][col] = c
            maps[a.name] = matrix
        current = Representation(A, kernel_dims, maps, name=f"Omega{level + 1}")
        embedding = kernel_basis
        if current.total_dimension == 0:
            terms.append([])
            images.append([])
            layouts.append({v: [] for v in A.vertices})
            complete = True
            break
    return ProjectiveResolution(M, terms, images, layouts, complete)


def projective_dimension(M: Representation, cap: int) -> Optional[int]:
    res = resolve(M, cap + 1)
    if not res.complete or res.length > cap:
        return None
    return res.length


def ext_dims(A: FDAlgebraData, i: str, j: str, k: int) -> int:
    """dim Ext^k(S_i, S_j) = P_j 在极小分解第 k 项中的重数"""
    return resolve(simple(A, i), k).multiplicity(k, j)


def ext_table(A: FDAlgebraData, k: int) -> Dict[Tuple[str, str], int]:
    table = {}
    for i in A.vertices:
        res = resolve(simple(A, i), k)
        for j in A.vertices:
            n = res.multiplicity(k, j)
            if n:
                table[(i, j)] = n
    return table


def gldim(A: FDAlgebraData, cap: int = 6) -> Optional[int]:
    """整体维数；超过 cap 时返回 None"""
    best = 0
    for v in A.vertices:
        pd = projective_dimension(simple(A, v), cap)
        if pd is None:
            return None
        best = max(best, pd)
    return best


def _hom_complex_matrix(res: ProjectiveResolution, N: Representation, k: int) -> Matrix:
    """δ^k: Hom(P_k, N) → Hom(P_{k+1}, N)"""
    A = N.algebra
    source_gens = res.terms[k] if k < len(res.terms) else []
    target_gens = res.terms[k + 1] if k + 1 < len(res.terms) else []
    col_offsets, cols = [], 0
    for v in source_gens:
        col_offsets.append(cols)
        cols += N.dims.get(v, 0)
    row_offsets, rows = [], 0
    for v in target_gens:
        row_offsets.append(rows)
        rows += N.dims.get(v, 0)
    matrix = zeros(rows, cols)
    if not rows or not cols:
        return matrix
    for g, vg in enumerate(target_gens):
        image = res.images[k + 1][g]
        layout = res.layouts[k][vg]
        for coord, (j, basis_k) in enumerate(layout):
            coeff = image[coord] if coord < len(image) else Fraction(0)
            if coeff == 0:
                continue
            vj = source_gens[j]
            path = A.basis[basis_k]
            for b in range(N.dims.get(vj, 0)):
                unit = [Fraction(0)] * N.dims[vj]
                unit[b] = Fraction(1)
                moved = N.act(unit, path)
                for r, value in enumerate(moved):
                    if value:
                        matrix[row_offsets[g] + r][col_offsets[j] + b] += coeff * value
    return matrix


def ext_between(M: Representation, N: Representation, k: int,
                resolution: Optional[ProjectiveResolution] = None) -> int:
    """dim Ext^k(M, N)"""
    res = resolution or resolve(M, k + 1)
    cochain_dim = sum(N.dims.get(v, 0) for v in (res.terms[k] if k < len(res.terms) else []))
    if cochain_dim == 0:
        return 0
    outgoing = _hom_complex_matrix(res, N, k)
    rank_out = rank(sparse(row) for row in outgoing) if outgoing else 0
    rank_in = 0
    if k > 0:
        incoming = _hom_complex_matrix(res, N, k - 1)
        rank_in = rank(sparse(row) for row in incoming) if incoming else 0
    return cochain_dim - rank_out - rank_in


# 自内射性

def nakayama_data(A: FDAlgebraData) -> Tuple[bool, Dict[str, str], str]:
    """(是否自内射, 顶点→基座顶点, 失败原因)"""
    socle_of: Dict[str, str] = {}
    for i in A.vertices:
        socle = projective(A, i).socle_dims()
        total = sum(socle.values())
        if total != 1:
            return False, socle_of, f"P({i}) 的基座维数为 {total}"
        socle_of[i] = next(v for v, d in socle.items() if d)
    if len(set(socle_of.values())) != len(socle_of):
        return False, socle_of, "基座顶点不构成置换"
    for i, j in socle_of.items():
        for v in A.vertices:
            if len(A.paths_between(i, v)) != len(A.paths_between(v, j)):
                return False, socle_of, f"P({i}) 与 I({j}) 的维数向量不同"
    return True, socle_of, ""


def is_selfinjective(A: FDAlgebraData) -> bool:
    return nakayama_data(A)[0]


def nakayama_permutation(A: FDAlgebraData) -> Dict[str, str]:
    ok, perm, reason = nakayama_data(A)
    if not ok:
        raise NotSelfinjective(f"代数不是自内射的: {reason}")
    return perm


def permutation_orbits(perm: Mapping[str, str], order: Sequence[str]) -> List[List[str]]:
    seen = set()
    orbits = []
    for v in order:
        if v in seen:
            continue
        orbit = []
        current = v
        while current not in seen:
            seen.add(current)
            orbit.append(current)
            current = perm[current]
        orbits.append(orbit)
    return orbits


# 极小关系

def minimal_relations(A: AlgebraPresentation, degree_cap: int = 32) -> AlgebraPresentation:
    """选出关系的一个子集，使其在 (IJ + JI) 之外线性无关且生成同一闭理想"""
    A.check_admissible()
    if not A.relations:
        return A
    fd = require_fd(fd_quotient(A, degree_cap))
    bound = fd.loewy_length
    quiver = A.quiver

    def truncated(f: PathPoly) -> Dict[Path, Fraction]:
        return {p: c for p, c in f.terms.items() if p.length <= bound}

    # (IJ + JI) 在长度 ≤ bound 部分的张成
    generated: Dict[Tuple[str, str], EchelonBasis] = {}
    for r in A.relations:
        s, t = r.endpoints()
        room = bound - r.min_length()
        if room < 1:
            continue
        for start in quiver.vertices:
            for u in quiver.paths(start, s, room):
                for end in quiver.vertices:
                    for v in quiver.paths(t, end, room - u.length):
                        if u.length == 0 and v.length == 0:
                            continue
                        vec = truncated(PathPoly.path(u) * r * PathPoly.path(v))
                        if vec:
                            generated.setdefault((start, end), EchelonBasis()).add(vec)
    chosen = []
    for r in A.relations:
        ends = r.endpoints()
        basis = generated.setdefault(ends, EchelonBasis())
        vec = truncated(r)
        if vec and basis.add(vec) is None:
            chosen.append(r)
    logger.debug(f"Minimal relations: kept {len(chosen)} of {len(A.relations)}")
    return A.with_relations(chosen)


def same_ideal(A: AlgebraPresentation, B: AlgebraPresentation, degree_cap: int = 32) -> bool:
    """同一箭图上两组关系生成相同的闭理想"""
    if A.quiver != B.quiver:
        return False
    fa = require_fd(fd_quotient(A, degree_cap))
    fb = require_fd(fd_quotient(B, degree_cap))
    if fa.dimension != fb.dimension:
        return False
    return all(fa.standard_basis.normal_form(r).is_zero() for r in B.relations)
