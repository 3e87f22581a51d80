"""
有理数域上的精确线性代数 (稀疏向量)
"""

from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

Vector = Dict[int, Fraction]
Matrix = List[List[Fraction]]


def clean(v: Dict) -> Dict:
    return {k: c for k, c in v.items() if c != 0}


def axpy(y: Dict, a: Fraction, x: Dict) -> Dict:
    """y + a·x，原地修改 y"""
    if a == 0:
        return y
    for k, c in x.items():
        value = y.get(k, Fraction(0)) + a * c
        if value == 0:
            y.pop(k, None)
        else:
            y[k] = value
    return y


def scaled(v: Dict, a: Fraction) -> Dict:
    if a == 0:
        return {}
    return {k: a * c for k, c in v.items()}


def dense(v: Vector, n: int) -> List[Fraction]:
    return [v.get(k, Fraction(0)) for k in range(n)]


def sparse(values: Sequence) -> Vector:
    return {k: Fraction(c) for k, c in enumerate(values) if c != 0}


class EchelonBasis:
    """增量半阶梯形基，记录每一行由哪些输入组合而成

    add() 返回 None 表示新向量线性无关，否则返回输入间的线性关系。
    """

    def __init__(self) -> None:
        self.rows: List[Tuple[Hashable, Dict, Dict]] = []  # (主元, 行, 输入组合)
        self.pivots: Dict[Hashable, int] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Dict) -> Tuple[Dict, Dict]:
        """返回 (余项, 组合)，满足 v = 余项 + Σ 组合[k]·输入[k]"""
        rest = dict(v)
        combo: Dict = {}
        for pivot, row, track in self.rows:
            f = rest.get(pivot)
            if f:
                axpy(rest, -f, row)
                axpy(combo, f, track)
        return rest, combo

    def contains(self, v: Dict) -> bool:
        return not self.reduce(v)[0]

    def add(self, v: Dict, label: Hashable = None) -> Optional[Dict]:
        rest, combo = self.reduce(v)
        if label is None:
            label = len(self.rows)
        if not rest:
            relation = {label: Fraction(1)}
            axpy(relation, Fraction(-1), combo)
            return relation
        pivot = min(rest, key=_sort_key)
        f = rest[pivot]
        track = {label: Fraction(1)}
        axpy(track, Fraction(-1), combo)
        row = scaled(rest, 1 / f)
        self.pivots[pivot] = len(self.rows)
        self.rows.append((pivot, row, scaled(track, 1 / f)))
        return None

    def coordinates(self, v: Dict) -> Dict:
        """把 span 中的向量表示为输入的组合"""
        rest, combo = self.reduce(v)
        if rest:
            raise ValueError("向量不在张成空间中")
        return combo


def _sort_key(k: Hashable) -> tuple:
    return (0, k) if isinstance(k, int) else (1, repr(k))


def rank(vectors: Iterable[Dict]) -> int:
    basis = EchelonBasis()
    for v in vectors:
        basis.add(v)
    return len(basis)


def kernel(vectors: Sequence[Dict]) -> List[Vector]:
    """全部线性关系 Σ c_k v_k = 0 的一组基，c 以输入下标为键"""
    basis = EchelonBasis()
    relations = []
    for k, v in enumerate(vectors):
        relation = basis.add(v, label=k)
        if relation is not None:
            relations.append(relation)
    return relations


def independent_subset(vectors: Sequence[Dict], start: Iterable[Dict] = ()) -> List[int]:
    """在已有 start 的张成之外，贪心选出线性无关的下标"""
    basis = EchelonBasis()
    for v in start:
        basis.add(v)
    chosen = []
    for k, v in enumerate(vectors):
        if basis.add(v) is None:
            chosen.append(k)
    return chosen


def matrix_apply(matrix: Matrix, v: Sequence[Fraction]) -> List[Fraction]:
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in matrix]


def matrix_kernel(matrix: Matrix, ncols: int) -> List[List[Fraction]]:
    """矩阵 (行列表) 的零空间基，列数为 ncols"""
    columns = [{r: row[k] for r, row in enumerate(matrix) if row[k] != 0} for k in range(ncols)]
    return [dense(rel, ncols) for rel in kernel(columns)]


def matrix_rank(matrix: Matrix) -> int:
    return rank(sparse(row) for row in matrix)


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]
