"""
加权射影直线上的线丛与例外单层：Hom/Ext 维数、τ 作用、Euler 型与倾斜判定
"""

import math
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Tuple, Union

from ..core.exceptions import DomainError, FormatError
from ..utils.logger import get_logger
from .lgroup import LVec, WeightType, c, delta, omega, parse_lvec, x, zero
from .ring import RElement, dim_R, point_values

logger = get_logger(__name__)


@dataclass(frozen=True)
class LineBundle:
    a: LVec

    @property
    def w(self) -> WeightType:
        return self.a.w

    def format(self) -> str:
        return f"O({self.a.format()})"

    def label(self) -> str:
        return f"O({self.a.pretty()})"


@dataclass(frozen=True)
class ExcSimple:
    """管 i 中的例外单层 S_{i,m}，1 ≤ m ≤ p_i"""

    w: WeightType
    i: int
    m: int

    def __post_init__(self) -> None:
        if not 1 <= self.i <= self.w.t:
            raise DomainError(f"管下标越界: {self.i}")
        p_i = self.w.weights[self.i - 1]
        if p_i < 2:
            raise DomainError(f"第 {self.i} 个点不是加权点")
        if not 1 <= self.m <= p_i:
            raise DomainError(f"单层下标越界: S({self.i},{self.m})")

    @property
    def p_i(self) -> int:
        return self.w.weights[self.i - 1]

    def format(self) -> str:
        return f"S({self.i},{self.m})"

    def label(self) -> str:
        return self.format()


SheafSymbol = Union[LineBundle, ExcSimple]


def line(a: LVec) -> LineBundle:
    return LineBundle(a)


def symbol_weight(X: SheafSymbol) -> WeightType:
    return X.w


def _same_weight(X: SheafSymbol, Y: SheafSymbol) -> None:
    if X.w != Y.w:
        raise DomainError("权重类型不一致")


def _sort_key(X: SheafSymbol) -> tuple:
    if isinstance(X, LineBundle):
        return (0, delta(X.a), X.a.m, X.a.coords)
    return (1, X.i, X.m, ())


# K0 类

@dataclass(frozen=True)
class K0Class:
    """K0 中的整系数组合，内部只存线丛"""

    w: WeightType
    lines: Tuple[Tuple[LVec, int], ...]

    @classmethod
    def of(cls, w: WeightType, terms: Iterable[Tuple[SheafSymbol, int]]) -> "K0Class":
        acc: Dict[LVec, int] = {}
        for X, k in terms:
            if X.w != w:
                raise DomainError("权重类型不一致")
            for a, n in _line_expansion(X):
                acc[a] = acc.get(a, 0) + n * k
        items = sorted(((a, n) for a, n in acc.items() if n), key=lambda t: (delta(t[0]), t[0].m, t[0].coords))
        return cls(w, tuple(items))

    @classmethod
    def symbol(cls, X: SheafSymbol) -> "K0Class":
        return cls.of(X.w, [(X, 1)])

    def __add__(self, other: "K0Class") -> "K0Class":
        return K0Class.of(self.w, [(LineBundle(a), n) for a, n in self.lines + other.lines])

    def __neg__(self) -> "K0Class":
        return K0Class(self.w, tuple((a, -n) for a, n in self.lines))

    def __sub__(self, other: "K0Class") -> "K0Class":
        return self + (-other)

    def scale(self, k: int) -> "K0Class":
        return K0Class.of(self.w, [(LineBundle(a), n * k) for a, n in self.lines])

    def is_zero(self) -> bool:
        return not self.lines

    @property
    def rank(self) -> int:
        return sum(n for _, n in self.lines)

    @property
    def degree(self) -> int:
        return sum(n * delta(a) for a, n in self.lines)


def _line_expansion(X: SheafSymbol) -> List[Tuple[LVec, int]]:
    """[S_{i,m}] = [O((1-m)x_i)] - [O(-m x_i)]"""
    if isinstance(X, LineBundle):
        return [(X.a, 1)]
    xi = x(X.w, X.i)
    return [(xi.scale(1 - X.m), 1), (xi.scale(-X.m), -1)]


def k0_class(X: SheafSymbol) -> K0Class:
    return K0Class.symbol(X)


def rank(X: Union[SheafSymbol, K0Class]) -> int:
    if isinstance(X, K0Class):
        return X.rank
    return 1 if isinstance(X, LineBundle) else 0


def degree(X: Union[SheafSymbol, K0Class]) -> int:
    if isinstance(X, K0Class):
        return X.degree
    if isinstance(X, LineBundle):
        return delta(X.a)
    return X.w.p // X.p_i


def slope(X: Union[SheafSymbol, K0Class]) -> Union[Fraction, float]:
    """deg/rk，秩为零时为无穷"""
    rk, deg = rank(X), degree(X)
    if rk == 0:
        if deg == 0:
            raise DomainError("零类没有斜率")
        return math.inf
    return Fraction(deg, rk)


# Hom 与 Ext

def _line_to_simple(a: LVec, S: ExcSimple) -> int:
    return 1 if a.residue(S.i) == (1 - S.m) % S.p_i else 0


def hom_dim(X: SheafSymbol, Y: SheafSymbol) -> int:
    _same_weight(X, Y)
    if isinstance(X, LineBundle):
        if isinstance(Y, LineBundle):
            return dim_R(Y.a - X.a)
        return _line_to_simple(X.a, Y)
    if isinstance(Y, LineBundle):
        return 0
    return 1 if (X.i, X.m) == (Y.i, Y.m) else 0


def tau(X: SheafSymbol) -> SheafSymbol:
    """τ = (ω) 扭转；S_{i,m}(ω) = S_{i,m+1}"""
    if isinstance(X, LineBundle):
        return LineBundle(X.a + omega(X.w))
    return ExcSimple(X.w, X.i, X.m % X.p_i + 1)


def tau_k(X: SheafSymbol, k: int) -> SheafSymbol:
    if isinstance(X, LineBundle):
        return LineBundle(X.a + omega(X.w).scale(k))
    return ExcSimple(X.w, X.i, (X.m - 1 + k) % X.p_i + 1)


def ext1_dim(X: SheafSymbol, Y: SheafSymbol) -> int:
    """Serre 对偶：D Ext¹(X,Y) ≅ Hom(Y, τX)"""
    return hom_dim(Y, tau(X))


def euler_form(X: Union[SheafSymbol, K0Class], Y: Union[SheafSymbol, K0Class]) -> int:
    u = X if isinstance(X, K0Class) else K0Class.symbol(X)
    v = Y if isinstance(Y, K0Class) else K0Class.symbol(Y)
    if u.w != v.w:
        raise DomainError("权重类型不一致")
    w_omega = omega(u.w)
    total = 0
    for a, n in u.lines:
        for b, k in v.lines:
            total += n * k * (dim_R(b - a) - dim_R(a + w_omega - b))
    return total


def cluster_hom_dim(X: SheafSymbol, Y: SheafSymbol) -> int:
    """Hom(X,Y) ⊕ Ext¹(X, τ⁻¹Y) 的维数"""
    if not X.w.is_tubular():
        logger.warning(f"Weight type {X.w} is not tubular; cluster hom dimension is only formal")
    return hom_dim(X, Y) + ext1_dim(X, tau_k(Y, -1))


# 直和

@dataclass(frozen=True)
class SheafSum:
    """层符号的多重集，按规范顺序保存"""

    w: WeightType
    summands: Tuple[SheafSymbol, ...]

    @classmethod
    def of(cls, summands: Iterable[SheafSymbol], w: Optional[WeightType] = None) -> "SheafSum":
        items = list(summands)
        if w is None:
            if not items:
                raise DomainError("空直和需要指定权重类型")
            w = items[0].w
        for X in items:
            if X.w != w:
                raise DomainError("权重类型不一致")
        return cls(w, tuple(sorted(items, key=_sort_key)))

    def __len__(self) -> int:
        return len(self.summands)

    def __iter__(self) -> Iterator[SheafSymbol]:
        return iter(self.summands)

    def is_basic(self) -> bool:
        return len(set(self.summands)) == len(self.summands)

    def k0(self) -> K0Class:
        return K0Class.of(self.w, [(X, 1) for X in self.summands])

    def format(self) -> str:
        return ", ".join(X.format() for X in self.summands)

    def labels(self) -> List[str]:
        return [X.label() for X in self.summands]


def is_rigid(T: SheafSum) -> bool:
    return all(ext1_dim(X, Y) == 0 for X in set(T.summands) for Y in set(T.summands))


def is_tilting(T: SheafSum) -> bool:
    return T.is_basic() and len(T) == T.w.rank_k0() and is_rigid(T)


def is_tau2_stable(T: SheafSum) -> bool:
    return Counter(tau_k(X, 2) for X in T.summands) == Counter(T.summands)


def canonical_sum(w: WeightType) -> SheafSum:
    """⊕_{0≤x≤c} O(x)"""
    items: List[SheafSymbol] = [LineBundle(zero(w))]
    for i, p_i in enumerate(w.weights, start=1):
        for j in range(1, p_i):
            items.append(LineBundle(x(w, i).scale(j)))
    items.append(LineBundle(c(w)))
    return SheafSum.of(items, w)


@dataclass(frozen=True)
class SplitSum:
    bundles: Tuple[LineBundle, ...]
    torsion: Tuple[ExcSimple, ...]
    tube_counts: Dict[int, int]

    def perpendicular_weights(self, w: WeightType) -> Tuple[int, ...]:
        """约化直线的权重 p_i - q_i"""
        return tuple(p - self.tube_counts.get(i, 0) for i, p in enumerate(w.weights, start=1))


def split(T: SheafSum) -> SplitSum:
    bundles = tuple(X for X in T.summands if isinstance(X, LineBundle))
    torsion = tuple(X for X in T.summands if isinstance(X, ExcSimple))
    counts = Counter(S.i for S in torsion)
    return SplitSum(bundles, torsion, {i: counts.get(i, 0) for i in range(1, T.w.t + 1)})


# 态射的复合 (供自同态代数使用)

def simple_coefficient(r: RElement, a: LVec, b: LVec, S: ExcSimple) -> Fraction:
    """r: O(a) → O(b) 与 φ_b: O(b) → S 的复合等于 κ·φ_a，返回 κ"""
    w = a.w
    values = point_values(w, S.i)
    total = Fraction(0)
    for exps, coeff in r.terms.items():
        # x_i 在该点处为零
        if exps[S.i - 1] > 0:
            continue
        term = coeff
        for j, e in enumerate(exps, start=1):
            if j == S.i:
                continue
            shift = e + a.residue(j) - b.residue(j)
            if shift % w.weights[j - 1]:
                raise DomainError("单项式次数与端点不符")
            term *= values[j - 1] ** (shift // w.weights[j - 1])
        total += term
    return total


# 文本形式

_SYMBOL_RE = re.compile(r"^\s*(O|S)\s*\((.*)\)\s*$")


def parse_symbol(text: str, w: WeightType) -> SheafSymbol:
    """`O(m|m1,..)`、`O(x1+w)` 或 `S(i,m)`"""
    match = _SYMBOL_RE.match(text)
    if not match:
        raise FormatError(f"无法解析层符号: {text!r}")
    kind, body = match.groups()
    if kind == "O":
        return LineBundle(parse_lvec(body, w) if body.strip() else zero(w))
    parts = [p.strip() for p in body.split(",")]
    if len(parts) != 2:
        raise FormatError(f"单层应写作 S(i,m): {text!r}")
    try:
        return ExcSimple(w, int(parts[0]), int(parts[1]))
    except ValueError as e:
        raise FormatError(f"无法解析单层: {text!r}") from e


def _split_top_level(text: str) -> List[str]:
    parts, depth, current = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if "".join(current).strip():
        parts.append("".join(current))
    return [p for p in parts if p.strip()]


def parse_sum(text: str, w: WeightType) -> SheafSum:
    return SheafSum.of([parse_symbol(p, w) for p in _split_top_level(text)], w)
