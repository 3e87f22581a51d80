"""
秩一阿贝尔群 L(p) 的精确运算
"""

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterator, List, Optional, Sequence, Tuple

from ..core.exceptions import DomainError, FormatError

# t=3 时 x, y, z 依次是 x1, x2, x3
ALIASES = {"x": 1, "y": 2, "z": 3}


@dataclass(frozen=True)
class WeightType:
    """权重序列与参数点，参数 None 表示无穷远点"""

    weights: Tuple[int, ...]
    parameters: Tuple[Optional[Fraction], ...]

    def __post_init__(self) -> None:
        if len(self.weights) < 3:
            raise DomainError(f"权重个数至少为 3: {self.weights}")
        if any(p < 1 for p in self.weights):
            raise DomainError(f"权重必须为正整数: {self.weights}")
        if len(self.parameters) != len(self.weights):
            raise DomainError("参数个数与权重个数不一致")
        if tuple(self.parameters[:3]) != (None, Fraction(0), Fraction(1)):
            raise DomainError("前三个参数必须是 ∞, 0, 1")
        finite = [lam for lam in self.parameters if lam is not None]
        if len(set(finite)) != len(finite):
            raise DomainError(f"参数必须两两不同: {self.parameters}")

    @classmethod
    def create(cls, weights: Sequence[int],
               extra: Optional[Sequence[Fraction]] = None,
               lambda4: Fraction = Fraction(2)) -> "WeightType":
        """构造权重类型，缺省的 λ4, λ5, ... 取 lambda4, lambda4+1, ..."""
        weights = tuple(int(p) for p in weights)
        extra = [Fraction(lam) for lam in (extra or [])]
        needed = len(weights) - 3
        params: List[Optional[Fraction]] = [None, Fraction(0), Fraction(1)]
        for k in range(needed):
            params.append(extra[k] if k < len(extra) else Fraction(lambda4) + k)
        return cls(weights, tuple(params))

    @property
    def t(self) -> int:
        return len(self.weights)

    @property
    def p(self) -> int:
        """权重的最小公倍数"""
        return reduce(lambda a, b: a * b // math.gcd(a, b), self.weights, 1)

    def with_parameters(self, extra: Sequence[Fraction]) -> "WeightType":
        """替换 λ4, λ5, ..."""
        return WeightType.create(self.weights, extra)

    def rank_k0(self) -> int:
        """K0 的秩 2 + Σ(p_i - 1)"""
        return 2 + sum(p - 1 for p in self.weights)

    def is_tubular(self) -> bool:
        return euler_char(self) == 0

    def format(self) -> str:
        text = ",".join(str(p) for p in self.weights)
        for k, lam in enumerate(self.parameters[3:], start=4):
            text += f";lambda{k}={lam}"
        return text

    def __str__(self) -> str:
        return self.format()


@dataclass(frozen=True)
class LVec:
    """L(p) 中的元素，始终保持正规形 m·c + Σ m_i x_i，0 ≤ m_i < p_i"""

    w: WeightType
    m: int
    coords: Tuple[int, ...]

    @classmethod
    def normalize(cls, w: WeightType, m: int, coeffs: Sequence[int]) -> "LVec":
        """把任意系数化为正规形"""
        if len(coeffs) != w.t:
            raise DomainError("系数个数与权重个数不一致")
        coords = []
        for k, p in zip(coeffs, w.weights):
            q, r = divmod(int(k), p)
            m += q
            coords.append(r)
        return cls(w, int(m), tuple(coords))

    def _check(self, other: "LVec") -> None:
        if self.w != other.w:
            raise DomainError("权重类型不一致")

    def __add__(self, other: "LVec") -> "LVec":
        self._check(other)
        return LVec.normalize(self.w, self.m + other.m,
                              [a + b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "LVec":
        return LVec.normalize(self.w, -self.m, [-a for a in self.coords])

    def __sub__(self, other: "LVec") -> "LVec":
        return self + (-other)

    def scale(self, k: int) -> "LVec":
        return LVec.normalize(self.w, k * self.m, [k * a for a in self.coords])

    def residue(self, i: int) -> int:
        """第 i 个坐标 (1 起)，即 a 在 Z/p_i 中的像"""
        return self.coords[i - 1]

    def is_zero(self) -> bool:
        return self.m == 0 and not any(self.coords)

    def format(self) -> str:
        return f"{self.m}|" + ",".join(str(a) for a in self.coords)

    def pretty(self) -> str:
        """符号形式，例如 c+x1+2x3"""
        parts = []
        if self.m:
            parts.append("c" if self.m == 1 else f"{self.m}c")
        for i, k in enumerate(self.coords, start=1):
            if k:
                parts.append(f"x{i}" if k == 1 else f"{k}x{i}")
        if not parts:
            return "0"
        return "+".join(parts).replace("+-", "-")

    def __str__(self) -> str:
        return self.pretty()


# 运算函数

def zero(w: WeightType) -> LVec:
    return LVec(w, 0, (0,) * w.t)


def x(w: WeightType, i: int) -> LVec:
    coeffs = [0] * w.t
    coeffs[i - 1] = 1
    return LVec.normalize(w, 0, coeffs)


def c(w: WeightType) -> LVec:
    return LVec(w, 1, (0,) * w.t)


def lv_add(a: LVec, b: LVec) -> LVec:
    return a + b


def lv_neg(a: LVec) -> LVec:
    return -a


def lv_sub(a: LVec, b: LVec) -> LVec:
    return a - b


def lv_scale(k: int, a: LVec) -> LVec:
    return a.scale(k)


def omega(w: WeightType) -> LVec:
    """对偶化元 (t-2)c - Σ x_i"""
    return LVec.normalize(w, w.t - 2, [-1] * w.t)


def delta(a: LVec) -> int:
    """次数映射，x_i ↦ p/p_i"""
    p = a.w.p
    return a.m * p + sum(k * (p // pi) for k, pi in zip(a.coords, a.w.weights))


def euler_char(w: WeightType) -> Fraction:
    """χ = 2 - Σ(1 - 1/p_i)，等于 -δ(ω)/p"""
    return Fraction(2) - sum((1 - Fraction(1, pi) for pi in w.weights), Fraction(0))


def is_nonneg(a: LVec) -> bool:
    """a ∈ Σ N x_i 当且仅当正规形中 m ≥ 0"""
    return a.m >= 0


def leq(a: LVec, b: LVec) -> bool:
    return is_nonneg(b - a)


def order_of(a: LVec) -> Optional[int]:
    """a 的阶，无穷阶返回 None"""
    if delta(a) != 0:
        return None
    # δ 的核是挠子群，其阶整除 Π p_i / p
    bound = reduce(lambda u, v: u * v, a.w.weights, 1)
    current = a
    for k in range(1, bound + 1):
        if current.is_zero():
            return k
        current = current + a
    raise AssertionError("torsion element without finite order")


def window(lower: LVec, upper: LVec) -> List[LVec]:
    """区间 lower ≤ a ≤ upper 中的全部元素，按 (δ, 正规形) 排序"""
    lower._check(upper)
    w = lower.w
    span = upper - lower
    if not is_nonneg(span):
        return []
    result = []
    for k in range(span.m + 1):
        for coords in _coord_box(w.weights):
            n = LVec.normalize(w, k, coords)
            if leq(n, span):
                result.append(lower + n)
    result.sort(key=lambda a: (delta(a), a.m, a.coords))
    return result


def _coord_box(weights: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    if not weights:
        yield ()
        return
    for rest in _coord_box(weights[1:]):
        for k in range(weights[0]):
            yield (k,) + rest


# 文本形式

_WEIGHT_RE = re.compile(r"^\s*\d+(\s*,\s*\d+)*\s*$")
_TERM_RE = re.compile(r"([+-]?)\s*(\d*)\s*(x\d+|[xyzcw]|0)")


def parse_weight_type(text: str, lambda4: Fraction = Fraction(2)) -> WeightType:
    """解析 `2,3,6` 或 `2,2,2,2;lambda4=5/2`"""
    head, *suffixes = text.split(";")
    if not _WEIGHT_RE.match(head):
        raise FormatError(f"无法解析权重类型: {text!r}")
    weights = [int(p) for p in head.split(",")]
    extra = {}
    for suffix in suffixes:
        if not suffix.strip():
            continue
        match = re.match(r"^\s*lambda(\d+)\s*=\s*(-?\d+(?:/\d+)?)\s*$", suffix)
        if not match:
            raise FormatError(f"无法解析参数: {suffix!r}")
        extra[int(match.group(1))] = Fraction(match.group(2))
    params = []
    for k in range(4, len(weights) + 1):
        params.append(extra.pop(k, Fraction(lambda4) + (k - 4)))
    if extra:
        raise FormatError(f"参数下标超出范围: {sorted(extra)}")
    return WeightType.create(weights, params)


def parse_lvec(text: str, w: WeightType) -> LVec:
    """解析 `m|m1,..,mt` 或符号形式 `x1+2w-c`"""
    text = text.strip()
    if "|" in text:
        head, tail = text.split("|", 1)
        try:
            coeffs = [int(k) for k in tail.split(",")] if tail.strip() else []
            return LVec.normalize(w, int(head), coeffs)
        except (ValueError, DomainError) as e:
            raise FormatError(f"无法解析 L 向量: {text!r}") from e
    compact = text.replace(" ", "")
    if not compact:
        raise FormatError("空的 L 向量")
    result = zero(w)
    pos = 0
    for match in _TERM_RE.finditer(compact):
        if match.start() != pos or (pos > 0 and not match.group(1)):
            raise FormatError(f"无法解析 L 向量: {text!r}")
        pos = match.end()
        sign = -1 if match.group(1) == "-" else 1
        k = int(match.group(2)) if match.group(2) else 1
        result = result + _generator(match.group(3), w).scale(sign * k)
    if pos != len(compact):
        raise FormatError(f"无法解析 L 向量: {text!r}")
    return result


def _generator(token: str, w: WeightType) -> LVec:
    if token == "0":
        return zero(w)
    if token == "c":
        return c(w)
    if token == "w":
        return omega(w)
    if token in ALIASES:
        if w.t != 3:
            raise FormatError("x, y, z 只用于 t = 3")
        return x(w, ALIASES[token])
    i = int(token[1:])
    if not 1 <= i <= w.t:
        raise FormatError(f"生成元下标越界: {token}")
    return x(w, i)


def format_lvec(a: LVec) -> str:
    return a.format()


def parse_window(text: str, w: WeightType) -> Tuple[LVec, LVec]:
    """解析 `-c,2c` 或 `[-c, 2c]`"""
    body = text.strip().lstrip("[").rstrip("]")
    parts = body.split(",") if "|" not in body else body.split(";")
    if len(parts) != 2:
        raise FormatError(f"窗口应为 lower,upper: {text!r}")
    return parse_lvec(parts[0], w), parse_lvec(parts[1], w)
