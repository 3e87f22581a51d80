"""
L(p)-分次环 R(λ, p)
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple, Union

from ..core.exceptions import DomainError
from .lgroup import LVec, WeightType, zero

Monomial = Tuple[int, ...]


def monomial_degree(w: WeightType, exps: Monomial) -> LVec:
    return LVec.normalize(w, 0, list(exps))


def is_reduced(w: WeightType, exps: Monomial) -> bool:
    """i ≥ 3 的指数都小于 p_i"""
    return all(e < p for e, p in zip(exps[2:], w.weights[2:]))


def basis(a: LVec) -> List[Monomial]:
    """R_a 的约化单项式基，按 x1 指数递增"""
    w = a.w
    if a.m < 0:
        return []
    p1, p2 = w.weights[0], w.weights[1]
    m1, m2 = a.coords[0], a.coords[1]
    rest = a.coords[2:]
    return [(m1 + p1 * k, m2 + p2 * (a.m - k)) + rest for k in range(a.m + 1)]


def dim_R(a: LVec) -> int:
    """R_a 的维数"""
    return max(0, a.m + 1)


def format_monomial(exps: Monomial) -> str:
    parts = []
    for i, e in enumerate(exps, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class RElement:
    """R 的齐次元素"""

    degree: LVec
    terms: Dict[Monomial, Fraction] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self) -> None:
        w = self.degree.w
        for exps, coeff in self.terms.items():
            if not is_reduced(w, exps):
                raise DomainError(f"单项式未约化: {exps}")
            if monomial_degree(w, exps) != self.degree:
                raise DomainError(f"单项式 {exps} 的次数与 {self.degree} 不符")

    @classmethod
    def monomial(cls, w: WeightType, exps: Monomial, coeff: Union[int, Fraction] = 1) -> "RElement":
        """由任意单项式生成并约化"""
        return cls.from_terms(w, {tuple(exps): Fraction(coeff)})

    @classmethod
    def from_terms(cls, w: WeightType, terms: Dict[Monomial, Fraction]) -> "RElement":
        reduced: Dict[Monomial, Fraction] = {}
        degree = None
        for exps, coeff in terms.items():
            d = monomial_degree(w, exps)
            if degree is None:
                degree = d
            elif d != degree:
                raise DomainError("非齐次元素")
            for mono, k in _reduce_monomial(w, exps).items():
                reduced[mono] = reduced.get(mono, Fraction(0)) + k * coeff
        if degree is None:
            degree = zero(w)
        return cls(degree, {m: k for m, k in reduced.items() if k != 0})

    @classmethod
    def one(cls, w: WeightType) -> "RElement":
        return cls(zero(w), {(0,) * w.t: Fraction(1)})

    @classmethod
    def variable(cls, w: WeightType, i: int) -> "RElement":
        exps = [0] * w.t
        exps[i - 1] = 1
        return cls.monomial(w, tuple(exps))

    def is_zero(self) -> bool:
        return not self.terms

    def coordinates(self) -> List[Fraction]:
        """在 basis(degree) 下的坐标"""
        return [self.terms.get(mono, Fraction(0)) for mono in basis(self.degree)]

    def __mul__(self, other: "RElement") -> "RElement":
        return r_multiply(self, other)

    def __add__(self, other: "RElement") -> "RElement":
        if self.degree != other.degree:
            raise DomainError("不同次数的元素不能相加")
        terms = dict(self.terms)
        for mono, k in other.terms.items():
            terms[mono] = terms.get(mono, Fraction(0)) + k
        return RElement(self.degree, {m: k for m, k in terms.items() if k != 0})

    def scale(self, k: Union[int, Fraction]) -> "RElement":
        k = Fraction(k)
        if k == 0:
            return RElement(self.degree, {})
        return RElement(self.degree, {m: k * v for m, v in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, RElement) and self.degree == other.degree
                and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.degree, frozenset(self.terms.items())))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms):
            coeff = self.terms[mono]
            label = format_monomial(mono)
            if coeff == 1:
                parts.append(label)
            elif coeff == -1:
                parts.append(f"-{label}")
            else:
                parts.append(f"{coeff}*{label}")
        return " + ".join(parts).replace("+ -", "- ")


def _reduce_monomial(w: WeightType, exps: Monomial) -> Dict[Monomial, Fraction]:
    """用 x_i^{p_i} = x2^{p2} - λ_i x1^{p1} 约化 (i ≥ 3)"""
    pending: Dict[Monomial, Fraction] = {tuple(exps): Fraction(1)}
    done: Dict[Monomial, Fraction] = {}
    p1, p2 = w.weights[0], w.weights[1]
    while pending:
        mono, coeff = pending.popitem()
        if coeff == 0:
            continue
        for i in range(2, w.t):
            if mono[i] >= w.weights[i]:
                lam = w.parameters[i]
                base = list(mono)
                base[i] -= w.weights[i]
                first = list(base)
                first[1] += p2
                second = list(base)
                second[0] += p1
                for target, k in ((tuple(first), coeff), (tuple(second), -lam * coeff)):
                    if k != 0:
                        pending[target] = pending.get(target, Fraction(0)) + k
                break
        else:
            done[mono] = done.get(mono, Fraction(0)) + coeff
    return {m: k for m, k in done.items() if k != 0}


def r_multiply(u: RElement, v: RElement) -> RElement:
    """乘积并约化，次数相加"""
    if u.degree.w != v.degree.w:
        raise DomainError("权重类型不一致")
    w = u.degree.w
    terms: Dict[Monomial, Fraction] = {}
    for mu, ku in u.terms.items():
        for mv, kv in v.terms.items():
            product = tuple(a + b for a, b in zip(mu, mv))
            for mono, k in _reduce_monomial(w, product).items():
                terms[mono] = terms.get(mono, Fraction(0)) + k * ku * kv
    return RElement(u.degree + v.degree, {m: k for m, k in terms.items() if k != 0})


def relation(w: WeightType, i: int) -> Dict[Monomial, Fraction]:
    """典范关系 f_i = x_i^{p_i} - x2^{p2} + λ_i x1^{p1} 的系数 (未约化)"""
    if i < 3:
        raise DomainError("典范关系只对 i ≥ 3 定义")
    t = w.t
    exps_i = [0] * t
    exps_i[i - 1] = w.weights[i - 1]
    exps_2 = [0] * t
    exps_2[1] = w.weights[1]
    exps_1 = [0] * t
    exps_1[0] = w.weights[0]
    return {
        tuple(exps_i): Fraction(1),
        tuple(exps_2): Fraction(-1),
        tuple(exps_1): w.parameters[i - 1],
    }


def point_values(w: WeightType, i: int) -> List[Fraction]:
    """在参数点 λ_i 处 x_j^{p_j} 的取值 (j ≠ i)，用于到单层的合成"""
    values: List[Fraction] = []
    lam_i = w.parameters[i - 1]
    for j in range(1, w.t + 1):
        if j == i:
            values.append(Fraction(0))
        elif i == 1:
            values.append(Fraction(1))
        elif i == 2:
            values.append(Fraction(1) if j == 1 else -w.parameters[j - 1])
        elif j == 1:
            values.append(Fraction(1))
        elif j == 2:
            values.append(lam_i)
        else:
            values.append(lam_i - w.parameters[j - 1])
    return values
