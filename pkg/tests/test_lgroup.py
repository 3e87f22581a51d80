"""
L(p) 运算测试
"""

from fractions import Fraction

import pytest

from tau2_cli.algebra.lgroup import (LVec, WeightType, c, delta, euler_char, leq, omega, order_of,
                                     parse_lvec, parse_weight_type, parse_window, window, x, zero)
from tau2_cli.core.exceptions import DomainError, FormatError


class TestWeightType:
    """权重类型测试"""

    def test_parse_and_format(self):
        """测试文本形式"""
        w = parse_weight_type("2,2,2,2;lambda4=5/2")
        assert w.weights == (2, 2, 2, 2)
        assert w.parameters[3] == Fraction(5, 2)
        assert parse_weight_type(w.format()) == w

    def test_default_lambda(self):
        """测试缺省参数"""
        w = parse_weight_type("2,2,2,2")
        assert w.parameters == (None, Fraction(0), Fraction(1), Fraction(2))

    def test_invalid(self):
        """测试非法输入"""
        with pytest.raises(FormatError):
            parse_weight_type("a,b,c")
        with pytest.raises(DomainError):
            parse_weight_type("2,3")
        with pytest.raises(DomainError):
            WeightType.create((2, 2, 2, 2), lambda4=Fraction(1))

    def test_rank_and_tubular(self):
        """测试 K0 秩与管型判定"""
        assert parse_weight_type("2,2,2,2").rank_k0() == 6
        assert parse_weight_type("2,4,4").rank_k0() == 9
        assert parse_weight_type("3,3,3").is_tubular()
        assert not parse_weight_type("2,3,7").is_tubular()


class TestLVec:
    """L 向量测试"""

    def test_normal_form(self):
        """测试正规形"""
        w = parse_weight_type("2,3,6")
        assert x(w, 1).scale(2) == c(w)
        assert parse_lvec("1|0,0,0", w) == c(w)
        assert parse_lvec("3x2", w) == c(w)
        assert parse_lvec("x1-x1", w).is_zero()

    def test_symbolic_words(self):
        """测试符号形式"""
        w = parse_weight_type("2,2,4")
        a = parse_lvec("x+w", w)
        assert a == x(w, 1) + omega(w)
        assert a.format() == "-1|0,1,3"
        assert parse_lvec("0", w) == zero(w)

    def test_bad_words(self):
        """测试无法解析的 L 向量"""
        w = parse_weight_type("2,2,2,2")
        with pytest.raises(FormatError):
            parse_lvec("x", w)
        with pytest.raises(FormatError):
            parse_lvec("x5", w)
        with pytest.raises(FormatError):
            parse_lvec("", w)

    def test_delta(self):
        """测试次数映射"""
        w = parse_weight_type("2,3,6")
        assert delta(c(w)) == 6
        assert delta(x(w, 1)) == 3
        assert delta(x(w, 3)) == 1
        assert delta(omega(w)) == 0

    def test_order(self):
        """测试 ω 的阶"""
        for text, order in [("2,2,2,2", 2), ("3,3,3", 3), ("2,4,4", 4), ("2,3,6", 6)]:
            w = parse_weight_type(text)
            assert order_of(omega(w)) == order == w.p
        assert order_of(omega(parse_weight_type("2,3,7"))) is None
        assert order_of(omega(parse_weight_type("2,3,5"))) is None

    def test_euler_char(self):
        """测试 Euler 特征"""
        assert euler_char(parse_weight_type("2,3,7")) == Fraction(-1, 42)
        assert euler_char(parse_weight_type("2,3,5")) == Fraction(1, 30)
        assert euler_char(parse_weight_type("2,2,2,2")) == 0

    def test_order_relation(self):
        """测试偏序"""
        w = parse_weight_type("2,3,6")
        assert leq(zero(w), x(w, 2))
        assert leq(x(w, 2), c(w))
        assert not leq(x(w, 1) + x(w, 2), c(w))


class TestWindow:
    """窗口枚举测试"""

    def test_canonical_window(self):
        """0 ≤ a ≤ c 的元素个数等于 K0 的秩"""
        for text in ("2,3,6", "2,2,2,2", "3,3,3"):
            w = parse_weight_type(text)
            assert len(window(zero(w), c(w))) == w.rank_k0()

    def test_sorted_by_degree(self):
        """测试按次数排序"""
        w = parse_weight_type("2,4,4")
        lower, upper = parse_window("-c,2c", w)
        items = window(lower, upper)
        assert items[0] == lower
        assert items[-1] == upper
        degrees = [delta(a) for a in items]
        assert degrees == sorted(degrees)

    def test_empty_window(self):
        """测试空窗口"""
        w = parse_weight_type("2,3,6")
        assert window(c(w), zero(w)) == []

    def test_parse_window(self):
        """测试窗口文本"""
        w = parse_weight_type("3,3,3")
        lower, upper = parse_window("[-c, 2c]", w)
        assert lower == LVec(w, -1, (0, 0, 0))
        assert upper == LVec(w, 2, (0, 0, 0))
        with pytest.raises(FormatError):
            parse_window("c", w)


if __name__ == "__main__":
    pytest.main([__file__])
