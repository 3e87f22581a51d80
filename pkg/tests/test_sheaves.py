"""
环 R 与层的 Hom/Ext 测试
"""

import math
from fractions import Fraction

import pytest

from tau2_cli.algebra.lgroup import c, omega, parse_lvec, parse_weight_type, x, zero
from tau2_cli.algebra.ring import RElement, dim_R, r_multiply
from tau2_cli.algebra.sheaves import (ExcSimple, K0Class, LineBundle, canonical_sum, euler_form,
                                      ext1_dim, hom_dim, is_rigid, is_tau2_stable, is_tilting,
                                      parse_sum, parse_symbol, slope, split, tau, tau_k)
from tau2_cli.core.exceptions import DomainError, FormatError


class TestRing:
    """分次环维数测试"""

    def test_dimensions(self):
        """测试 dim R_a"""
        w = parse_weight_type("2,3,6")
        assert dim_R(zero(w)) == 1
        assert dim_R(x(w, 1)) == 1
        assert dim_R(c(w)) == 2
        assert dim_R(c(w).scale(2)) == 3
        assert dim_R(-x(w, 1)) == 0
        assert dim_R(omega(w)) == 0

    def test_four_points(self):
        """四个加权点时 R_c 仍为二维"""
        w = parse_weight_type("2,2,2,2")
        assert dim_R(c(w)) == 2
        assert dim_R(x(w, 3) + x(w, 4)) == 1

    def test_multiply(self):
        """乘法交换，次数相加"""
        w = parse_weight_type("2,3,6")
        u, v = RElement.variable(w, 1), RElement.variable(w, 3)
        assert r_multiply(u, v) == r_multiply(v, u)
        assert (u * v).degree == x(w, 1) + x(w, 3)
        assert not (u * v).is_zero()
        assert RElement.one(w) * u == u
        with pytest.raises(DomainError):
            r_multiply(u, RElement.variable(parse_weight_type("2,3,7"), 1))


class TestHom:
    """Hom 与 Ext 维数测试"""

    def setup_method(self):
        self.w = parse_weight_type("2,3,6")
        self.O = LineBundle(zero(self.w))
        self.Oc = LineBundle(c(self.w))

    def test_line_bundles(self):
        """测试线丛之间的 Hom"""
        assert hom_dim(self.O, self.Oc) == 2
        assert hom_dim(self.Oc, self.O) == 0
        assert ext1_dim(self.Oc, self.O) == 0
        assert ext1_dim(self.O, self.O) == 0

    def test_simples(self):
        """测试例外单层"""
        S1 = ExcSimple(self.w, 3, 1)
        S2 = ExcSimple(self.w, 3, 2)
        assert hom_dim(self.O, S1) == 1
        assert hom_dim(self.O, S2) == 0
        assert hom_dim(S1, self.O) == 0
        assert ext1_dim(S1, S2) == 1
        assert ext1_dim(S2, S1) == 0

    def test_tau(self):
        """测试 τ 作用"""
        assert tau(self.O) == LineBundle(omega(self.w))
        assert tau(ExcSimple(self.w, 2, 3)) == ExcSimple(self.w, 2, 1)
        assert tau(ExcSimple(self.w, 3, 2)) == ExcSimple(self.w, 3, 3)
        S = ExcSimple(self.w, 3, 4)
        assert tau_k(tau_k(S, 5), -5) == S

    def test_serre_duality(self):
        """Ext¹(X, Y) 与 Hom(Y, τX) 维数相同"""
        objects = [self.O, self.Oc, LineBundle(x(self.w, 2)), ExcSimple(self.w, 1, 1),
                   ExcSimple(self.w, 2, 2)]
        for X in objects:
            for Y in objects:
                assert ext1_dim(X, Y) == hom_dim(Y, tau(X))

    def test_mixed_weights(self):
        """测试权重类型不一致"""
        other = LineBundle(zero(parse_weight_type("2,3,7")))
        with pytest.raises(DomainError):
            hom_dim(self.O, other)


class TestEulerForm:
    """Euler 型与斜率测试"""

    def test_euler_form(self):
        """测试 Euler 型"""
        w = parse_weight_type("2,3,6")
        O = LineBundle(zero(w))
        assert euler_form(O, O) == 1
        assert euler_form(O, LineBundle(c(w))) == 2
        assert euler_form(O, ExcSimple(w, 1, 1)) == 1

    def test_euler_is_hom_minus_ext(self):
        """<X,Y> = hom - ext"""
        w = parse_weight_type("2,2,4")
        objects = [LineBundle(parse_lvec(word, w)) for word in ("0", "z", "x+w", "c")]
        objects += [ExcSimple(w, 2, 1), ExcSimple(w, 3, 2)]
        for X in objects:
            for Y in objects:
                assert euler_form(X, Y) == hom_dim(X, Y) - ext1_dim(X, Y)

    def test_slope(self):
        """测试斜率"""
        w = parse_weight_type("2,3,6")
        assert slope(LineBundle(c(w))) == Fraction(6)
        assert slope(ExcSimple(w, 1, 1)) == math.inf
        with pytest.raises(DomainError):
            slope(K0Class.of(w, []))

    def test_proof_table_244(self):
        """(2,2,4) 的维数表"""
        w = parse_weight_type("2,2,4")
        S, S2 = ExcSimple(w, 2, 1), ExcSimple(w, 2, 2)
        table = [("z", 1, 0), ("x+w", 0, 1), ("x+3w", 0, 1), ("y+2w", 0, 1), ("z+2w", 1, 0),
                 ("0", 1, 0)]
        for word, to_s, to_s2 in table:
            L = LineBundle(parse_lvec(word, w))
            assert hom_dim(L, S) == to_s, word
            assert hom_dim(L, S2) == to_s2, word
        U = K0Class.symbol(LineBundle(omega(w))) + K0Class.symbol(LineBundle(parse_lvec("z", w)))
        assert euler_form(U, S) == 1
        assert euler_form(U, S2) == 1


class TestTilting:
    """倾斜判定测试"""

    def test_canonical_sum(self):
        """典范倾斜丛"""
        for text in ("2,2,2,2", "2,3,6", "2,3,7"):
            w = parse_weight_type(text)
            T = canonical_sum(w)
            assert len(T) == w.rank_k0()
            assert is_tilting(T)

    def test_tau2_stability(self):
        """(2,2,2,2) 上 τ² 是恒等"""
        assert is_tau2_stable(canonical_sum(parse_weight_type("2,2,2,2")))
        assert not is_tau2_stable(canonical_sum(parse_weight_type("2,3,6")))

    def test_not_rigid(self):
        """相邻单层有 Ext"""
        w = parse_weight_type("2,2,2,2")
        T = parse_sum("O(0), S(1,1), S(1,2)", w)
        assert not is_rigid(T)
        assert not is_tilting(T)

    def test_split(self):
        """测试 q_i 计数"""
        w = parse_weight_type("2,4,4")
        T = parse_sum("O(0), O(c), S(2,1), S(2,3), S(3,2)", w)
        parts = split(T)
        assert len(parts.bundles) == 2
        assert parts.tube_counts == {1: 0, 2: 2, 3: 1}
        assert parts.perpendicular_weights(w) == (2, 2, 3)

    def test_parse_symbol(self):
        """测试层符号"""
        w = parse_weight_type("2,2,4")
        assert parse_symbol("O()", w) == LineBundle(zero(w))
        assert parse_symbol("S(2,1)", w) == ExcSimple(w, 2, 1)
        with pytest.raises(FormatError):
            parse_symbol("Q(0)", w)
        with pytest.raises(FormatError):
            parse_symbol("S(2)", w)
        with pytest.raises(DomainError):
            parse_symbol("S(2,3)", w)


if __name__ == "__main__":
    pytest.main([__file__])
