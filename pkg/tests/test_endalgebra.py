"""
自同态代数测试
"""

from fractions import Fraction

import pytest

from tau2_cli.algebra.endalgebra import (canonical_algebra, cross_check, end_algebra,
                                         hom_dimension_total)
from tau2_cli.algebra.fdalgebra import fd_quotient, gldim, require_fd
from tau2_cli.algebra.isomorphism import quivers_isomorphic
from tau2_cli.algebra.lgroup import parse_weight_type
from tau2_cli.algebra.sheaves import canonical_sum, parse_sum


class TestEndAlgebra:
    """End(T) 的箭图与关系"""

    def test_canonical_bundle(self):
        """典范倾斜丛的自同态代数是典范代数"""
        w = parse_weight_type("2,3,6")
        T = canonical_sum(w)
        A = end_algebra(T)
        assert len(A.quiver.vertices) == 10
        assert len(A.quiver.arrows) == 11
        assert len(A.relations) == 1
        assert quivers_isomorphic(A.quiver, canonical_algebra(w).quiver)

    def test_dimension(self):
        """dim End(T) = Σ dim Hom(X, Y)"""
        T = canonical_sum(parse_weight_type("2,3,6"))
        fd = require_fd(fd_quotient(end_algebra(T)))
        assert fd.dimension == hom_dimension_total(T)
        assert gldim(fd) == 2

    def test_with_simple(self):
        """O → O(x₁) 与 O → S(1,1) 两条箭头，复合为零"""
        w = parse_weight_type("2,2,2,2")
        T = parse_sum("O(0), O(x1), S(1,1)", w)
        A = end_algebra(T)
        assert len(A.quiver.arrows) == 2
        assert A.relations == ()
        assert require_fd(fd_quotient(A)).dimension == hom_dimension_total(T) == 5

    def test_weights(self):
        """箭头权重沿路径可加"""
        A = canonical_algebra(parse_weight_type("2,3,6"))
        assert A.weights is not None
        assert set(A.weights) == {a.name for a in A.quiver.arrows}


class TestCrossCheck:
    """参数交叉检验"""

    def test_three_points(self):
        """三个加权点时没有可变参数"""
        T = canonical_sum(parse_weight_type("2,3,6"))
        assert cross_check(T, Fraction(3)) is None

    @pytest.mark.slow
    def test_four_points(self):
        T = canonical_sum(parse_weight_type("2,2,2,2"))
        assert cross_check(T, Fraction(3)) is None


if __name__ == "__main__":
    pytest.main([__file__])
