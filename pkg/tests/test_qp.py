"""
分次带势箭图与变换测试
"""

import random

import pytest

from tau2_cli.algebra.fdalgebra import require_fd
from tau2_cli.algebra.isomorphism import quivers_isomorphic
from tau2_cli.algebra.paths import Path, PathPoly, Quiver
from tau2_cli.algebra.qp import (LEFT, RIGHT, GradedQP, exchange_matrix, forget_grading, graded_dims,
                                 is_algebraic, jacobian, matrix_mutation, mutate, mutate_left,
                                 mutate_orbit, mutate_right, premutate_left, qp_from_terms, relabel,
                                 truncated_jacobian)
from tau2_cli.core.exceptions import CapExceeded, DomainError
from tau2_cli.tools.verify import random_mutations


class TestGradedQP:
    """带势箭图构造测试"""

    def test_potential_rotation(self, triangle):
        """势的项旋转到最小代表"""
        rotated = qp_from_terms(triangle.quiver, triangle.degrees, [(1, ["b", "c", "a"])], 1)
        assert rotated.potential == triangle.potential

    def test_inhomogeneous(self, triangle):
        """势必须齐次"""
        with pytest.raises(DomainError):
            GradedQP(triangle.quiver, {"a": 1, "b": 0, "c": 1}, triangle.potential, 1)

    def test_loops_rejected(self):
        """不允许圈边"""
        quiver = Quiver.build(["1"], [("l", "1", "1")])
        with pytest.raises(DomainError):
            GradedQP(quiver, {"l": 0}, PathPoly({}), 1)

    def test_derivative(self, triangle):
        """∂_c(a·b·c) = a·b"""
        assert triangle.derivative("c") == PathPoly.path(Path.of(triangle.quiver, ["a", "b"]))


class TestJacobian:
    """Jacobian 代数测试"""

    def test_dimension(self, triangle):
        """3-圈的 Jacobian 代数"""
        fd = require_fd(jacobian(triangle))
        assert fd.dimension == 6
        assert graded_dims(triangle) == {0: 5, 1: 1}

    def test_truncated(self, triangle):
        """截断 Jacobian 代数是 a·b = 0 的 A3"""
        A = truncated_jacobian(triangle)
        assert [a.name for a in A.quiver.arrows] == ["a", "b"]
        assert A.relations == (PathPoly.path(Path.of(A.quiver, ["a", "b"])),)
        assert is_algebraic(triangle)

    def test_truncated_needs_degree_one(self, triangle):
        """d(W) 必须为 1"""
        with pytest.raises(DomainError):
            truncated_jacobian(forget_grading(triangle))


class TestMutation:
    """变换测试"""

    def test_premutation_has_two_cycle(self, triangle):
        """premutation 产生 2-圈"""
        assert premutate_left(triangle, "2").quiver.two_cycles()

    def test_mutation_at_middle(self, triangle):
        """在顶点 2 变换得到无势的 A3"""
        mutated = mutate(triangle, "2", LEFT)
        assert len(mutated.quiver.arrows) == 2
        assert mutated.potential.is_zero()
        assert not mutated.quiver.two_cycles()
        assert mutated.is_homogeneous()
        assert require_fd(jacobian(mutated)).dimension == 6

    def test_matches_matrix_mutation(self, triangle):
        """箭图部分与矩阵变换一致"""
        B = exchange_matrix(triangle.quiver)
        for k, v in enumerate(triangle.quiver.vertices):
            assert exchange_matrix(mutate(triangle, v).quiver) == matrix_mutation(B, k)

    def test_left_right_involution(self, triangle):
        """右变换抵消左变换"""
        back = mutate_right(mutate_left(triangle, "2"), "2")
        assert quivers_isomorphic(back.quiver, triangle.quiver, back.degrees, triangle.degrees)
        assert graded_dims(back) == graded_dims(triangle)

    def test_orbit_must_be_independent(self, triangle):
        """轨道中的顶点两两不相邻"""
        with pytest.raises(DomainError):
            mutate_orbit(triangle, ["1", "2"])

    def test_unknown_side(self, triangle):
        with pytest.raises(DomainError):
            mutate(triangle, "2", "up")

    def test_relabel(self, triangle):
        """多次变换后箭头名保持简短"""
        mutated = relabel(mutate(mutate(triangle, "2", RIGHT), "1"))
        assert all(len(a.name) <= 3 for a in mutated.quiver.arrows)
        assert mutated.is_homogeneous()

    def test_random_mutations(self, triangle):
        """随机变换之后势仍齐次且无 2-圈"""
        counts = random_mutations(triangle, 40, random.Random(7))
        assert counts["violations"] == 0
        assert counts["done"] + counts["skipped"] == 40

    def test_arrow_cap(self):
        """零势的星形箭图变换后箭头数超过上限"""
        arrows = [(f"a{i}", f"s{i}", "k") for i in range(9)]
        arrows += [(f"b{j}", "k", f"t{j}") for j in range(8)]
        vertices = ["k"] + [f"s{i}" for i in range(9)] + [f"t{j}" for j in range(8)]
        star = GradedQP(Quiver.build(vertices, arrows), {name: 0 for name, _, _ in arrows},
                        PathPoly({}), 1, name="star")
        with pytest.raises(CapExceeded) as info:
            mutate(star, "k")
        assert info.value.partial == 17 + 9 * 8
        counts = random_mutations(star, 1, random.Random(0))
        assert counts["done"] + counts["skipped"] == 1
        assert counts["violations"] == 0


if __name__ == "__main__":
    pytest.main([__file__])
