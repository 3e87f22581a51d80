"""
路径代数商、有限维代数与同构判定测试
"""

import pytest

from tau2_cli.algebra.fdalgebra import (InfiniteAlgebra, ext_between, fd_quotient, gldim, injective,
                                        is_selfinjective, minimal_relations, nakayama_permutation,
                                        permutation_orbits, projective, require_fd, same_ideal,
                                        simple)
from tau2_cli.algebra.isomorphism import IsoClassifier, quiver_graph, quivers_isomorphic
from tau2_cli.algebra.paths import AlgebraPresentation, Path, PathPoly, Quiver
from tau2_cli.core.exceptions import DomainError, NotSelfinjective


def linear_a3(relation: bool = True) -> AlgebraPresentation:
    """1 → 2 → 3，可选关系 a·b"""
    quiver = Quiver.build(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
    relations = (PathPoly.path(Path.of(quiver, ["a", "b"])),) if relation else ()
    return AlgebraPresentation(quiver, relations, name="A3")


def two_cycle(relations: bool = True) -> AlgebraPresentation:
    quiver = Quiver.build(["1", "2"], [("a", "1", "2"), ("b", "2", "1")])
    rels = (PathPoly.path(Path.of(quiver, ["a", "b"])),
            PathPoly.path(Path.of(quiver, ["b", "a"]))) if relations else ()
    return AlgebraPresentation(quiver, rels)


class TestPaths:
    """箭图与路径测试"""

    def test_quiver_validation(self):
        """测试箭图合法性"""
        with pytest.raises(DomainError):
            Quiver.build(["1", "1"], [])
        with pytest.raises(DomainError):
            Quiver.build(["1"], [("a", "1", "2")])

    def test_composition(self):
        """a·b 表示先走 a 再走 b"""
        quiver = linear_a3().quiver
        ab = Path.of(quiver, ["a", "b"])
        assert (ab.source, ab.target) == ("1", "3")
        with pytest.raises(DomainError):
            Path.of(quiver, ["b", "a"])
        a = PathPoly.path(Path.of(quiver, ["a"]))
        b = PathPoly.path(Path.of(quiver, ["b"]))
        assert (a * b) == PathPoly.path(ab)
        assert (b * a).is_zero()

    def test_opposite(self):
        """测试反代数"""
        A = linear_a3().opposite()
        assert A.quiver.is_source("3")
        assert A.quiver.is_sink("1")
        assert Path("3", "1", ("b", "a")) in A.relations[0].terms

    def test_relation_endpoints(self):
        """关系的项端点必须一致"""
        quiver = linear_a3().quiver
        bad = PathPoly.path(Path.of(quiver, ["a"])) + PathPoly.path(Path.of(quiver, ["b"]))
        with pytest.raises(DomainError):
            AlgebraPresentation(quiver, (bad,))


class TestQuotient:
    """有限维商代数测试"""

    def test_path_algebra(self):
        """无关系的 A3"""
        fd = require_fd(fd_quotient(linear_a3(relation=False), 8))
        assert fd.dimension == 6
        assert fd.cartan_matrix() == [[1, 1, 1], [0, 1, 1], [0, 0, 1]]
        assert gldim(fd) == 1

    def test_zero_relation(self):
        """a·b = 0"""
        fd = require_fd(fd_quotient(linear_a3(), 8))
        assert fd.dimension == 5
        assert fd.loewy_length == 2
        assert gldim(fd) == 2

    def test_infinite(self):
        """无关系的 2-圈是无穷维的"""
        result = fd_quotient(two_cycle(relations=False), 8)
        assert isinstance(result, InfiniteAlgebra)
        assert result.witness
        with pytest.raises(DomainError):
            require_fd(result)

    def test_minimal_relations(self):
        """重复的关系被去掉"""
        A = linear_a3()
        doubled = A.with_relations(A.relations + (A.relations[0].scale(2),))
        minimal = minimal_relations(doubled)
        assert len(minimal.relations) == 1
        assert same_ideal(doubled, minimal)
        assert same_ideal(minimal, doubled)

    def test_minimal_relations_drop_products(self):
        """J·I 中的关系 a·b·c 不是极小关系"""
        quiver = Quiver.build(["1", "2", "3", "4"], [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4")])
        ab = PathPoly.path(Path.of(quiver, ["a", "b"]))
        abc = PathPoly.path(Path.of(quiver, ["a", "b", "c"]))
        bc = PathPoly.path(Path.of(quiver, ["b", "c"]))
        A = AlgebraPresentation(quiver, (ab, abc, bc), name="A4")
        minimal = minimal_relations(A)
        assert minimal.relations == (ab, bc)
        assert same_ideal(A, minimal)
        assert require_fd(fd_quotient(minimal)).dimension == 4 + 3


class TestModules:
    """模与 Ext 测试"""

    def test_projective_injective(self):
        """测试投射模与内射模的维数向量"""
        fd = require_fd(fd_quotient(linear_a3(), 8))
        assert projective(fd, "1").dimension_vector() == [1, 1, 0]
        assert injective(fd, "3").dimension_vector() == [0, 1, 1]
        assert projective(fd, "3").socle_dims() == {"1": 0, "2": 0, "3": 1}

    def test_ext(self):
        """Ext^k(S_1, S_3) 只在 k = 2 非零"""
        fd = require_fd(fd_quotient(linear_a3(), 8))
        S1, S3 = simple(fd, "1"), simple(fd, "3")
        assert [ext_between(S1, S3, k) for k in (0, 1, 2)] == [0, 0, 1]
        assert ext_between(S1, simple(fd, "2"), 1) == 1

    def test_selfinjective(self):
        """根平方为零的 2-圈是自内射的"""
        fd = require_fd(fd_quotient(two_cycle(), 8))
        assert fd.dimension == 4
        assert is_selfinjective(fd)
        perm = nakayama_permutation(fd)
        assert perm == {"1": "2", "2": "1"}
        assert permutation_orbits(perm, fd.vertices) == [["1", "2"]]
        assert gldim(fd, 4) is None

    def test_not_selfinjective(self):
        """A3 不是自内射的"""
        fd = require_fd(fd_quotient(linear_a3(), 8))
        assert not is_selfinjective(fd)
        with pytest.raises(NotSelfinjective):
            nakayama_permutation(fd)


class TestIsomorphism:
    """同构判定测试"""

    def test_relabelled_quivers(self):
        """改名后的箭图同构"""
        Q1 = linear_a3().quiver
        Q2 = Quiver.build(["x", "y", "z"], [("p", "z", "y"), ("q", "y", "x")])
        assert quivers_isomorphic(Q1, Q2)
        assert not quivers_isomorphic(Q1, two_cycle().quiver)

    def test_graded(self):
        """次数不同的箭图不同构"""
        Q = linear_a3().quiver
        assert not quivers_isomorphic(Q, Q, {"a": 0, "b": 1}, {"a": 0, "b": 0})
        reversed_q = Quiver.build(["x", "y", "z"], [("p", "z", "y"), ("q", "y", "x")])
        assert quivers_isomorphic(Q, reversed_q, {"a": 0, "b": 1}, {"p": 0, "q": 1})
        assert not quivers_isomorphic(Q, reversed_q, {"a": 0, "b": 1}, {"p": 1, "q": 0})

    def test_classifier(self):
        """测试同构类登记"""
        classifier = IsoClassifier()
        first = classifier.register(quiver_graph(linear_a3().quiver))
        assert first == (True, 0)
        Q2 = Quiver.build(["u", "v", "w"], [("s", "u", "v"), ("t", "v", "w")])
        assert classifier.find(quiver_graph(Q2)) == 0
        assert classifier.register(quiver_graph(Q2)) == (False, 0)
        assert classifier.find(quiver_graph(two_cycle().quiver)) is None
        assert classifier.register(quiver_graph(linear_a3().quiver), extra=5) == (True, 1)


if __name__ == "__main__":
    pytest.main([__file__])
