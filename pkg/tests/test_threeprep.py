"""
3-预投射代数、2-表示有限性与 2-APR 倾斜测试
"""

import pytest

from tau2_cli.algebra.fdalgebra import fd_quotient, gldim, require_fd
from tau2_cli.algebra.isomorphism import quivers_isomorphic
from tau2_cli.algebra.lgroup import parse_weight_type
from tau2_cli.algebra.paths import AlgebraPresentation, Path, PathPoly, Quiver
from tau2_cli.algebra.qp import LEFT, RIGHT
from tau2_cli.algebra.sheaves import canonical_sum
from tau2_cli.algebra.threeprep import (check_2homogeneous, check_2rf, cluster_check, extended_qp,
                                        is_2homogeneous, is_2rf, iterated_2apr_normalize, pi3,
                                        two_apr_tilt)
from tau2_cli.core.exceptions import DomainError
from tau2_cli.core.verdict import Verdict
from tau2_cli.tools.catalog import CATALOG
from tau2_cli.tools.verify import roundtrip_holds


def radical_square_zero_a4() -> AlgebraPresentation:
    """1 → 2 → 3 → 4，根平方为零，整体维数 3"""
    quiver = Quiver.build(["1", "2", "3", "4"], [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4")])
    relations = (PathPoly.path(Path.of(quiver, ["a", "b"])), PathPoly.path(Path.of(quiver, ["b", "c"])))
    return AlgebraPresentation(quiver, relations)


class TestExtendedQP:
    """扩展带势箭图测试"""

    def test_structure(self, auslander_a2):
        """每条关系对应一条反向的 1 次箭头"""
        ext = extended_qp(auslander_a2)
        star = ext.qp.arrows_of_degree(1)
        assert [(a.source, a.target) for a in star] == [("3", "1")]
        assert ext.qp.potential_degree == 1
        assert len(ext.qp.potential.terms) == 1
        assert ext.back_map[star[0].name] == auslander_a2.relations[0]

    def test_gldim_too_large(self):
        """整体维数大于 2 时拒绝"""
        with pytest.raises(DomainError):
            extended_qp(radical_square_zero_a4())

    def test_roundtrip(self, auslander_a2, path_a3):
        """截断 Jacobian 代数还原原代数"""
        assert roundtrip_holds(auslander_a2, 32, 6)
        assert roundtrip_holds(path_a3, 32, 6)

    def test_pi3(self, auslander_a2):
        """Π₃ 是 3-圈的 Jacobian 代数"""
        fd = require_fd(pi3(auslander_a2))
        assert fd.dimension == 6
        assert fd.graded_dims() == {0: 5, 1: 1}


class TestTwoRF:
    """2-表示有限性测试"""

    def test_auslander_algebra(self, auslander_a2):
        """A2 的 Auslander 代数是 2-表示有限的"""
        report = check_2rf(auslander_a2)
        assert report.verdict is Verdict.TRUE
        assert report.gldim == 2
        assert report.pi3_dimension == 6
        assert report.nakayama == {"1": "2", "2": "3", "3": "1"}
        assert is_2rf(auslander_a2)

    def test_indeterminate_is_falsy(self, auslander_a2):
        """上限不足时判定为未定，未定不是真值"""
        verdict = is_2rf(auslander_a2, cap=1)
        assert verdict is Verdict.INDETERMINATE
        assert not verdict
        assert verdict.exit_code == 2

    def test_hereditary_excluded(self, path_a3):
        """整体维数为 1 的代数不算"""
        report = check_2rf(path_a3)
        assert report.verdict is Verdict.FALSE
        assert report.gldim == 1

    def test_gldim_three(self):
        report = check_2rf(radical_square_zero_a4())
        assert report.verdict is Verdict.FALSE

    def test_not_homogeneous(self, auslander_a2):
        """ν₂⁻¹ 只在顶点 3 非零"""
        homogeneity = check_2homogeneous(auslander_a2)
        assert homogeneity.degrees_ok
        assert not homogeneity.homogeneous
        assert homogeneity.injective_images["3"] == "1"
        assert homogeneity.injective_images["1"] is None

    def test_homogeneity_requires_2rf(self, path_a3):
        with pytest.raises(DomainError):
            is_2homogeneous(path_a3)

    def test_report_dict(self, auslander_a2):
        data = check_2rf(auslander_a2).to_dict()
        assert data["verdict"] == "true"
        assert data["pi3_dimension"] == 6


class TestTwoAPR:
    """2-APR 倾斜测试"""

    def test_left_tilt_at_sink(self, auslander_a2):
        """在汇点 3 左倾斜"""
        result = two_apr_tilt(auslander_a2, "3", LEFT)
        tilted = result.presentation
        assert all(value == 0 for value in result.witness.values())
        assert len(tilted.quiver.arrows) == 2
        assert len(tilted.relations) == 1
        assert quivers_isomorphic(tilted.quiver, auslander_a2.quiver)
        assert gldim(require_fd(fd_quotient(tilted))) == 2

    def test_right_tilt_at_source(self, auslander_a2):
        """在源点 1 右倾斜"""
        result = two_apr_tilt(auslander_a2, "1", RIGHT)
        assert result.side == RIGHT
        assert quivers_isomorphic(result.presentation.quiver, auslander_a2.quiver)
        assert check_2rf(result.presentation).verdict is Verdict.TRUE

    def test_requires_sink(self, auslander_a2):
        """左倾斜要求汇点"""
        with pytest.raises(DomainError):
            two_apr_tilt(auslander_a2, "2", LEFT)
        with pytest.raises(DomainError):
            two_apr_tilt(auslander_a2, "3", RIGHT)
        with pytest.raises(DomainError):
            two_apr_tilt(auslander_a2, "9", LEFT)

    def test_normalize_stops(self, auslander_a2):
        """倾斜只得到同构的代数时停止，返回未完成的结果"""
        result = iterated_2apr_normalize(auslander_a2, budget=3)
        assert not result.complete
        assert result.trace == []


@pytest.mark.slow
class TestCatalogAlgebras:
    """目录代数 (较慢)"""

    def test_canonical_2222(self):
        """(2,2,2,2) 的典范代数 2-表示有限，Nakayama 置换平凡"""
        A = CATALOG["canonical-2222"].algebra()
        report = check_2rf(A)
        assert report.verdict is Verdict.TRUE
        assert all(k == v for k, v in report.nakayama.items())
        assert check_2homogeneous(A, report=report).homogeneous

    def test_proof_244(self):
        """(2,4,4) 的 3×3 例子"""
        assert is_2rf(CATALOG["proof-244"].algebra()) is Verdict.TRUE

    def test_wild_type(self):
        """(2,3,7) 不是 2-表示有限的"""
        assert is_2rf(CATALOG["canonical-237"].algebra()) is not Verdict.TRUE

    def test_cluster_dimension(self):
        """dim Π₃(End T) 与簇范畴中的 Hom 维数一致"""
        T = canonical_sum(parse_weight_type("2,2,2,2"))
        dimension, expected = cluster_check(T)
        assert dimension == expected


if __name__ == "__main__":
    pytest.main([__file__])
