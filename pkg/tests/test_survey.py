"""
倾斜层枚举测试
"""

import pytest

from tau2_cli.algebra.lgroup import c, parse_weight_type, window, x, zero
from tau2_cli.algebra.sheaves import (ExcSimple, LineBundle, SheafSum, canonical_sum, hom_dim,
                                      is_tau2_stable, is_tilting)
from tau2_cli.algebra.survey import (annotate, candidate_objects, survey_tilting, tilting_sums, twist,
                                     twist_key)
from tau2_cli.core.exceptions import BudgetExceeded, DomainError
from tau2_cli.core.verdict import Verdict


class TestCandidates:
    """候选对象测试"""

    def test_count(self):
        """窗口 [0, c] 的线丛加全部例外单层"""
        w = parse_weight_type("2,2,2,2")
        objects = candidate_objects(w, zero(w), c(w))
        assert len(objects) == len(window(zero(w), c(w))) + 8
        assert len(objects) == 14

    def test_budget(self):
        w = parse_weight_type("2,2,2,2")
        with pytest.raises(BudgetExceeded) as info:
            candidate_objects(w, zero(w), c(w), max_objects=5)
        assert info.value.budget == 5

    def test_twist(self):
        """扭转保持 Hom 维数"""
        w = parse_weight_type("2,3,6")
        b = x(w, 3)
        objects = [LineBundle(zero(w)), LineBundle(x(w, 2)), ExcSimple(w, 3, 1), ExcSimple(w, 3, 4),
                   ExcSimple(w, 2, 2)]
        for X in objects:
            for Y in objects:
                assert hom_dim(twist(X, b), twist(Y, b)) == hom_dim(X, Y)

    def test_twist_key(self):
        """扭转后的直和有相同的规范代表"""
        w = parse_weight_type("2,2,2,2")
        T = canonical_sum(w)
        shifted = SheafSum.of([twist(X, x(w, 1)) for X in T.summands], w)
        assert twist_key(shifted) == twist_key(T)


class TestTiltingSums:
    """倾斜直和枚举测试"""

    def test_canonical_found(self):
        """(2,2,2,2) 的窗口 [0, c] 中有典范倾斜丛"""
        w = parse_weight_type("2,2,2,2")
        sums, n_objects, n_cliques = tilting_sums(w, zero(w), c(w))
        assert n_objects == 14
        assert n_cliques > 0
        assert twist_key(canonical_sum(w)) in {twist_key(T) for T in sums}
        assert all(is_tilting(T) for T in sums)

    def test_tau2_stable_sums(self):
        """要求 τ²-稳定时每个结果都是 τ²-稳定的"""
        w = parse_weight_type("2,2,2,2")
        sums, _, _ = tilting_sums(w, zero(w), c(w), require_tau2=True)
        assert sums
        assert all(is_tau2_stable(T) for T in sums)

    def test_no_tau2_stable_on_333(self):
        """(3,3,3) 上窗口 [0, c] 没有 τ²-稳定的倾斜层"""
        w = parse_weight_type("3,3,3")
        result = survey_tilting(w, zero(w), c(w), require_tau2=True)
        assert result.entries == []
        assert result.tilting_sums == 0

    def test_no_tau2_stable_on_237(self):
        w = parse_weight_type("2,3,7")
        result = survey_tilting(w, -c(w), c(w).scale(2), require_tau2=True)
        assert result.entries == []

    def test_mismatched_window(self):
        w = parse_weight_type("2,2,2,2")
        other = parse_weight_type("2,3,6")
        with pytest.raises(DomainError):
            survey_tilting(w, zero(other), c(other))


@pytest.mark.slow
class TestSurvey:
    """完整枚举 (较慢)"""

    def test_survey_2222(self):
        """结果按同构类去重，并带 2-RF 判定"""
        w = parse_weight_type("2,2,2,2")
        result = annotate(survey_tilting(w, zero(w), c(w), require_tau2=True))
        assert result.entries
        class_ids = [e.class_id for e in result.entries]
        assert len(set(class_ids)) == len(class_ids)
        for entry in result.entries:
            assert entry.tau2_stable
            assert entry.rf in (Verdict.TRUE, Verdict.FALSE, Verdict.INDETERMINATE)
        data = result.to_dict()
        assert data["weight_type"] == w.format()
        assert len(data["entries"]) == len(result.entries)


if __name__ == "__main__":
    pytest.main([__file__])
