"""
记录格式、目录、交换图与验证套件测试
"""

from fractions import Fraction

import pytest

from tau2_cli.algebra.isomorphism import quivers_isomorphic
from tau2_cli.algebra.qp import graded_dims
from tau2_cli.algebra.threeprep import extended_qp
from tau2_cli.core.exceptions import DomainError, FormatError
from tau2_cli.core.verdict import Verdict
from tau2_cli.tools.catalog import (CATALOG, canonical_quiver_2222, get_entry, list_entries,
                                    resolve_algebra)
from tau2_cli.tools.exchange import NAKAYAMA, SINGLETONS, explore
from tau2_cli.tools.formats import (load_algebra, load_qp, parse_coeff, save_algebra, save_qp,
                                    write_data)
from tau2_cli.tools.verify import VerifyOptions, catalog_qps, halves_balanced, run_suite


class TestFormats:
    """记录文件测试"""

    def test_algebra_file(self, tmp_path):
        """代数记录写入后读回"""
        A = CATALOG["proof-244"].algebra()
        path = save_algebra(A, tmp_path / "proof.yaml")
        B = load_algebra(path)
        assert B.quiver == A.quiver
        assert set(B.relations) == set(A.relations)
        assert B.name == "proof-244"

    def test_qp_file(self, tmp_path, auslander_a2):
        """带势箭图记录，JSON 格式"""
        qp = extended_qp(auslander_a2).qp
        path = save_qp(qp, tmp_path / "qp.json")
        loaded = load_qp(path)
        assert loaded.potential == qp.potential
        assert loaded.degrees == qp.degrees
        assert graded_dims(loaded) == {0: 5, 1: 1}

    def test_invalid_records(self, tmp_path):
        """缺少字段或箭头不存在时报格式错误"""
        write_data({"vertices": ["1"]}, tmp_path / "bad.yaml")
        with pytest.raises(FormatError):
            load_algebra(tmp_path / "bad.yaml")
        write_data({"vertices": ["1", "2"], "arrows": [{"name": "a", "source": "1", "target": "2"}],
                    "relations": [[{"coeff": 1, "path": ["b"]}]]}, tmp_path / "bad2.yaml")
        with pytest.raises(FormatError):
            load_algebra(tmp_path / "bad2.yaml")
        (tmp_path / "list.yaml").write_text("- 1\n- 2\n", encoding="utf-8")
        with pytest.raises(FormatError):
            load_qp(tmp_path / "list.yaml")

    def test_parse_coeff(self):
        assert parse_coeff("-3/4") == Fraction(-3, 4)
        assert parse_coeff(2) == Fraction(2)
        with pytest.raises(FormatError):
            parse_coeff("x")


class TestCatalog:
    """内置目录测试"""

    @pytest.mark.parametrize("name,vertices,arrows,relations", [
        ("canonical-2222", 6, 8, 2),
        ("canonical-236", 10, 11, 1),
        ("proof-244", 9, 10, 4),
    ])
    def test_sizes(self, name, vertices, arrows, relations):
        A = get_entry(name).algebra()
        assert len(A.quiver.vertices) == vertices
        assert len(A.quiver.arrows) == arrows
        assert len(A.relations) == relations

    def test_lookup(self, tmp_path):
        """catalog: 前缀与文件路径"""
        assert get_entry("catalog:canonical-333").weights == (3, 3, 3)
        assert len(list_entries()) == len(CATALOG)
        with pytest.raises(DomainError):
            get_entry("canonical-999")
        with pytest.raises(DomainError):
            resolve_algebra(str(tmp_path / "missing.yaml"))

    def test_canonical_quiver(self):
        """典范代数的箭图与手写箭图同构"""
        A = resolve_algebra("catalog:canonical-2222", Fraction(3))
        assert quivers_isomorphic(A.quiver, canonical_quiver_2222().quiver)


class TestExchange:
    """交换图测试"""

    def test_root_only(self, triangle):
        graph = explore(triangle, max_nodes=0)
        assert len(graph.nodes) == 1
        assert graph.nodes[0].dimension == 6
        assert graph.nodes[0].selfinjective

    def test_nakayama_orbit(self, triangle):
        """Nakayama 轨道含相邻顶点时无法变换"""
        graph = explore(triangle, policy=NAKAYAMA)
        assert len(graph.nodes) == 1
        assert graph.skipped == 2
        assert not graph.truncated

    def test_singletons(self, triangle):
        """A3 型的变换类"""
        graph = explore(triangle, policy=SINGLETONS)
        assert 1 < len(graph.nodes) <= 4
        assert graph.is_closed()
        assert not graph.truncated
        data = graph.to_dict()
        assert data["policy"] == SINGLETONS
        assert len(data["edges"]) == len(graph.edges)
        dot = graph.to_dot()
        assert dot.startswith('digraph "triangle"')
        assert "n0 -> n" in dot

    def test_unknown_policy(self, triangle):
        with pytest.raises(DomainError):
            explore(triangle, policy="all")


class TestVerify:
    """验证套件测试"""

    def test_tubular_gate(self):
        report = run_suite("tubular-gate")
        assert report.verdict is Verdict.TRUE
        assert report.criteria

    def test_proof_table(self):
        report = run_suite("proof-table-244")
        assert report.verdict is Verdict.TRUE
        assert len(report.criteria) == 14
        assert report.to_dict()["verdict"] == "true"

    def test_unknown_suite(self):
        with pytest.raises(DomainError):
            run_suite("everything")

    def test_halves_balanced(self):
        """τ² = 1 时 0 次与 1 次部分维数相等"""
        assert halves_balanced({0: 16, 1: 16})
        assert not halves_balanced({0: 16, 1: 15})
        assert not halves_balanced({0: 2, 1: 2, 2: 1})
        assert not halves_balanced({})
        assert not halves_balanced(None)

    @pytest.mark.slow
    def test_catalog_qps(self):
        """没有关系的代数不参与随机变换"""
        names = {P.name for P in catalog_qps(VerifyOptions())}
        assert "Pi3(canonical-2222)" in names
        assert "Pi3(proof-244)" in names
        assert "Pi3(canonical-quiver-2222)" not in names

    @pytest.mark.slow
    @pytest.mark.parametrize("suite", ["canonical", "2rf", "roundtrip", "tau2-homogeneous",
                                       "nonexistence", "exchange"])
    def test_slow_suites(self, suite):
        report = run_suite(suite, VerifyOptions())
        assert report.verdict is Verdict.TRUE, report.to_dict()

    @pytest.mark.slow
    def test_mutation_suite(self):
        """缺省规模的随机变换在时限内完成"""
        report = run_suite("mutation", VerifyOptions())
        assert report.verdict is not Verdict.FALSE, report.to_dict()
        assert any(c.name.startswith("random-") for c in report.criteria)
        assert report.seconds < 600

    @pytest.mark.slow
    def test_exchange_halves(self):
        """交换图每个结点自内射且两部分维数相等"""
        report = run_suite("exchange", VerifyOptions())
        names = {c.name: c.verdict for c in report.criteria}
        assert names["balanced-halves"] is Verdict.TRUE
        assert names["selfinjective"] is Verdict.TRUE


if __name__ == "__main__":
    pytest.main([__file__])
