"""
配置、运行目录与命令行测试
"""

import json
from fractions import Fraction

import pytest
from click.testing import CliRunner

from tau2_cli.core.config import Config
from tau2_cli.core.workspace import RunWorkspace
from tau2_cli.main import cli
from tau2_cli.tools.formats import load_algebra, load_qp, read_data, save_algebra, save_qp


class TestConfig:
    """配置测试"""

    def test_defaults(self, tmp_path):
        """测试缺省配置"""
        config = Config(config_path=str(tmp_path / "config.yaml"))
        assert config.degree_cap == 32
        assert config.get("algebra.gldim_cap") == 6
        assert config.get("exchange.max_nodes") == 500
        assert config.get("missing.key", "x") == "x"

    def test_env_override(self, tmp_path, monkeypatch):
        """环境变量覆盖配置文件"""
        monkeypatch.setenv("TAU2_CAP", "40")
        monkeypatch.setenv("TAU2_LAMBDA4", "5/2")
        config = Config(config_path=str(tmp_path / "config.yaml"))
        assert config.degree_cap == 40
        assert str(config.lambda4) == "5/2"

    def test_save_and_reload(self, tmp_path):
        path = tmp_path / "config.yaml"
        config = Config(config_path=str(path))
        config.set("exchange.max_nodes", 12, persist=True)
        assert path.exists()
        assert Config(config_path=str(path)).get("exchange.max_nodes") == 12


class TestRunWorkspace:
    """运行目录测试"""

    def test_create_run(self, tmp_path):
        """每次运行一个目录，带 run.json"""
        workspace = RunWorkspace(Config(config_path=str(tmp_path / "c.yaml")), str(tmp_path / "runs"))
        run_dir = workspace.create_run("survey/2222", {"weights": "2,2,2,2"})
        assert run_dir.exists()
        info = json.loads((run_dir / "run.json").read_text(encoding="utf-8"))
        assert info["command"] == "survey/2222"
        assert info["caps"]["degree_cap"] == 32
        workspace.write_text("notes.txt", "ok")
        info = json.loads((run_dir / "run.json").read_text(encoding="utf-8"))
        assert info["outputs"] == [{"file": "notes.txt"}]

    def test_list_runs(self, tmp_path):
        workspace = RunWorkspace(Config(config_path=str(tmp_path / "c.yaml")), str(tmp_path / "runs"))
        workspace.create_run("a")
        workspace.create_run("b")
        assert {r["command"] for r in workspace.list_runs()} == {"a", "b"}


class TestCommands:
    """命令行测试"""

    @pytest.fixture
    def invoke(self, tmp_path):
        runner = CliRunner()
        base = ["--config", str(tmp_path / "config.yaml"), "--workspace", str(tmp_path / "runs")]

        def run(*args):
            return runner.invoke(cli, base + list(args))

        return run

    @staticmethod
    def outputs(tmp_path, filename):
        return sorted((tmp_path / "runs").glob(f"*/{filename}"))

    def test_lgroup(self, invoke):
        result = invoke("lgroup", "2,3,6", "order-omega")
        assert result.exit_code == 0
        assert result.output.strip() == "6"
        result = invoke("lgroup", "2,3,7", "order-omega")
        assert result.output.strip() == "infinite"

    def test_homdim(self, invoke):
        result = invoke("homdim", "2,2,4", "O(0)", "S(2,1)")
        assert result.exit_code == 0
        assert result.output.strip() == "1"

    def test_bad_symbol(self, invoke):
        """无法解析的层符号退出码为 1"""
        result = invoke("homdim", "2,2,4", "Q(0)", "O(0)")
        assert result.exit_code == 1

    def test_canonical(self, invoke, tmp_path):
        """写出典范代数的记录文件"""
        result = invoke("canonical", "2,2,2,2")
        assert result.exit_code == 0
        files = self.outputs(tmp_path, "algebra.yaml")
        assert len(files) == 1
        A = load_algebra(files[0])
        assert len(A.quiver.arrows) == 8
        assert self.outputs(tmp_path, "run.json")

    def test_options_after_subcommand(self, invoke, tmp_path):
        """--lambda4 与 --cap 可写在子命令之后"""
        result = invoke("canonical", "2,2,2,2", "--lambda4", "5/2", "--cap", "20")
        assert result.exit_code == 0, result.output
        A = load_algebra(self.outputs(tmp_path, "algebra.yaml")[0])
        assert any(Fraction(5, 2) in r.terms.values() for r in A.relations)
        info = json.loads(self.outputs(tmp_path, "run.json")[0].read_text(encoding="utf-8"))
        assert info["caps"]["degree_cap"] == 20

    def test_subcommand_overrides_group(self, invoke, tmp_path):
        """子命令上的值优先于全局选项"""
        result = invoke("--lambda4", "3", "canonical", "2,2,2,2", "--lambda4", "5/2")
        assert result.exit_code == 0, result.output
        A = load_algebra(self.outputs(tmp_path, "algebra.yaml")[0])
        assert any(Fraction(5, 2) in r.terms.values() for r in A.relations)

    def test_check2rf(self, invoke, tmp_path, auslander_a2, path_a3):
        """退出码 0 真、1 假"""
        save_algebra(auslander_a2, tmp_path / "a.yaml")
        save_algebra(path_a3, tmp_path / "p.yaml")
        assert invoke("check2rf", str(tmp_path / "a.yaml")).exit_code == 0
        assert invoke("check2rf", str(tmp_path / "p.yaml")).exit_code == 1

    def test_check2rf_outputs(self, invoke, tmp_path, auslander_a2):
        """判定结果写入运行目录"""
        save_algebra(auslander_a2, tmp_path / "a.yaml")
        assert invoke("check2rf", str(tmp_path / "a.yaml"), "--cap", "16").exit_code == 0
        assert len(self.outputs(tmp_path, "run.json")) == 1
        qp = load_qp(self.outputs(tmp_path, "pi3_qp.yaml")[0])
        assert len(qp.quiver.arrows) == 3
        assert load_algebra(self.outputs(tmp_path, "algebra.yaml")[0]).quiver == auslander_a2.quiver
        data = read_data(self.outputs(tmp_path, "rf.yaml")[0])
        assert data["rf"]["verdict"] == "true"
        assert data["rf"]["pi3_dimension"] == 6
        info = json.loads(self.outputs(tmp_path, "run.json")[0].read_text(encoding="utf-8"))
        assert info["command"] == "check2rf"
        assert info["caps"]["degree_cap"] == 16

    def test_missing_file(self, invoke, tmp_path):
        assert invoke("check2rf", str(tmp_path / "none.yaml")).exit_code == 1

    def test_mutate(self, invoke, tmp_path, triangle):
        save_qp(triangle, tmp_path / "t.yaml")
        result = invoke("mutate", str(tmp_path / "t.yaml"), "-k", "2")
        assert result.exit_code == 0
        files = self.outputs(tmp_path, "mutated_qp.yaml")
        assert len(files) == 1
        assert load_qp(files[0]).potential.is_zero()

    def test_2apr(self, invoke, tmp_path, auslander_a2):
        save_algebra(auslander_a2, tmp_path / "a.yaml")
        result = invoke("2apr", str(tmp_path / "a.yaml"), "-k", "3")
        assert result.exit_code == 0
        assert self.outputs(tmp_path, "tilted.yaml")

    def test_verify(self, invoke, tmp_path):
        result = invoke("verify", "proof-table-244")
        assert result.exit_code == 0
        files = self.outputs(tmp_path, "verify.json")
        data = json.loads(files[0].read_text(encoding="utf-8"))
        assert data["suites"][0]["verdict"] == "true"

    def test_catalog(self, invoke):
        assert invoke("catalog").exit_code == 0


if __name__ == "__main__":
    pytest.main([__file__])
