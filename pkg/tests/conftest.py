"""
测试共用的小代数与带势箭图
"""

import pytest

from tau2_cli.algebra.paths import AlgebraPresentation, Path, PathPoly, Quiver
from tau2_cli.algebra.qp import GradedQP


@pytest.fixture(autouse=True)
def _isolated_home(tmp_path, monkeypatch):
    """配置与日志写到临时目录"""
    monkeypatch.setenv("TAU2_HOME", str(tmp_path / "home"))


@pytest.fixture
def auslander_a2() -> AlgebraPresentation:
    """1 → 2 → 3，a·b = 0 (A2 的 Auslander 代数)"""
    quiver = Quiver.build(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
    return AlgebraPresentation(quiver, (PathPoly.path(Path.of(quiver, ["a", "b"])),), name="A3")


@pytest.fixture
def path_a3() -> AlgebraPresentation:
    quiver = Quiver.build(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
    return AlgebraPresentation(quiver, (), name="kA3")


@pytest.fixture
def triangle() -> GradedQP:
    """3-圈 a·b·c，c 的次数为 1"""
    quiver = Quiver.build(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")])
    W = PathPoly.path(Path.of(quiver, ["a", "b", "c"]))
    return GradedQP(quiver, {"a": 0, "b": 0, "c": 1}, W, 1, name="triangle")
