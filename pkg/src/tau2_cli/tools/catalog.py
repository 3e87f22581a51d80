"""
内置代数目录
"""

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path as FilePath
from typing import Callable, Dict, List, Optional, Tuple

from ..algebra.endalgebra import canonical_algebra
from ..algebra.lgroup import WeightType
from ..algebra.paths import AlgebraPresentation, Path, PathPoly, Quiver
from ..core.exceptions import DomainError
from ..utils.logger import get_logger
from .formats import load_algebra

logger = get_logger(__name__)

CATALOG_PREFIX = "catalog:"


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    provenance: str
    weights: Optional[Tuple[int, ...]] = None
    builder: Optional[Callable[[], AlgebraPresentation]] = None

    def weight_type(self, lambda4: Fraction = Fraction(2)) -> Optional[WeightType]:
        if self.weights is None:
            return None
        return WeightType.create(self.weights, lambda4=lambda4)

    def algebra(self, lambda4: Fraction = Fraction(2)) -> AlgebraPresentation:
        if self.builder is not None:
            return self.builder()
        return canonical_algebra(self.weight_type(lambda4), name=self.name)


def _path(quiver: Quiver, *names: str) -> PathPoly:
    return PathPoly.path(Path.of(quiver, names))


def proof_244_algebra() -> AlgebraPresentation:
    """(2,4,4) 上 τ²-稳定倾斜层 T₊ ⊕ S ⊕ S′ 的自同态代数 (的反代数)

    零关系与交换关系各两条。
    """
    vertices = ["O", "O(z)", "S", "O(z+2w)", "U", "O(x+3w)", "S'", "O(x+w)", "O(y+2w)"]
    quiver = Quiver.build(vertices, [
        ("a1", "O", "O(z)"),
        ("a2", "O(z)", "S"),
        ("a3", "O(z+2w)", "U"),
        ("a4", "O(z+2w)", "O"),
        ("a5", "U", "O(x+w)"),
        ("a6", "U", "O(z)"),
        ("a7", "O(x+3w)", "U"),
        ("a8", "O(x+3w)", "O(y+2w)"),
        ("a9", "O(x+w)", "S'"),
        ("a10", "O(y+2w)", "O(x+w)"),
    ])
    relations = (
        _path(quiver, "a4", "a1") - _path(quiver, "a3", "a6"),
        _path(quiver, "a7", "a6", "a2"),
        _path(quiver, "a3", "a5", "a9"),
        _path(quiver, "a7", "a5") - _path(quiver, "a8", "a10"),
    )
    return AlgebraPresentation(quiver, relations, name="proof-244")


def canonical_quiver_2222() -> AlgebraPresentation:
    """(2,2,2,2) 典范倾斜丛的 Gabriel 箭图，不带关系"""
    arms = ["O(x1)", "O(x2)", "O(x3)", "O(x4)"]
    arrows = []
    for i, v in enumerate(arms, start=1):
        arrows.append((f"x{i}_1", "O", v))
        arrows.append((f"x{i}_2", v, "O(c)"))
    return AlgebraPresentation(Quiver.build(["O"] + arms + ["O(c)"], arrows),
                               (), name="canonical-quiver-2222")


CATALOG: Dict[str, CatalogEntry] = {
    entry.name: entry for entry in [
        CatalogEntry("canonical-2222", "canonical algebra of type (2,2,2,2;lambda)", (2, 2, 2, 2)),
        CatalogEntry("canonical-333", "canonical algebra of tubular type (3,3,3)", (3, 3, 3)),
        CatalogEntry("canonical-244", "canonical algebra of tubular type (2,4,4)", (2, 4, 4)),
        CatalogEntry("canonical-236", "canonical algebra of tubular type (2,3,6)", (2, 3, 6)),
        CatalogEntry("canonical-235", "canonical algebra of domestic type (2,3,5)", (2, 3, 5)),
        CatalogEntry("canonical-237", "canonical algebra of wild type (2,3,7)", (2, 3, 7)),
        CatalogEntry("proof-244", "3x3 quiver of a tau^2-stable tilting sheaf of type (2,4,4)",
                     (2, 4, 4), builder=proof_244_algebra),
        CatalogEntry("canonical-quiver-2222", "Gabriel quiver of the canonical tilting bundle, no relations",
                     (2, 2, 2, 2), builder=canonical_quiver_2222),
    ]
}


def list_entries() -> List[CatalogEntry]:
    return list(CATALOG.values())


def get_entry(name: str) -> CatalogEntry:
    key = name[len(CATALOG_PREFIX):] if name.startswith(CATALOG_PREFIX) else name
    if key not in CATALOG:
        raise DomainError(f"目录中没有 {key}，可用: {', '.join(CATALOG)}")
    return CATALOG[key]


def resolve_algebra(source: str, lambda4: Fraction = Fraction(2)) -> AlgebraPresentation:
    """`catalog:<name>` 或代数记录文件路径"""
    if source.startswith(CATALOG_PREFIX):
        return get_entry(source).algebra(lambda4)
    if not FilePath(source).exists():
        raise DomainError(f"文件不存在: {source}")
    return load_algebra(source)
