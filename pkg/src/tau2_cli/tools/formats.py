"""
代数与带势箭图的记录文件

记录以 YAML (默认) 或 JSON (按后缀) 保存；系数写成 `p/q` 字符串。
"""

import json
from fractions import Fraction
from pathlib import Path as FilePath
from typing import Any, Dict, List, Optional, Union

import yaml
from pydantic import BaseModel, Field, ValidationError, field_validator

from ..algebra.paths import AlgebraPresentation, Path, PathPoly, Quiver
from ..algebra.qp import GradedQP
from ..core.exceptions import DomainError, FormatError
from ..utils.logger import get_logger

logger = get_logger(__name__)

ALGEBRA_SCHEMA = "tau2.algebra@1"
QP_SCHEMA = "tau2.qp@1"


def format_coeff(c: Fraction) -> str:
    return str(Fraction(c))


def parse_coeff(text: Union[str, int]) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise FormatError(f"无法解析系数: {text!r}") from e


class ArrowRecord(BaseModel):
    name: str
    source: str
    target: str


class TermRecord(BaseModel):
    coeff: str = "1"
    path: List[str]

    @field_validator("coeff", mode="before")
    @classmethod
    def _coeff_text(cls, value: Any) -> str:
        return format_coeff(parse_coeff(value))


class AlgebraRecord(BaseModel):
    schema_id: str = Field(default=ALGEBRA_SCHEMA, alias="schema")
    name: str = ""
    vertices: List[str]
    arrows: List[ArrowRecord]
    relations: List[List[TermRecord]] = Field(default_factory=list)
    weights: Optional[Dict[str, int]] = None

    model_config = {"populate_by_name": True}


class QPRecord(BaseModel):
    schema_id: str = Field(default=QP_SCHEMA, alias="schema")
    name: str = ""
    vertices: List[str]
    arrows: List[ArrowRecord]
    degree: Dict[str, int]
    potential: List[TermRecord] = Field(default_factory=list)
    dW: int = 1

    model_config = {"populate_by_name": True}


def _quiver(vertices: List[str], arrows: List[ArrowRecord]) -> Quiver:
    return Quiver.build(vertices, [(a.name, a.source, a.target) for a in arrows])


def _terms(poly: PathPoly) -> List[TermRecord]:
    return [TermRecord(coeff=format_coeff(c), path=list(p.arrows)) for p, c in poly.sorted_terms()]


def _poly(quiver: Quiver, terms: List[TermRecord]) -> PathPoly:
    if any(not t.path for t in terms):
        raise FormatError("记录中的路径不能为空")
    return PathPoly.of((parse_coeff(t.coeff), Path.of(quiver, t.path)) for t in terms)


def algebra_to_record(A: AlgebraPresentation) -> AlgebraRecord:
    return AlgebraRecord(
        name=A.name,
        vertices=list(A.quiver.vertices),
        arrows=[ArrowRecord(name=a.name, source=a.source, target=a.target) for a in A.quiver.arrows],
        relations=[_terms(r) for r in A.relations],
        weights=dict(A.weights) if A.weights is not None else None,
    )


def record_to_algebra(record: AlgebraRecord) -> AlgebraPresentation:
    quiver = _quiver(record.vertices, record.arrows)
    relations = tuple(_poly(quiver, terms) for terms in record.relations)
    return AlgebraPresentation(quiver, relations, name=record.name, weights=record.weights)


def qp_to_record(P: GradedQP) -> QPRecord:
    return QPRecord(
        name=P.name,
        vertices=list(P.quiver.vertices),
        arrows=[ArrowRecord(name=a.name, source=a.source, target=a.target) for a in P.quiver.arrows],
        degree=dict(P.degrees),
        potential=_terms(P.potential),
        dW=P.potential_degree,
    )


def record_to_qp(record: QPRecord) -> GradedQP:
    quiver = _quiver(record.vertices, record.arrows)
    return GradedQP(quiver, record.degree, _poly(quiver, record.potential), record.dW, name=record.name)


# 文件

def read_data(path: Union[str, FilePath]) -> Dict[str, Any]:
    path = FilePath(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            if path.suffix.lower() == ".json":
                data = json.load(f)
            else:
                data = yaml.safe_load(f)
    except (OSError, ValueError, yaml.YAMLError) as e:
        raise FormatError(f"无法读取 {path}: {e}") from e
    if not isinstance(data, dict):
        raise FormatError(f"{path} 不是记录文件")
    return data


def write_data(data: Dict[str, Any], path: Union[str, FilePath]) -> FilePath:
    path = FilePath(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        if path.suffix.lower() == ".json":
            json.dump(data, f, ensure_ascii=False, indent=2)
        else:
            yaml.safe_dump(data, f, allow_unicode=True, sort_keys=False)
    logger.debug(f"Wrote {path}")
    return path


def dump_record(record: BaseModel) -> Dict[str, Any]:
    return record.model_dump(by_alias=True, exclude_none=True)


def load_algebra(path: Union[str, FilePath]) -> AlgebraPresentation:
    try:
        record = AlgebraRecord.model_validate(read_data(path))
        return record_to_algebra(record)
    except ValidationError as e:
        raise FormatError(f"代数记录格式错误: {e}") from e
    except DomainError as e:
        raise FormatError(f"代数记录无效: {e}") from e


def save_algebra(A: AlgebraPresentation, path: Union[str, FilePath]) -> FilePath:
    return write_data(dump_record(algebra_to_record(A)), path)


def load_qp(path: Union[str, FilePath]) -> GradedQP:
    try:
        record = QPRecord.model_validate(read_data(path))
        return record_to_qp(record)
    except ValidationError as e:
        raise FormatError(f"带势箭图记录格式错误: {e}") from e
    except DomainError as e:
        raise FormatError(f"带势箭图记录无效: {e}") from e


def save_qp(P: GradedQP, path: Union[str, FilePath]) -> FilePath:
    return write_data(dump_record(qp_to_record(P)), path)
