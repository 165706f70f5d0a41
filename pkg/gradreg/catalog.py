"""
Named algebras with their asserted hypotheses, loaded from catalog.json.
"""

import copy
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Optional

from .algebra import TruncatedAlgebra, build_truncated
from .errors import BadInput
from .file_handler import FileHandler
from .gorenstein import ASGorensteinData
from .presentation import QuiverPresentation, parse_presentation
from .scalar import FieldSpec

KNOWN_FLAGS = ("noetherian", "bdc", "as_regular")


@dataclass(frozen=True)
class CatalogEntry:
    """目录中的一个代数：表示文档、断言的标志与（已知时的）AS-Gorenstein 数据"""
    name: str
    description: str
    document: Dict[str, Any]
    flags: FrozenSet[str] = frozenset()
    gorenstein: Optional[ASGorensteinData] = None
    parameters: Dict[str, str] = field(default_factory=dict)

    def with_parameters(self, **values: str) -> "CatalogEntry":
        unknown = set(values) - set(self.parameters)
        if unknown:
            raise BadInput(f"{self.name} 没有参数 {', '.join(sorted(unknown))}")
        merged = dict(self.parameters)
        merged.update(values)
        return CatalogEntry(self.name, self.description, self.document, self.flags,
                            self.gorenstein, merged)

    def presentation(self, field_spec: Optional[FieldSpec] = None) -> QuiverPresentation:
        doc = copy.deepcopy(self.document)
        for relation in doc.get("relations", []):
            for term in relation:
                term["coef"] = self._substitute(term["coef"])
        return parse_presentation(doc, field_spec or FieldSpec.default())

    def _substitute(self, coef: Any) -> Any:
        # "q" 或 "-q" 形式的系数取参数值
        if not isinstance(coef, str):
            return coef
        sign, name = ("-", coef[1:]) if coef.startswith("-") else ("", coef)
        if name in self.parameters:
            value = self.parameters[name]
            if sign:
                value = value[1:] if value.startswith("-") else f"-{value}"
            return value
        return coef

    def build(self, N: int, field_spec: Optional[FieldSpec] = None, cap: int = 5000) -> TruncatedAlgebra:
        label = self.name
        if self.parameters:
            label += "(" + ",".join(f"{k}={v}" for k, v in sorted(self.parameters.items())) + ")"
        return build_truncated(self.presentation(field_spec), N, cap, name=label)

    def to_json(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"name": self.name, "description": self.description,
                                "flags": sorted(self.flags), "presentation": self.document}
        if self.parameters:
            data["parameters"] = dict(sorted(self.parameters.items()))
        if self.gorenstein is not None:
            data["gorenstein"] = self.gorenstein.to_json()
        return data


def _entry(name: str, raw: Dict[str, Any]) -> CatalogEntry:
    flags = frozenset(raw.get("flags", []))
    unknown = flags - set(KNOWN_FLAGS)
    if unknown:
        raise BadInput(f"目录项 {name} 有未知标志：{sorted(unknown)}")
    gorenstein = raw.get("gorenstein")
    return CatalogEntry(
        name=name,
        description=raw.get("description", ""),
        document=raw["presentation"],
        flags=flags,
        gorenstein=None if gorenstein is None else ASGorensteinData.from_json(gorenstein),
        parameters={k: str(v) for k, v in raw.get("parameters", {}).items()},
    )


def load_catalog() -> Dict[str, CatalogEntry]:
    return {name: _entry(name, raw) for name, raw in FileHandler.load_catalog().items()}


def catalog_names() -> List[str]:
    return list(FileHandler.load_catalog())


def get_entry(spec: str) -> CatalogEntry:
    """
    按名称取目录项；"qplane:q=3" 形式可覆盖参数。

    Args:
        spec: 名称，可带 ":k=v,..." 参数
    Returns:
        CatalogEntry: 目录项
    """
    name, _, params = spec.partition(":")
    raw = FileHandler.load_catalog().get(name)
    if raw is None:
        raise BadInput(f"目录中没有 {name}（可选：{', '.join(catalog_names())}）")
    entry = _entry(name, raw)
    if params:
        values = {}
        for item in params.split(","):
            key, eq, value = item.partition("=")
            if not eq:
                raise BadInput(f"无法解析参数：{item}")
            values[key.strip()] = value.strip()
        entry = entry.with_parameters(**values)
    return entry
