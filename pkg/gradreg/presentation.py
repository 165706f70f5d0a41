"""
Parsing and validation of graded quiver presentations A = kQ/I.

Paths are written left to right in composition order, source -> target:
the path ``["a", "b"]`` means "first a, then b" and is composable only when
target(a) = source(b).
"""

import json
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from sympy import Rational

from .errors import (InhomogeneousRelation, NonComposablePath, PresentationSyntaxError,
                     UnknownSymbol)
from .scalar import FieldSpec


@dataclass(frozen=True)
class Arrow:
    """箭头：名称、起点与终点的顶点序号、次数"""
    name: str
    source: int
    target: int
    degree: int


@dataclass(frozen=True)
class Term:
    """关系中的一项：系数乘一条路径"""
    coef: Rational
    path: Tuple[str, ...]


@dataclass(frozen=True)
class QuiverPresentation:
    """有次数的箭图表示：顶点、箭头与齐次关系"""
    field: FieldSpec
    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...]
    relations: Tuple[Tuple[Term, ...], ...]

    def arrow_index(self, name: str) -> int:
        for idx, arrow in enumerate(self.arrows):
            if arrow.name == name:
                return idx
        raise UnknownSymbol(f"未声明的箭头：{name}")

    def path_shape(self, path: Sequence[str]) -> Tuple[int, int, int]:
        """返回路径的 (起点, 终点, 次数)"""
        arrows = [self.arrows[self.arrow_index(name)] for name in path]
        return arrows[0].source, arrows[-1].target, sum(a.degree for a in arrows)

    def relation_degree(self, relation: Sequence[Term]) -> int:
        return self.path_shape(relation[0].path)[2]

    @property
    def max_arrow_degree(self) -> int:
        return max((a.degree for a in self.arrows), default=0)

    @property
    def max_relation_degree(self) -> int:
        return max((self.relation_degree(rel) for rel in self.relations), default=0)

    def with_field(self, field_spec: FieldSpec) -> "QuiverPresentation":
        return QuiverPresentation(field_spec, self.vertices, self.arrows, self.relations)

    def to_json(self) -> Dict[str, Any]:
        """规范序列化，满足 parse(serialize(parse(x))) = parse(x)"""
        return {
            "field": self.field.to_json(),
            "vertices": list(self.vertices),
            "arrows": [
                {"name": a.name, "from": self.vertices[a.source],
                 "to": self.vertices[a.target], "deg": a.degree}
                for a in self.arrows
            ],
            "relations": [
                [{"coef": str(t.coef), "path": list(t.path)} for t in rel]
                for rel in self.relations
            ],
        }

    def serialize(self) -> str:
        return json.dumps(self.to_json(), ensure_ascii=False, sort_keys=True)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise PresentationSyntaxError(message)


def _parse_name(value: Any, what: str) -> str:
    _require(isinstance(value, str) and value.isascii() and value.strip() != "",
             f"{what} 必须是非空 ASCII 字符串：{value!r}")
    return value


def _parse_coef(value: Any) -> Rational:
    _require(isinstance(value, (int, str)) and not isinstance(value, bool),
             f"系数必须是整数或有理数字符串：{value!r}")
    try:
        coef = Rational(value)
    except (TypeError, ValueError, SyntaxError) as e:
        raise PresentationSyntaxError(f"无法解析系数：{value!r}") from e
    _require(coef.is_Rational, f"系数必须是有理数：{value!r}")
    return coef


def parse_presentation(text: Union[str, bytes, Dict[str, Any]],
                       field_spec: Optional[FieldSpec] = None) -> QuiverPresentation:
    """
    解析并校验箭图表示文档。

    Args:
        text: JSON 文本或已解析的字典
        field_spec: 覆盖文档中声明的基域（可选）
    Returns:
        QuiverPresentation: 通过全部校验的表示
    """
    if isinstance(text, (str, bytes)):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise PresentationSyntaxError(f"JSON 格式错误：{e}") from e
    else:
        doc = text
    _require(isinstance(doc, dict), "表示文档必须是 JSON 对象")
    unknown_keys = set(doc) - {"field", "vertices", "arrows", "relations"}
    _require(not unknown_keys, f"未知字段：{sorted(unknown_keys)}")

    if field_spec is None:
        try:
            field_spec = FieldSpec.parse(doc.get("field", "Q"))
        except ValueError as e:
            raise PresentationSyntaxError(f"无效的域：{doc.get('field')!r}") from e

    vertices_doc = doc.get("vertices")
    _require(isinstance(vertices_doc, list) and len(vertices_doc) >= 1, "至少需要一个顶点")
    vertices = tuple(_parse_name(v, "顶点名") for v in vertices_doc)
    _require(len(set(vertices)) == len(vertices), "顶点名重复")
    vertex_index = {name: i for i, name in enumerate(vertices)}

    arrows: List[Arrow] = []
    for item in doc.get("arrows", []):
        _require(isinstance(item, dict) and {"name", "from", "to", "deg"} <= set(item),
                 f"箭头必须包含 name/from/to/deg：{item!r}")
        name = _parse_name(item["name"], "箭头名")
        for key in ("from", "to"):
            if item[key] not in vertex_index:
                raise UnknownSymbol(f"箭头 {name} 引用了未声明的顶点：{item[key]!r}")
        deg = item["deg"]
        _require(isinstance(deg, int) and not isinstance(deg, bool) and deg >= 0,
                 f"箭头 {name} 的次数必须是非负整数")
        arrows.append(Arrow(name, vertex_index[item["from"]], vertex_index[item["to"]], deg))
    names = [a.name for a in arrows]
    _require(len(set(names)) == len(names), "箭头名重复")
    by_name = {a.name: a for a in arrows}

    relations: List[Tuple[Term, ...]] = []
    relations_doc = doc.get("relations", [])
    _require(isinstance(relations_doc, list), "relations 必须是列表")
    for rel_doc in relations_doc:
        _require(isinstance(rel_doc, list) and rel_doc, "每个关系必须是非空的项列表")
        terms: List[Term] = []
        shape = None
        for term_doc in rel_doc:
            _require(isinstance(term_doc, dict) and {"coef", "path"} <= set(term_doc),
                     f"关系项必须包含 coef 与 path：{term_doc!r}")
            path = term_doc["path"]
            _require(isinstance(path, list) and path, "路径必须是非空的箭头名列表")
            for name in path:
                if name not in by_name:
                    raise UnknownSymbol(f"未声明的箭头：{name!r}")
            for left, right in zip(path, path[1:]):
                if by_name[left].target != by_name[right].source:
                    raise NonComposablePath(f"路径 {path} 中 {left}·{right} 不可复合")
            term_shape = (by_name[path[0]].source, by_name[path[-1]].target,
                          sum(by_name[n].degree for n in path))
            if shape is None:
                shape = term_shape
            elif term_shape != shape:
                raise InhomogeneousRelation(
                    f"关系 {rel_doc} 的各项（起点, 终点, 次数）不一致：{shape} 与 {term_shape}")
            coef = _parse_coef(term_doc["coef"])
            if coef != 0:
                terms.append(Term(coef, tuple(path)))
        if terms:
            relations.append(tuple(terms))

    return QuiverPresentation(field_spec, vertices, tuple(arrows), tuple(relations))
