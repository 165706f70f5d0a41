"""
Data models and enums shared across the gradreg package.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Tuple

from .scalar import FieldSpec


class Provenance(Enum):
    """代数的来源：由箭图表示构造，或直接由结构常数给出"""
    PRESENTATION = "presentation-derived"
    TABLE = "table-given"


class RegStatus(Enum):
    """正则度数值的可信程度"""
    EXACT = "exact"
    CENSORED = "censored"
    DEGENERATE = "degenerate"


class Verdict(Enum):
    """一次定理检查的判定结果"""
    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive-censored"
    SKIPPED_DEGENERATE = "skipped-degenerate"
    SKIPPED = "skipped"


class Linearity(Enum):
    """线性分解判定的三值结果"""
    LINEAR = "linear"
    NOT_LINEAR = "not-linear"
    CENSORED = "censored"


class DegreeKind(Enum):
    INT = "int"
    PLUS_INF = "+inf"
    MINUS_INF = "-inf"
    AT_LEAST = "atLeast"
    AT_MOST = "atMost"


Interval = Tuple[float, float]


@dataclass(frozen=True)
class ExtendedDegree:
    """
    ℤ ∪ {±∞} 上的次数，附带截断删失标记。

    AT_LEAST(b) 表示真实值位于 [b, +∞]，AT_MOST(b) 表示位于 [-∞, b]。
    """
    kind: DegreeKind
    value: Optional[int] = None

    @classmethod
    def exact(cls, value: int) -> "ExtendedDegree":
        return cls(DegreeKind.INT, int(value))

    @classmethod
    def plus_inf(cls) -> "ExtendedDegree":
        return cls(DegreeKind.PLUS_INF)

    @classmethod
    def minus_inf(cls) -> "ExtendedDegree":
        return cls(DegreeKind.MINUS_INF)

    @classmethod
    def at_least(cls, bound: int) -> "ExtendedDegree":
        return cls(DegreeKind.AT_LEAST, int(bound))

    @classmethod
    def at_most(cls, bound: int) -> "ExtendedDegree":
        return cls(DegreeKind.AT_MOST, int(bound))

    @classmethod
    def from_interval(cls, interval: Interval) -> Optional["ExtendedDegree"]:
        """
        把区间还原为次数；区间两端都无界时返回 None（无法表示的未知值）。
        """
        lo, hi = interval
        if lo == hi:
            if lo == math.inf:
                return cls.plus_inf()
            if lo == -math.inf:
                return cls.minus_inf()
            return cls.exact(int(lo))
        if hi == math.inf and lo != -math.inf:
            return cls.at_least(int(lo))
        if lo == -math.inf and hi != math.inf:
            return cls.at_most(int(hi))
        return None

    @property
    def is_exact(self) -> bool:
        return self.kind in (DegreeKind.INT, DegreeKind.PLUS_INF, DegreeKind.MINUS_INF)

    @property
    def is_finite(self) -> bool:
        return self.kind == DegreeKind.INT

    def interval(self) -> Interval:
        if self.kind == DegreeKind.INT:
            return (self.value, self.value)
        if self.kind == DegreeKind.PLUS_INF:
            return (math.inf, math.inf)
        if self.kind == DegreeKind.MINUS_INF:
            return (-math.inf, -math.inf)
        if self.kind == DegreeKind.AT_LEAST:
            return (self.value, math.inf)
        return (-math.inf, self.value)

    def __add__(self, other: Any) -> Optional["ExtendedDegree"]:
        if isinstance(other, int):
            other = ExtendedDegree.exact(other)
        if not isinstance(other, ExtendedDegree):
            return NotImplemented
        lo1, hi1 = self.interval()
        lo2, hi2 = other.interval()
        bounds = []
        for a, b in ((lo1, lo2), (hi1, hi2)):
            if math.isinf(a) and math.isinf(b) and a != b:
                return None
            bounds.append(a + b)
        return ExtendedDegree.from_interval((bounds[0], bounds[1]))

    __radd__ = __add__

    def __neg__(self) -> "ExtendedDegree":
        lo, hi = self.interval()
        return ExtendedDegree.from_interval((-hi, -lo))

    def __sub__(self, other: Any) -> Optional["ExtendedDegree"]:
        return self + (-other)

    def to_json(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"kind": self.kind.value}
        if self.value is not None:
            data["value"] = self.value
        return data

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "ExtendedDegree":
        kind = DegreeKind(data["kind"])
        value = data.get("value")
        return cls(kind, None if value is None else int(value))

    def __str__(self) -> str:
        if self.kind == DegreeKind.INT:
            return str(self.value)
        if self.kind == DegreeKind.PLUS_INF:
            return "+∞"
        if self.kind == DegreeKind.MINUS_INF:
            return "-∞"
        if self.kind == DegreeKind.AT_LEAST:
            return f"≥{self.value}"
        return f"≤{self.value}"


def degree_max(*values: Optional[ExtendedDegree]) -> Optional[ExtendedDegree]:
    """区间意义下的最大值；任一参数未知时返回 None"""
    if any(v is None for v in values):
        return None
    los = [v.interval()[0] for v in values]
    his = [v.interval()[1] for v in values]
    return ExtendedDegree.from_interval((max(los), max(his)))


def compare(lhs: Optional[ExtendedDegree], op: str, rhs: Optional[ExtendedDegree]) -> Verdict:
    """
    三值比较：区间可证明成立时为 HOLDS，两侧都精确且不成立时为 FAILS，其余为 INCONCLUSIVE。

    Args:
        lhs: 左侧次数
        op: "<=", ">=" 或 "=="
        rhs: 右侧次数
    Returns:
        Verdict: 判定结果
    """
    if lhs is None or rhs is None:
        return Verdict.INCONCLUSIVE
    if op == ">=":
        return compare(rhs, "<=", lhs)
    l_lo, l_hi = lhs.interval()
    r_lo, r_hi = rhs.interval()
    both_exact = lhs.is_exact and rhs.is_exact
    if op == "<=":
        if l_hi <= r_lo:
            return Verdict.HOLDS
        if both_exact:
            return Verdict.FAILS
        return Verdict.INCONCLUSIVE
    if op == "==":
        if both_exact:
            return Verdict.HOLDS if l_lo == r_lo else Verdict.FAILS
        return Verdict.INCONCLUSIVE
    raise ValueError(f"未知的比较运算符：{op}")


@dataclass(frozen=True)
class Bounds:
    """一次计算使用的截断参数 (H, N, n_max) 与基域"""
    H: int = 8
    N: int = 12
    n_max: Optional[int] = None
    field: FieldSpec = field(default_factory=FieldSpec.default)
    cap: int = 5000
    margin: int = 2
    threads: int = 1
    cm_window_hi: Optional[int] = None

    @property
    def n_limit(self) -> int:
        return self.n_max if self.n_max is not None else 2 * self.N

    @property
    def cm_top(self) -> int:
        if self.cm_window_hi is not None:
            return self.cm_window_hi
        return self.N - 2 * self.margin

    def to_json(self) -> Dict[str, Any]:
        return {
            "H": self.H,
            "N": self.N,
            "n_max": self.n_limit,
            "field": self.field.to_json(),
            "cap": self.cap,
            "margin": self.margin,
        }


@dataclass(frozen=True)
class RegValue:
    """单个正则度：取值、状态与达到极值的见证 (m, j)"""
    value: Optional[ExtendedDegree]
    status: RegStatus
    witness: Optional[Tuple[int, int]] = None

    @classmethod
    def from_degree(cls, value: Optional[ExtendedDegree], witness: Optional[Tuple[int, int]] = None,
                    degenerate: bool = False) -> "RegValue":
        if degenerate:
            return cls(value, RegStatus.DEGENERATE, None)
        exact = value is not None and value.is_exact
        status = RegStatus.EXACT if exact else RegStatus.CENSORED
        return cls(value, status, witness if exact else None)

    def to_json(self) -> Dict[str, Any]:
        value = {"kind": "unknown"} if self.value is None else self.value.to_json()
        data: Dict[str, Any] = {"value": value, "status": self.status.value}
        if self.witness is not None:
            data["witness"] = list(self.witness)
        return data


REPORT_FIELDS = ("CMreg", "cmreg", "Torreg", "torreg", "Extreg", "extreg",
                 "Exreg", "exreg", "depth", "pdim")


@dataclass
class RegularityReport:
    """一个模的全部八种正则度，以及 depth 与 pdim"""
    values: Dict[str, RegValue]
    degenerate: bool = False
    notes: list = field(default_factory=list)

    def __getitem__(self, name: str) -> RegValue:
        return self.values[name]

    def degree(self, name: str) -> Optional[ExtendedDegree]:
        return self.values[name].value

    def to_json(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {name: self.values[name].to_json()
                                for name in REPORT_FIELDS if name in self.values}
        if self.notes:
            data["notes"] = list(self.notes)
        return data
