"""
Exact field arithmetic and row reduction on top of sympy's sparse domain matrices.

Every linear map in gradreg is stored in row convention: a map U -> W is an
SDM of shape (dim U, dim W) whose row r is the image of the r-th basis vector
of U, so "first f, then g" is ``F.matmul(G)``.
"""

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from sympy import Rational, isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices.sdm import SDM

from .errors import BadInput

Vector = Dict[int, Any]

DEFAULT_PRIME = 32003
_WORD_LIMIT = 2 ** 63


@dataclass(frozen=True)
class FieldSpec:
    """基域：有理数域 Q（modulus 为 None）或素域 F_p"""
    modulus: Optional[int] = None

    def __post_init__(self):
        if self.modulus is not None:
            if not isinstance(self.modulus, int) or self.modulus >= _WORD_LIMIT or not isprime(self.modulus):
                raise BadInput(f"无效的素数模：{self.modulus}")

    @classmethod
    def default(cls) -> "FieldSpec":
        return cls(DEFAULT_PRIME)

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(None)

    @classmethod
    def parse(cls, spec: Union[str, int, Dict[str, Any], None]) -> "FieldSpec":
        """
        解析域描述："Q"、素数（整数或数字字符串）或 {"Fp": p}。

        Args:
            spec: 域描述
        Returns:
            FieldSpec: 对应的域
        """
        if spec is None:
            return cls.default()
        if isinstance(spec, FieldSpec):
            return spec
        if isinstance(spec, dict):
            if set(spec) != {"Fp"}:
                raise BadInput(f"无法识别的域描述：{spec}")
            spec = spec["Fp"]
        if isinstance(spec, str):
            text = spec.strip()
            if text.upper() in ("Q", "QQ"):
                return cls.rationals()
            if text.upper().startswith("F_"):
                text = text[2:]
            try:
                spec = int(text)
            except ValueError as e:
                raise BadInput(f"无法识别的域描述：{spec}") from e
        if isinstance(spec, bool) or not isinstance(spec, int):
            raise BadInput(f"无法识别的域描述：{spec}")
        return cls(spec)

    @cached_property
    def domain(self):
        return QQ if self.modulus is None else GF(self.modulus)

    @property
    def is_rational(self) -> bool:
        return self.modulus is None

    @property
    def characteristic(self) -> int:
        return 0 if self.modulus is None else self.modulus

    @property
    def label(self) -> str:
        return "Q" if self.modulus is None else f"F_{self.modulus}"

    def to_json(self) -> Union[str, Dict[str, int]]:
        return "Q" if self.modulus is None else {"Fp": self.modulus}

    def element(self, value: Union[int, str, Rational]) -> Any:
        """把整数或有理数（字符串 "a/b" 亦可）转换为域元素"""
        r = Rational(value)
        K = self.domain
        if self.modulus is not None and r.q % self.modulus == 0:
            raise BadInput(f"系数 {value} 的分母在 {self.label} 中不可逆")
        return K.quo(K(int(r.p)), K(int(r.q)))

    def random_element(self, rng: random.Random, nonzero: bool = False) -> Any:
        K = self.domain
        while True:
            if self.modulus is None:
                c = K(rng.randint(-3, 3))
            else:
                c = K(rng.randrange(self.modulus))
            if c or not nonzero:
                return c

    def format(self, c: Any) -> str:
        if self.modulus is None:
            return str(c)
        return str(int(self.domain.to_int(c)) % self.modulus)


@dataclass(frozen=True)
class RrefResult:
    """行约化的结果：秩、主元列、右零空间基、约化后的非零行"""
    rank: int
    pivots: Tuple[int, ...]
    kernel_basis: Tuple[Vector, ...]
    rows: Tuple[Vector, ...]


def matrix(rows: Sequence[Vector], ncols: int, K) -> SDM:
    """由稀疏行构造 SDM 矩阵"""
    data = {i: dict(row) for i, row in enumerate(rows) if row}
    return SDM(data, (len(rows), ncols), K)


def zero_matrix(nrows: int, ncols: int, K) -> SDM:
    return SDM({}, (nrows, ncols), K)


def rref(m: SDM) -> RrefResult:
    """
    计算行最简形、主元与右零空间基。

    主元按从左到右、从上到下扫描的第一个非零元选取；结果对相同输入完全确定。

    Args:
        m: 任意形状的矩阵（允许空矩阵）
    Returns:
        RrefResult: 秩、主元、零空间基和约化行
    """
    nrows, ncols = m.shape
    K = m.domain
    if nrows == 0 or ncols == 0 or not any(m.values()):
        rows: List[Vector] = []
    else:
        reduced, _ = m.rref()
        rows = sorted((dict(r) for r in reduced.values() if r), key=min)
    pivots = tuple(min(r) for r in rows)
    pivot_set = set(pivots)
    kernel = []
    for c in range(ncols):
        if c in pivot_set:
            continue
        v = {c: K.one}
        for row, p in zip(rows, pivots):
            if c in row:
                v[p] = -row[c]
        kernel.append(v)
    return RrefResult(len(rows), pivots, tuple(kernel), tuple(rows))


def rank(rows: Sequence[Vector], ncols: int, K) -> int:
    if not rows or ncols == 0:
        return 0
    return rref(matrix(rows, ncols, K)).rank


def left_kernel(m: SDM) -> List[Vector]:
    """行约定下线性映射的核：{x | x·m = 0}"""
    return list(rref(m.transpose()).kernel_basis)


def add_scaled(target: Vector, v: Vector, c: Any) -> Vector:
    """target += c·v（原地修改，删除零元）"""
    if not c:
        return target
    for k, x in v.items():
        y = target.get(k)
        y = c * x if y is None else y + c * x
        if y:
            target[k] = y
        else:
            target.pop(k, None)
    return target


def apply(v: Vector, m: SDM) -> Vector:
    """行向量乘矩阵：v·m"""
    out: Vector = {}
    for i, c in v.items():
        row = m.get(i)
        if row:
            add_scaled(out, row, c)
    return out


class Subspace:
    """以行最简形保存的子空间，支持约化、坐标与增量扩张"""

    def __init__(self, ncols: int, K, rows: Iterable[Vector] = ()):
        self.ncols = ncols
        self.K = K
        self._rows: List[Vector] = []
        self._pivots: List[int] = []
        for row in rows:
            self.extend(row)

    @classmethod
    def span(cls, vectors: Sequence[Vector], ncols: int, K) -> "Subspace":
        space = cls(ncols, K)
        result = rref(matrix(list(vectors), ncols, K)) if vectors else None
        if result is not None:
            space._rows = [dict(r) for r in result.rows]
            space._pivots = list(result.pivots)
        return space

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> List[Vector]:
        return self._rows

    @property
    def pivots(self) -> List[int]:
        return self._pivots

    def reduce(self, v: Vector) -> Vector:
        out = dict(v)
        for row, p in zip(self._rows, self._pivots):
            c = out.get(p)
            if c:
                add_scaled(out, row, -c)
        return out

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)

    def coordinates(self, v: Vector) -> Vector:
        """v 在约化行基下的坐标（v 须属于该子空间）"""
        return {r: v[p] for r, p in enumerate(self._pivots) if v.get(p)}

    def complement(self) -> List[int]:
        """非主元列：商空间的标准基"""
        pivot_set = set(self._pivots)
        return [c for c in range(self.ncols) if c not in pivot_set]

    def extend(self, v: Vector) -> bool:
        """
        把 v 加入子空间并保持行最简形。

        Returns:
            bool: v 是否扩大了子空间
        """
        rem = self.reduce(v)
        if not rem:
            return False
        p = min(rem)
        inv = self.K.quo(self.K.one, rem[p])
        rem = {k: x * inv for k, x in rem.items()}
        for row in self._rows:
            c = row.get(p)
            if c:
                add_scaled(row, rem, -c)
        pos = 0
        while pos < len(self._pivots) and self._pivots[pos] < p:
            pos += 1
        self._rows.insert(pos, rem)
        self._pivots.insert(pos, p)
        return True
