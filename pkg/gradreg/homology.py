"""
Graded Ext and Tor tables computed from a minimal resolution.

Every cell (m, j) carries its dimension and whether the truncation proves the
value. Rows also record what is known about the cells outside the computed
rectangle, so that sdeg/ideg of a table can be reported exact or censored.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Tuple


from .errors import BadInput
from .gmod import GradedModule
from .models import ExtendedDegree
from .resolve import ResolutionTruncation, minimal_resolution
from .scalar import Vector, add_scaled, rank

logger = logging.getLogger(__name__)


class Region(Enum):
    """计算矩形之外区域的状态"""
    ZERO = "zero"
    ASSUMED = "assumed-zero"
    BOUNDED = "bounded"
    PERIODIC = "periodic"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Cell:
    dim: int
    exact: bool


@dataclass(frozen=True)
class Extremes:
    """表的 sdeg/ideg（None 表示无法给出任何有意义的界）与达到极值的格子"""
    sdeg: Optional[ExtendedDegree]
    ideg: Optional[ExtendedDegree]
    sdeg_witness: Optional[Tuple[int, int]] = None
    ideg_witness: Optional[Tuple[int, int]] = None


@dataclass
class GradedTable:
    """
    分次 Ext/Tor 表。

    kind 为 "ext" 时格子 (m, j) 的总次数为 m + j，为 "tor" 时为 -m + j。
    below/above 记录每行在 [j_lo, j_hi] 之外的区域；beyond 记录 m > H 的各行，
    beyond_bound 对 ext 是这些行总次数的上界，对 tor 是下界；beyond 为 PERIODIC
    时这些行是已算行的平移，不产生新的总次数。
    """
    kind: str
    H: int
    j_lo: int
    j_hi: int
    cells: Dict[Tuple[int, int], Cell]
    below: Dict[int, Region]
    above: Dict[int, Region]
    assumed_from: Dict[int, int] = field(default_factory=dict)
    beyond: Region = Region.UNKNOWN
    beyond_bound: Optional[int] = None

    def degree(self, m: int, j: int) -> int:
        return m + j if self.kind == "ext" else -m + j

    def known(self, m: int, j: int) -> bool:
        cell = self.cells.get((m, j))
        if cell is not None and cell.exact:
            return True
        return m in self.assumed_from and j >= self.assumed_from[m]

    def value(self, m: int, j: int) -> Optional[int]:
        """已证明（或按边距约定视为零）的维数；未知时返回 None"""
        cell = self.cells.get((m, j))
        if cell is not None and cell.exact:
            return cell.dim
        if m in self.assumed_from and j >= self.assumed_from[m]:
            return 0
        if cell is None:
            if j < self.j_lo and self.below.get(m) == Region.ZERO:
                return 0
            if j > self.j_hi and self.above.get(m) == Region.ZERO:
                return 0
        return None

    def row(self, m: int) -> Dict[int, Cell]:
        return {j: cell for (mm, j), cell in self.cells.items() if mm == m}

    def nonzero(self) -> List[Tuple[int, int, int]]:
        return sorted((m, j, cell.dim) for (m, j), cell in self.cells.items()
                      if cell.exact and cell.dim)

    def _unknown_regions(self) -> List[Tuple[float, float]]:
        regions: List[Tuple[float, float]] = []
        for (m, j), cell in self.cells.items():
            if not self.known(m, j):
                deg = self.degree(m, j)
                regions.append((deg, deg))
        for m in range(self.H + 1):
            if self.below.get(m, Region.UNKNOWN) != Region.ZERO:
                regions.append((-math.inf, self.degree(m, self.j_lo - 1)))
            if self.above.get(m, Region.UNKNOWN) == Region.UNKNOWN:
                regions.append((self.degree(m, self.j_hi + 1), math.inf))
        if self.beyond == Region.UNKNOWN:
            regions.append((-math.inf, math.inf))
        elif self.beyond == Region.BOUNDED:
            if self.kind == "ext":
                regions.append((-math.inf, self.beyond_bound))
            else:
                regions.append((self.beyond_bound, math.inf))
        return regions

    def extremes(self) -> Extremes:
        """
        计算 sdeg = sup{总次数 | 格子非零} 与 ideg = inf{...}，未证明的区域使结果删失。
        """
        cells = [(self.degree(m, j), (m, j)) for m, j, _ in self.nonzero()]
        regions = self._unknown_regions()
        max_hi = max((hi for _, hi in regions), default=-math.inf)
        min_lo = min((lo for lo, _ in regions), default=math.inf)

        if cells:
            top, top_cell = max(cells)
            sdeg = ExtendedDegree.exact(top) if max_hi <= top else ExtendedDegree.at_least(top)
            s_wit = top_cell if max_hi <= top else None
        else:
            s_wit = None
            if not regions:
                sdeg = ExtendedDegree.minus_inf()
            elif max_hi == math.inf:
                sdeg = None
            else:
                sdeg = ExtendedDegree.at_most(int(max_hi))

        if cells:
            bottom, bottom_cell = min(cells)
            ideg = ExtendedDegree.exact(bottom) if min_lo >= bottom else ExtendedDegree.at_most(bottom)
            i_wit = bottom_cell if min_lo >= bottom else None
        else:
            i_wit = None
            if not regions:
                ideg = ExtendedDegree.plus_inf()
            elif min_lo == -math.inf:
                ideg = None
            else:
                ideg = ExtendedDegree.at_least(int(min_lo))
        return Extremes(sdeg, ideg, s_wit, i_wit)

    def to_json(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "H": self.H,
            "j_range": [self.j_lo, self.j_hi],
            "cells": [[m, j, cell.dim, cell.exact] for (m, j), cell in sorted(self.cells.items())],
            "above": {str(m): r.value for m, r in sorted(self.above.items())},
            "below": {str(m): r.value for m, r in sorted(self.below.items())},
            "beyond": self.beyond.value,
            "beyond_bound": self.beyond_bound,
        }


def _assume_tops(table: GradedTable, margin: int) -> None:
    # 每行最高处连续 margin 个精确格子都为零时，其上方视为零
    for m in range(table.H + 1):
        if table.above.get(m) == Region.ZERO:
            continue
        row = table.row(m)
        exact = sorted(j for j, cell in row.items() if cell.exact)
        if len(exact) < margin:
            continue
        top = exact[-1]
        run = [top - k for k in range(margin)]
        if all(j in row and row[j].exact and row[j].dim == 0 for j in run):
            table.assumed_from[m] = top + 1
            table.above[m] = Region.ASSUMED


def _pieces(Y: GradedModule, degree: int) -> Optional[int]:
    """Y 在给定次数的维数；窗口外且没有零证书时返回 None"""
    if degree < Y.lo:
        return 0
    if Y.finite_top is not None and degree > Y.finite_top:
        return 0
    if degree > Y.hi:
        return None
    return Y.dim(degree)


def _map_degrees(fn: Callable[[int], Any], degrees: List[int], threads: int) -> List[Any]:
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, degrees))
    return [fn(j) for j in degrees]


def _step_summands(R: ResolutionTruncation, q: int) -> List[Tuple[int, int]]:
    return R.steps[q].summands if q < R.length else []


def _step_complete(R: ResolutionTruncation, q: int) -> bool:
    if q < R.length:
        return R.steps[q].complete
    return R.terminated


def _lowest_shift(R: ResolutionTruncation, q: int) -> int:
    shifts = [s for _, s in _step_summands(R, q)]
    if not _step_complete(R, q):
        shifts.append(R.hi + 1)
    return min(shifts) if shifts else R.hi + 1


def _repeats(R: ResolutionTruncation, H: int) -> bool:
    # 平移为 1 的周期：m ≥ start 的行彼此平移，总次数不变
    return R.period is not None and R.period.shift == 1 and R.period.start <= H


def ext_table(X: GradedModule, Y: GradedModule, H: int, margin: int = 2,
              vanishing_above: Optional[int] = None,
              resolution: Optional[ResolutionTruncation] = None,
              threads: int = 1) -> GradedTable:
    """
    gExt^m_A(X, Y)_j = H^m(gHom_A(P•, Y))_j，m ≤ H。

    Args:
        X: 被分解的模
        Y: 同一代数上的模
        H: 最大同调次数
        margin: 按边距约定把行顶端视为零所需的连续零格数
        vanishing_above: 已知 Ext^m(-, Y) = 0 (m > 该值) 时给出，例如 Y 自由且内射维数已断言
        resolution: 复用已算好的 X 的分解（至少 H+1 步）
        threads: 按次数并行的线程数
    Returns:
        GradedTable: kind 为 "ext" 的表
    """
    if X.algebra is not Y.algebra:
        raise BadInput("ext_table 的两个模必须在同一个代数上")
    R = resolution if resolution is not None else minimal_resolution(X, H + 1, margin, threads)
    K = X.K
    hi_x, lo_x = X.hi, X.lo
    j_lo, j_hi = Y.lo - hi_x, Y.hi - lo_x
    qs = list(range(H + 2))

    def step_known(p: int, j: int) -> bool:
        if p < 0 or _step_complete(R, p):
            return True
        return Y.finite_top is not None and hi_x + 1 + j > Y.finite_top

    def compute(j: int) -> Dict[int, Cell]:
        bases: Dict[int, List[Tuple[int, int]]] = {}
        known: Dict[int, bool] = {}
        for q in qs:
            entries = []
            ok = step_known(q, j)
            for k, (i, s) in enumerate(_step_summands(R, q)):
                size = _pieces(Y, s + j)
                if size is None:
                    ok = False
                    continue
                if size:
                    entries.extend((k, y) for y in range(size) if Y.labels[s + j][y] == i)
            bases[q] = entries
            known[q] = ok
        ranks: Dict[int, int] = {}
        for q in range(H + 1):
            # δ^q: C^q_j → C^{q+1}_j
            src, tgt = bases[q], bases[q + 1]
            if not src or not tgt:
                ranks[q] = 0
                continue
            src_pos = {e: r for r, e in enumerate(src)}
            tgt_pos = {e: c for c, e in enumerate(tgt)}
            prev = _step_summands(R, q)
            rows: Dict[int, Vector] = {}
            for k, (_, s) in enumerate(_step_summands(R, q + 1)):
                if s + j > Y.hi or _pieces(Y, s + j) == 0:
                    continue
                for (kp, u), c in R.steps[q + 1].images[k].items():
                    sp = prev[kp][1]
                    if not _pieces(Y, sp + j):
                        continue
                    act = Y.element_action(s - sp, u, sp + j)
                    for y in range(Y.dim(sp + j)):
                        if (kp, y) not in src_pos:
                            continue
                        img = act.get(y)
                        if not img:
                            continue
                        row = rows.setdefault(src_pos[(kp, y)], {})
                        add_scaled(row, {tgt_pos[(k, w)]: x for w, x in img.items()}, c)
            ranks[q] = rank([r for r in rows.values() if r], len(tgt), K)
        cells = {}
        for q in range(H + 1):
            dim = len(bases[q]) - ranks[q] - (ranks[q - 1] if q > 0 else 0)
            exact = known[q] and known[q + 1] and (q == 0 or known[q - 1])
            cells[q] = Cell(dim, exact)
        return cells

    degrees = list(range(j_lo, j_hi + 1))
    cells: Dict[Tuple[int, int], Cell] = {}
    for j, row in zip(degrees, _map_degrees(compute, degrees, threads)):
        for q, cell in row.items():
            cells[(q, j)] = cell

    below = {q: Region.ZERO if all(_step_complete(R, p) for p in (q - 1, q, q + 1) if p >= 0)
             else Region.UNKNOWN for q in range(H + 1)}
    above = {q: Region.ZERO if Y.finite_top is not None else Region.UNKNOWN for q in range(H + 1)}
    table = GradedTable("ext", H, j_lo, j_hi, cells, below, above)
    _assume_tops(table, margin)

    if R.terminated or (vanishing_above is not None and vanishing_above <= H):
        table.beyond = Region.ZERO
    elif _repeats(R, H):
        table.beyond = Region.PERIODIC
    elif X.algebra.a0.semisimple and Y.finite_top is not None:
        table.beyond = Region.BOUNDED
        table.beyond_bound = Y.finite_top + H + 1 - _lowest_shift(R, H + 1)
    logger.debug("ext table over j in [%d, %d]: %d nonzero cells", j_lo, j_hi, len(table.nonzero()))
    return table


def tor_table(Y: GradedModule, X: GradedModule, H: int, margin: int = 2,
              resolution: Optional[ResolutionTruncation] = None,
              threads: int = 1) -> GradedTable:
    """
    Tor^A_m(Y, X)_j = H_m(Y ⊗_A P•)_j，Y 为 A^o 上的左模（即右 A-模）。

    Args:
        Y: A^o 上的模
        X: A 上的模
        H: 最大同调次数
        margin: 行顶端视为零所需的连续零格数
        resolution: 复用已算好的 X 的分解（至少 H+1 步）
        threads: 按次数并行的线程数
    Returns:
        GradedTable: kind 为 "tor" 的表
    """
    A = X.algebra
    if Y.algebra is not A.opposite():
        raise BadInput("tor_table 的第一个模必须是 A^o 上的模")
    R = resolution if resolution is not None else minimal_resolution(X, H + 1, margin, threads)
    K = X.K
    hi_x, lo_x = X.hi, X.lo
    known_shifts = [s for q in range(min(R.length, H + 2)) for _, s in R.steps[q].summands]
    top_shift = max(known_shifts, default=lo_x)
    j_lo, j_hi = Y.lo + lo_x, Y.hi + top_shift

    def step_known(p: int, j: int) -> bool:
        return _step_complete(R, p) or j <= hi_x + Y.lo

    def compute(j: int) -> Dict[int, Cell]:
        bases: Dict[int, List[Tuple[int, int]]] = {}
        known: Dict[int, bool] = {}
        for q in range(H + 2):
            entries = []
            ok = step_known(q, j)
            for k, (i, s) in enumerate(_step_summands(R, q)):
                size = _pieces(Y, j - s)
                if size is None:
                    ok = False
                    continue
                if size:
                    entries.extend((k, y) for y in range(size) if Y.labels[j - s][y] == i)
            bases[q] = entries
            known[q] = ok
        ranks: Dict[int, int] = {0: 0}
        for q in range(1, H + 2):
            # ∂_q: T_q → T_{q-1}
            src, tgt = bases[q], bases[q - 1]
            if not src or not tgt:
                ranks[q] = 0
                continue
            tgt_pos = {e: c for c, e in enumerate(tgt)}
            prev = _step_summands(R, q - 1)
            rows: List[Vector] = []
            for k, y in src:
                s = R.steps[q].summands[k][1]
                row: Vector = {}
                for (kp, u), c in R.steps[q].images[k].items():
                    sp = prev[kp][1]
                    if j - sp > Y.hi or not _pieces(Y, j - sp):
                        continue
                    img = Y.element_action(s - sp, u, j - s).get(y)
                    if img:
                        add_scaled(row, {tgt_pos[(kp, w)]: x for w, x in img.items()}, c)
                rows.append(row)
            ranks[q] = rank([r for r in rows if r], len(tgt), K)
        cells = {}
        for q in range(H + 1):
            dim = len(bases[q]) - ranks[q] - ranks[q + 1]
            cells[q] = Cell(dim, known[q] and known[q + 1])
        return cells

    degrees = list(range(j_lo, j_hi + 1))
    cells: Dict[Tuple[int, int], Cell] = {}
    for j, row in zip(degrees, _map_degrees(compute, degrees, threads)):
        for q, cell in row.items():
            cells[(q, j)] = cell

    below = {q: Region.ZERO for q in range(H + 1)}
    above = {}
    for q in range(H + 1):
        finite = Y.finite_top is not None and _step_complete(R, q) and _step_complete(R, q + 1)
        above[q] = Region.ZERO if finite else Region.UNKNOWN
    table = GradedTable("tor", H, j_lo, j_hi, cells, below, above)
    _assume_tops(table, margin)

    if R.terminated:
        table.beyond = Region.ZERO
    elif _repeats(R, H):
        table.beyond = Region.PERIODIC
    elif A.a0.semisimple:
        table.beyond = Region.BOUNDED
        table.beyond_bound = Y.lo + _lowest_shift(R, H + 1) - (H + 1)
    return table
