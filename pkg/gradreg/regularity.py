"""
The eight regularities of a graded module, depth and pdim, the Ext-limit
route to local cohomology, ASreg/asreg and the homogeneity flags.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from .algebra import TruncatedAlgebra
from .errors import BadInput, NotBasic
from .gmod import (GradedModule, free_module, sdeg_ideg, top_module, truncate_above,
                   vertex_module)
from .gorenstein import ASGorensteinData, cmreg_duality
from .homology import GradedTable, Region, ext_table
from .models import (Bounds, ExtendedDegree, RegStatus, RegValue, RegularityReport, Verdict,
                     compare)
from .resolve import BettiTable, ResolutionTruncation, betti, minimal_resolution

logger = logging.getLogger(__name__)

STRATEGIES = ("limit", "duality")


def torreg_from_betti(B: BettiTable, a0_semisimple: bool = False) -> Tuple[RegValue, RegValue]:
    """
    Torreg = sup(u_m - m)，torreg = -inf(ℓ_m - m)。

    Torreg 在分解终止或周期证书下精确；torreg 另外在 A_0 半单时精确，
    此时 ℓ_{m+1} > ℓ_m，下确界在第 0 步取到。

    Args:
        B: 极小分解的 Betti 表
        a0_semisimple: A_0 是否半单
    Returns:
        Tuple[RegValue, RegValue]: (Torreg, torreg)
    """
    ups = [(B.u(m) - m, m, B.u(m)) for m in range(B.length) if B.u(m) is not None]
    lows = [(B.l(m) - m, m, B.l(m)) for m in range(B.length) if B.l(m) is not None]
    if not ups:
        if B.terminated:
            minus = ExtendedDegree.minus_inf()
            return RegValue.from_degree(minus), RegValue.from_degree(minus)
        return RegValue.from_degree(None), RegValue.from_degree(None)

    top, m_top, s_top = max(ups)
    bottom, m_bot, s_bot = min(lows)
    period = B.period
    if B.terminated or (period is not None and period.shift <= 1):
        torreg_hi = RegValue.from_degree(ExtendedDegree.exact(top), (m_top, s_top))
    elif period is not None:
        torreg_hi = RegValue.from_degree(ExtendedDegree.plus_inf())
    else:
        torreg_hi = RegValue.from_degree(ExtendedDegree.at_least(top))

    if B.terminated or a0_semisimple or (period is not None and period.shift >= 1):
        torreg_lo = RegValue.from_degree(ExtendedDegree.exact(-bottom), (m_bot, s_bot))
    elif period is not None:
        torreg_lo = RegValue.from_degree(ExtendedDegree.plus_inf())
    else:
        torreg_lo = RegValue.from_degree(ExtendedDegree.at_least(-bottom))
    return torreg_hi, torreg_lo


def _negate(value: Optional[ExtendedDegree]) -> Optional[ExtendedDegree]:
    return None if value is None else -value


def depth_from_table(table: GradedTable) -> RegValue:
    """depth = inf{m | gExt^m(S, M) ≠ 0}，由 ext_table(S, M) 读出"""
    first_nonzero: Optional[Tuple[int, int]] = None
    for m, j, _ in table.nonzero():
        if first_nonzero is None or m < first_nonzero[0]:
            first_nonzero = (m, j)
    first_uncertain: Optional[int] = None
    for m in range(table.H + 1):
        row_known = all(table.known(m, j) for j in table.row(m))
        edges = (table.below.get(m) == Region.ZERO
                 and table.above.get(m) in (Region.ZERO, Region.ASSUMED))
        if not (row_known and edges):
            first_uncertain = m
            break
    if first_uncertain is None and table.beyond not in (Region.ZERO, Region.PERIODIC):
        first_uncertain = table.H + 1
    if first_nonzero is not None and (first_uncertain is None or first_nonzero[0] <= first_uncertain):
        return RegValue.from_degree(ExtendedDegree.exact(first_nonzero[0]), first_nonzero)
    if first_nonzero is not None:
        return RegValue.from_degree(ExtendedDegree.at_most(first_nonzero[0]))
    if first_uncertain is None:
        return RegValue.from_degree(ExtendedDegree.plus_inf())
    return RegValue.from_degree(ExtendedDegree.at_least(first_uncertain))


@dataclass
class Stabilization:
    """Ext 极限的稳定化记录"""
    n_eff: int
    window: Tuple[int, int]
    settled: int
    unsettled: List[Tuple[int, int]] = field(default_factory=list)
    clamped: bool = False

    def to_json(self) -> Dict[str, Any]:
        return {"n_eff": self.n_eff, "window": list(self.window), "settled": self.settled,
                "unsettled": [list(c) for c in self.unsettled], "clamped": self.clamped}


def _quotient_resolution(A: TruncatedAlgebra, n: int, bounds: Bounds) -> Tuple[GradedModule, ResolutionTruncation]:
    # A/A_{≥n} 的分解与 M 无关，缓存在代数上
    key = ("quotient", n, bounds.H, bounds.margin)
    if key not in A.cache:
        X = truncate_above(free_module(A), n)
        A.cache[key] = (X, minimal_resolution(X, bounds.H + 1, bounds.margin, bounds.threads))
    return A.cache[key]


def cmreg_limit(M: GradedModule, bounds: Bounds) -> Tuple[RegValue, RegValue, Stabilization]:
    """
    用 R^iΓ(M) = lim_n gExt^i(A/A_{≥n}, M) 计算 CMreg 与 cmreg。

    格子 (i, j) 在最后两个相邻的精确值相等时视为稳定；窗口顶端或第 H 行非零、
    或存在可能更大的未稳定格子时 CMreg 删失，窗口底端非零时 cmreg 删失。

    Args:
        M: 有限生成模
        bounds: 截断参数
    Returns:
        Tuple[RegValue, RegValue, Stabilization]: CMreg、cmreg 与稳定化记录
    """
    A = M.algebra
    n_eff = min(bounds.n_limit, A.N - bounds.margin - A.gmax + 1)
    clamped = n_eff < bounds.n_limit
    if clamped:
        logger.warning("n_max=%d 超出截断窗口，改用 n=%d", bounds.n_limit, max(n_eff, 1))
    n_eff = max(n_eff, 1)
    j_lo, j_hi = -(n_eff - 1), bounds.cm_top
    history: Dict[Tuple[int, int], List[Optional[int]]] = {}
    for n in range(1, n_eff + 1):
        X, R = _quotient_resolution(A, n, bounds)
        table = ext_table(X, M, bounds.H, bounds.margin, resolution=R, threads=bounds.threads)
        for i in range(bounds.H + 1):
            for j in range(j_lo, j_hi + 1):
                history.setdefault((i, j), []).append(table.value(i, j))
        logger.debug("local cohomology stage n=%d: %d nonzero cells", n, len(table.nonzero()))

    limit: Dict[Tuple[int, int], int] = {}
    unsettled: List[Tuple[int, int]] = []
    for cell, values in history.items():
        settled_value = None
        for a, b in zip(values, values[1:]):
            if a is not None and b is not None:
                settled_value = b if a == b else None
        if settled_value is None:
            unsettled.append(cell)
        else:
            limit[cell] = settled_value
    report = Stabilization(n_eff, (j_lo, j_hi), len(limit), sorted(unsettled), clamped)

    support = [(i + j, (i, j)) for (i, j), v in limit.items() if v]
    if not support:
        if unsettled:
            return RegValue.from_degree(None), RegValue.from_degree(None), report
        minus = ExtendedDegree.minus_inf()
        return RegValue.from_degree(minus), RegValue.from_degree(minus), report

    top, top_cell = max(support)
    bottom, bottom_cell = min(support)
    censored_top = (any(i + j > top for i, j in unsettled)
                    or any(limit.get((i, j_hi)) for i in range(bounds.H + 1))
                    or any(limit.get((bounds.H, j)) for j in range(j_lo, j_hi + 1)))
    censored_bottom = (any(i + j < bottom for i, j in unsettled)
                       or any(limit.get((i, j_lo)) for i in range(bounds.H + 1)))
    cm = (RegValue.from_degree(ExtendedDegree.at_least(top)) if censored_top
          else RegValue.from_degree(ExtendedDegree.exact(top), top_cell))
    lc = (RegValue.from_degree(ExtendedDegree.at_least(-bottom)) if censored_bottom
          else RegValue.from_degree(ExtendedDegree.exact(-bottom), bottom_cell))
    return cm, lc, report


def cm_regularities(M: GradedModule, bounds: Bounds, strategy: str = "limit",
                    gorenstein: Optional[ASGorensteinData] = None) -> Tuple[RegValue, RegValue]:
    if strategy == "limit":
        cm, lc, _ = cmreg_limit(M, bounds)
        return cm, lc
    if strategy == "duality":
        return cmreg_duality(M, gorenstein, bounds)
    raise BadInput(f"未知的 CM 策略：{strategy}（可选 {', '.join(STRATEGIES)}）")


def _degenerate_report() -> RegularityReport:
    minus, plus = ExtendedDegree.minus_inf(), ExtendedDegree.plus_inf()
    values = {name: RegValue(minus, RegStatus.DEGENERATE)
              for name in ("CMreg", "cmreg", "Torreg", "torreg", "Extreg", "extreg",
                           "Exreg", "exreg", "pdim")}
    values["depth"] = RegValue(plus, RegStatus.DEGENERATE)
    return RegularityReport(values, degenerate=True, notes=["zero module"])


def regs_of_module(M: GradedModule, bounds: Bounds, strategy: str = "limit",
                   gorenstein: Optional[ASGorensteinData] = None,
                   resolution: Optional[ResolutionTruncation] = None) -> RegularityReport:
    """
    计算 M 的全部正则度、depth 与 pdim。

    Args:
        M: 有下界、窗口内有限生成的模
        bounds: 截断参数
        strategy: CMreg/cmreg 的计算方式，"limit" 或 "duality"
        gorenstein: duality 策略所需的 AS-Gorenstein 数据
        resolution: 复用的 M 的分解（至少 H+1 步）
    Returns:
        RegularityReport: 各值及其状态
    """
    if M.certified_zero:
        return _degenerate_report()
    A = M.algebra
    semisimple = A.a0.semisimple
    R = resolution if resolution is not None else minimal_resolution(M, bounds.H + 1, bounds.margin, bounds.threads)
    values: Dict[str, RegValue] = {}
    notes: List[str] = []

    values["Torreg"], values["torreg"] = torreg_from_betti(betti(R), semisimple)
    values["pdim"] = RegValue.from_degree(R.pdim)

    S = top_module(A)
    to_simple = ext_table(M, S, bounds.H, bounds.margin, resolution=R, threads=bounds.threads).extremes()
    values["Extreg"] = RegValue.from_degree(_negate(to_simple.ideg), to_simple.ideg_witness)
    values["extreg"] = RegValue.from_degree(to_simple.sdeg, to_simple.sdeg_witness)

    from_simple_table = ext_table(top_module(A), M, bounds.H, bounds.margin, threads=bounds.threads)
    from_simple = from_simple_table.extremes()
    values["Exreg"] = RegValue.from_degree(from_simple.sdeg, from_simple.sdeg_witness)
    values["exreg"] = RegValue.from_degree(_negate(from_simple.ideg), from_simple.ideg_witness)
    values["depth"] = depth_from_table(from_simple_table)

    values["CMreg"], values["cmreg"] = cm_regularities(M, bounds, strategy, gorenstein)

    _, ideg = sdeg_ideg(M)
    if semisimple and compare(values["extreg"].value, "==", -ideg) == Verdict.FAILS:
        logger.warning("extreg=%s 与 -ideg=%s 不一致", values["extreg"].value, -ideg)
        notes.append("extreg differs from -ideg")
    for name in ("Torreg", "torreg"):
        other = name.replace("tor", "ext").replace("Tor", "Ext")
        if compare(values[name].value, "==", values[other].value) == Verdict.FAILS:
            notes.append(f"{name} differs from {other}")
    return RegularityReport(values, notes=notes)


@dataclass
class ASRegResult:
    """ASreg/asreg 及其组成部分；right 为右模一侧的对照值"""
    ASreg: RegValue
    asreg: RegValue
    CMreg: RegValue
    cmreg: RegValue
    Torreg_S: RegValue
    torreg_S: RegValue
    right: Dict[str, RegValue] = field(default_factory=dict)

    def to_json(self) -> Dict[str, Any]:
        data = {name: getattr(self, name).to_json()
                for name in ("ASreg", "asreg", "CMreg", "cmreg", "Torreg_S", "torreg_S")}
        if self.right:
            data["right"] = {name: v.to_json() for name, v in sorted(self.right.items())}
        return data


def _sum(a: RegValue, b: RegValue) -> RegValue:
    if a.value is None or b.value is None:
        return RegValue.from_degree(None)
    return RegValue.from_degree(a.value + b.value)


def asreg(A: TruncatedAlgebra, bounds: Bounds, strategy: str = "limit",
          gorenstein: Optional[ASGorensteinData] = None, both_sides: bool = False) -> ASRegResult:
    """
    ASreg(A) = CMreg(A) + Torreg(S)，asreg(A) = cmreg(A) + torreg(S)。

    both_sides 为 True 时再在 A^o 上计算 CMreg(A_A) 与 Torreg(S_A) 作为对照。
    """
    cm, lc = cm_regularities(free_module(A), bounds, strategy, gorenstein)
    S = top_module(A)
    R = minimal_resolution(S, bounds.H + 1, bounds.margin, bounds.threads)
    tor_hi, tor_lo = torreg_from_betti(betti(R), A.a0.semisimple)
    result = ASRegResult(_sum(cm, tor_hi), _sum(lc, tor_lo), cm, lc, tor_hi, tor_lo)
    if both_sides:
        Ao = A.opposite()
        cm_r, lc_r, _ = cmreg_limit(free_module(Ao), bounds)
        R_r = minimal_resolution(top_module(Ao), bounds.H + 1, bounds.margin, bounds.threads)
        tor_r, _ = torreg_from_betti(betti(R_r), Ao.a0.semisimple)
        result.right = {"CMreg": cm_r, "cmreg": lc_r, "Torreg_S": tor_r}
    return result


@dataclass
class HomogeneityResult:
    """每个顶点的 CMreg(Ae_i)、exreg(Ae_i)（及右侧版本）与四个齐性判定"""
    flags: Dict[str, Verdict]
    values: Dict[str, List[RegValue]]

    def to_json(self) -> Dict[str, Any]:
        return {
            "flags": {k: v.value for k, v in sorted(self.flags.items())},
            "values": {k: [v.to_json() for v in vs] for k, vs in sorted(self.values.items())},
        }


def _exreg(M: GradedModule, bounds: Bounds) -> RegValue:
    ex = ext_table(top_module(M.algebra), M, bounds.H, bounds.margin, threads=bounds.threads).extremes()
    return RegValue.from_degree(_negate(ex.ideg), ex.ideg_witness)


def _all_equal(whole: RegValue, parts: List[RegValue]) -> Verdict:
    verdicts = [compare(p.value, "==", whole.value) for p in parts]
    if Verdict.FAILS in verdicts:
        return Verdict.FAILS
    if all(v == Verdict.HOLDS for v in verdicts):
        return Verdict.HOLDS
    return Verdict.INCONCLUSIVE


def homogeneity_check(A: TruncatedAlgebra, bounds: Bounds) -> HomogeneityResult:
    """
    CM-正则度齐性与 ex-正则度齐性：比较 CMreg(Ae_i)、exreg(Ae_i) 与整体的值（左右两侧）。
    """
    if not (A.a0.semisimple and A.a0.basic and A.dim(0) == A.n):
        raise NotBasic("齐性检查需要 A_0 = k^n")
    flags: Dict[str, Verdict] = {}
    values: Dict[str, List[RegValue]] = {}
    for side, alg in (("left", A), ("right", A.opposite())):
        cm_whole, _, _ = cmreg_limit(free_module(alg), bounds)
        ex_whole = _exreg(free_module(alg), bounds)
        cm_parts, ex_parts = [], []
        for i in range(alg.n):
            P = vertex_module(alg, i)
            cm_i, _, _ = cmreg_limit(P, bounds)
            cm_parts.append(cm_i)
            ex_parts.append(_exreg(P, bounds))
        flags[f"{side}CM"] = _all_equal(cm_whole, cm_parts)
        flags[f"{side}Ex"] = _all_equal(ex_whole, ex_parts)
        values[f"{side}_CMreg"] = [cm_whole] + cm_parts
        values[f"{side}_exreg"] = [ex_whole] + ex_parts
    return HomogeneityResult(flags, values)
