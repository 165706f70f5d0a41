"""
AS-Gorenstein data: verification against the Ext of the simple modules, the
local-duality route to CM-regularity, and the conjugation of Gorenstein
parameters by degree shifts of the vertex projectives.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from .algebra import TruncatedAlgebra
from .errors import BadInput, MissingGorensteinData
from .gmod import GradedModule, simple_module, vertex_module
from .homology import GradedTable, ext_table
from .models import Bounds, ExtendedDegree, RegValue, degree_max

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ASGorensteinData:
    """
    AS-Gorenstein 数据：维数 d、参数 ℓ_i、置换 σ（0 起始）与重数 r_i。

    verified 为 True 表示 gExt^d(S_i, A) ≅ e_σ(i) S(ℓ_i) 已在截断范围内验证过，否则只是断言。
    """
    d: int
    ell: Tuple[int, ...]
    sigma: Tuple[int, ...]
    r: Tuple[int, ...] = ()
    verified: bool = False

    def validate(self, n: int) -> "ASGorensteinData":
        if len(self.ell) != n or len(self.sigma) != n:
            raise BadInput(f"Gorenstein 数据长度与顶点数 {n} 不一致")
        if sorted(self.sigma) != list(range(n)):
            raise BadInput(f"σ 不是置换：{list(self.sigma)}")
        if self.d < 0:
            raise BadInput(f"维数必须非负：{self.d}")
        r = self.r or (1,) * n
        if len(r) != n:
            raise BadInput("重数 r 的长度与顶点数不一致")
        return replace(self, r=tuple(r))

    @property
    def equal_parameters(self) -> bool:
        """所有 ℓ_i 相等（此时 ASreg = 0 刻画 AS-正则性）"""
        return len(set(self.ell)) <= 1

    @property
    def ell_av(self) -> Optional[float]:
        return sum(self.ell) / len(self.ell) if self.ell else None

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "ASGorensteinData":
        try:
            return cls(int(data["d"]), tuple(int(x) for x in data["ell"]),
                       tuple(int(x) for x in data["sigma"]),
                       tuple(int(x) for x in data.get("r", ())))
        except (KeyError, TypeError, ValueError) as e:
            raise BadInput(f"无效的 Gorenstein 数据：{data}") from e

    def to_json(self) -> Dict[str, Any]:
        return {"d": self.d, "ell": list(self.ell), "sigma": list(self.sigma),
                "r": list(self.r), "verified": self.verified,
                "equal_parameters": self.equal_parameters, "ell_av": self.ell_av}


def verify_gorenstein(A: TruncatedAlgebra, G: ASGorensteinData, bounds: Bounds) -> ASGorensteinData:
    """
    在 (H, N) 内重算 gExt^m(S_i, Ae_b)，检查只有 m = d、b = σ(i)、j = -ℓ_i 处非零且维数为 r_i。

    不一致或数据删失时返回 verified=False 的数据（并记录警告），不抛异常。
    """
    G = G.validate(A.n)
    if bounds.H < G.d:
        logger.warning("H=%d 小于 Gorenstein 维数 %d，无法验证", bounds.H, G.d)
        return replace(G, verified=False)
    for i in range(A.n):
        S_i = simple_module(A, i)
        for b in range(A.n):
            table = ext_table(S_i, vertex_module(A, b), bounds.H, bounds.margin,
                              vanishing_above=G.d, threads=bounds.threads)
            for (m, j), cell in table.cells.items():
                value = table.value(m, j)
                if value is None:
                    continue
                expected = G.r[i] if (m == G.d and b == G.sigma[i] and j == -G.ell[i]) else 0
                if value != expected:
                    logger.warning("Gorenstein 数据不符：Ext^%d(S_%s, Ae_%s)_%d 维数 %d，期望 %d",
                                   m, A.vertices[i], A.vertices[b], j, value, expected)
                    return replace(G, verified=False)
            if b == G.sigma[i] and table.value(G.d, -G.ell[i]) is None:
                logger.warning("Ext^%d(S_%s, Ae_%s) 在截断内无法确定", G.d, A.vertices[i], A.vertices[b])
                return replace(G, verified=False)
    return replace(G, verified=True)


def cmreg_duality(M: GradedModule, G: Optional[ASGorensteinData], bounds: Bounds,
                  cache: Optional[Dict[int, GradedTable]] = None) -> Tuple[RegValue, RegValue]:
    """
    用局部对偶计算 CMreg 与 cmreg：R = ⊕ Ae_σ(i)(-ℓ_i)[d]，
    CMreg = max_i(d - ℓ_i - ideg T_σ(i))，cmreg = max_i(sdeg T_σ(i) + ℓ_i - d)，
    其中 T_b = gExt(M, Ae_b)。

    Args:
        M: 有限生成模
        G: AS-Gorenstein 数据
        bounds: 截断参数
        cache: 按 b 复用的 Ext 表
    Returns:
        Tuple[RegValue, RegValue]: (CMreg, cmreg)
    """
    if G is None:
        raise MissingGorensteinData("duality 策略需要 AS-Gorenstein 数据")
    A = M.algebra
    G = G.validate(A.n)
    tables = {} if cache is None else cache
    upper: List[Optional[ExtendedDegree]] = []
    lower: List[Optional[ExtendedDegree]] = []
    up_wit: Dict[int, Tuple[int, int]] = {}
    low_wit: Dict[int, Tuple[int, int]] = {}
    for i in range(A.n):
        b = G.sigma[i]
        if b not in tables:
            tables[b] = ext_table(M, vertex_module(A, b), bounds.H, bounds.margin,
                                  vanishing_above=G.d, threads=bounds.threads)
        ex = tables[b].extremes()
        shift = G.d - G.ell[i]
        upper.append(None if ex.ideg is None else ExtendedDegree.exact(shift) - ex.ideg)
        lower.append(None if ex.sdeg is None else ex.sdeg - ExtendedDegree.exact(shift))
        if ex.ideg_witness is not None:
            up_wit[i] = ex.ideg_witness
        if ex.sdeg_witness is not None:
            low_wit[i] = ex.sdeg_witness
    cm = degree_max(*upper)
    lc = degree_max(*lower)
    return (RegValue.from_degree(cm, _witness(cm, upper, up_wit)),
            RegValue.from_degree(lc, _witness(lc, lower, low_wit)))


def _witness(best: Optional[ExtendedDegree], values: Sequence[Optional[ExtendedDegree]],
             witnesses: Dict[int, Tuple[int, int]]) -> Optional[Tuple[int, int]]:
    if best is None:
        return None
    for i, v in enumerate(values):
        if v == best and i in witnesses:
            return witnesses[i]
    return None


@dataclass(frozen=True)
class Equalized:
    """平移向量 p 及平移后的参数 ℓ^B 与最小次数矩阵 m^B"""
    p: Tuple[int, ...]
    ell: Tuple[int, ...]
    m: Tuple[Tuple[Optional[int], ...], ...]


@dataclass(frozen=True)
class Infeasible:
    """无解证书：不一致的 σ-轨道，或违反正性约束的圈"""
    reason: str
    cycle: Tuple[int, ...] = field(default_factory=tuple)


def equalize_parameters(ell: Sequence[int], sigma: Sequence[int],
                        m: Sequence[Sequence[Optional[int]]]) -> Union[Equalized, Infeasible]:
    """
    求平移 p 使 ℓ_i - p_i + p_σ(i) = ℓ_av，且共轭后 m(i,j) + p_i - p_j ≥ 1 (i ≠ j)。

    每个 σ-轨道上 p 由 ℓ 确定到一个常数，常数之间的差分约束用 Bellman-Ford 求解。

    Args:
        ell: Gorenstein 参数
        sigma: 置换（0 起始）
        m: m(i, j) = min{ℓ | e_i A_ℓ e_j ≠ 0}，None 表示该块为零
    Returns:
        Equalized | Infeasible: 解（min p = 0）或无解证书
    """
    n = len(ell)
    if n == 0:
        raise BadInput("参数列表为空")
    if len(sigma) != n or sorted(sigma) != list(range(n)):
        raise BadInput(f"σ 不是 {n} 个顶点上的置换：{list(sigma)}")
    if len(m) != n or any(len(row) != n for row in m):
        raise BadInput("m 必须是 n×n 矩阵")
    if sum(ell) % n:
        raise BadInput(f"平均参数 {sum(ell)}/{n} 不是整数")
    ell_av = sum(ell) // n
    delta = [ell[i] - ell_av for i in range(n)]

    orbit_of = [-1] * n
    offset = [0] * n
    orbits: List[List[int]] = []
    for root in range(n):
        if orbit_of[root] >= 0:
            continue
        cycle = [root]
        orbit_of[root] = len(orbits)
        i = root
        while sigma[i] != root:
            nxt = sigma[i]
            offset[nxt] = offset[i] - delta[i]
            orbit_of[nxt] = len(orbits)
            cycle.append(nxt)
            i = nxt
        if sum(delta[k] for k in cycle):
            return Infeasible("σ-轨道上的参数和与平均值不一致", tuple(cycle))
        orbits.append(cycle)

    # c_b - c_a ≤ w 对应边 a → b
    edges: Dict[Tuple[int, int], Tuple[int, Tuple[int, int]]] = {}
    for i in range(n):
        for j in range(n):
            if i == j or m[i][j] is None:
                continue
            w = m[i][j] - 1 - offset[j] + offset[i]
            a, b = orbit_of[i], orbit_of[j]
            if a == b:
                if w < 0:
                    return Infeasible("同一轨道内的正性约束不成立", (i, j))
                continue
            if (a, b) not in edges or w < edges[(a, b)][0]:
                edges[(a, b)] = (w, (i, j))

    k = len(orbits)
    dist = [0] * k
    pred: List[Optional[Tuple[int, Tuple[int, int]]]] = [None] * k
    changed_at = -1
    for _ in range(k):
        changed_at = -1
        for (a, b), (w, pair) in sorted(edges.items()):
            if dist[a] + w < dist[b]:
                dist[b] = dist[a] + w
                pred[b] = (a, pair)
                changed_at = b
        if changed_at < 0:
            break
    if changed_at >= 0:
        node = changed_at
        for _ in range(k):
            node = pred[node][0]
        cycle_pairs: List[int] = []
        cur = node
        while True:
            a, (i, j) = pred[cur]
            cycle_pairs.extend((j, i))
            cur = a
            if cur == node:
                break
        return Infeasible("顶点平移的正性约束有负圈", tuple(reversed(cycle_pairs)))

    p = [dist[orbit_of[i]] + offset[i] for i in range(n)]
    base = min(p)
    p = [x - base for x in p]
    ell_b = tuple(ell[i] - p[i] + p[sigma[i]] for i in range(n))
    m_b = tuple(tuple(None if m[i][j] is None else m[i][j] + p[i] - p[j] for j in range(n))
                for i in range(n))
    return Equalized(tuple(p), ell_b, m_b)
