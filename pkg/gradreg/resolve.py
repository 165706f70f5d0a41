"""
Minimal graded free resolutions, Betti tables and the minimality and
linearity certificates read off them.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .errors import BadInput
from .gmod import FreeGradedModule, GradedMap, GradedModule
from .models import ExtendedDegree, Linearity
from .scalar import Subspace, Vector, apply, left_kernel

logger = logging.getLogger(__name__)

# 自由模分量形式：(summand 序号, A 的基元素序号) -> 系数
Components = Dict[Tuple[int, int], Any]


@dataclass
class ResolutionStep:
    """
    分解的第 m 步 P^{-m} = ⊕_k Ae_{i_k}(-s_k)。

    第 0 步的 images 是 M_{s_k} 中的向量；之后各步的 images 是上一步自由模中的分量形式。
    """
    summands: List[Tuple[int, int]]
    images: List[Any]
    complete: bool
    free: Optional[FreeGradedModule] = None

    @property
    def rank(self) -> int:
        return len(self.summands)

    @property
    def shifts(self) -> List[int]:
        return sorted({s for _, s in self.summands})


@dataclass(frozen=True)
class Periodicity:
    """从第 start 步起，每一步都是前一步平移 shift 次"""
    start: int
    shift: int


@dataclass
class BettiTable:
    """β(m, s, i)：P^{-m} 中 Ae_i(-s) 的重数"""
    entries: Dict[Tuple[int, int, int], int]
    length: int
    terminated: bool
    complete: List[bool] = field(default_factory=list)
    period: Optional[Periodicity] = None

    def shifts(self, m: int) -> List[int]:
        return sorted({s for (mm, s, _), c in self.entries.items() if mm == m and c})

    def u(self, m: int) -> Optional[int]:
        shifts = self.shifts(m)
        return max(shifts) if shifts else None

    def l(self, m: int) -> Optional[int]:
        shifts = self.shifts(m)
        return min(shifts) if shifts else None

    def total(self, m: int, s: int) -> int:
        return sum(c for (mm, ss, _), c in self.entries.items() if mm == m and ss == s)

    def to_json(self) -> Dict[str, Any]:
        return {
            "length": self.length,
            "terminated": self.terminated,
            "period": None if self.period is None else {"start": self.period.start, "shift": self.period.shift},
            "entries": [[m, s, i, c] for (m, s, i), c in sorted(self.entries.items())],
        }


class ResolutionTruncation:
    """截断到 H 步、次数窗口 [lo, hi] 的极小分解"""

    def __init__(self, module: GradedModule, H: int, steps: List[ResolutionStep],
                 terminated: bool, period: Optional[Periodicity] = None):
        self.module = module
        self.algebra = module.algebra
        self.H = H
        self.hi = module.hi
        self.steps = steps
        self.terminated = terminated
        self.period = period
        self._maps: Dict[int, GradedMap] = {}

    @property
    def length(self) -> int:
        return len(self.steps)

    def free(self, m: int) -> FreeGradedModule:
        step = self.steps[m]
        if step.free is None:
            step.free = FreeGradedModule(self.algebra, step.summands, self.hi)
        return step.free

    def augmentation(self) -> GradedMap:
        if 0 not in self._maps:
            self._maps[0] = GradedMap.from_images(self.free(0), self.module, self.steps[0].images)
        return self._maps[0]

    def differential(self, m: int) -> GradedMap:
        """d^{-m}: P^{-m} → P^{-m+1}（m ≥ 1）"""
        if m < 1:
            raise BadInput("微分从第 1 步开始")
        if m not in self._maps:
            source, target = self.free(m), self.free(m - 1)
            vectors = [target.from_components(s, z)
                       for (_, s), z in zip(self.steps[m].summands, self.steps[m].images)]
            self._maps[m] = GradedMap.from_images(source, target, vectors)
        return self._maps[m]

    @property
    def pdim(self) -> ExtendedDegree:
        if self.terminated:
            last = self.length - 1
            return ExtendedDegree.minus_inf() if last == 0 else ExtendedDegree.exact(last - 1)
        if self.period is not None:
            return ExtendedDegree.plus_inf()
        nonzero = [m for m, step in enumerate(self.steps) if step.rank]
        return ExtendedDegree.at_least(max(nonzero, default=0))

    def known_generators(self, m: int) -> bool:
        """第 m 步的全部生成元是否都已找到"""
        return m < self.length and self.steps[m].complete

    def __repr__(self) -> str:
        ranks = ",".join(str(step.rank) for step in self.steps)
        return f"ResolutionTruncation(ranks=({ranks}), terminated={self.terminated})"


def _select_generators(module: GradedModule, spaces: Dict[int, List[Vector]],
                       radical: Sequence[Vector]) -> List[Tuple[int, int, Vector]]:
    # 每个次数取 J·子模 的补：按次数升序、主元顺序贪心选取
    A = module.algebra
    chosen: List[Tuple[int, int, Vector]] = []
    degrees = sorted(d for d, rows in spaces.items() if rows)
    if not degrees:
        return chosen
    lo = degrees[0]
    for d in degrees:
        rows = spaces[d]
        span = Subspace(module.dim(d), module.K)
        for t in range(1, d - lo + 1):
            lower = spaces.get(d - t)
            if not lower:
                continue
            for g in A.generators(t):
                act = module.action(t, g, d - t)
                for v in lower:
                    span.extend(apply(v, act))
        for r in radical:
            for v in rows:
                span.extend(module.act(0, r, d, v))
        for v in rows:
            if span.extend(v):
                chosen.append((module.labels[d][min(v)], d, v))
                for x in range(A.dim(0)):
                    span.extend(apply(v, module.action(0, x, d)))
    return chosen


def _find_period(steps: List[ResolutionStep]) -> Optional[Periodicity]:
    for m in range(1, len(steps) - 1):
        prev, cur, nxt = steps[m - 1], steps[m], steps[m + 1]
        if not (prev.complete and cur.complete and nxt.complete) or not cur.rank:
            continue
        if len(prev.summands) != len(cur.summands) or len(cur.summands) != len(nxt.summands):
            continue
        c = cur.summands[0][1] - prev.summands[0][1]
        if cur.summands != [(i, s + c) for i, s in prev.summands]:
            continue
        if nxt.summands != [(i, s + c) for i, s in cur.summands]:
            continue
        if nxt.images == cur.images:
            return Periodicity(m, c)
    return None


def minimal_resolution(M: GradedModule, H: int, margin: int = 2, threads: int = 1) -> ResolutionTruncation:
    """
    计算 M 的极小分次自由分解的前 H+1 步。

    生成元模 J = J(A_0) + A_{≥1} 选取；次数 ≤ hi 的部分总是精确的，
    某一步是否找全了生成元记录在 complete 标志里。

    Args:
        M: 有下界的分次模
        H: 最大同调次数
        margin: 生成次数距窗口上界的安全边距
        threads: 每步内按次数并行求核的线程数
    Returns:
        ResolutionTruncation: 截断分解
    """
    if H < 0:
        raise BadInput(f"H 必须非负：{H}")
    A = M.algebra
    hi = M.hi
    margin_eff = max(margin, 2 * A.gmax)
    # 下一步合冲生成元至多比上一步高出 gap 次
    gap = max(margin_eff, A.relation_bound)
    radical = A.a0.radical_basis

    spaces = {d: [{c: M.K.one} for c in range(M.dim(d))] for d in range(M.lo, hi + 1)}
    chosen = _select_generators(M, spaces, radical)
    complete = ((M.generated_by is not None and M.generated_by <= hi)
                or (M.finite_top is not None and M.finite_top <= hi))
    steps = [ResolutionStep([(i, d) for i, d, _ in chosen], [v for _, _, v in chosen], complete)]
    res = ResolutionTruncation(M, H, steps, False)
    terminated = not steps[0].rank and complete

    for m in range(1, H + 1):
        if terminated:
            break
        prev = steps[m - 1]
        spaces = {}
        if prev.rank:
            delta = res.augmentation() if m == 1 else res.differential(m - 1)
            F = res.free(m - 1)
            degrees = list(range(F.lo, hi + 1))

            def syzygy(d: int) -> List[Vector]:
                return Subspace.span(left_kernel(delta.matrix(d)), F.dim(d), F.K).rows

            if threads > 1:
                with ThreadPoolExecutor(max_workers=threads) as pool:
                    spaces = dict(zip(degrees, pool.map(syzygy, degrees)))
            else:
                spaces = {d: syzygy(d) for d in degrees}
            chosen = _select_generators(F, spaces, radical)
            finite = F.finite_top is not None and F.finite_top <= hi
            complete = prev.complete and (finite or max(prev.shifts) + gap <= hi)
            step = ResolutionStep([(i, d) for i, d, _ in chosen],
                                  [F.components(d, v) for _, d, v in chosen], complete)
        else:
            step = ResolutionStep([], [], prev.complete)
        steps.append(step)
        logger.debug("step %d: %d generators in degrees %s, complete=%s",
                     m, step.rank, step.shifts, step.complete)
        if not step.rank and step.complete:
            terminated = True

    res.terminated = terminated
    if not terminated:
        res.period = _find_period(steps)
    return res


def betti(R: ResolutionTruncation) -> BettiTable:
    """从各步的 summand 列表读出 Betti 数"""
    entries: Dict[Tuple[int, int, int], int] = {}
    for m, step in enumerate(R.steps):
        for i, s in step.summands:
            entries[(m, s, i)] = entries.get((m, s, i), 0) + 1
    return BettiTable(entries, R.length, R.terminated,
                      [step.complete for step in R.steps], R.period)


def check_minimality(R: ResolutionTruncation) -> bool:
    """
    检查每个微分的 0 次分量都落在 J(A_0) 中（A_0 半单时即不存在 0 次分量）。
    """
    A = R.algebra
    radical = Subspace.span(list(A.a0.radical_basis), A.dim(0), A.K)
    for m in range(1, R.length):
        prev = R.steps[m - 1]
        for (_, s), z in zip(R.steps[m].summands, R.steps[m].images):
            blocks: Dict[int, Vector] = {}
            for (k, u), c in z.items():
                if prev.summands[k][1] == s:
                    blocks.setdefault(k, {})[u] = c
            for vec in blocks.values():
                if not radical.contains(vec):
                    return False
    return True


def is_linear(B: BettiTable) -> Linearity:
    """β(m, s, ·) = 0 对一切 s ≠ m 成立时为线性；未终止时只能给出删失结论"""
    if any(c and s != m for (m, s, _), c in B.entries.items()):
        return Linearity.NOT_LINEAR
    if B.terminated or (B.period is not None and B.period.shift == 1):
        return Linearity.LINEAR
    return Linearity.CENSORED
