"""
Windowed graded modules over a truncated algebra, degree-0 maps between them
and the constructions built from those: cokernels, kernels, shifts,
truncations and Matlis duals.

A module stores, for every degree d of its window [lo, hi], the e_i-labels of
a basis of M_d and the action of the algebra generators (every basis element
of A_0 and each positive generator G_t) as row-convention matrices
M_d -> M_{d+t}. The action of any other basis element of A is assembled from
the generator factorization of the algebra.
"""

import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy.polys.matrices.sdm import SDM

from .algebra import TruncatedAlgebra
from .errors import BadInput, ComputationError, NotFiniteDimensional, WindowTooSmall
from .models import ExtendedDegree
from .scalar import Subspace, Vector, add_scaled, apply, left_kernel

logger = logging.getLogger(__name__)

ActionKey = Tuple[int, int, int]


class GradedModule:
    """
    截断窗口 [lo, hi] 内的有限生成分次左模。

    finite_top 不为 None 时表示已证明 M_d = 0 (d > finite_top)；
    generated_by 不为 None 时表示 M 由次数 ≤ generated_by 的元素生成。
    """

    def __init__(self,
                 algebra: TruncatedAlgebra,
                 lo: int,
                 hi: int,
                 labels: Dict[int, List[int]],
                 actions: Dict[ActionKey, SDM],
                 origin: str,
                 generated_by: Optional[int] = None,
                 finite_top: Optional[int] = None):
        self.algebra = algebra
        self.K = algebra.K
        self.lo = lo
        self.hi = hi
        self.labels = {d: list(labels.get(d, [])) for d in range(lo, hi + 1)}
        self._actions = actions
        self.origin = origin
        self.generated_by = generated_by
        self._element_cache: Dict[ActionKey, SDM] = {}
        if finite_top is None and generated_by is not None:
            finite_top = self._certify_top()
        self.finite_top = finite_top

    def dim(self, d: int) -> int:
        return len(self.labels.get(d, ()))

    def dims(self) -> Dict[int, int]:
        return {d: self.dim(d) for d in range(self.lo, self.hi + 1)}

    def support(self) -> List[int]:
        return [d for d in range(self.lo, self.hi + 1) if self.dim(d)]

    @property
    def certified_zero(self) -> bool:
        return self.finite_top is not None and not self.support()

    def action(self, t: int, g: int, d: int) -> SDM:
        """生成元 g ∈ A_t（t = 0 时为 A_0 任意基元素）的作用 M_d → M_{d+t}"""
        if d + t > self.hi:
            raise WindowTooSmall(f"需要次数 {d + t}，超出窗口上界 {self.hi}")
        m = self._actions.get((t, g, d))
        if m is None:
            return SDM({}, (self.dim(d), self.dim(d + t)), self.K)
        return m

    def element_action(self, t: int, k: int, d: int) -> SDM:
        """A_t 的第 k 个基元素的作用，由生成元分解 ρ(g·v) = ρ(v)·ρ(g) 递归得到"""
        if t == 0:
            return self.action(0, k, d)
        key = (t, k, d)
        cached = self._element_cache.get(key)
        if cached is not None:
            return cached
        if d + t > self.hi:
            raise WindowTooSmall(f"需要次数 {d + t}，超出窗口上界 {self.hi}")
        out = SDM({}, (self.dim(d), self.dim(d + t)), self.K)
        for c, a, g, v in self.algebra.factorization(t, k):
            if v is None:
                term = self.action(a, g, d)
            else:
                term = self.element_action(t - a, v, d).matmul(self.action(a, g, d + t - a))
            out = out.add(term.mul(c))
        self._element_cache[key] = out
        return out

    def act(self, t: int, element: Vector, d: int, v: Vector) -> Vector:
        """代数元素（A_t 上的向量）作用在 M_d 的向量上"""
        out: Vector = {}
        for k, c in element.items():
            add_scaled(out, apply(v, self.element_action(t, k, d)), c)
        return out

    def _certify_top(self) -> Optional[int]:
        # 生成次数之后出现长度 gmax 的零段，则此后全为零
        A = self.algebra
        if A.generator_bound > A.N:
            return None
        run = max(A.gmax, 1)
        last_nonzero = self.lo - 1
        for d in range(self.lo, self.hi + 1):
            if self.dim(d):
                last_nonzero = d
            elif d > self.generated_by and d - max(last_nonzero, self.generated_by) >= run:
                return last_nonzero
        return None

    def check_associativity(self, limit: int = 200) -> bool:
        """在窗口内抽查 (ab)·m = a·(b·m)"""
        A = self.algebra
        checked = 0
        for a in range(A.N + 1):
            for b in range(A.N + 1 - a):
                for d in range(self.lo, self.hi - a - b + 1):
                    if not self.dim(d):
                        continue
                    for i in range(A.dim(a)):
                        for j in range(A.dim(b)):
                            if A.basis[a][i].target != A.basis[b][j].source:
                                continue
                            lhs = SDM({}, (self.dim(d), self.dim(d + a + b)), self.K)
                            for l, c in A.mul(a, i, b, j).items():
                                lhs = lhs.add(self.element_action(a + b, l, d).mul(c))
                            rhs = self.element_action(b, j, d).matmul(self.element_action(a, i, d + b))
                            if dict(lhs.sub(rhs)):
                                return False
                            checked += 1
                            if checked >= limit:
                                return True
        return True

    def __repr__(self) -> str:
        dims = ",".join(str(self.dim(d)) for d in range(self.lo, self.hi + 1))
        return f"GradedModule({self.origin}, [{self.lo},{self.hi}], dims=({dims}))"


class FreeGradedModule(GradedModule):
    """
    自由模 ⊕_k Ae_{i_k}(-s_k)：d 次基为 (k, u)，u ∈ A_{d-s_k} 且 target(u) = i_k，标签为 source(u)。
    """

    def __init__(self, algebra: TruncatedAlgebra, summands: Sequence[Tuple[int, int]], hi: int):
        self.summands = [(int(i), int(s)) for i, s in summands]
        for i, _ in self.summands:
            if not 0 <= i < algebra.n:
                raise BadInput(f"无效的顶点序号：{i}")
        lo = min((s for _, s in self.summands), default=0)
        if self.summands and hi - lo > algebra.N:
            raise WindowTooSmall(f"自由模窗口 [{lo}, {hi}] 需要 A 截断到 {hi - lo} 次，当前 N={algebra.N}")
        self.basis: Dict[int, List[Tuple[int, int]]] = {}
        self._position: Dict[Tuple[int, int, int], int] = {}
        labels: Dict[int, List[int]] = {}
        for d in range(lo, hi + 1):
            entries = []
            for k, (i, s) in enumerate(self.summands):
                e = d - s
                if e < 0:
                    continue
                for u, b in enumerate(algebra.basis[e]):
                    if b.target == i:
                        self._position[(d, k, u)] = len(entries)
                        entries.append((k, u))
            self.basis[d] = entries
            labels[d] = [algebra.basis[d - self.summands[k][1]][u].source for k, u in entries]
        actions: Dict[ActionKey, SDM] = {}
        for d in range(lo, hi + 1):
            for t in range(0, hi - d + 1):
                for g in algebra.generators(t):
                    rows: Dict[int, Vector] = {}
                    for r, (k, u) in enumerate(self.basis[d]):
                        e = d - self.summands[k][1]
                        prod = algebra.mul(t, g, e, u)
                        if prod:
                            rows[r] = {self._position[(d + t, k, w)]: c for w, c in prod.items()}
                    if rows:
                        actions[(t, g, d)] = SDM(rows, (len(self.basis[d]), len(self.basis[d + t])), algebra.K)
        if self.summands:
            generated_by = max(s for _, s in self.summands)
            top = None if algebra.finite_top is None else generated_by + algebra.finite_top
            if top is not None and top > hi:
                top = None
        else:
            generated_by, top = lo - 1, lo - 1
        super().__init__(algebra, lo, hi, labels, actions, "free", generated_by, top)

    @property
    def rank(self) -> int:
        return len(self.summands)

    def position(self, d: int, k: int, u: int) -> int:
        return self._position[(d, k, u)]

    def generator_vector(self, k: int) -> Vector:
        i, s = self.summands[k]
        return {self._position[(s, k, self.algebra.idempotents[i])]: self.K.one}

    def components(self, d: int, v: Vector) -> Dict[Tuple[int, int], Any]:
        return {self.basis[d][r]: c for r, c in v.items()}

    def from_components(self, d: int, comps: Dict[Tuple[int, int], Any]) -> Vector:
        return {self._position[(d, k, u)]: c for (k, u), c in comps.items() if c}

    def __repr__(self) -> str:
        parts = " ⊕ ".join(f"Ae_{self.algebra.vertices[i]}(-{s})" for i, s in self.summands) or "0"
        return f"FreeGradedModule({parts})"


class GradedMap:
    """次数为 0 的模同态，按次数保存行约定矩阵"""

    def __init__(self, source: GradedModule, target: GradedModule, matrices: Dict[int, SDM]):
        self.source = source
        self.target = target
        self._matrices = matrices

    def matrix(self, d: int) -> SDM:
        m = self._matrices.get(d)
        if m is None:
            return SDM({}, (self.source.dim(d), self.target.dim(d)), self.source.K)
        return m

    @classmethod
    def from_images(cls, source: FreeGradedModule, target: GradedModule,
                    images: Sequence[Vector]) -> "GradedMap":
        """
        由自由模生成元的像确定映射：f(u·gen_k) = u·z_k。

        Args:
            source: 自由模
            target: 目标模（窗口上界不低于 source）
            images: 第 k 个生成元的像 z_k ∈ target_{s_k}
        Returns:
            GradedMap: 各次数上的矩阵
        """
        if len(images) != source.rank:
            raise BadInput(f"需要 {source.rank} 个生成元的像，得到 {len(images)}")
        A = source.algebra
        hi = min(source.hi, target.hi)
        matrices: Dict[int, SDM] = {}
        for d in range(source.lo, hi + 1):
            rows: Dict[int, Vector] = {}
            for r, (k, u) in enumerate(source.basis[d]):
                s = source.summands[k][1]
                if not images[k] or s < target.lo:
                    continue
                img = apply(images[k], target.element_action(d - s, u, s))
                if img:
                    rows[r] = img
            matrices[d] = SDM(rows, (source.dim(d), target.dim(d)), A.K)
        return cls(source, target, matrices)

    def check_commutes(self) -> bool:
        A = self.source.algebra
        hi = min(self.source.hi, self.target.hi)
        for d in range(self.source.lo, hi + 1):
            for t in range(0, hi - d + 1):
                for g in A.generators(t):
                    lhs = self.source.action(t, g, d).matmul(self.matrix(d + t))
                    rhs = self.matrix(d).matmul(self.target.action(t, g, d))
                    if dict(lhs.sub(rhs)):
                        return False
        return True


def cokernel_module(f: GradedMap, hi: Optional[int] = None) -> GradedModule:
    """
    映射的余核：每个次数取像的 RREF，非主元单位向量构成商空间的基。

    Args:
        f: 次数 0 的映射（目标通常是自由模）
        hi: 窗口上界，默认取目标模的上界
    Returns:
        GradedModule: coker f
    """
    F = f.target
    hi = F.hi if hi is None else hi
    if hi > F.hi:
        raise WindowTooSmall(f"目标模窗口上界 {F.hi} 小于所需的 {hi}")
    K = F.K
    spaces: Dict[int, Subspace] = {}
    keep: Dict[int, List[int]] = {}
    labels: Dict[int, List[int]] = {}
    for d in range(F.lo, hi + 1):
        m = f.matrix(d)
        space = Subspace.span([row for row in m.values() if row], F.dim(d), K)
        spaces[d] = space
        keep[d] = space.complement()
        labels[d] = [F.labels[d][c] for c in keep[d]]

    def project(d: int, v: Vector) -> Vector:
        reduced = spaces[d].reduce(v)
        pos = {c: r for r, c in enumerate(keep[d])}
        return {pos[c]: x for c, x in reduced.items()}

    actions: Dict[ActionKey, SDM] = {}
    A = F.algebra
    for d in range(F.lo, hi + 1):
        for t in range(0, hi - d + 1):
            for g in A.generators(t):
                src = F.action(t, g, d)
                rows: Dict[int, Vector] = {}
                for r, c in enumerate(keep[d]):
                    row = src.get(c)
                    if row:
                        img = project(d + t, row)
                        if img:
                            rows[r] = img
                if rows:
                    actions[(t, g, d)] = SDM(rows, (len(keep[d]), len(keep[d + t])), K)
    module = GradedModule(A, F.lo, hi, labels, actions, "cokernel", F.generated_by)
    logger.debug("cokernel %r", module)
    return module


def kernel(f: GradedMap, hi: Optional[int] = None) -> GradedModule:
    """
    映射的核：每个次数取左零空间的 RREF 基，作用读主元处的坐标。
    """
    M = f.source
    hi = M.hi if hi is None else min(hi, M.hi)
    K = M.K
    spaces: Dict[int, Subspace] = {}
    labels: Dict[int, List[int]] = {}
    for d in range(M.lo, hi + 1):
        space = Subspace.span(left_kernel(f.matrix(d)), M.dim(d), K)
        spaces[d] = space
        labels[d] = [M.labels[d][min(row)] for row in space.rows]
    actions: Dict[ActionKey, SDM] = {}
    A = M.algebra
    for d in range(M.lo, hi + 1):
        for t in range(0, hi - d + 1):
            for g in A.generators(t):
                src = M.action(t, g, d)
                rows: Dict[int, Vector] = {}
                for r, base in enumerate(spaces[d].rows):
                    img = apply(base, src)
                    if not img:
                        continue
                    if not spaces[d + t].contains(img):
                        raise ComputationError(f"核在 {d}→{d + t} 次的作用下不封闭，输入映射不是模同态")
                    rows[r] = spaces[d + t].coordinates(img)
                if rows:
                    actions[(t, g, d)] = SDM(rows, (spaces[d].dim, spaces[d + t].dim), K)
    top = M.finite_top if M.finite_top is not None and M.finite_top <= hi else None
    return GradedModule(A, M.lo, hi, labels, actions, "kernel", None, top)


def truncate_below(M: GradedModule, r: int) -> GradedModule:
    """M_{≥r}：次数 < r 的部分置零，作用随之限制"""
    lo = max(M.lo, r)
    labels = {d: M.labels[d] for d in range(lo, M.hi + 1)}
    actions = {key: m for key, m in M._actions.items() if key[2] >= lo}
    generated_by = None
    if M.generated_by is not None:
        generated_by = max(M.generated_by, r + M.algebra.gmax - 1)
    top = M.finite_top
    if top is not None and top < lo:
        top = lo - 1
    return GradedModule(M.algebra, lo, max(M.hi, lo - 1), labels, actions,
                        "truncation", generated_by, top)


def truncate_above(M: GradedModule, n: int) -> GradedModule:
    """M/M_{≥n}：只保留次数 < n 的部分，结果有限维"""
    hi = min(M.hi, n - 1)
    if hi < n - 1:
        raise WindowTooSmall(f"M/M_≥{n} 需要窗口到 {n - 1} 次，当前上界 {M.hi}")
    labels = {d: M.labels[d] for d in range(M.lo, hi + 1)}
    actions = {key: m for key, m in M._actions.items() if key[2] + key[0] <= hi}
    top = max((d for d in range(M.lo, hi + 1) if M.dim(d)), default=M.lo - 1)
    return GradedModule(M.algebra, M.lo, M.hi, labels, actions, "quotient", M.generated_by, top)


def shift(M: GradedModule, ell: int) -> GradedModule:
    """平移 M(ℓ)_m = M_{m+ℓ}"""
    labels = {d - ell: M.labels[d] for d in range(M.lo, M.hi + 1)}
    actions = {(t, g, d - ell): m for (t, g, d), m in M._actions.items()}
    generated_by = None if M.generated_by is None else M.generated_by - ell
    top = None if M.finite_top is None else M.finite_top - ell
    return GradedModule(M.algebra, M.lo - ell, M.hi - ell, labels, actions,
                        M.origin, generated_by, top)


def matlis_dual(M: GradedModule) -> GradedModule:
    """
    Matlis 对偶 D(M) = gHom_k(M, k)，作为 A^o 上的左模：D_d = (M_{-d})^*，作用取转置。

    Args:
        M: 已证明有限维的模
    Returns:
        GradedModule: A^o 上的模，窗口 [-finite_top, -lo]
    """
    if M.finite_top is None:
        raise NotFiniteDimensional(f"{M!r} 没有有限维证书")
    Ao = M.algebra.opposite()
    top = max(M.finite_top, M.lo - 1)
    lo, hi = -top, -M.lo
    labels = {d: M.labels.get(-d, []) for d in range(lo, hi + 1)}
    actions: Dict[ActionKey, SDM] = {}
    for d in range(lo, hi + 1):
        for t in range(0, min(hi - d, Ao.N) + 1):
            for g in Ao.generators(t):
                if not M.dim(-d) or not M.dim(-d - t):
                    continue
                m = M.element_action(t, g, -d - t).transpose()
                if dict(m):
                    actions[(t, g, d)] = m
    support = [d for d in range(lo, hi + 1) if labels[d]]
    finite = max(support) if support else lo - 1
    return GradedModule(Ao, lo, hi, labels, actions, "dual", None, finite)


def free_module(A: TruncatedAlgebra, hi: Optional[int] = None) -> FreeGradedModule:
    """A 作为左模：⊕_i Ae_i"""
    return FreeGradedModule(A, [(i, 0) for i in range(A.n)], A.N if hi is None else hi)


def vertex_module(A: TruncatedAlgebra, i: int, hi: Optional[int] = None) -> FreeGradedModule:
    return FreeGradedModule(A, [(i, 0)], A.N if hi is None else hi)


def _top_quotient(A: TruncatedAlgebra, vertices: Sequence[int], hi: int) -> GradedModule:
    F = FreeGradedModule(A, [(i, 0) for i in vertices], 0)
    rows: Dict[int, Dict[int, Vector]] = {}
    # J·F = J_0 F_0 ⊕ F_{≥1}
    radical = Subspace(F.dim(0), A.K)
    for rad in A.a0.radical_basis:
        for k in range(F.rank):
            radical.extend(F.act(0, rad, 0, F.generator_vector(k)))
    labels = {0: [F.labels[0][c] for c in radical.complement()]}
    pos = {c: r for r, c in enumerate(radical.complement())}
    actions: Dict[ActionKey, SDM] = {}
    for x in range(A.dim(0)):
        src = F.action(0, x, 0)
        for c in radical.complement():
            row = src.get(c)
            if not row:
                continue
            img = {pos[col]: v for col, v in radical.reduce(row).items()}
            if img:
                rows.setdefault(x, {})[pos[c]] = img
    for x, r in rows.items():
        actions[(0, x, 0)] = SDM(r, (len(labels[0]), len(labels[0])), A.K)
    return GradedModule(A, 0, hi, labels, actions, "top", 0, 0 if labels[0] else -1)


def top_module(A: TruncatedAlgebra, hi: Optional[int] = None) -> GradedModule:
    """平凡模 S = A/J，集中在 0 次"""
    return _top_quotient(A, range(A.n), A.N if hi is None else hi)


def simple_module(A: TruncatedAlgebra, i: int, hi: Optional[int] = None) -> GradedModule:
    """顶点 i 处的单模 S_i = top(Ae_i)"""
    if not 0 <= i < A.n:
        raise BadInput(f"无效的顶点序号：{i}")
    return _top_quotient(A, [i], A.N if hi is None else hi)


def sdeg_ideg(M: GradedModule) -> Tuple[ExtendedDegree, ExtendedDegree]:
    """
    返回 (sdeg M, ideg M)。窗口下方恒为零，所以 ideg 总是精确的；
    sdeg 只有在有限维证书存在时精确，否则为 AtLeast(窗口内最大非零次数)。
    """
    support = M.support()
    if not support:
        if M.finite_top is not None:
            return ExtendedDegree.minus_inf(), ExtendedDegree.plus_inf()
        bound = ExtendedDegree.at_least(M.hi + 1)
        return bound, bound
    ideg = ExtendedDegree.exact(min(support))
    if M.finite_top is not None:
        return ExtendedDegree.exact(max(support)), ideg
    return ExtendedDegree.at_least(max(support)), ideg


def direct_sum(M: GradedModule, N: GradedModule) -> GradedModule:
    """两个同窗口模的直和"""
    if M.algebra is not N.algebra:
        raise BadInput("直和的两个模必须在同一个代数上")
    lo, hi = min(M.lo, N.lo), min(M.hi, N.hi)
    labels = {d: M.labels.get(d, []) + N.labels.get(d, []) for d in range(lo, hi + 1)}
    actions: Dict[ActionKey, SDM] = {}
    A = M.algebra
    for d in range(lo, hi + 1):
        for t in range(0, hi - d + 1):
            for g in A.generators(t):
                rows: Dict[int, Vector] = {}
                off_src, off_tgt = M.dim(d), M.dim(d + t)
                for r, row in M.action(t, g, d).items():
                    rows[r] = dict(row)
                for r, row in N.action(t, g, d).items():
                    rows[off_src + r] = {c + off_tgt: x for c, x in row.items()}
                if rows:
                    actions[(t, g, d)] = SDM(rows, (len(labels[d]), len(labels[d + t])), A.K)
    generated_by = None
    if M.generated_by is not None and N.generated_by is not None:
        generated_by = max(M.generated_by, N.generated_by)
    top = None
    if M.finite_top is not None and N.finite_top is not None:
        top = max(M.finite_top, N.finite_top)
    return GradedModule(A, lo, hi, labels, actions, "sum", generated_by, top)

