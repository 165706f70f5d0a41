"""
Degree-truncated multiplication engine for locally finite N-graded algebras.

Basis elements live in blocks e_i A_d e_j: an element of block (i, j) is a
combination of paths from vertex i to vertex j, and a product u·v is nonzero
only when target(u) = source(v).
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .errors import BadInput, CapExceeded, Degree0Blowup, NotBasic, NotNNGraded, RadicalUnsupported
from .models import Provenance
from .presentation import QuiverPresentation
from .scalar import FieldSpec, Subspace, Vector, add_scaled, matrix, rref

logger = logging.getLogger(__name__)

# (起点顶点, 箭头序号序列)
Word = Tuple[int, Tuple[int, ...]]
# (系数, 生成元次数, 生成元序号, 余下部分的序号或 None)
Factor = Tuple[Any, int, int, Optional[int]]


@dataclass(frozen=True)
class BasisElement:
    """A_d 的一个基元素，位于块 e_source A e_target"""
    source: int
    target: int
    label: str


@dataclass(frozen=True)
class A0Data:
    """零次部分 A_0 的结构：顶点幂等元、Jacobson 根、半单与基本标志"""
    idempotents: Tuple[int, ...]
    radical_basis: Tuple[Vector, ...]
    semisimple: bool
    basic: bool
    r: Tuple[int, ...]

    def to_json(self) -> Dict[str, Any]:
        return {
            "idempotents": list(self.idempotents),
            "radical_dim": len(self.radical_basis),
            "semisimple": self.semisimple,
            "basic": self.basic,
            "r": list(self.r),
        }


@dataclass(frozen=True)
class HilbertTable:
    """各次数 dim A_d 的总数与分块数"""
    vertices: Tuple[str, ...]
    totals: Tuple[int, ...]
    blocks: Dict[Tuple[int, int], Tuple[int, ...]]

    def to_json(self) -> Dict[str, Any]:
        return {
            "totals": list(self.totals),
            "blocks": {
                f"{self.vertices[i]},{self.vertices[j]}": list(dims)
                for (i, j), dims in sorted(self.blocks.items())
            },
        }


class TruncatedAlgebra:
    """
    截断到次数 N 的分次代数：逐次基、分块与全部结构常数。

    构造后不可变；正次数生成元与每个基元素的生成元分解在构造时一并算出，
    模上任意代数元素的作用都由它们递归得到。
    """

    def __init__(self,
                 field_spec: FieldSpec,
                 vertices: Sequence[str],
                 N: int,
                 basis: Sequence[Sequence[BasisElement]],
                 products: Dict[Tuple[int, int, int, int], Vector],
                 idempotents: Sequence[int],
                 provenance: Provenance,
                 generator_bound: int,
                 presentation: Optional[QuiverPresentation] = None,
                 name: str = "",
                 relation_bound: int = 0):
        self.field = field_spec
        self.K = field_spec.domain
        self.vertices = tuple(vertices)
        self.N = N
        self.basis = [tuple(level) for level in basis]
        self._products = products
        self.idempotents = tuple(idempotents)
        self.provenance = provenance
        self.generator_bound = generator_bound
        # 定义关系的最高次数，极小分解用它估计下一步合冲的位置
        self.relation_bound = relation_bound
        self.presentation = presentation
        self.name = name
        self.cache: Dict[Any, Any] = {}
        self._opposite: Optional["TruncatedAlgebra"] = None
        self._a0: Optional[A0Data] = None
        self._gens: Dict[int, List[int]] = {}
        self._factor: Dict[Tuple[int, int], List[Factor]] = {}
        self._derive_generators()
        self.finite_top = self._certify_finite()

    @property
    def n(self) -> int:
        return len(self.vertices)

    def dim(self, d: int) -> int:
        if d < 0 or d > self.N:
            return 0
        return len(self.basis[d])

    def mul(self, a: int, i: int, b: int, j: int) -> Vector:
        """基元素乘积 (A_a 的第 i 个)·(A_b 的第 j 个)，结果为 A_{a+b} 上的稀疏向量"""
        return self._products.get((a, i, b, j), {})

    def multiply(self, a: int, u: Vector, b: int, v: Vector) -> Vector:
        out: Vector = {}
        for i, cu in u.items():
            for j, cv in v.items():
                prod = self._products.get((a, i, b, j))
                if prod:
                    add_scaled(out, prod, cu * cv)
        return out

    def generators(self, t: int) -> List[int]:
        """t 次正生成元（t = 0 时返回 A_0 的全部基元素）"""
        if t == 0:
            return list(range(self.dim(0)))
        return self._gens.get(t, [])

    def factorization(self, t: int, k: int) -> List[Factor]:
        return self._factor[(t, k)]

    @property
    def gmax(self) -> int:
        return max((t for t, gens in self._gens.items() if gens), default=0)

    @property
    def a0(self) -> A0Data:
        if self._a0 is None:
            self._a0 = a0_structure(self)
        return self._a0

    def block_indices(self, d: int, i: int, j: int) -> List[int]:
        return [k for k, b in enumerate(self.basis[d]) if b.source == i and b.target == j]

    def opposite(self) -> "TruncatedAlgebra":
        return opposite(self)

    def min_degree_matrix(self) -> List[List[Optional[int]]]:
        """m(i, j) = min{ℓ | e_i A_ℓ e_j ≠ 0}（窗口内无非零块时为 None）"""
        m: List[List[Optional[int]]] = [[None] * self.n for _ in range(self.n)]
        for d in range(self.N + 1):
            for b in self.basis[d]:
                if m[b.source][b.target] is None:
                    m[b.source][b.target] = d
        return m

    def _derive_generators(self) -> None:
        # D_t = span{g·v : g ∈ G_a, 1 ≤ a < t}；G_t 取 D_t 的标准补
        for t in range(1, self.N + 1):
            n_t = self.dim(t)
            products: List[Tuple[int, int, int]] = []
            rows: List[Vector] = []
            for a in range(1, t):
                for g in self._gens.get(a, []):
                    g_target = self.basis[a][g].target
                    for v, elem in enumerate(self.basis[t - a]):
                        if elem.source != g_target:
                            continue
                        prod = self.mul(a, g, t - a, v)
                        if not prod:
                            continue
                        row = dict(prod)
                        row[n_t + len(products)] = self.K.one
                        rows.append(row)
                        products.append((a, g, v))
            result = rref(matrix(rows, n_t + len(products), self.K)) if rows else None
            left_pivots = {}
            if result is not None:
                for row, p in zip(result.rows, result.pivots):
                    if p < n_t:
                        left_pivots[p] = row
            self._gens[t] = [k for k in range(n_t) if k not in left_pivots]
            for k in self._gens[t]:
                self._factor[(t, k)] = [(self.K.one, t, k, None)]
            for p, row in left_pivots.items():
                terms: List[Factor] = []
                for col, c in sorted(row.items()):
                    if col == p:
                        continue
                    if col < n_t:
                        terms.append((-c, t, col, None))
                    else:
                        a, g, v = products[col - n_t]
                        terms.append((c, a, g, v))
                self._factor[(t, p)] = terms

    def _certify_finite(self) -> Optional[int]:
        # 生成元都在窗口内可见，且出现长度为 gmax 的零段，则 A 有限维
        if self.generator_bound > self.N:
            return None
        run = max(self.gmax, 1)
        last_nonzero = -1
        for d in range(self.N + 1):
            if self.dim(d):
                last_nonzero = d
            elif d - last_nonzero >= run:
                return last_nonzero
        return None

    def __repr__(self) -> str:
        name = self.name or "algebra"
        dims = ",".join(str(self.dim(d)) for d in range(self.N + 1))
        return f"TruncatedAlgebra({name}, {self.field.label}, dims=({dims}))"


def _word_key(presentation: QuiverPresentation, word: Word) -> Tuple:
    start, letters = word
    degree = sum(presentation.arrows[x].degree for x in letters)
    return (degree, len(letters), letters, start)


def _word_end(presentation: QuiverPresentation, word: Word) -> int:
    start, letters = word
    return presentation.arrows[letters[-1]].target if letters else start


def _word_label(presentation: QuiverPresentation, word: Word) -> str:
    start, letters = word
    if not letters:
        return f"e_{presentation.vertices[start]}"
    return "*".join(presentation.arrows[x].name for x in letters)


def _concat(left: Word, middle: Tuple[int, ...], right: Word) -> Word:
    return (left[0], left[1] + middle + right[1])


class _NormalFormBuilder:
    """按次数逐层求正规形：零次闭包 + 各正次数的理想约化"""

    def __init__(self, presentation: QuiverPresentation, N: int, cap: int):
        self.p = presentation
        self.N = N
        self.cap = cap
        self.K = presentation.field.domain
        self.arrows = presentation.arrows
        self.zero_arrows = [x for x, a in enumerate(self.arrows) if a.degree == 0]
        self.pos_arrows = [x for x, a in enumerate(self.arrows) if a.degree > 0]
        self.relations = []
        for rel in presentation.relations:
            terms = [(presentation.field.element(t.coef),
                      tuple(presentation.arrow_index(name) for name in t.path)) for t in rel]
            src, tgt, deg = presentation.path_shape(rel[0].path)
            self.relations.append((src, tgt, deg, terms))
        self.basis_words: List[List[Word]] = []
        self._nf0_table: Dict[Word, Vector] = {}
        self._nf0_limit = 0
        self._cand_nf: List[Dict[Word, Vector]] = []
        self._nf_cache: Dict[Word, Vector] = {}

    # ---- 零次部分 ----

    def _zero_words(self, max_len: int) -> List[Word]:
        layer = [(v, ()) for v in range(len(self.p.vertices))]
        words = list(layer)
        for _ in range(max_len):
            nxt = []
            for w in layer:
                end = _word_end(self.p, w)
                for x in self.zero_arrows:
                    if self.arrows[x].source == end:
                        nxt.append((w[0], w[1] + (x,)))
            layer = nxt
            words.extend(layer)
            if len(words) > self.cap:
                raise Degree0Blowup(f"零次路径数超过上限 {self.cap}，零次子代数可能无限维")
        return words

    def _zero_quotient(self, max_len: int):
        words = self._zero_words(max_len)
        columns = sorted(words, key=lambda w: _word_key(self.p, w), reverse=True)
        col_index = {w: c for c, w in enumerate(columns)}
        by_end: Dict[int, List[Word]] = {}
        by_start: Dict[int, List[Word]] = {}
        for w in words:
            by_end.setdefault(_word_end(self.p, w), []).append(w)
            by_start.setdefault(w[0], []).append(w)
        rows: List[Vector] = []
        for src, tgt, deg, terms in self.relations:
            if deg != 0:
                continue
            rel_len = max(len(path) for _, path in terms)
            for u in by_end.get(src, []):
                for v in by_start.get(tgt, []):
                    if len(u[1]) + rel_len + len(v[1]) > max_len:
                        continue
                    row: Vector = {}
                    for coef, path in terms:
                        add_scaled(row, {col_index[_concat(u, path, v)]: self.K.one}, coef)
                    if row:
                        rows.append(row)
        result = rref(matrix(rows, len(columns), self.K)) if rows else None
        pivot_rows = {} if result is None else dict(zip(result.pivots, result.rows))
        basis = sorted((columns[c] for c in range(len(columns)) if c not in pivot_rows),
                       key=lambda w: _word_key(self.p, w))
        return words, columns, pivot_rows, basis

    def build_degree_zero(self) -> None:
        rel_len = max((max(len(path) for _, path in terms)
                       for _, _, deg, terms in self.relations if deg == 0), default=0)
        length = 0
        while True:
            if length > self.cap:
                raise Degree0Blowup("零次子代数在上限内没有饱和")
            _, columns, pivot_rows, basis = self._zero_quotient(length)
            top_words = [c for c, w in enumerate(columns) if len(w[1]) == length]
            if length > 0 and all(c in pivot_rows for c in top_words):
                stable = length - 1
                check_len = 2 * stable + rel_len + 1
                _, columns2, pivot_rows2, basis2 = self._zero_quotient(check_len)
                if basis2 == basis:
                    break
            length += 1
        basis_index = {w: k for k, w in enumerate(basis)}
        table: Dict[Word, Vector] = {}
        for c, w in enumerate(columns2):
            if c in pivot_rows2:
                row = pivot_rows2[c]
                table[w] = {basis_index[columns2[col]]: -x for col, x in row.items() if col != c}
            else:
                table[w] = {basis_index[w]: self.K.one}
        if len(basis) > self.cap:
            raise Degree0Blowup(f"dim A_0 = {len(basis)} 超过上限 {self.cap}")
        for v in range(len(self.p.vertices)):
            if (v, ()) not in basis_index:
                raise BadInput(f"顶点 {self.p.vertices[v]} 的幂等元在关系下消失")
        self._nf0_table = table
        self._nf0_limit = check_len
        self.basis_words.append(basis)
        logger.debug("A_0 saturated at path length %d with dim %d", stable, len(basis))

    def nf0(self, word: Word) -> Vector:
        if len(word[1]) <= self._nf0_limit:
            return self._nf0_table[word]
        cached = self._nf_cache.get(word)
        if cached is not None:
            return cached
        prefix = (word[0], word[1][:-1])
        last = word[1][-1]
        out: Vector = {}
        for a, c in self.nf0(prefix).items():
            add_scaled(out, self.nf0((self.basis_words[0][a][0], self.basis_words[0][a][1] + (last,))), c)
        self._nf_cache[word] = out
        return out

    # ---- 正次数部分 ----

    def _split(self, word: Word):
        start, letters = word
        for pos, x in enumerate(letters):
            if self.arrows[x].degree > 0:
                prefix = (start, letters[:pos])
                rest = (self.arrows[x].target, letters[pos + 1:])
                return prefix, x, rest
        return None

    def _phi(self, word: Word, d: int, col_index: Dict[Word, int]) -> Vector:
        prefix, x, rest = self._split(word)
        rest_deg = d - self.arrows[x].degree
        out: Vector = {}
        rest_nf = self.nf(rest, rest_deg)
        for a, ca in self.nf0(prefix).items():
            a_word = self.basis_words[0][a]
            for b, cb in rest_nf.items():
                cand = _concat(a_word, (x,), self.basis_words[rest_deg][b])
                add_scaled(out, {col_index[cand]: self.K.one}, ca * cb)
        return out

    def nf(self, word: Word, d: int) -> Vector:
        """任意 d 次路径的正规形（A_d 基上的坐标）"""
        if d == 0:
            return self.nf0(word)
        cached = self._nf_cache.get(word)
        if cached is not None:
            return cached
        prefix, x, rest = self._split(word)
        rest_deg = d - self.arrows[x].degree
        cand_nf = self._cand_nf[d]
        out: Vector = {}
        rest_nf = self.nf(rest, rest_deg)
        for a, ca in self.nf0(prefix).items():
            a_word = self.basis_words[0][a]
            for b, cb in rest_nf.items():
                cand = _concat(a_word, (x,), self.basis_words[rest_deg][b])
                add_scaled(out, cand_nf[cand], ca * cb)
        self._nf_cache[word] = out
        return out

    def build_degree(self, d: int) -> None:
        zero_basis = self.basis_words[0]
        candidates: List[Word] = []
        for a_word in zero_basis:
            end = _word_end(self.p, a_word)
            for x in self.pos_arrows:
                arrow = self.arrows[x]
                if arrow.source != end or arrow.degree > d:
                    continue
                for b_word in self.basis_words[d - arrow.degree]:
                    if b_word[0] == arrow.target:
                        candidates.append(_concat(a_word, (x,), b_word))
        columns = sorted(candidates, key=lambda w: _word_key(self.p, w), reverse=True)
        col_index = {w: c for c, w in enumerate(columns)}
        rows: List[Vector] = []
        for src, tgt, deg, terms in self.relations:
            if deg == 0 or deg > d:
                continue
            for u in zero_basis:
                if _word_end(self.p, u) != src:
                    continue
                for v in self.basis_words[d - deg]:
                    if v[0] != tgt:
                        continue
                    row: Vector = {}
                    for coef, path in terms:
                        add_scaled(row, self._phi(_concat(u, path, v), d, col_index), coef)
                    if row:
                        rows.append(row)
        result = rref(matrix(rows, len(columns), self.K)) if rows else None
        pivot_rows = {} if result is None else dict(zip(result.pivots, result.rows))
        basis = sorted((columns[c] for c in range(len(columns)) if c not in pivot_rows),
                       key=lambda w: _word_key(self.p, w))
        if len(basis) > self.cap:
            raise CapExceeded(f"dim A_{d} = {len(basis)} 超过上限 {self.cap}")
        basis_index = {w: k for k, w in enumerate(basis)}
        cand_nf: Dict[Word, Vector] = {}
        for c, w in enumerate(columns):
            if c in pivot_rows:
                row = pivot_rows[c]
                cand_nf[w] = {basis_index[columns[col]]: -x for col, x in row.items() if col != c}
            else:
                cand_nf[w] = {basis_index[w]: self.K.one}
        self.basis_words.append(basis)
        self._cand_nf.append(cand_nf)
        logger.debug("degree %d: %d candidates, %d relations, dim %d",
                     d, len(columns), len(rows), len(basis))

    def build(self) -> None:
        self.build_degree_zero()
        self._cand_nf.append({})
        for d in range(1, self.N + 1):
            self.build_degree(d)

    def structure_constants(self) -> Dict[Tuple[int, int, int, int], Vector]:
        products: Dict[Tuple[int, int, int, int], Vector] = {}
        for a in range(self.N + 1):
            for b in range(self.N + 1 - a):
                for i, u in enumerate(self.basis_words[a]):
                    end = _word_end(self.p, u)
                    for j, v in enumerate(self.basis_words[b]):
                        if v[0] != end:
                            continue
                        prod = self.nf(_concat(u, (), v), a + b)
                        if prod:
                            products[(a, i, b, j)] = dict(prod)
        return products


def build_truncated(presentation: QuiverPresentation, N: int, cap: int = 5000,
                    name: str = "") -> TruncatedAlgebra:
    """
    由箭图表示构造截断代数：零次闭包后逐次用理想的行约化得到正规形基。

    Args:
        presentation: 已校验的箭图表示
        N: 截断次数
        cap: 每个 A_d 的维数上限
        name: 代数名称（用于报告）
    Returns:
        TruncatedAlgebra: 带全部结构常数的截断代数
    """
    if N < 0 or cap <= 0:
        raise BadInput(f"需要 N ≥ 0 且 cap > 0，得到 N={N}, cap={cap}")
    builder = _NormalFormBuilder(presentation, N, cap)
    builder.build()
    basis = [
        [BasisElement(w[0], _word_end(presentation, w), _word_label(presentation, w)) for w in words]
        for words in builder.basis_words
    ]
    zero_index = {w: k for k, w in enumerate(builder.basis_words[0])}
    idempotents = [zero_index[(v, ())] for v in range(len(presentation.vertices))]
    algebra = TruncatedAlgebra(
        presentation.field, presentation.vertices, N, basis,
        builder.structure_constants(), idempotents, Provenance.PRESENTATION,
        generator_bound=presentation.max_arrow_degree, presentation=presentation, name=name,
        relation_bound=presentation.max_relation_degree,
    )
    logger.debug("built %r", algebra)
    return algebra


def opposite(A: TruncatedAlgebra) -> TruncatedAlgebra:
    """
    反代数 A^o：基不变，块 (i, j) 变为 (j, i)，乘法 a∘b = b·a。

    结果缓存在 A 上，并与 A 互为反代数，因此 opposite(opposite(A)) 就是 A。
    """
    if A._opposite is not None:
        return A._opposite
    basis = [[BasisElement(b.target, b.source, b.label) for b in level] for level in A.basis]
    products = {(b, j, a, i): vec for (a, i, b, j), vec in A._products.items()}
    name = f"{A.name}^o" if A.name else ""
    Ao = TruncatedAlgebra(A.field, A.vertices, A.N, basis, products, A.idempotents,
                          Provenance.TABLE, A.generator_bound, name=name,
                          relation_bound=A.relation_bound)
    Ao._opposite = A
    A._opposite = Ao
    return Ao


def a0_structure(A: TruncatedAlgebra) -> A0Data:
    """
    计算 A_0 的 Jacobson 根（迹形式核）与半单、基本标志。

    Args:
        A: 截断代数
    Returns:
        A0Data: 幂等元、根基与标志
    """
    n0 = A.dim(0)
    n = A.n
    if n0 == n:
        return A0Data(A.idempotents, (), True, True, (1,) * n)
    p = A.field.characteristic
    if p and p <= n0:
        raise RadicalUnsupported(f"特征 {p} 不大于 dim A_0 = {n0}，迹形式方法不适用")
    K = A.K
    traces = []
    for c in range(n0):
        tr = K.zero
        for y in range(n0):
            tr += A.mul(0, c, 0, y).get(y, K.zero)
        traces.append(tr)
    form_rows: List[Vector] = []
    for a in range(n0):
        row: Vector = {}
        for b in range(n0):
            val = K.zero
            for c, x in A.mul(0, a, 0, b).items():
                val += x * traces[c]
            if val:
                row[b] = val
        form_rows.append(row)
    radical = rref(matrix(form_rows, n0, K)).kernel_basis
    quotient: Dict[Tuple[int, int], int] = {}
    for b in A.basis[0]:
        quotient[(b.source, b.target)] = quotient.get((b.source, b.target), 0) + 1
    for v in radical:
        b = A.basis[0][min(v)]
        quotient[(b.source, b.target)] -= 1
    r = tuple(quotient.get((i, i), 0) for i in range(n))
    off_diagonal = any(dim for (i, j), dim in quotient.items() if i != j)
    basic = not off_diagonal and all(x == 1 for x in r)
    return A0Data(A.idempotents, tuple(radical), not radical, basic, r)


def endo_twist(A: TruncatedAlgebra, p: Sequence[int]) -> TruncatedAlgebra:
    """
    平移自同态代数 B = gEnd_A(⊕ Ae_i(p_i))：B_d 的块 (i, j) 为 e_i A_{d+p_j-p_i} e_j。

    B 的乘法沿用 A 的块乘法，所以 p = 0 时 B = A。

    Args:
        A: A_0 分裂基本半单的截断代数
        p: 每个顶点的平移量
    Returns:
        TruncatedAlgebra: 截断到 N - max(p_j - p_i) 的 B
    """
    a0 = A.a0
    if not (a0.semisimple and a0.basic and A.dim(0) == A.n):
        raise NotBasic("endo_twist 需要 A_0 = k^n")
    if len(p) != A.n:
        raise BadInput(f"平移向量长度 {len(p)} 与顶点数 {A.n} 不一致")
    p = [int(x) for x in p]
    spread = max(p[j] - p[i] for i in range(A.n) for j in range(A.n))
    N_B = A.N - spread
    if N_B < 0:
        raise BadInput(f"平移跨度 {spread} 超过截断次数 {A.N}")
    for e in range(A.N + 1):
        for b in A.basis[e]:
            if e + p[b.source] - p[b.target] < 0:
                raise NotNNGraded(
                    f"块 ({A.vertices[b.source]}, {A.vertices[b.target]}) 的 {e} 次元素落在负次数")
    basis: List[List[BasisElement]] = [[] for _ in range(N_B + 1)]
    index: Dict[Tuple[int, int], Tuple[int, int]] = {}
    for e in range(A.N + 1):
        for k, b in enumerate(A.basis[e]):
            d = e + p[b.source] - p[b.target]
            if d <= N_B:
                index[(e, k)] = (d, len(basis[d]))
                basis[d].append(BasisElement(b.source, b.target, b.label if d == e else f"{b.label}<{e}>"))
    back = {v: k for k, v in index.items()}
    products: Dict[Tuple[int, int, int, int], Vector] = {}
    for d1 in range(N_B + 1):
        for i1, b1 in enumerate(basis[d1]):
            e1, k1 = back[(d1, i1)]
            for d2 in range(N_B + 1 - d1):
                for i2, b2 in enumerate(basis[d2]):
                    if b2.source != b1.target:
                        continue
                    e2, k2 = back[(d2, i2)]
                    prod = A.mul(e1, k1, e2, k2)
                    if prod:
                        products[(d1, i1, d2, i2)] = {index[(e1 + e2, l)][1]: c for l, c in prod.items()}
    idempotents = [index[(0, k)][1] for k in A.idempotents]
    name = f"{A.name}~{tuple(p)}" if A.name else ""
    return TruncatedAlgebra(A.field, A.vertices, N_B, basis, products, idempotents,
                            Provenance.TABLE, A.generator_bound + spread, name=name,
                            relation_bound=A.relation_bound + spread)


def hilbert(A: TruncatedAlgebra) -> HilbertTable:
    """读取缓存的分次维数（总数与分块）"""
    blocks: Dict[Tuple[int, int], List[int]] = {
        (i, j): [0] * (A.N + 1) for i in range(A.n) for j in range(A.n)
    }
    for d in range(A.N + 1):
        for b in A.basis[d]:
            blocks[(b.source, b.target)][d] += 1
    return HilbertTable(A.vertices, tuple(A.dim(d) for d in range(A.N + 1)),
                        {key: tuple(dims) for key, dims in blocks.items()})
