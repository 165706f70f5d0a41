"""
Seeded random modules and the theorem suite: every check compares two
extended degrees and gets a three-valued verdict, censored data never
fails a check.
"""

import logging
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

from .algebra import TruncatedAlgebra
from .errors import BadInput, GradregError
from .file_handler import FileHandler
from .gmod import (FreeGradedModule, GradedMap, GradedModule, cokernel_module, free_module,
                   kernel, sdeg_ideg, shift, top_module, truncate_below)
from .homology import ext_table, tor_table
from .models import (Bounds, ExtendedDegree, Linearity, RegValue, RegularityReport, Verdict,
                     compare, degree_max)
from .regularity import regs_of_module, torreg_from_betti
from .resolve import ResolutionTruncation, betti, is_linear, minimal_resolution
from .scalar import Vector

logger = logging.getLogger(__name__)

ALL_CHECKS = tuple(f"C{k}" for k in range(1, 14))

# 每个检查需要的代数标志；"semisimple" 由 A_0 计算得到，其余来自目录断言
CHECK_REQUIRES: Dict[str, Tuple[str, ...]] = {
    "C1": ("semisimple",),
    "C2": (),
    "C3": (),
    "C4": ("noetherian", "bdc", "semisimple"),
    "C5": ("noetherian", "bdc", "semisimple"),
    "C6": ("noetherian", "bdc"),
    "C7": (),
    "C8": (),
    "C9": (),
    "C10": (),
    "C11": ("noetherian", "bdc", "as_regular"),
    "C12": ("noetherian", "bdc", "semisimple"),
    "C13": ("noetherian", "bdc", "semisimple"),
}

REG_NAMES = ("CMreg", "cmreg", "Torreg", "torreg", "Extreg", "extreg", "Exreg", "exreg")

# 第二个模（C8/C9 中的 Y）的种子偏移
PARTNER_OFFSET = 7919


@dataclass(frozen=True)
class RandomModuleParams:
    """随机模的生成元个数/次数范围与关系个数/相对次数范围（闭区间）"""
    generators: Tuple[int, int] = (1, 2)
    generator_degrees: Tuple[int, int] = (0, 1)
    relations: Tuple[int, int] = (1, 3)
    relation_span: Tuple[int, int] = (1, 2)
    density: float = 0.7

    def validate(self, A: TruncatedAlgebra) -> None:
        for name in ("generators", "generator_degrees", "relations", "relation_span"):
            lo, hi = getattr(self, name)
            if lo < 0 or hi < lo:
                raise BadInput(f"随机模参数 {name} 不是有效区间：({lo}, {hi})")
        if self.generator_degrees[1] + self.relation_span[1] > A.N:
            raise BadInput(f"关系次数超出截断 N={A.N}")
        if not 0 < self.density <= 1:
            raise BadInput(f"density 必须在 (0, 1] 内：{self.density}")


def _random_vector(F: FreeGradedModule, d: int, vertex: int, rng: random.Random, density: float) -> Vector:
    # 只取标签为 vertex 的坐标，使向量落在 e_vertex F_d 中
    coords = [c for c, label in enumerate(F.labels.get(d, [])) if label == vertex]
    if not coords:
        return {}
    field_spec = F.algebra.field
    v = {c: field_spec.random_element(rng, nonzero=True) for c in coords if rng.random() < density}
    if not v:
        v[rng.choice(coords)] = field_spec.random_element(rng, nonzero=True)
    return v


def random_module(A: TruncatedAlgebra, seed: int, params: Optional[RandomModuleParams] = None,
                  hi: Optional[int] = None) -> GradedModule:
    """
    随机有限表示模：F_1 → F_0 的余核，F_0、F_1 的生成元与映射都由种子决定。

    Args:
        A: 截断代数
        seed: 随机种子
        params: 生成元与关系的个数、次数范围
        hi: 窗口上界，默认 A.N
    Returns:
        GradedModule: coker(F_1 → F_0)
    """
    params = params or RandomModuleParams()
    params.validate(A)
    rng = random.Random(f"{A.name}:{seed}")
    n_gens = rng.randint(*params.generators)
    gens = sorted((rng.randrange(A.n), rng.randint(*params.generator_degrees)) for _ in range(n_gens))
    hi = A.N if hi is None else hi
    F0 = FreeGradedModule(A, gens, hi)
    rels: List[Tuple[int, int]] = []
    if gens:
        g_lo, g_hi = min(s for _, s in gens), max(s for _, s in gens)
        for _ in range(rng.randint(*params.relations)):
            rels.append((rng.randrange(A.n), rng.randint(g_lo + params.relation_span[0],
                                                          g_hi + params.relation_span[1])))
    rels.sort()
    F1 = FreeGradedModule(A, rels, hi)
    images = [_random_vector(F0, s, i, rng, params.density) for i, s in rels]
    M = cokernel_module(GradedMap.from_images(F1, F0, images))
    M.origin = f"random:{seed}"
    logger.debug("random module seed=%d gens=%s rels=%s dims=%s", seed, gens, rels, M.dims())
    return M


@dataclass
class SuiteConfig:
    """
    一次定理检查的全部输入；相同的配置产生逐字节相同的报告。
    """
    seed: int = 42
    instances: int = 25
    bounds: Bounds = field(default_factory=Bounds)
    checks: Tuple[str, ...] = ALL_CHECKS
    flags: FrozenSet[str] = frozenset()
    params: RandomModuleParams = field(default_factory=RandomModuleParams)
    algebra_name: str = ""

    def __post_init__(self):
        unknown = [c for c in self.checks if c not in CHECK_REQUIRES]
        if unknown:
            raise BadInput(f"未知的检查：{', '.join(unknown)}")
        if self.instances < 0:
            raise BadInput(f"instances 必须非负：{self.instances}")

    def instance_seed(self, k: int) -> int:
        return self.seed * 10007 + k

    def to_json(self) -> Dict[str, Any]:
        return {"seed": self.seed, "instances": self.instances, "checks": list(self.checks),
                "flags": sorted(self.flags), "bounds": self.bounds.to_json()}


@dataclass
class CheckOutcome:
    """单个比较：lhs op rhs 的判定，附带实例种子与见证"""
    check: str
    relation: str
    seed: Optional[int]
    verdict: Verdict
    lhs: Optional[ExtendedDegree] = None
    rhs: Optional[ExtendedDegree] = None
    witness: Optional[Any] = None
    reason: str = ""

    def sort_key(self) -> Tuple[int, int, str]:
        return int(self.check[1:]), -1 if self.seed is None else self.seed, self.relation

    def to_json(self) -> Dict[str, Any]:
        def degree(v: Optional[ExtendedDegree]) -> Dict[str, Any]:
            return {"kind": "unknown"} if v is None else v.to_json()

        data: Dict[str, Any] = {"check": self.check, "relation": self.relation, "seed": self.seed,
                                "verdict": self.verdict.value, "lhs": degree(self.lhs),
                                "rhs": degree(self.rhs)}
        if self.witness is not None:
            data["witness"] = self.witness
        if self.reason:
            data["reason"] = self.reason
        if self.verdict == Verdict.FAILS:
            data["reproducer"] = {"seed": self.seed, "check": self.check}
        return data


@dataclass
class SuiteReport:
    config: SuiteConfig
    outcomes: List[CheckOutcome]

    @property
    def failed(self) -> bool:
        return any(o.verdict == Verdict.FAILS for o in self.outcomes)

    def summary(self) -> Dict[str, Dict[str, int]]:
        counts: Dict[str, Dict[str, int]] = {}
        for o in self.outcomes:
            per = counts.setdefault(o.check, {v.value: 0 for v in Verdict})
            per[o.verdict.value] += 1
        return counts

    def body(self) -> Dict[str, Any]:
        return {"config": self.config.to_json(), "summary": self.summary(),
                "outcomes": [o.to_json() for o in self.outcomes]}

    def digest(self) -> str:
        return FileHandler.digest(self.body())

    def to_json(self) -> Dict[str, Any]:
        data = self.body()
        data["digest"] = self.digest()
        return data


def _outcome(check: str, relation: str, seed: Optional[int], lhs: Optional[ExtendedDegree],
             op: str, rhs: Optional[ExtendedDegree], witness: Any = None) -> CheckOutcome:
    verdict = compare(lhs, op, rhs)
    return CheckOutcome(check, relation, seed, verdict, lhs, rhs,
                        witness if verdict != Verdict.INCONCLUSIVE else None)


def _value(v: RegValue) -> Optional[ExtendedDegree]:
    return v.value


def _plus(a: Optional[ExtendedDegree], b: Any) -> Optional[ExtendedDegree]:
    if a is None or b is None:
        return None
    return a + b


def _finite(v: Optional[ExtendedDegree]) -> bool:
    return v is not None and v.is_finite


class _Instance:
    """一个种子对应的随机模及其按需计算的分解与正则度"""

    def __init__(self, suite: "_Suite", seed: int):
        self.suite = suite
        self.seed = seed

    @cached_property
    def module(self) -> GradedModule:
        return random_module(self.suite.A, self.seed, self.suite.cfg.params)

    @cached_property
    def resolution(self) -> ResolutionTruncation:
        b = self.suite.bounds
        return minimal_resolution(self.module, b.H + 1, b.margin, b.threads)

    @cached_property
    def report(self) -> RegularityReport:
        return regs_of_module(self.module, self.suite.bounds, resolution=self.resolution)

    @cached_property
    def ideg(self) -> ExtendedDegree:
        return sdeg_ideg(self.module)[1]

    @cached_property
    def partner(self) -> GradedModule:
        return random_module(self.suite.A, self.seed + PARTNER_OFFSET, self.suite.cfg.params)

    @cached_property
    def right_partner(self) -> GradedModule:
        return random_module(self.suite.A.opposite(), self.seed + PARTNER_OFFSET, self.suite.cfg.params)

    def reg(self, name: str) -> Optional[ExtendedDegree]:
        return self.report.degree(name)


class _Suite:
    """代数层面的量（CMreg(A)、Torreg(S) 等）只算一次，供所有实例共用"""

    def __init__(self, A: TruncatedAlgebra, cfg: SuiteConfig):
        self.A = A
        self.cfg = cfg
        self.bounds = cfg.bounds
        self.flags = set(cfg.flags)
        if A.a0.semisimple:
            self.flags.add("semisimple")

    @cached_property
    def algebra_report(self) -> RegularityReport:
        return regs_of_module(free_module(self.A), self.bounds)

    @cached_property
    def simple_resolution(self) -> ResolutionTruncation:
        b = self.bounds
        return minimal_resolution(top_module(self.A), b.H + 1, b.margin, b.threads)

    @cached_property
    def torreg_S(self) -> Tuple[RegValue, RegValue]:
        return torreg_from_betti(betti(self.simple_resolution), self.A.a0.semisimple)

    @cached_property
    def extreg_S(self) -> Optional[ExtendedDegree]:
        b = self.bounds
        S = top_module(self.A)
        return ext_table(S, S, b.H, b.margin, resolution=self.simple_resolution,
                         threads=b.threads).extremes().sdeg

    def A_reg(self, name: str) -> Optional[ExtendedDegree]:
        return self.algebra_report.degree(name)

    @property
    def ASreg(self) -> Optional[ExtendedDegree]:
        return _plus(self.A_reg("CMreg"), self.torreg_S[0].value)

    @property
    def asreg(self) -> Optional[ExtendedDegree]:
        return _plus(self.A_reg("cmreg"), self.torreg_S[1].value)

    def missing(self, check: str) -> List[str]:
        return [f for f in CHECK_REQUIRES[check] if f not in self.flags]

    # 每个检查返回该实例上的全部比较

    def check_C1(self, x: _Instance) -> List[CheckOutcome]:
        return [_outcome("C1", "extreg(X) == -ideg(X)", x.seed, x.reg("extreg"), "==", -x.ideg)]

    def check_C2(self, x: _Instance) -> List[CheckOutcome]:
        return [_outcome("C2", "extreg(X) >= -ideg(X)", x.seed, x.reg("extreg"), ">=", -x.ideg)]

    def check_C3(self, x: _Instance) -> List[CheckOutcome]:
        b = self.bounds
        table = ext_table(x.module, free_module(self.A), b.H, b.margin,
                          resolution=x.resolution, threads=b.threads)
        ideg = table.extremes().ideg
        rhs = None if ideg is None else -ideg
        out = [_outcome("C3", "Extreg(X) >= -ideg(RHom(X,A))", x.seed, x.reg("Extreg"), ">=", rhs)]
        if _finite(x.reg("pdim")):
            out.append(_outcome("C3", "Extreg(X) == -ideg(RHom(X,A)) [pdim finite]", x.seed,
                                x.reg("Extreg"), "==", rhs))
        return out

    def check_C4(self, x: _Instance) -> List[CheckOutcome]:
        return [
            _outcome("C4", "CMreg(X) == Exreg(X)", x.seed, x.reg("CMreg"), "==", x.reg("Exreg")),
            _outcome("C4", "Exreg(X) >= CMreg(X)", x.seed, x.reg("Exreg"), ">=", x.reg("CMreg")),
        ]

    def check_C5(self, x: _Instance) -> List[CheckOutcome]:
        cm_A, ex_A = self.A_reg("CMreg"), self.A_reg("exreg")
        tor_S = self.torreg_S[0].value
        out = [
            _outcome("C5", "CMreg(X) <= Torreg(X) + CMreg(A)", x.seed,
                     x.reg("CMreg"), "<=", _plus(x.reg("Torreg"), cm_A)),
            _outcome("C5", "Torreg(X) <= CMreg(X) + Torreg(S)", x.seed,
                     x.reg("Torreg"), "<=", _plus(x.reg("CMreg"), tor_S)),
            _outcome("C5", "ASreg(A) >= 0", x.seed, self.ASreg, ">=", ExtendedDegree.exact(0)),
            _outcome("C5", "CMreg(A) + exreg(A) >= 0", x.seed, _plus(cm_A, ex_A), ">=",
                     ExtendedDegree.exact(0)),
        ]
        if _finite(x.reg("pdim")):
            out.append(_outcome("C5", "Torreg(X) <= CMreg(X) + exreg(A) [pdim finite]", x.seed,
                                x.reg("Torreg"), "<=", _plus(x.reg("CMreg"), ex_A)))
        return out

    def check_C6(self, x: _Instance) -> List[CheckOutcome]:
        r, p = x.reg("CMreg"), self.torreg_S[0].value
        if not (_finite(r) and _finite(p)):
            return [CheckOutcome("C6", "Torreg(M>=r(r+p)) <= 0", x.seed, Verdict.INCONCLUSIVE,
                                 r, p, reason="CMreg(X) or Torreg(S) not exact")]
        T = shift(truncate_below(x.module, r.value), r.value + p.value)
        b = self.bounds
        B = betti(minimal_resolution(T, b.H + 1, b.margin, b.threads))
        tor_T = torreg_from_betti(B, self.A.a0.semisimple)[0].value
        zero = ExtendedDegree.exact(0)
        witness = {"r": r.value, "p": p.value}
        out = [_outcome("C6", "Torreg(M>=r(r+p)) <= 0", x.seed, tor_T, "<=", zero, witness)]
        if "semisimple" in self.flags and p.value == 0:
            out.append(_outcome("C6", "Torreg(M>=r(r+p)) == 0", x.seed, tor_T, "==", zero, witness))
            linear = is_linear(B)
            verdict = {Linearity.LINEAR: Verdict.HOLDS, Linearity.NOT_LINEAR: Verdict.FAILS,
                       Linearity.CENSORED: Verdict.INCONCLUSIVE}[linear]
            out.append(CheckOutcome("C6", "M>=r(r+p) has a linear resolution", x.seed, verdict,
                                    witness=witness if verdict == Verdict.HOLDS else None))
        return out

    def check_C7(self, x: _Instance) -> List[CheckOutcome]:
        # 0 → K → F → M → 0，K 为增广映射的核
        F = x.resolution.free(0)
        K = kernel(x.resolution.augmentation())
        if K.certified_zero:
            return [CheckOutcome("C7", "short exact sequence", x.seed, Verdict.SKIPPED_DEGENERATE,
                                 reason="X is free")]
        b = self.bounds
        rep_K = regs_of_module(K, b)
        rep_F = regs_of_module(F, b)
        out = []
        for name in REG_NAMES:
            k, f, m = rep_K.degree(name), rep_F.degree(name), x.reg(name)
            out.append(_outcome("C7", f"{name}(F) <= max({name}(K), {name}(X))", x.seed,
                                f, "<=", degree_max(k, m)))
            out.append(_outcome("C7", f"{name}(K) <= max({name}(F), {name}(X)+1)", x.seed,
                                k, "<=", degree_max(f, _plus(m, 1))))
            out.append(_outcome("C7", f"{name}(X) <= max({name}(K)-1, {name}(F))", x.seed,
                                m, "<=", degree_max(_plus(k, -1), f)))
        return out

    def _tor_ideg(self, x: _Instance) -> Optional[ExtendedDegree]:
        b = self.bounds
        table = tor_table(x.right_partner, x.module, b.H, b.margin,
                          resolution=x.resolution, threads=b.threads)
        return table.extremes().ideg

    def check_C8(self, x: _Instance) -> List[CheckOutcome]:
        Y = x.right_partner
        if Y.certified_zero:
            return [CheckOutcome("C8", "ideg(Y ⊗ X)", x.seed, Verdict.SKIPPED_DEGENERATE,
                                 reason="Y is zero")]
        ideg_Y = sdeg_ideg(Y)[1]
        expected = _plus(x.ideg, ideg_Y)
        lhs = self._tor_ideg(x)
        if _uniform_vertices(Y):
            return [_outcome("C8", "ideg(Y ⊗ X) == ideg(X) + ideg(Y)", x.seed, lhs, "==", expected)]
        return [_outcome("C8", "ideg(Y ⊗ X) >= ideg(X) + ideg(Y)", x.seed, lhs, ">=", expected)]

    def check_C9(self, x: _Instance) -> List[CheckOutcome]:
        b = self.bounds
        out = []
        Y = x.partner
        if not Y.certified_zero:
            ideg = ext_table(x.module, Y, b.H, b.margin, resolution=x.resolution,
                             threads=b.threads).extremes().ideg
            out.append(_outcome("C9", "-ideg(RHom(X,Y)) <= Extreg(X) - ideg(Y)", x.seed,
                                None if ideg is None else -ideg, "<=",
                                _plus(x.reg("Extreg"), -sdeg_ideg(Y)[1])))
        Yo = x.right_partner
        if not Yo.certified_zero:
            ideg = self._tor_ideg(x)
            out.append(_outcome("C9", "-ideg(Y ⊗ X) <= extreg(X) - ideg(Y)", x.seed,
                                None if ideg is None else -ideg, "<=",
                                _plus(x.reg("extreg"), -sdeg_ideg(Yo)[1])))
        if not out:
            out.append(CheckOutcome("C9", "partner modules", x.seed, Verdict.SKIPPED_DEGENERATE,
                                    reason="Y is zero"))
        return out

    def check_C10(self, x: _Instance) -> List[CheckOutcome]:
        # p = -ideg(X)：找次数为 α - p、落在 ker d^{-α} 内的生成元
        if not x.ideg.is_finite:
            return [CheckOutcome("C10", "cocycle generator in ker d", x.seed, Verdict.INCONCLUSIVE,
                                 reason="ideg(X) outside the window")]
        p = -x.ideg.value
        R = x.resolution
        # 极小分解中 α ≥ 1 的生成元在 d 下的像非零，只有 P^0 的生成元落在 ker d 里
        for k, (i, s) in enumerate(R.steps[0].summands):
            if s == -p:
                return [CheckOutcome("C10", "cocycle generator in ker d", x.seed, Verdict.HOLDS,
                                     ExtendedDegree.exact(s), ExtendedDegree.exact(-p),
                                     witness={"alpha": 0, "summand": k, "vertex": self.A.vertices[i]})]
        verdict = Verdict.FAILS if R.known_generators(0) else Verdict.INCONCLUSIVE
        return [CheckOutcome("C10", "cocycle generator in ker d", x.seed, verdict,
                             rhs=ExtendedDegree.exact(-p))]

    def check_C11(self, x: _Instance) -> List[CheckOutcome]:
        return [_outcome("C11", "CMreg(X) == Torreg(X) + CMreg(A)", x.seed, x.reg("CMreg"), "==",
                         _plus(x.reg("Torreg"), self.A_reg("CMreg")))]

    def check_C12(self, x: _Instance) -> List[CheckOutcome]:
        return [
            _outcome("C12", "extreg(X) <= cmreg(X) + extreg(S)", x.seed, x.reg("extreg"), "<=",
                     _plus(x.reg("cmreg"), self.extreg_S)),
            _outcome("C12", "cmreg(X) <= extreg(X) + cmreg(A)", x.seed, x.reg("cmreg"), "<=",
                     _plus(x.reg("extreg"), self.A_reg("cmreg"))),
            _outcome("C12", "asreg(A) >= 0", x.seed, self.asreg, ">=", ExtendedDegree.exact(0)),
        ]

    def check_C13(self, x: _Instance) -> List[CheckOutcome]:
        pdim = x.reg("pdim")
        relation = "pdim(X) + depth(X) == depth(A)"
        if pdim is not None and pdim == ExtendedDegree.plus_inf():
            return [CheckOutcome("C13", relation, x.seed, Verdict.SKIPPED, pdim,
                                 reason="infinite pdim")]
        return [_outcome("C13", relation, x.seed, _plus(pdim, x.reg("depth")), "==",
                         self.A_reg("depth"))]


def _uniform_vertices(Y: GradedModule) -> bool:
    """ideg(Ye_i) = ideg(Y) 对每个顶点 i 成立"""
    support = Y.support()
    if not support:
        return False
    ideg = min(support)
    return all(any(label == i for label in Y.labels[ideg]) for i in range(Y.algebra.n))


def run_theorem_suite(A: TruncatedAlgebra, cfg: SuiteConfig,
                      progress: Optional[Callable[[str, int], None]] = None) -> SuiteReport:
    """
    在 cfg.instances 个随机模上执行所选检查。

    不满足假设的检查整体记为 skipped；单个实例上的计算错误记为带原因的 skipped，不向外抛出。
    结果按 (检查编号, 种子) 排序。

    Args:
        A: 截断代数
        cfg: 检查配置
        progress: 每完成一个 (检查, 种子) 时的回调
    Returns:
        SuiteReport: 全部比较结果
    """
    suite = _Suite(A, cfg)
    outcomes: List[CheckOutcome] = []
    instances = [_Instance(suite, cfg.instance_seed(k)) for k in range(cfg.instances)]
    for check in sorted(cfg.checks, key=lambda c: int(c[1:])):
        missing = suite.missing(check)
        if missing:
            outcomes.append(CheckOutcome(check, "hypotheses", None, Verdict.SKIPPED,
                                         reason=f"requires {', '.join(missing)}"))
            continue
        run: Callable[[_Instance], List[CheckOutcome]] = getattr(suite, f"check_{check}")
        for x in instances:
            try:
                if x.module.certified_zero:
                    outcomes.append(CheckOutcome(check, "zero module", x.seed,
                                                 Verdict.SKIPPED_DEGENERATE))
                else:
                    outcomes.extend(run(x))
            except GradregError as e:
                logger.warning("%s seed=%d skipped: %s", check, x.seed, e)
                outcomes.append(CheckOutcome(check, "error", x.seed, Verdict.SKIPPED, reason=str(e)))
            if progress is not None:
                progress(check, x.seed)
    outcomes.sort(key=CheckOutcome.sort_key)
    report = SuiteReport(cfg, outcomes)
    if report.failed:
        logger.warning("theorem suite on %s: %d failing comparisons", cfg.algebra_name or A.name,
                       sum(o.verdict == Verdict.FAILS for o in outcomes))
    return report


def outcome_rows(outcomes: Sequence[CheckOutcome]) -> List[Tuple[str, str, str, str, str, str]]:
    """供控制台表格使用的行"""
    return [(o.check, "-" if o.seed is None else str(o.seed), o.relation,
             "?" if o.lhs is None else str(o.lhs), "?" if o.rhs is None else str(o.rhs),
             o.verdict.value) for o in outcomes]
