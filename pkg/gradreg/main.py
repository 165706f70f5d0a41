"""
Command-line entry point and application controller.
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel

from . import __version__
from .algebra import TruncatedAlgebra, build_truncated, endo_twist, hilbert
from .catalog import CatalogEntry, get_entry, load_catalog
from .config import create_bounds_from_config
from .errors import BadInput, ComputationError, GradregError, InputError, MissingGorensteinData
from .file_handler import FileHandler
from .gmod import GradedModule, free_module, top_module, vertex_module
from .gorenstein import Equalized, equalize_parameters, verify_gorenstein
from .homology import ext_table, tor_table
from .models import Bounds
from .regularity import STRATEGIES, asreg, homogeneity_check, regs_of_module
from .resolve import betti, check_minimality, is_linear, minimal_resolution
from .scalar import FieldSpec
from .ui import ReportView
from .verify import ALL_CHECKS, SuiteConfig, random_module, run_theorem_suite

EXIT_OK, EXIT_FAILS, EXIT_INPUT, EXIT_COMPUTATION = 0, 1, 2, 3

logger = logging.getLogger("gradreg")


class ErrorHandler:
    """错误处理器，负责把异常格式化为红色面板并映射为退出码"""

    def __init__(self, console: Console):
        self.console = console

    def handle(self, error: Exception) -> int:
        """
        打印错误并返回退出码

        Args:
            error: 引发的异常对象
        Returns:
            int: 2 表示输入错误，3 表示计算错误
        """
        if isinstance(error, ComputationError):
            title, code = "计算错误", EXIT_COMPUTATION
        else:
            title, code = "输入错误", EXIT_INPUT
        self.console.print(Panel(f"[red]❌ {type(error).__name__}: {error}[/red]",
                                 title=f"[bold red]{title}[/bold red]", border_style="red"))
        return code


def _add_common(parser: argparse.ArgumentParser, with_module: bool = False) -> None:
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--catalog", help="目录中的代数名称，可带参数，如 qplane:q=3")
    source.add_argument("--presentation", help="箭图表示 JSON 文件")
    parser.add_argument("--field", help="基域：Q 或素数 p")
    parser.add_argument("--config", default="config.json", help="配置文件路径")
    parser.add_argument("--out", help="把 JSON 报告写入文件而不是标准输出")
    parser.add_argument("--view", action="store_true", help="用 Rich 表格显示结果")
    parser.add_argument("--verbose", action="store_true", help="输出调试日志")
    parser.add_argument("--H", type=int, dest="H", help="最大同调次数")
    parser.add_argument("--N", type=int, dest="N", help="截断次数")
    parser.add_argument("--n-max", type=int, dest="n_max", help="局部上同调极限的最大 n")
    parser.add_argument("--cap", type=int, help="单个 A_d 的维数上限")
    parser.add_argument("--margin", type=int, help="窗口边距")
    parser.add_argument("--threads", type=int, help="并行线程数")
    if with_module:
        parser.add_argument("--module", default="trivial", help="trivial | free | random | vertex:i")
        parser.add_argument("--seed", type=int, default=0, help="random 模的种子")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gradreg", description="分次模同调正则度的精确计算工具")
    parser.add_argument("--version", action="version", version=f"gradreg {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("algebra", help="构造截断代数并显示其信息")
    _add_common(p)
    p.add_argument("--hilbert", action="store_true")
    p.add_argument("--a0", action="store_true")
    p.add_argument("--opposite", action="store_true")

    p = sub.add_parser("resolve", help="极小分解、Betti 表、极小性与线性")
    _add_common(p, with_module=True)

    p = sub.add_parser("reg", help="全部正则度")
    _add_common(p, with_module=True)
    p.add_argument("--cm", choices=STRATEGIES, default="limit")
    p.add_argument("--both-sides", action="store_true", help="同时报告右模一侧的 CMreg 与 Torreg(S)")
    p.add_argument("--homogeneity", action="store_true", help="检查 CM/ex 正则度的齐性")

    for name in ("tor", "ext"):
        p = sub.add_parser(name, help=f"{name.capitalize()} 表")
        _add_common(p, with_module=True)
        p.add_argument("--with", dest="partner", default="trivial", choices=("trivial", "free"))

    p = sub.add_parser("twist", help="顶点平移的自同态代数与参数均衡")
    _add_common(p)
    p.add_argument("--p", help="逗号分隔的平移向量；缺省时由 AS 数据求解")

    p = sub.add_parser("verify", help="在随机模上检查定理")
    _add_common(p)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--instances", type=int, default=25)
    p.add_argument("--checks", help="逗号分隔的检查编号，如 C1,C2")
    p.add_argument("--page", type=int, default=1)

    p = sub.add_parser("catalog", help="列出或导出目录")
    p.add_argument("action", choices=("list", "dump"))
    p.add_argument("name", nargs="?")
    p.add_argument("--out")
    p.add_argument("--view", action="store_true")
    p.add_argument("--verbose", action="store_true")
    return parser


def _parse_ints(text: str, what: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise BadInput(f"无法解析 {what}：{text}") from e


class GradregApp:
    """应用主控制器：解析参数、构造代数与模、调度各个子命令"""

    def __init__(self, console: Optional[Console] = None, err_console: Optional[Console] = None):
        self.console = console or Console()
        self.err_console = err_console or Console(stderr=True)
        self.view = ReportView(self.console)
        self.errors = ErrorHandler(self.err_console)
        self.entry: Optional[CatalogEntry] = None

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        args = build_parser().parse_args(argv)
        self._setup_logging(args.verbose)
        try:
            handler = getattr(self, f"_handle_{args.command}")
            return handler(args)
        except GradregError as e:
            return self.errors.handle(e)
        except ValueError as e:
            # 配置文件中的非法值
            return self.errors.handle(BadInput(str(e)))

    def _setup_logging(self, verbose: bool) -> None:
        root = logging.getLogger("gradreg")
        root.handlers = [RichHandler(console=self.err_console, show_path=False)]
        root.setLevel(logging.DEBUG if verbose else logging.WARNING)
        root.propagate = False

    # 公共部分

    def _bounds(self, args: argparse.Namespace) -> Bounds:
        field = FieldSpec.parse(args.field) if args.field else None
        return create_bounds_from_config(
            args.config, H=args.H, N=args.N, n_max=args.n_max, cap=args.cap,
            margin=args.margin, threads=args.threads,
            field=None if field is None else field.to_json())

    def _algebra(self, args: argparse.Namespace, bounds: Bounds) -> TruncatedAlgebra:
        if args.presentation:
            self.entry = None
            field = bounds.field if args.field else None
            presentation = FileHandler.load_presentation(args.presentation, field)
            return build_truncated(presentation, bounds.N, bounds.cap, name=args.presentation)
        if not args.catalog:
            raise BadInput("需要 --catalog 或 --presentation")
        self.entry = get_entry(args.catalog)
        return self.entry.build(bounds.N, bounds.field, bounds.cap)

    def _module(self, A: TruncatedAlgebra, spec: str, seed: int) -> GradedModule:
        if spec == "trivial":
            return top_module(A)
        if spec == "free":
            return free_module(A)
        if spec == "random":
            return random_module(A, seed)
        if spec.startswith("vertex:"):
            key = spec.split(":", 1)[1]
            if key in A.vertices:
                return vertex_module(A, A.vertices.index(key))
            if key.isdigit() and int(key) < A.n:
                return vertex_module(A, int(key))
            raise BadInput(f"未知的顶点：{key}")
        raise BadInput(f"未知的模选择：{spec}（可选 trivial, free, random, vertex:i）")

    def _document(self, A: TruncatedAlgebra, bounds: Bounds, results: Dict[str, Any],
                  checks: Optional[List[Any]] = None) -> Dict[str, Any]:
        body = {
            "tool": "gradreg",
            "version": __version__,
            "algebra": {
                "name": A.name,
                "field": A.field.label,
                "vertices": list(A.vertices),
                "N": A.N,
                "dims": [A.dim(d) for d in range(A.N + 1)],
                "provenance": A.provenance.value,
                "flags": sorted(self.entry.flags) if self.entry else [],
            },
            "bounds": bounds.to_json(),
            "results": results,
            "checks": checks or [],
        }
        body["digest"] = FileHandler.digest(body)
        return body

    def _emit(self, args: argparse.Namespace, document: Dict[str, Any]) -> None:
        if args.out:
            if not FileHandler.save_json(args.out, document):
                raise BadInput(f"无法写入 {args.out}")
        elif not args.view:
            self.console.print_json(data=document, sort_keys=True)

    # 子命令

    def _handle_algebra(self, args: argparse.Namespace) -> int:
        bounds = self._bounds(args)
        A = self._algebra(args, bounds)
        target = A.opposite() if args.opposite else A
        results: Dict[str, Any] = {"gmax": target.gmax, "finite_top": target.finite_top,
                                   "generators": {str(t): len(target.generators(t))
                                                  for t in range(target.N + 1) if target.generators(t)}}
        if args.hilbert:
            results["hilbert"] = hilbert(target).to_json()
        if args.a0:
            results["a0"] = target.a0.to_json()
        if args.view:
            self.view.show_title(repr(target))
            self.view.show_hilbert(hilbert(target))
            if args.a0:
                self.view.show_values(target.a0.to_json(), "A_0")
        self._emit(args, self._document(A, bounds, results))
        return EXIT_OK

    def _handle_resolve(self, args: argparse.Namespace) -> int:
        bounds = self._bounds(args)
        A = self._algebra(args, bounds)
        M = self._module(A, args.module, args.seed)
        R = minimal_resolution(M, bounds.H, bounds.margin, bounds.threads)
        B = betti(R)
        results = {"module": args.module, "betti": B.to_json(), "minimal": check_minimality(R),
                   "linear": is_linear(B).value, "pdim": R.pdim.to_json()}
        if args.view:
            self.view.show_title(f"resolution of {args.module}", repr(A))
            self.view.show_betti(B, A.vertices)
        self._emit(args, self._document(A, bounds, results))
        return EXIT_OK

    def _gorenstein(self, A: TruncatedAlgebra, bounds: Bounds):
        if self.entry is None or self.entry.gorenstein is None:
            raise MissingGorensteinData("该代数没有 AS-Gorenstein 数据")
        return verify_gorenstein(A, self.entry.gorenstein, bounds)

    def _handle_reg(self, args: argparse.Namespace) -> int:
        bounds = self._bounds(args)
        A = self._algebra(args, bounds)
        M = self._module(A, args.module, args.seed)
        G = self._gorenstein(A, bounds) if args.cm == "duality" else None
        report = regs_of_module(M, bounds, args.cm, G)
        algebra_report = report if args.module == "free" else regs_of_module(free_module(A), bounds, args.cm, G)
        as_result = asreg(A, bounds, args.cm, G, both_sides=args.both_sides)
        results: Dict[str, Any] = {
            "module": args.module,
            "strategy": args.cm,
            "regularities": report.to_json(),
            "algebra": dict(algebra_report.to_json(), **as_result.to_json()),
        }
        if G is not None:
            results["gorenstein"] = G.to_json()
        if args.homogeneity:
            results["homogeneity"] = homogeneity_check(A, bounds).to_json()
        if args.view:
            self.view.show_title(f"regularities of {args.module}", repr(A))
            self.view.show_report(report)
            self.view.show_values({"ASreg": as_result.ASreg, "asreg": as_result.asreg,
                                   "CMreg(A)": as_result.CMreg, "Torreg(S)": as_result.Torreg_S},
                                  "Algebra")
            if as_result.right:
                self.view.show_values(as_result.right, "Right side")
        self._emit(args, self._document(A, bounds, results))
        return EXIT_OK

    def _handle_ext(self, args: argparse.Namespace) -> int:
        bounds = self._bounds(args)
        A = self._algebra(args, bounds)
        X = self._module(A, args.module, args.seed)
        Y = top_module(A) if args.partner == "trivial" else free_module(A)
        table = ext_table(X, Y, bounds.H, bounds.margin, threads=bounds.threads)
        return self._emit_table(args, A, bounds, table)

    def _handle_tor(self, args: argparse.Namespace) -> int:
        bounds = self._bounds(args)
        A = self._algebra(args, bounds)
        X = self._module(A, args.module, args.seed)
        Ao = A.opposite()
        Y = top_module(Ao) if args.partner == "trivial" else free_module(Ao)
        table = tor_table(Y, X, bounds.H, bounds.margin, threads=bounds.threads)
        return self._emit_table(args, A, bounds, table)

    def _emit_table(self, args, A, bounds, table) -> int:
        ex = table.extremes()
        results = {"module": args.module, "with": args.partner, "table": table.to_json(),
                   "sdeg": None if ex.sdeg is None else ex.sdeg.to_json(),
                   "ideg": None if ex.ideg is None else ex.ideg.to_json()}
        if args.view:
            self.view.show_title(f"{args.command} of {args.module} with {args.partner}", repr(A))
            self.view.show_graded_table(table)
        self._emit(args, self._document(A, bounds, results))
        return EXIT_OK

    def _handle_twist(self, args: argparse.Namespace) -> int:
        bounds = self._bounds(args)
        A = self._algebra(args, bounds)
        m = A.min_degree_matrix()
        results: Dict[str, Any] = {"m": m}
        G = self.entry.gorenstein.validate(A.n) if self.entry and self.entry.gorenstein else None
        if args.p:
            p = _parse_ints(args.p, "--p")
        else:
            if G is None:
                raise MissingGorensteinData("没有 --p 时需要目录中的 AS-Gorenstein 数据")
            solution = equalize_parameters(G.ell, G.sigma, m)
            if not isinstance(solution, Equalized):
                results["infeasible"] = {"reason": solution.reason, "cycle": list(solution.cycle)}
                self._emit(args, self._document(A, bounds, results))
                return EXIT_OK
            p = list(solution.p)
        B = endo_twist(A, p)
        results.update({"p": p, "hilbert": hilbert(B).to_json(), "m_B": B.min_degree_matrix()})
        if G is not None:
            results["ell_B"] = [G.ell[i] - p[i] + p[G.sigma[i]] for i in range(A.n)]
        if args.view:
            self.view.show_title(f"twist by p = {p}", repr(B))
            self.view.show_hilbert(hilbert(B))
        self._emit(args, self._document(A, bounds, results))
        return EXIT_OK

    def _handle_verify(self, args: argparse.Namespace) -> int:
        bounds = self._bounds(args)
        A = self._algebra(args, bounds)
        checks = tuple(c.strip().upper() for c in args.checks.split(",")) if args.checks else ALL_CHECKS
        cfg = SuiteConfig(seed=args.seed, instances=args.instances, bounds=bounds, checks=checks,
                          flags=self.entry.flags if self.entry else frozenset(), algebra_name=A.name)
        report = run_theorem_suite(A, cfg)
        suite = report.to_json()
        document = self._document(A, bounds, {"summary": suite["summary"], "suite_digest": suite["digest"]},
                                  suite["outcomes"])
        if args.view:
            self.view.show_title(f"theorem suite on {A.name}", f"seed {args.seed}, {args.instances} instances")
            self.view.show_outcomes(report, page=args.page)
        self._emit(args, document)
        return EXIT_FAILS if report.failed else EXIT_OK

    def _handle_catalog(self, args: argparse.Namespace) -> int:
        if args.action == "list":
            entries = list(load_catalog().values())
            if args.view:
                self.view.show_catalog(entries)
            else:
                data = [{"name": e.name, "description": e.description, "flags": sorted(e.flags)}
                        for e in entries]
                self._emit_plain(args, data)
            return EXIT_OK
        if not args.name:
            raise BadInput("catalog dump 需要名称")
        self._emit_plain(args, get_entry(args.name).to_json())
        return EXIT_OK

    def _emit_plain(self, args: argparse.Namespace, data: Any) -> None:
        if args.out:
            if not FileHandler.save_json(args.out, data):
                raise BadInput(f"无法写入 {args.out}")
        else:
            self.console.print_json(data=data, sort_keys=True)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """程序入口点"""
    app = GradregApp()
    return app.run(argv)


if __name__ == "__main__":
    sys.exit(main())
