"""
Rich console views for hilbert tables, Betti tables, Ext/Tor tables,
regularity reports and verify outcomes.
"""

from typing import Any, Dict, List, Optional, Sequence, Tuple

import paginate
from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from .algebra import HilbertTable
from .homology import GradedTable
from .models import REPORT_FIELDS, RegStatus, RegularityReport, Verdict
from .resolve import BettiTable
from .verify import SuiteReport, outcome_rows

VERDICT_STYLES = {
    Verdict.HOLDS.value: "green",
    Verdict.FAILS.value: "bold red",
    Verdict.INCONCLUSIVE.value: "yellow",
    Verdict.SKIPPED_DEGENERATE.value: "dim",
    Verdict.SKIPPED.value: "dim",
}

STATUS_STYLES = {
    RegStatus.EXACT: "green",
    RegStatus.CENSORED: "yellow",
    RegStatus.DEGENERATE: "dim",
}


def paginate_rows(rows: Sequence[Any], page_size: int, page: int) -> Tuple[List[Any], bool, int, int]:
    """
    使用 paginate 库对行列表进行分页。

    Args:
        rows: 需要分页的行
        page_size: 每页行数
        page: 页码（从 1 开始）
    Returns:
        Tuple[List[Any], bool, int, int]: 当前页的行、是否有下一页、当前页码、总页数
    """
    if not rows:
        return [], False, 1, 1
    paginator = paginate.Page(list(rows), page=page, items_per_page=page_size)
    return paginator.items, paginator.next_page is not None, paginator.page, paginator.page_count


class ReportView:
    """控制台视图，负责把计算结果渲染为 Rich 表格与面板"""

    def __init__(self, console: Optional[Console] = None):
        self.console = console or Console()

    def show_title(self, title: str, subtitle: str = "") -> None:
        body = f"[bold cyan]{title}[/bold cyan]"
        if subtitle:
            body += f"\n[dim]{subtitle}[/dim]"
        self.console.print(Panel(body, border_style="bright_blue"))

    def show_hilbert(self, table: HilbertTable) -> None:
        """显示 dim A_d 及各块 e_i A_d e_j 的维数"""
        t = Table(title="[bold cyan]Hilbert series[/bold cyan]", show_header=True, header_style="bold magenta")
        t.add_column("block", style="bold blue")
        for d in range(len(table.totals)):
            t.add_column(str(d), justify="right")
        t.add_row("total", *[str(x) for x in table.totals], style="bold white")
        if len(table.vertices) > 1:
            for (i, j), dims in sorted(table.blocks.items()):
                t.add_row(f"e{table.vertices[i]}·A·e{table.vertices[j]}", *[str(x) for x in dims])
        self.console.print(t)

    def show_betti(self, betti: BettiTable, vertices: Sequence[str]) -> None:
        """Betti 表：行为同调次数 m，列为平移 s，格子列出各顶点的重数"""
        shifts = sorted({s for (_, s, _), c in betti.entries.items() if c})
        t = Table(title="[bold cyan]Betti table[/bold cyan]", show_header=True, header_style="bold magenta")
        t.add_column("m", style="bold blue", justify="center")
        for s in shifts:
            t.add_column(f"s={s}", justify="right")
        t.add_column("complete", justify="center")
        for m in range(betti.length):
            cells = []
            for s in shifts:
                parts = [f"{c}·{vertices[i]}" if len(vertices) > 1 else str(c)
                         for (mm, ss, i), c in sorted(betti.entries.items()) if mm == m and ss == s and c]
                cells.append(" ".join(parts) or "[dim]·[/dim]")
            done = betti.complete[m] if m < len(betti.complete) else False
            t.add_row(str(m), *cells, "✓" if done else "[yellow]?[/yellow]")
        self.console.print(t)
        notes = []
        if betti.terminated:
            notes.append("[green]resolution terminated[/green]")
        if betti.period is not None:
            notes.append(f"[cyan]periodic from step {betti.period.start}, shift {betti.period.shift}[/cyan]")
        if notes:
            self.console.print("  ".join(notes))

    def show_graded_table(self, table: GradedTable) -> None:
        """Ext/Tor 表：精确格子显示维数，未证明的格子显示 ?"""
        title = "gExt^m" if table.kind == "ext" else "Tor_m"
        t = Table(title=f"[bold cyan]{title}[/bold cyan]", show_header=True, header_style="bold magenta")
        t.add_column("m", style="bold blue", justify="center")
        js = list(range(table.j_lo, table.j_hi + 1))
        for j in js:
            t.add_column(str(j), justify="right")
        for m in range(table.H + 1):
            row = []
            for j in js:
                value = table.value(m, j)
                if value is None:
                    row.append("[yellow]?[/yellow]")
                elif value:
                    row.append(f"[bold white]{value}[/bold white]")
                else:
                    row.append("[dim]0[/dim]")
            t.add_row(str(m), *row)
        self.console.print(t)
        ex = table.extremes()
        self.console.print(f"sdeg = {ex.sdeg if ex.sdeg is not None else '?'}, "
                           f"ideg = {ex.ideg if ex.ideg is not None else '?'}, beyond H: {table.beyond.value}")

    def show_report(self, report: RegularityReport, title: str = "Regularities") -> None:
        t = Table(title=f"[bold cyan]{title}[/bold cyan]", show_header=True, header_style="bold magenta")
        t.add_column("invariant", style="bold blue")
        t.add_column("value", justify="right")
        t.add_column("status")
        t.add_column("witness (m, j)", style="dim")
        for name in REPORT_FIELDS:
            if name not in report.values:
                continue
            v = report.values[name]
            style = STATUS_STYLES[v.status]
            t.add_row(name, "?" if v.value is None else str(v.value),
                      f"[{style}]{v.status.value}[/{style}]",
                      "" if v.witness is None else str(v.witness))
        self.console.print(t)
        for note in report.notes:
            self.console.print(f"[yellow]⚠️  {note}[/yellow]")

    def show_values(self, values: Dict[str, Any], title: str) -> None:
        """任意 键 → RegValue/ExtendedDegree/文本 的两列表格"""
        t = Table(title=f"[bold cyan]{title}[/bold cyan]", show_header=False)
        t.add_column("name", style="bold blue")
        t.add_column("value")
        for name, value in values.items():
            shown = getattr(value, "value", value)
            t.add_row(name, "?" if shown is None else str(shown))
        self.console.print(t)

    def show_outcomes(self, report: SuiteReport, page_size: int = 25, page: int = 1) -> None:
        """分页显示检查结果，并在末尾给出按检查汇总的计数"""
        rows, has_next, current, total = paginate_rows(outcome_rows(report.outcomes), page_size, page)
        page_info = f" (第{current}/{total}页)" if total > 1 else ""
        t = Table(title=f"[bold cyan]Theorem suite{page_info}[/bold cyan]", show_header=True,
                  header_style="bold magenta")
        for name in ("check", "seed", "relation", "lhs", "rhs", "verdict"):
            t.add_column(name, overflow="fold")
        for check, seed, relation, lhs, rhs, verdict in rows:
            style = VERDICT_STYLES.get(verdict, "white")
            t.add_row(check, seed, relation, lhs, rhs, Text(verdict, style=style))
        self.console.print(t)
        if has_next:
            self.console.print(f"[dim]… 还有 {total - current} 页，使用 --page {current + 1} 查看[/dim]")

        summary = Table(title="[bold cyan]Summary[/bold cyan]", show_header=True, header_style="bold magenta")
        summary.add_column("check", style="bold blue")
        for v in Verdict:
            summary.add_column(v.value, justify="right", style=VERDICT_STYLES[v.value])
        for check, counts in sorted(report.summary().items(), key=lambda kv: int(kv[0][1:])):
            summary.add_row(check, *[str(counts[v.value]) for v in Verdict])
        self.console.print(summary)
        border = "red" if report.failed else "green"
        verdict = "❌ 存在不成立的检查" if report.failed else "✅ 没有不成立的检查"
        self.console.print(Panel(f"{verdict}\n[dim]digest {report.digest()}[/dim]", border_style=border))

    def show_catalog(self, entries: Sequence[Any]) -> None:
        t = Table(title="[bold cyan]📚 Algebra catalog[/bold cyan]", show_header=True, header_style="bold magenta")
        t.add_column("name", style="bold blue")
        t.add_column("description", style="white")
        t.add_column("flags", style="green")
        t.add_column("AS data (d, ℓ)", style="cyan")
        for entry in entries:
            G = entry.gorenstein
            t.add_row(entry.name, entry.description, ", ".join(sorted(entry.flags)) or "-",
                      "-" if G is None else f"({G.d}, {list(G.ell)})")
        self.console.print(t)
