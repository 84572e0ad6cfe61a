"""
pl traces: tr(S^N) from the closed form and the table, against direct products.
"""

import argparse

from config import settings
from services.lubanski import build_S
from services.reports import IdentityReport, ReportDocument
from services.spectral import trace_power_closed_form, trace_power_direct, trace_power_table

from .common import resolve_spin

NAME = "traces"
HELP = "compare tr(S^N) from the closed form, the table and direct products"

TRACE_REL_TOL = 1e-8
IMAG_TOL = 1e-10
TABLE_ROWS = 8


def configure(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--max-power",
        type=int,
        default=None,
        help=f"largest N (default PL_MAX_POWER={settings.PL_MAX_POWER})",
    )


def _relative(a: complex, b: complex) -> float:
    return abs(a - b) / (1 + abs(b))


def build(args: argparse.Namespace) -> ReportDocument:
    spin = resolve_spin(args)
    max_power = args.max_power if args.max_power is not None else settings.PL_MAX_POWER
    if max_power < 1:
        raise ValueError(f"--max-power must be at least 1, got {max_power}")

    s_matrix = build_S(spin)
    report = IdentityReport()
    rows = []
    for n in range(1, max_power + 1):
        closed = trace_power_closed_form(spin, n)
        direct = trace_power_direct(s_matrix, n)
        row = {
            "N": n,
            "closed_form": closed.real,
            "closed_form_imag": closed.imag,
            "direct": direct.real,
            "direct_imag": direct.imag,
            "table": None,
            "residual": _relative(closed, direct),
        }
        report.add(f"N={n}: closed form = direct", row["residual"], TRACE_REL_TOL)
        report.add(f"N={n}: Im closed form = 0", abs(closed.imag), IMAG_TOL)
        if n <= TABLE_ROWS:
            table = trace_power_table(spin, n)
            row["table"] = table
            report.add(f"N={n}: table = direct", _relative(table, direct), TRACE_REL_TOL)
        rows.append(row)

    doc = ReportDocument(
        command=NAME,
        spin=str(spin),
        payload={"max_power": max_power, "rows": rows},
    )
    doc.add_report(report)
    return doc


def render(doc: ReportDocument) -> list[str]:
    lines = [f"{'N':>3}  {'closed form':>22}  {'table':>22}  {'direct':>22}"]
    for row in doc.payload["rows"]:
        table = "-" if row["table"] is None else f"{row['table']:.12g}"
        lines.append(
            f"{row['N']:>3}  {row['closed_form']:>22.12g}  {table:>22}  {row['direct']:>22.12g}"
        )
    return lines
