"""
Rendering of ReportDocument: JSON for machines, plain tables for people.
"""

from collections.abc import Callable

from services.reports import ReportDocument

PayloadRenderer = Callable[[ReportDocument], list[str]]


def format_complex(pair: list[float] | complex, digits: int = 10) -> str:
    z = complex(*pair) if isinstance(pair, list) else complex(pair)
    re = 0.0 if abs(z.real) < 10 ** (-digits) else z.real
    im = 0.0 if abs(z.imag) < 10 ** (-digits) else z.imag
    if im == 0.0:
        return f"{re:.{digits}g}"
    sign = "+" if im > 0 else "-"
    return f"{re:.{digits}g} {sign} {abs(im):.{digits}g}i"


def format_matrix(rows: list[list[list[float]]], digits: int = 6) -> list[str]:
    cells = [[format_complex(pair, digits) for pair in row] for row in rows]
    width = max((len(c) for row in cells for c in row), default=1)
    return ["  [ " + "  ".join(c.rjust(width) for c in row) + " ]" for row in cells]


def render_checks(doc: ReportDocument) -> list[str]:
    if not doc.checks:
        return []
    width = max(len(c.name) for c in doc.checks)
    lines = ["", f"{'check'.ljust(width)}  {'residual':>12}  {'tolerance':>10}  result"]
    lines.append("-" * (width + 36))
    for check in doc.checks:
        status = "PASS" if check.passed else "FAIL"
        lines.append(
            f"{check.name.ljust(width)}  {check.residual:12.3e}  {check.tolerance:10.1e}  {status}"
        )
    failed = sum(1 for c in doc.checks if not c.passed)
    lines.append("-" * (width + 36))
    lines.append(f"{len(doc.checks) - failed}/{len(doc.checks)} checks passed")
    return lines


def render_table(doc: ReportDocument, render_payload: PayloadRenderer | None = None) -> str:
    header = f"pl {doc.command}"
    if doc.spin is not None:
        header += f"  (spin {doc.spin})"
    lines = [header, "=" * len(header)]
    if render_payload is not None:
        lines.extend(render_payload(doc))
    lines.extend(render_checks(doc))
    return "\n".join(lines)


def emit(doc: ReportDocument, fmt: str, render_payload: PayloadRenderer | None = None) -> str:
    if fmt == "json":
        return doc.to_json()
    return render_table(doc, render_payload)
