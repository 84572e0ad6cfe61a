"""
pl spin-matrices: S1, S2, S3 for spin s with their identity checks.
"""

import argparse

from cli.output import format_matrix
from services.algebra import even_power_traces, make_spin_matrices, verify_spin_identities
from services.reports import ReportDocument, encode_matrix

from .common import resolve_spin, resolve_tol

NAME = "spin-matrices"
HELP = "build S1, S2, S3 and check the spin identities"


def configure(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--no-spectra",
        action="store_true",
        help="skip the eigenvalue check of S1, S2, S3",
    )


def build(args: argparse.Namespace) -> ReportDocument:
    spin = resolve_spin(args)
    tol = resolve_tol(args)
    triple = make_spin_matrices(spin)
    report = verify_spin_identities(triple, tol, include_spectra=not args.no_spectra)

    even = {
        str(n): {key: float(val) for key, val in row.items()}
        for n, row in even_power_traces(triple).items()
    }
    doc = ReportDocument(
        command=NAME,
        spin=str(spin),
        payload={
            "dim": spin.dim,
            "S1": encode_matrix(triple.S1),
            "S2": encode_matrix(triple.S2),
            "S3": encode_matrix(triple.S3),
            "even_power_traces": even,
        },
    )
    doc.add_report(report)
    return doc


def render(doc: ReportDocument) -> list[str]:
    lines = [f"dimension 2s+1 = {doc.payload['dim']}"]
    for name in ("S1", "S2", "S3"):
        lines.append(f"{name} =")
        lines.extend(format_matrix(doc.payload[name]))
    lines.append("")
    lines.append("even powers (reported only):")
    for n, row in doc.payload["even_power_traces"].items():
        lines.append(
            f"  n={n:>2}  tr(S1^n)={row['S1']:.6g}  tr(S2^n)={row['S2']:.6g}  "
            f"tr(S3^n)={row['S3']:.6g}  s(s+1)(2s+1)/3={row['s(s+1)(2s+1)/3']:.6g}"
        )
    return lines
