"""
pl casimir: sum_mu W_mu W^mu for one spin and one four-momentum.
"""

import argparse

from services.lubanski import CASIMIR_NORMALIZATION, CASIMIR_TOL, FourMomentum, casimir_W
from services.reports import IdentityReport, ReportDocument

from .common import resolve_spin, resolve_tol

NAME = "casimir"
HELP = "check that sum W_mu W^mu is a multiple of the identity"


def configure(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--momentum",
        metavar="R,R,R,R",
        default=None,
        help="four-momentum p_0,p_1,p_2,p_3",
    )


def build(args: argparse.Namespace) -> ReportDocument:
    spin = resolve_spin(args)
    if args.momentum is None:
        raise ValueError("momentum required: --momentum p0,p1,p2,p3")
    p = FourMomentum.parse(args.momentum)
    tol = resolve_tol(args, default=CASIMIR_TOL)
    result = casimir_W(spin, p, tol)

    report = IdentityReport()
    report.add("sum W_mu W^mu = c I", result.off_scalar_residual, result.tolerance)
    report.add("c = k s(s+1) p.p", result.relative_error, tol)

    doc = ReportDocument(
        command=NAME,
        spin=str(spin),
        payload={
            "momentum": list(p.components),
            "minkowski_square": result.minkowski_square,
            "lightlike": result.lightlike,
            "scalar": result.scalar,
            "ratio": result.ratio,
            "normalization": CASIMIR_NORMALIZATION,
            "predicted": result.predicted,
            "is_scalar": result.is_scalar,
        },
    )
    doc.add_report(report)
    return doc


def render(doc: ReportDocument) -> list[str]:
    p = doc.payload
    lines = [
        "p = (" + ", ".join(f"{c:g}" for c in p["momentum"]) + ")",
        f"p.p = {p['minkowski_square']:.12g}" + ("  (lightlike)" if p["lightlike"] else ""),
        f"scalar c = {p['scalar']:.12g}",
        f"predicted k s(s+1) p.p = {p['predicted']:.12g}  (k = {p['normalization']:g})",
    ]
    if p["ratio"] is None:
        lines.append("c / p.p undefined for lightlike p")
    else:
        lines.append(f"c / p.p = {p['ratio']:.12g}")
    return lines
