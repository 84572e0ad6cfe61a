"""
pl tangle: three-tangle and Schmidt structure of a combination of v1..v4.
"""

import argparse

import numpy as np

from cli.output import format_complex
from services.algebra import HalfInteger, max_abs_diff
from services.entangle import (
    ENTANGLEMENT_THRESHOLD,
    Cut,
    classify,
    epsilon_contraction_tangle,
    parse_state_spec,
    schmidt_analysis,
)
from services.lubanski import build_S
from services.reports import IdentityReport, ReportDocument, encode_vector

from .common import resolve_tol

NAME = "tangle"
HELP = "entanglement of a combination of the spin-1/2 eigenvectors v1..v4"

TANGLE_AGREEMENT_TOL = 1e-10
EIGENVALUE = 0.5


def configure(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--state",
        default=None,
        help='combination of v1..v4, e.g. "v1+v4" or "0.5*v1 + (0,1)*v2"',
    )


def build(args: argparse.Namespace) -> ReportDocument:
    if args.state is None:
        raise ValueError('state required: --state "v1+v4"')
    psi = parse_state_spec(args.state)
    threshold = resolve_tol(args, default=ENTANGLEMENT_THRESHOLD)
    verdict = classify(psi, threshold)
    eps_tangle = epsilon_contraction_tangle(psi.amplitudes, 3)
    schmidt = {cut.value: schmidt_analysis(psi, cut, threshold) for cut in Cut}

    s_matrix = build_S(HalfInteger(1))
    report = IdentityReport()
    report.add(
        "hyperdeterminant = epsilon contraction",
        abs(verdict.tangle - eps_tangle),
        TANGLE_AGREEMENT_TOL,
    )
    report.add(
        "S v = v/2",
        max_abs_diff(s_matrix @ psi.amplitudes, EIGENVALUE * psi.amplitudes),
        resolve_tol(args),
    )

    doc = ReportDocument(
        command=NAME,
        spin="1/2",
        payload={
            "state": args.state,
            "amplitudes": encode_vector(psi.amplitudes),
            "tangle": verdict.tangle,
            "epsilon_tangle": eps_tangle,
            "schmidt": {
                cut: {"rank": r.rank, "coefficients": list(r.coefficients)}
                for cut, r in schmidt.items()
            },
            "class": verdict.entanglement_class.value,
            "label": verdict.label,
            "tangle_verdict": verdict.tangle_verdict,
            "threshold": threshold,
        },
    )
    doc.add_report(report)
    return doc


def render(doc: ReportDocument) -> list[str]:
    p = doc.payload
    lines = [f"state {p['state']}", "amplitudes (|q1 q2 q3>):"]
    for k, pair in enumerate(p["amplitudes"]):
        if np.hypot(*pair) > 0:
            lines.append(f"  |{k:03b}>  {format_complex(pair, 8)}")
    lines.append("")
    lines.append(f"three-tangle:       {p['tangle']:.10g}")
    for cut, entry in p["schmidt"].items():
        coeffs = ", ".join(f"{c:.6g}" for c in entry["coefficients"])
        lines.append(f"Schmidt rank {cut}:  {entry['rank']}  ({coeffs})")
    lines.append(f"class:              {p['label']}")
    lines.append(f"tangle verdict:     {p['tangle_verdict']}")
    return lines
