"""
pl spectrum: predicted vs computed spectrum of S.
"""

import argparse
import sys

from cli.output import format_complex
from services.lubanski import build_S
from services.reports import IdentityReport, ReportDocument, encode_complex
from services.spectral import (
    MATCH_TOL,
    NEWTON_TOL,
    eigenvalues_dense,
    match_spectra,
    newton_identity_check,
    predict_spectrum,
    probe_multiplicities,
)

from .common import resolve_spin

NAME = "spectrum"
HELP = "eigenvalues of S: closed form, dense QR, multiplicities, power sums"

MAX_NEWTON_POWER = 16


def configure(parser: argparse.ArgumentParser) -> None:
    pass


def build(args: argparse.Namespace) -> ReportDocument:
    spin = resolve_spin(args)
    s_matrix = build_S(spin)
    pred = predict_spectrum(spin)
    result = eigenvalues_dense(s_matrix)
    distance = match_spectra(result.eigenvalues, pred)
    probes = probe_multiplicities(s_matrix, pred)
    max_n = max(8, min(s_matrix.shape[0], MAX_NEWTON_POWER))
    newton = newton_identity_check(pred, s_matrix, max_n, NEWTON_TOL)

    doc = ReportDocument(
        command=NAME,
        spin=str(spin),
        payload={
            "dim": int(s_matrix.shape[0]),
            "predicted": [
                {"value": encode_complex(value), "multiplicity": mult}
                for value, mult in pred.entries
            ],
            "computed": [encode_complex(z) for z in result.eigenvalues],
            "clusters": [
                {
                    "value": encode_complex(c.value),
                    "algebraic": c.algebraic,
                    "geometric": c.geometric,
                }
                for c in result.clusters
            ],
            "match_distance": distance,
            "solver_residual": result.residual,
            "qr_sweeps": result.sweeps,
            "multiplicities": [
                {
                    "value": encode_complex(p.value),
                    "algebraic": p.algebraic,
                    "geometric": p.geometric,
                    "consistent": p.consistent,
                }
                for p in probes
            ],
            "newton_passed": newton.all_passed,
            "newton_max_power": max_n,
        },
    )
    checks = IdentityReport()
    # a size mismatch is a failure, not a parse error
    checks.add("computed spectrum = predicted", min(distance, sys.float_info.max), MATCH_TOL)
    # multiplicities live in the payload only; mismatches are logged by probe_multiplicities
    doc.add_report(checks)
    doc.add_report(newton)
    return doc


def render(doc: ReportDocument) -> list[str]:
    p = doc.payload
    lines = [f"S is {p['dim']}x{p['dim']}", "", "predicted (closed form):"]
    for entry in p["predicted"]:
        lines.append(f"  {format_complex(entry['value']):>28}   x{entry['multiplicity']}")
    lines.append("")
    lines.append("computed (Hessenberg + shifted QR), clustered:")
    for c in p["clusters"]:
        lines.append(
            f"  {format_complex(c['value']):>28}   algebraic {c['algebraic']}, geometric {c['geometric']}"
        )
    lines.append("")
    lines.append(f"max matched distance: {p['match_distance']:.3e}")
    lines.append(f"solver residual:      {p['solver_residual']:.3e}")
    consistent = all(m["consistent"] for m in p["multiplicities"])
    lines.append(f"geometric = algebraic for every predicted eigenvalue: {'yes' if consistent else 'no'}")
    lines.append(
        f"power sums N=1..{p['newton_max_power']}: {'agree' if p['newton_passed'] else 'DISAGREE'}"
    )
    return lines
