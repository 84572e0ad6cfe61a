"""
pl lubanski: dump S, S^-1, T1, T2, T3.
"""

import argparse

from cli.output import format_matrix
from services.lubanski import build_all, build_S_inverse, nonnormality, verify_inverse
from services.reports import ReportDocument, encode_matrix

from .common import resolve_spin, resolve_tol

NAME = "lubanski"
HELP = "dump S, its inverse and the T1/T2/T3 split"

MATRICES = ("S", "S_inverse", "T1", "T2", "T3")


def configure(parser: argparse.ArgumentParser) -> None:
    pass


def build(args: argparse.Namespace) -> ReportDocument:
    spin = resolve_spin(args)
    tol = resolve_tol(args)
    m = build_all(spin)
    doc = ReportDocument(
        command=NAME,
        spin=str(spin),
        payload={
            "dim": int(m.S.shape[0]),
            "S": encode_matrix(m.S),
            "S_inverse": encode_matrix(build_S_inverse(spin)),
            "T1": encode_matrix(m.T1),
            "T2": encode_matrix(m.T2),
            "T3": encode_matrix(m.T3),
            "nonnormality": nonnormality(spin),
        },
    )
    doc.add_report(verify_inverse(spin, tol))
    return doc


def render(doc: ReportDocument) -> list[str]:
    lines = [f"matrices are {doc.payload['dim']}x{doc.payload['dim']}"]
    for name in MATRICES:
        lines.append(f"{name} =")
        lines.extend(format_matrix(doc.payload[name], digits=4))
    lines.append(f"max |[S,S*]| = {doc.payload['nonnormality']:.6g}")
    return lines
