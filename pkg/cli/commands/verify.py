"""
pl verify: full identity sweep over twice-spin 1..N.

Spins run concurrently in worker threads; results are assembled in
twice-spin order so the report does not depend on scheduling.
"""

import argparse
import asyncio
import logging

import numpy as np

from config import settings
from services.algebra import (
    HalfInteger,
    SpinTriple,
    make_spin_matrices,
    max_abs_diff,
    tamper,
    verify_spin_identities,
)
from services.entangle import (
    ENTANGLEMENT_THRESHOLD,
    Cut,
    degenerate_eigenvectors,
    epsilon_contraction_tangle,
    reference_combinations,
    schmidt_analysis,
    three_tangle,
)
from services.lubanski import (
    CASIMIR_TOL,
    FourMomentum,
    build_S,
    casimir_W,
    minkowski_dot,
    verify_decomposition,
    verify_inverse,
    verify_T_algebra,
)
from services.reports import IdentityReport, ReportDocument
from services.spectral import (
    NEWTON_TOL,
    newton_identity_check,
    predict_spectrum,
    trace_power_closed_form,
    trace_power_direct,
    trace_power_table,
)

from .common import resolve_tol

logger = logging.getLogger(__name__)

NAME = "verify"
HELP = "run every identity for twice-spin 1..N; exit 1 on any failure"

TRACE_REL_TOL = 1e-8
TABLE_ROWS = 8
NEWTON_MAX_POWER = 16
CASIMIR_SAMPLES = 20
TANGLE_OF_ENTANGLED = 0.25


def configure(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--max-twice-spin",
        type=int,
        default=None,
        help=f"largest 2s (default PL_MAX_TWICE_SPIN={settings.PL_MAX_TWICE_SPIN})",
    )
    parser.add_argument(
        "--concurrency",
        type=int,
        default=None,
        help=f"spins checked in parallel (default PL_CONCURRENCY={settings.PL_CONCURRENCY})",
    )
    parser.add_argument(
        "--debug-tamper",
        type=float,
        default=None,
        help=argparse.SUPPRESS,
    )


# ============================================================
# PER-SPIN CHECKS
# ============================================================

def _trace_checks(triple: SpinTriple) -> IdentityReport:
    spin = triple.s
    s_matrix = build_S(triple)
    report = IdentityReport()
    for n in range(1, TABLE_ROWS + 1):
        direct = trace_power_direct(s_matrix, n)
        closed = trace_power_closed_form(spin, n)
        table = trace_power_table(spin, n)
        report.add(f"tr(S^{n}) closed form", abs(closed - direct) / (1 + abs(direct)), TRACE_REL_TOL)
        report.add(f"tr(S^{n}) table", abs(table - direct) / (1 + abs(direct)), TRACE_REL_TOL)
    return report


def _casimir_checks(triple: SpinTriple) -> IdentityReport:
    rng = np.random.default_rng(triple.s.twice)
    momenta: list[FourMomentum] = []
    while len(momenta) < CASIMIR_SAMPLES:
        p = FourMomentum(*rng.uniform(-2.0, 2.0, size=4))
        # near-lightlike p makes the relative error meaningless
        if abs(minkowski_dot(p, p)) >= 0.1 * p.euclidean_norm_sq:
            momenta.append(p)

    report = IdentityReport()
    for k, p in enumerate(momenta):
        result = casimir_W(triple, p, CASIMIR_TOL)
        report.add(f"Casimir scalar #{k + 1}", result.off_scalar_residual, result.tolerance)
        report.add(f"Casimir value #{k + 1}", result.relative_error, CASIMIR_TOL)
    return report


def entanglement_checks(tol: float) -> IdentityReport:
    """Spin-1/2 block: v1..v4 and their eight +/- combinations."""
    s_matrix = build_S(HalfInteger(1))
    report = IdentityReport()
    for k, v in enumerate(degenerate_eigenvectors(), start=1):
        report.add(f"S v{k} = v{k}/2", max_abs_diff(s_matrix @ v.amplitudes, 0.5 * v.amplitudes), tol)
        report.add(f"tangle(v{k}) = 0", three_tangle(v), ENTANGLEMENT_THRESHOLD)
    for k in (2, 4):
        v = degenerate_eigenvectors()[k - 1]
        rank = schmidt_analysis(v, Cut.Q1).rank
        report.add(f"Schmidt rank(v{k}, 1|23) = 1", abs(rank - 1), 0.0)
    for combo in reference_combinations():
        expected = TANGLE_OF_ENTANGLED if combo.expected_entangled else 0.0
        tangle = three_tangle(combo.state)
        report.add(f"tangle({combo.label}) = {expected:g}", abs(tangle - expected), ENTANGLEMENT_THRESHOLD)
        report.add(
            f"tangle({combo.label}) formulas agree",
            abs(tangle - epsilon_contraction_tangle(combo.state.amplitudes, 3)),
            ENTANGLEMENT_THRESHOLD,
        )
    return report


def spin_checks(twice: int, tol: float, tamper_delta: float | None = None) -> IdentityReport:
    spin = HalfInteger.from_twice(twice).require_buildable()
    triple = make_spin_matrices(spin)
    if tamper_delta is not None:
        triple = tamper(triple, delta=tamper_delta)

    report = IdentityReport()
    report.extend(verify_spin_identities(triple, tol))
    report.extend(verify_decomposition(triple, tol))
    report.extend(verify_T_algebra(triple, tol))
    report.extend(verify_inverse(triple, tol))
    report.extend(_trace_checks(triple))
    report.extend(
        newton_identity_check(predict_spectrum(spin), build_S(triple), NEWTON_MAX_POWER, NEWTON_TOL)
    )
    report.extend(_casimir_checks(triple))
    if twice == 1:
        report.extend(entanglement_checks(tol))
    return report


# ============================================================
# SWEEP
# ============================================================

async def sweep(
    max_twice: int,
    tol: float,
    concurrency: int,
    tamper_delta: float | None = None,
) -> list[tuple[HalfInteger, IdentityReport]]:
    semaphore = asyncio.Semaphore(concurrency)

    async def check_one(twice: int) -> tuple[HalfInteger, IdentityReport]:
        async with semaphore:
            report = await asyncio.to_thread(spin_checks, twice, tol, tamper_delta)
        spin = HalfInteger.from_twice(twice)
        if report.all_passed:
            logger.info("s=%s: %d checks passed", spin, len(report))
        else:
            logger.warning(
                "s=%s: %d of %d checks failed (%s)",
                spin, len(report.failures), len(report),
                ", ".join(c.name for c in report.failures),
            )
        return spin, report

    return await asyncio.gather(*(check_one(t) for t in range(1, max_twice + 1)))


def build(args: argparse.Namespace) -> ReportDocument:
    max_twice = args.max_twice_spin if args.max_twice_spin is not None else settings.PL_MAX_TWICE_SPIN
    if max_twice < 1:
        raise ValueError(f"--max-twice-spin must be at least 1, got {max_twice}")
    HalfInteger.from_twice(max_twice).require_buildable()
    concurrency = args.concurrency if args.concurrency is not None else settings.PL_CONCURRENCY
    if concurrency < 1:
        raise ValueError(f"--concurrency must be at least 1, got {concurrency}")
    tol = resolve_tol(args)

    logger.info("Sweep twice-spin 1..%d, tol=%g, concurrency=%d", max_twice, tol, concurrency)
    if args.debug_tamper is not None:
        logger.warning("Tampering S1[0,0] by %g", args.debug_tamper)

    results = asyncio.run(sweep(max_twice, tol, concurrency, args.debug_tamper))

    doc = ReportDocument(command=NAME, payload={"max_twice_spin": max_twice, "tolerance": tol})
    summary = []
    for spin, report in results:
        doc.add_report(report, prefix=f"s={spin}: ")
        summary.append(
            {"spin": str(spin), "checks": len(report), "failed": len(report.failures)}
        )
    doc.payload["spins"] = summary
    return doc


def render(doc: ReportDocument) -> list[str]:
    lines = [f"{'spin':>6}  {'checks':>6}  {'failed':>6}"]
    for row in doc.payload["spins"]:
        lines.append(f"{row['spin']:>6}  {row['checks']:>6}  {row['failed']:>6}")
    return lines
