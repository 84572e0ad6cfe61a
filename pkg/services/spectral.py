"""
Spectral analysis of the block matrix S.

- closed-form spectrum and trace-power predictors
- dense eigensolver: Hessenberg reduction + Wilkinson-shifted complex QR
- rank-nullity multiplicities and eigenspace bases
- Newton-identity (power sum) moment matching

The solver is the most delicate piece; the trace and Newton checks do not
depend on it.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt
from scipy import linalg

from services.algebra import CMatrix, HalfInteger, identity, trace
from services.errors import DimensionMismatchError, EigensolverError
from services.reports import IdentityReport

logger = logging.getLogger(__name__)

RANK_TOL = 1e-10
NEWTON_TOL = 1e-8
MATCH_TOL = 1e-7
SPECTRUM_MATCH_TOL = 1e-9
CLUSTER_TOL = 1e-6

# Subdiagonal h[k, k-1] is dropped once below this times |h[k-1,k-1]| + |h[k,k]|.
DEFLATION_EPS = 1e-14
SWEEPS_PER_DIMENSION = 30
MAX_DENSE_DIM = 256


# ============================================================
# PREDICTIONS
# ============================================================

@dataclass(frozen=True)
class SpectrumPrediction:
    """Eigenvalue -> algebraic multiplicity, zero multiplicities omitted."""
    entries: tuple[tuple[complex, int], ...]

    @property
    def total(self) -> int:
        return sum(mult for _, mult in self.entries)

    def power_sum(self, n: int) -> complex:
        return sum((mult * value**n for value, mult in self.entries), 0j)

    def multiset(self) -> npt.NDArray[np.complex128]:
        return np.array(
            [value for value, mult in self.entries for _ in range(mult)],
            dtype=np.complex128,
        )


def complex_pair(s: HalfInteger) -> tuple[complex, complex]:
    """(-1 +/- i sqrt(4s(s+1) - 1)) / 2, built as exact mirror images."""
    half_root = math.sqrt(4 * s.casimir - 1) / 2
    return complex(-0.5, half_root), complex(-0.5, -half_root)


def predict_spectrum(s: HalfInteger) -> SpectrumPrediction:
    s.require_buildable()
    v = s.value
    plus, minus = complex_pair(s)
    candidates = [
        (complex(v), s.twice + 3),
        (complex(-(v + 1)), s.twice - 1),
        (plus, s.twice + 1),
        (minus, s.twice + 1),
    ]
    return SpectrumPrediction(tuple((val, m) for val, m in candidates if m > 0))


def perturb_multiplicity(pred: SpectrumPrediction, src: int, dst: int) -> SpectrumPrediction:
    """Move one unit of multiplicity from entry src to entry dst."""
    entries = [list(e) for e in pred.entries]
    if entries[src][1] < 1:
        raise ValueError(f"entry {src} has no multiplicity to move")
    entries[src][1] -= 1
    entries[dst][1] += 1
    return SpectrumPrediction(tuple((val, m) for val, m in entries if m > 0))


def trace_power_closed_form(s: HalfInteger, n: int) -> complex:
    """tr(S^N) from the four-term eigenvalue formula; imaginary residue kept."""
    if n < 1:
        raise ValueError(f"power must be positive, got {n}")
    v = s.value
    plus, minus = complex_pair(s)
    return (
        plus**n * (2 * v + 1)
        + minus**n * (2 * v + 1)
        + (-1) ** n * (v + 1) ** n * (2 * v - 1)
        + v**n * (2 * v + 3)
    )


def trace_power_table(s: HalfInteger, n: int) -> float:
    """Polynomial table rows tr(S^N), N = 1..8."""
    v = s.value
    x = s.casimir
    base = x * (2 * v + 1)
    rows = {
        1: 0.0,
        2: 0.0,
        3: base * 2,
        4: base * 4 * (x - 1),
        5: base * (6 - 8 * x),
        6: base * 4 * (3 * x - 2),
        7: base * 2 * (x * (v**2 + v - 8) + 5),
        8: base * 4 * (v**6 + 3 * v**5 + v**4 - 3 * v**3 + 3 * v**2 + 5 * v - 3),
    }
    if n not in rows:
        raise ValueError(f"table rows cover N = 1..8, got {n}")
    return rows[n]


def trace_power_direct(m: CMatrix, n: int) -> complex:
    """tr(M^N) by repeated multiplication."""
    if n < 1:
        raise ValueError(f"power must be positive, got {n}")
    m = np.asarray(m, dtype=np.complex128)
    power = m
    for _ in range(n - 1):
        power = power @ m
    return trace(power)


# ============================================================
# DENSE EIGENSOLVER
# ============================================================

@dataclass(frozen=True)
class EigenCluster:
    value: complex
    algebraic: int
    geometric: int


@dataclass
class EigenResult:
    eigenvalues: npt.NDArray[np.complex128]
    clusters: list[EigenCluster] = field(default_factory=list)
    residual: float = 0.0
    sweeps: int = 0


def canonical_sort(values: npt.ArrayLike) -> npt.NDArray[np.complex128]:
    """Ascending by real part, then imaginary part."""
    arr = np.asarray(values, dtype=np.complex128)
    return arr[np.lexsort((arr.imag, arr.real))]


def _wilkinson_shift(block: CMatrix) -> complex:
    """Eigenvalue of the trailing 2x2 block closest to its last diagonal entry."""
    a, b = block[0, 0], block[0, 1]
    c, d = block[1, 0], block[1, 1]
    half_tr = (a + d) / 2
    disc = np.sqrt(((a - d) / 2) ** 2 + b * c)
    mu1, mu2 = half_tr + disc, half_tr - disc
    return complex(mu1 if abs(mu1 - d) <= abs(mu2 - d) else mu2)


def _qr_step(window: CMatrix, mu: complex) -> None:
    """One explicit shifted QR step on an upper Hessenberg window, in place."""
    m = window.shape[0]
    window[np.diag_indices(m)] -= mu
    rotations = []
    for k in range(m - 1):
        x, y = window[k, k], window[k + 1, k]
        r = math.hypot(abs(x), abs(y))
        if r == 0.0:
            c, s = 1.0 + 0j, 0j
        else:
            c, s = x / r, y / r
        g = np.array([[np.conj(c), np.conj(s)], [-s, c]])
        window[k : k + 2, k:] = g @ window[k : k + 2, k:]
        rotations.append(g)
    for k, g in enumerate(rotations):
        window[: k + 2, k : k + 2] = window[: k + 2, k : k + 2] @ g.conj().T
    window[np.diag_indices(m)] += mu


def _hessenberg_qr(h: CMatrix) -> tuple[npt.NDArray[np.complex128], int]:
    n = h.shape[0]
    h = np.array(h, dtype=np.complex128)
    eigenvalues = np.empty(n, dtype=np.complex128)
    norm = float(np.max(np.abs(h))) if n else 0.0
    budget = SWEEPS_PER_DIMENSION * n
    sweeps = 0
    stalled = 0
    hi = n - 1
    while hi >= 0:
        lo = hi
        while lo > 0:
            scale = abs(h[lo - 1, lo - 1]) + abs(h[lo, lo]) or norm
            if abs(h[lo, lo - 1]) <= DEFLATION_EPS * scale:
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            eigenvalues[hi] = h[hi, hi]
            hi -= 1
            stalled = 0
            continue
        if sweeps >= budget:
            raise EigensolverError(
                f"shifted QR did not converge within {budget} sweeps (dimension {n})"
            )
        sweeps += 1
        stalled += 1
        if stalled % 11 == 10:
            # exceptional shift breaks cycles
            mu = h[hi, hi] + 1.5 * abs(h[hi, hi - 1])
        else:
            mu = _wilkinson_shift(h[hi - 1 : hi + 1, hi - 1 : hi + 1])
        _qr_step(h[lo : hi + 1, lo : hi + 1], mu)
    return eigenvalues, sweeps


def _cluster(values: npt.NDArray[np.complex128]) -> list[list[complex]]:
    groups: list[list[complex]] = []
    for z in values:
        for group in groups:
            center = sum(group) / len(group)
            if abs(z - center) <= CLUSTER_TOL * max(1.0, abs(center)):
                group.append(complex(z))
                break
        else:
            groups.append([complex(z)])
    return groups


def smallest_singular_value(m: CMatrix, lam: complex) -> float:
    n = m.shape[0]
    return float(linalg.svdvals(m - lam * identity(n))[-1])


def eigenvalues_dense(m: CMatrix, rank_tol: float = RANK_TOL) -> EigenResult:
    """All eigenvalues of a square complex matrix, canonically sorted."""
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {m.shape}")
    n = m.shape[0]
    if n > MAX_DENSE_DIM:
        raise DimensionMismatchError(f"dimension {n} exceeds {MAX_DENSE_DIM}")

    h = linalg.hessenberg(m)
    values, sweeps = _hessenberg_qr(h)
    values = canonical_sort(values)
    logger.debug("QR converged in %d sweeps for dimension %d", sweeps, n)

    clusters = []
    residual = 0.0
    for group in _cluster(values):
        center = complex(sum(group) / len(group))
        clusters.append(
            EigenCluster(
                value=center,
                algebraic=len(group),
                geometric=geometric_multiplicity(m, center, rank_tol),
            )
        )
        residual = max(residual, smallest_singular_value(m, center))
    return EigenResult(eigenvalues=values, clusters=clusters, residual=residual, sweeps=sweeps)


def match_spectra(
    computed: npt.ArrayLike,
    predicted: SpectrumPrediction | npt.ArrayLike,
) -> float:
    """Greedy nearest-neighbour matching; returns the largest matched distance."""
    a = np.asarray(computed, dtype=np.complex128).ravel()
    if isinstance(predicted, SpectrumPrediction):
        b = predicted.multiset()
    else:
        b = np.asarray(predicted, dtype=np.complex128).ravel()
    if a.size != b.size:
        return math.inf
    if a.size == 0:
        return 0.0
    dist = np.abs(a[:, None] - b[None, :])
    used_a = np.zeros(a.size, dtype=bool)
    used_b = np.zeros(b.size, dtype=bool)
    worst = 0.0
    for flat in np.argsort(dist, axis=None, kind="stable"):
        i, j = divmod(int(flat), b.size)
        if used_a[i] or used_b[j]:
            continue
        used_a[i] = used_b[j] = True
        worst = max(worst, float(dist[i, j]))
    return worst


# ============================================================
# MULTIPLICITIES
# ============================================================

def geometric_multiplicity(m: CMatrix, lam: complex, tol: float = RANK_TOL) -> int:
    """dim - rank(M - lam I), rank counted against tol * sigma_max."""
    n = m.shape[0]
    sv = linalg.svdvals(np.asarray(m, dtype=np.complex128) - lam * identity(n))
    if sv[0] == 0.0:
        return n
    rank = int(np.count_nonzero(sv > tol * sv[0]))
    return n - rank


def eigenspace_basis(m: CMatrix, lam: complex, tol: float = RANK_TOL) -> list[npt.NDArray[np.complex128]]:
    """Orthonormal basis of null(M - lam I); empty if lam is not an eigenvalue."""
    n = m.shape[0]
    shifted = np.asarray(m, dtype=np.complex128) - lam * identity(n)
    basis = linalg.null_space(shifted, rcond=tol)
    return [basis[:, k].copy() for k in range(basis.shape[1])]


@dataclass(frozen=True)
class MultiplicityProbe:
    value: complex
    algebraic: int
    geometric: int

    @property
    def consistent(self) -> bool:
        return self.algebraic == self.geometric


def probe_multiplicities(
    m: CMatrix,
    pred: SpectrumPrediction,
    tol: float = RANK_TOL,
) -> list[MultiplicityProbe]:
    """Geometric vs predicted algebraic multiplicity; mismatches are logged, not raised."""
    probes = []
    for value, mult in pred.entries:
        geo = geometric_multiplicity(m, value, tol)
        probe = MultiplicityProbe(value=value, algebraic=mult, geometric=geo)
        if not probe.consistent:
            logger.warning(
                "Eigenvalue %s: geometric multiplicity %d differs from algebraic %d",
                value, geo, mult,
            )
        probes.append(probe)
    return probes


def newton_identity_check(
    pred: SpectrumPrediction,
    m: CMatrix,
    max_n: int = 16,
    tol: float = NEWTON_TOL,
) -> IdentityReport:
    """Power sums of pred against tr(M^N), N = 1..max_n.

    Residuals are relative: |pred - direct| / (1 + |direct|).
    """
    report = IdentityReport()
    m = np.asarray(m, dtype=np.complex128)
    power = identity(m.shape[0])
    for n in range(1, max_n + 1):
        power = power @ m
        direct = trace(power)
        predicted = pred.power_sum(n)
        report.add(f"power sum N={n}", abs(predicted - direct) / (1 + abs(direct)), tol)
    failing = [c.name for c in report.failures]
    if failing:
        logger.info("Newton identity mismatches: %s", ", ".join(failing))
    return report
