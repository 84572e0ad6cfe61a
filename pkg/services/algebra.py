"""
Dense complex matrix kernel and the spin matrices S1, S2, S3.

Matrices are numpy complex128 arrays. Builders return read-only arrays so a
SpinTriple can be shared between threads without copying.

Basis ordering is m = s, s-1, ..., -s, so S3 = diag(s, ..., -s).
"""

import itertools
import logging
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from services.errors import DimensionMismatchError, SpinValueError
from services.reports import IdentityReport

logger = logging.getLogger(__name__)

CMatrix = npt.NDArray[np.complex128]

DEFAULT_TOL = 1e-10
# Largest supported 2s; dimensions stay desk-scale.
MAX_TWICE = 64


# ============================================================
# SPIN VALUE
# ============================================================

@dataclass(frozen=True, order=True)
class HalfInteger:
    """Spin value s stored exactly as 2s."""
    twice: int

    @property
    def value(self) -> float:
        return self.twice / 2

    @property
    def dim(self) -> int:
        """Dimension 2s+1 of the spin representation."""
        return self.twice + 1

    @property
    def casimir(self) -> float:
        """s(s+1)."""
        return self.value * (self.value + 1)

    @classmethod
    def from_twice(cls, twice: int) -> "HalfInteger":
        return cls(int(twice))

    @classmethod
    def parse(cls, text: str) -> "HalfInteger":
        """Parse "k" or "k/2"."""
        raw = text.strip()
        try:
            if "/" in raw:
                num, den = raw.split("/", 1)
                if int(den) != 2:
                    raise SpinValueError(f"spin denominator must be 2, got {text!r}")
                return cls(int(num))
            return cls(2 * int(raw))
        except ValueError as e:
            if isinstance(e, SpinValueError):
                raise
            raise SpinValueError(f"cannot parse spin {text!r}: expected k or k/2") from e

    def require_buildable(self) -> "HalfInteger":
        if self.twice < 1:
            raise SpinValueError(f"spin must be at least 1/2, got {self}")
        if self.twice > MAX_TWICE:
            raise SpinValueError(f"spin {self} exceeds the supported maximum {MAX_TWICE}/2")
        return self

    def __str__(self) -> str:
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"


# ============================================================
# MATRIX KERNEL
# ============================================================

def freeze(a: npt.ArrayLike) -> CMatrix:
    """Copy into a read-only complex128 array."""
    arr = np.array(a, dtype=np.complex128)
    arr.setflags(write=False)
    return arr


def identity(n: int) -> CMatrix:
    return np.eye(n, dtype=np.complex128)


def _require_square(*mats: CMatrix) -> int:
    n = None
    for m in mats:
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatchError(f"expected a square matrix, got shape {m.shape}")
        if n is not None and m.shape[0] != n:
            raise DimensionMismatchError(f"dimension mismatch: {n} vs {m.shape[0]}")
        n = m.shape[0]
    assert n is not None
    return n


def matmul(a: CMatrix, b: CMatrix) -> CMatrix:
    if a.shape[-1] != b.shape[0]:
        raise DimensionMismatchError(f"cannot multiply {a.shape} by {b.shape}")
    return np.asarray(a @ b, dtype=np.complex128)


def add(a: CMatrix, b: CMatrix) -> CMatrix:
    if a.shape != b.shape:
        raise DimensionMismatchError(f"cannot add {a.shape} and {b.shape}")
    return np.asarray(a + b, dtype=np.complex128)


def scale(c: complex, a: CMatrix) -> CMatrix:
    return np.asarray(c * a, dtype=np.complex128)


def adjoint(a: CMatrix) -> CMatrix:
    """Conjugate transpose."""
    return np.asarray(a, dtype=np.complex128).conj().T


def commutator(a: CMatrix, b: CMatrix) -> CMatrix:
    """[A, B] = AB - BA."""
    _require_square(a, b)
    return a @ b - b @ a


def anticommutator(a: CMatrix, b: CMatrix) -> CMatrix:
    """[A, B]_+ = AB + BA."""
    _require_square(a, b)
    return a @ b + b @ a


def kron(a: CMatrix, b: CMatrix) -> CMatrix:
    """Kronecker product with blocks A[i, j] * B."""
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def matrix_power(m: CMatrix, n: int) -> CMatrix:
    if n < 0:
        raise ValueError(f"power must be non-negative, got {n}")
    _require_square(m)
    return np.linalg.matrix_power(np.asarray(m, dtype=np.complex128), n)


def trace(m: CMatrix) -> complex:
    _require_square(m)
    return complex(np.trace(m))


def max_abs_diff(a: npt.ArrayLike, b: npt.ArrayLike) -> float:
    """Max-abs entry difference; the single comparison used everywhere."""
    a_arr = np.asarray(a, dtype=np.complex128)
    b_arr = np.asarray(b, dtype=np.complex128)
    if a_arr.shape != b_arr.shape:
        raise DimensionMismatchError(f"cannot compare {a_arr.shape} with {b_arr.shape}")
    if a_arr.size == 0:
        return 0.0
    return float(np.max(np.abs(a_arr - b_arr)))


def max_abs(a: npt.ArrayLike) -> float:
    arr = np.asarray(a)
    return float(np.max(np.abs(arr))) if arr.size else 0.0


# ============================================================
# SPIN MATRICES
# ============================================================

@dataclass(frozen=True, eq=False)
class SpinTriple:
    """Spin s with its three (2s+1)x(2s+1) spin matrices."""
    s: HalfInteger
    S1: CMatrix
    S2: CMatrix
    S3: CMatrix

    def __post_init__(self) -> None:
        d = self.s.dim
        for name in ("S1", "S2", "S3"):
            m = getattr(self, name)
            if m.shape != (d, d):
                raise DimensionMismatchError(f"{name} has shape {m.shape}, expected {(d, d)}")

    @property
    def matrices(self) -> tuple[CMatrix, CMatrix, CMatrix]:
        return (self.S1, self.S2, self.S3)

    @property
    def dim(self) -> int:
        return self.s.dim


def raising_operator(s: HalfInteger) -> CMatrix:
    """S+ with sqrt(s(s+1) - m(m+1)) on the first superdiagonal."""
    m = s.value - np.arange(s.dim - 1, dtype=float) - 1.0
    return np.diag(np.sqrt(s.casimir - m * (m + 1.0)), k=1).astype(np.complex128)


def make_spin_matrices(s: HalfInteger) -> SpinTriple:
    s.require_buildable()
    s_plus = raising_operator(s)
    s_minus = s_plus.conj().T
    s1 = (s_plus + s_minus) / 2
    s2 = (s_plus - s_minus) / 2j
    s3 = np.diag(s.value - np.arange(s.dim, dtype=float)).astype(np.complex128)
    return SpinTriple(s=s, S1=freeze(s1), S2=freeze(s2), S3=freeze(s3))


def tamper(t: SpinTriple, row: int = 0, col: int = 0, delta: float = 1e-3) -> SpinTriple:
    """Copy of t with one S1 entry perturbed. Debug hook for the harness."""
    s1 = np.array(t.S1)
    s1[row, col] += delta
    logger.warning("Tampered S1[%d, %d] by %g for spin %s", row, col, delta, t.s)
    return SpinTriple(s=t.s, S1=freeze(s1), S2=t.S2, S3=t.S3)


def _label(j: int) -> str:
    return f"S{j + 1}"


def verify_spin_identities(
    t: SpinTriple,
    tol: float = DEFAULT_TOL,
    include_spectra: bool = True,
) -> IdentityReport:
    """Residuals of the defining spin identities; failures are data."""
    report = IdentityReport()
    mats = t.matrices
    d = t.dim
    cas = t.s.casimir

    for j in range(3):
        k, l = (j + 1) % 3, (j + 2) % 3
        report.add(
            f"[{_label(j)},{_label(k)}]=i{_label(l)}",
            max_abs_diff(commutator(mats[j], mats[k]), 1j * mats[l]),
            tol,
        )

    total = sum((m @ m for m in mats), np.zeros((d, d), dtype=np.complex128))
    report.add("S1^2+S2^2+S3^2=s(s+1)I", max_abs_diff(total, cas * identity(d)), tol)

    expected_sq = cas * d / 3
    for j in range(3):
        report.add(
            f"tr({_label(j)}^2)=s(s+1)(2s+1)/3",
            abs(trace(mats[j] @ mats[j]) - expected_sq),
            tol,
        )

    for j, k in itertools.combinations(range(3), 2):
        report.add(f"tr({_label(j)}{_label(k)})=0", abs(trace(mats[j] @ mats[k])), tol)

    for n in (1, 3, 5, 7):
        worst = max(abs(trace(matrix_power(m, n))) for m in mats)
        report.add(f"tr(Sj^{n})=0", worst, tol)

    products = [mats[j] @ mats[k] for j in range(3) for k in range(3) if j != k]
    worst_kron = max(abs(trace(kron(a, b))) for a in products for b in products)
    report.add("tr(SjSk x SlSm)=0", worst_kron, tol)

    if include_spectra:
        from services.spectral import SPECTRUM_MATCH_TOL, eigenvalues_dense

        expected = s_ladder(t.s)
        for j in range(3):
            computed = np.sort(eigenvalues_dense(mats[j]).eigenvalues.real)[::-1]
            report.add(
                f"spectrum({_label(j)})={{s..-s}}",
                float(np.max(np.abs(computed - expected))),
                max(tol, SPECTRUM_MATCH_TOL),
            )

    for check in report.checks:
        logger.debug("spin %s: %s residual=%.3e", t.s, check.name, check.residual)
    return report


def s_ladder(s: HalfInteger) -> npt.NDArray[np.float64]:
    """The values s, s-1, ..., -s."""
    return s.value - np.arange(s.dim, dtype=float)


def even_power_traces(t: SpinTriple, max_n: int = 8) -> dict[int, dict[str, float]]:
    """tr(Sj^n) for even n next to s(s+1)(2s+1)/3. Reported, never asserted."""
    reference = t.s.casimir * t.dim / 3
    out: dict[int, dict[str, float]] = {}
    for n in range(2, max_n + 1, 2):
        values = [trace(matrix_power(m, n)).real for m in t.matrices]
        out[n] = {
            "S1": values[0],
            "S2": values[1],
            "S3": values[2],
            "s(s+1)(2s+1)/3": reference,
        }
    return out
