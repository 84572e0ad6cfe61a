"""
Pauli-Lubanski block matrix S, its inverse, the T1/T2/T3 split and W^mu.

Block (rho, lambda) of S sits at row offset rho*d and column offset
lambda*d, d = 2s+1, rho, lambda in {0, 1, 2, 3}.

Conventions:
- metric g = diag(-1, 1, 1, 1)
- epsilon^{0123} = +1 (symbol, not a density)
- momentum components are taken as p_nu exactly as given
"""

import itertools
import logging
import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from services.algebra import (
    DEFAULT_TOL,
    CMatrix,
    HalfInteger,
    SpinTriple,
    adjoint,
    anticommutator,
    commutator,
    freeze,
    identity,
    make_spin_matrices,
    max_abs,
    max_abs_diff,
)
from services.reports import IdentityReport

logger = logging.getLogger(__name__)

METRIC = np.diag([-1.0, 1.0, 1.0, 1.0])
EPSILON_SIGN = 1

# c / (s(s+1) p.p) measured at s=1/2, p=(1,0,0,0) by empirical_normalization().
# W^mu carries no 1/2, so the textbook factor 1/4 inverts to 4 here.
CASIMIR_NORMALIZATION = 4.0

CASIMIR_TOL = 1e-9

SpinInput = HalfInteger | SpinTriple


def _triple(spin: SpinInput) -> SpinTriple:
    if isinstance(spin, SpinTriple):
        return spin
    return make_spin_matrices(spin)


def _assemble(blocks: list[list[CMatrix | None]], d: int) -> CMatrix:
    zero = np.zeros((d, d), dtype=np.complex128)
    return freeze(np.block([[zero if b is None else b for b in row] for row in blocks]))


# ============================================================
# TYPES
# ============================================================

@dataclass(frozen=True)
class FourMomentum:
    """Covariant components p_0..p_3 in natural units."""
    p0: float
    p1: float
    p2: float
    p3: float

    def __post_init__(self) -> None:
        if not all(math.isfinite(x) for x in self.components):
            raise ValueError(f"momentum components must be finite, got {self.components}")

    @property
    def components(self) -> tuple[float, float, float, float]:
        return (self.p0, self.p1, self.p2, self.p3)

    def as_array(self) -> npt.NDArray[np.float64]:
        return np.array(self.components, dtype=float)

    @property
    def euclidean_norm_sq(self) -> float:
        return float(sum(x * x for x in self.components))

    @classmethod
    def parse(cls, text: str) -> "FourMomentum":
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise ValueError(f"momentum needs four comma-separated reals, got {text!r}")
        return cls(*(float(p) for p in parts))

    def __add__(self, other: "FourMomentum") -> "FourMomentum":
        return FourMomentum(*(a + b for a, b in zip(self.components, other.components, strict=True)))

    def __rmul__(self, c: float) -> "FourMomentum":
        return FourMomentum(*(c * a for a in self.components))


@dataclass(frozen=True, eq=False)
class LubanskiMatrices:
    s: HalfInteger
    S: CMatrix
    T1: CMatrix
    T2: CMatrix
    T3: CMatrix


@dataclass(frozen=True)
class CasimirReport:
    """Outcome of the sum_mu W_mu W^mu check."""
    spin: HalfInteger
    momentum: FourMomentum
    is_scalar: bool
    off_scalar_residual: float
    scalar: float
    minkowski_square: float
    lightlike: bool
    ratio: float | None
    predicted: float
    relative_error: float
    passed: bool
    tolerance: float


def minkowski_dot(p: FourMomentum, q: FourMomentum) -> float:
    return -p.p0 * q.p0 + p.p1 * q.p1 + p.p2 * q.p2 + p.p3 * q.p3


# ============================================================
# BLOCK MATRICES
# ============================================================

def build_S(spin: SpinInput) -> CMatrix:
    t = _triple(spin)
    s1, s2, s3 = t.matrices
    return _assemble(
        [
            [None, s1, s2, s3],
            [-s1, None, -1j * s3, 1j * s2],
            [-s2, 1j * s3, None, -1j * s1],
            [-s3, -1j * s2, 1j * s1, None],
        ],
        t.dim,
    )


def build_S_inverse(spin: SpinInput) -> CMatrix:
    t = _triple(spin)
    s1, s2, s3 = t.matrices
    eye = identity(t.dim)
    inv = _assemble(
        [
            [-eye, -s1, -s2, -s3],
            [s1, eye, -1j * s3, 1j * s2],
            [s2, 1j * s3, eye, -1j * s1],
            [s3, -1j * s2, 1j * s1, eye],
        ],
        t.dim,
    )
    return freeze(inv / t.s.casimir)


def build_T1(spin: SpinInput) -> CMatrix:
    """Skew-hermitian part: first block row and column of S."""
    t = _triple(spin)
    s1, s2, s3 = t.matrices
    return _assemble(
        [
            [None, s1, s2, s3],
            [-s1, None, None, None],
            [-s2, None, None, None],
            [-s3, None, None, None],
        ],
        t.dim,
    )


def build_T2(spin: SpinInput) -> CMatrix:
    """Hermitian part: lower-right 3x3 blocks of S."""
    t = _triple(spin)
    s1, s2, s3 = t.matrices
    return _assemble(
        [
            [None, None, None, None],
            [None, None, -1j * s3, 1j * s2],
            [None, 1j * s3, None, -1j * s1],
            [None, -1j * s2, 1j * s1, None],
        ],
        t.dim,
    )


def build_T3(spin: SpinInput) -> CMatrix:
    """Closed form of [T1, T2]."""
    t = _triple(spin)
    s1, s2, s3 = t.matrices
    return _assemble(
        [
            [None, -s1, -s2, -s3],
            [-s1, None, None, None],
            [-s2, None, None, None],
            [-s3, None, None, None],
        ],
        t.dim,
    )


def build_all(spin: SpinInput) -> LubanskiMatrices:
    t = _triple(spin)
    return LubanskiMatrices(s=t.s, S=build_S(t), T1=build_T1(t), T2=build_T2(t), T3=build_T3(t))


def t3_t1_block_form(spin: SpinInput) -> CMatrix:
    """Closed form of [T3, T1]: 2 diag(s(s+1)I, -(Si Sj))."""
    t = _triple(spin)
    mats = t.matrices
    blocks: list[list[CMatrix | None]] = [[t.s.casimir * identity(t.dim), None, None, None]]
    for i in range(3):
        blocks.append([None] + [-(mats[i] @ mats[j]) for j in range(3)])
    return freeze(2 * _assemble(blocks, t.dim))


def commutator_block_form(spin: SpinInput) -> CMatrix:
    """[S, S*] assembled as 2 (i[S2,S3], i[S3,S1], i[S1,S2]) in the first row and column."""
    t = _triple(spin)
    s1, s2, s3 = t.matrices
    edge = [1j * commutator(s2, s3), 1j * commutator(s3, s1), 1j * commutator(s1, s2)]
    return freeze(
        2
        * _assemble(
            [
                [None, *edge],
                [edge[0], None, None, None],
                [edge[1], None, None, None],
                [edge[2], None, None, None],
            ],
            t.dim,
        )
    )


def nonnormality(spin: SpinInput) -> float:
    """max-abs of [S, S*]; zero would mean S is normal."""
    s = build_S(spin)
    return max_abs(commutator(s, adjoint(s)))


# ============================================================
# IDENTITY CHECKS
# ============================================================

def verify_inverse(spin: SpinInput, tol: float = DEFAULT_TOL) -> IdentityReport:
    t = _triple(spin)
    s = build_S(t)
    s_inv = build_S_inverse(t)
    eye = identity(4 * t.dim)
    report = IdentityReport()
    report.add("S S^-1=I", max_abs_diff(s @ s_inv, eye), tol)
    report.add("S^-1 S=I", max_abs_diff(s_inv @ s, eye), tol)
    return report


def verify_decomposition(spin: SpinInput, tol: float = DEFAULT_TOL) -> IdentityReport:
    """S = T1 + T2 and the (skew-)hermitian, normal structure of the parts."""
    m = build_all(spin)
    report = IdentityReport()
    report.add("S=T1+T2", max_abs_diff(m.T1 + m.T2, m.S), tol)
    report.add("T1*=-T1", max_abs_diff(adjoint(m.T1), -m.T1), tol)
    report.add("T2*=T2", max_abs_diff(adjoint(m.T2), m.T2), tol)
    report.add("[T1,T1*]=0", max_abs(commutator(m.T1, adjoint(m.T1))), tol)
    report.add("[T2,T2*]=0", max_abs(commutator(m.T2, adjoint(m.T2))), tol)
    report.add("[T1,T2]=T3", max_abs_diff(commutator(m.T1, m.T2), m.T3), tol)
    return report


def verify_T_algebra(spin: SpinInput, tol: float = DEFAULT_TOL) -> IdentityReport:
    """The nine (anti)commutator identities, all against the closed-form T3."""
    t = _triple(spin)
    m = build_all(t)
    cas = t.s.casimir
    zero = np.zeros_like(m.S)

    t3_t1 = commutator(m.T3, m.T1)
    t3_t2 = commutator(m.T3, m.T2)
    s_comm = commutator(m.S, adjoint(m.S))

    report = IdentityReport()
    report.add("[T3,T2]=T1", max_abs_diff(t3_t2, m.T1), tol)
    report.add("[T3,T1]=block form", max_abs_diff(t3_t1, t3_t1_block_form(t)), tol)
    report.add("[[T3,T1],T1]=-4s(s+1)T3", max_abs_diff(commutator(t3_t1, m.T1), -4 * cas * m.T3), tol)
    report.add("[[T3,T1],T2]=0", max_abs_diff(commutator(t3_t1, m.T2), zero), tol)
    report.add("[[T3,T2],T1]=0", max_abs_diff(commutator(t3_t2, m.T1), zero), tol)
    report.add("[[T3,T2],T2]=T3", max_abs_diff(commutator(t3_t2, m.T2), m.T3), tol)
    report.add("[T1,T2]_+=-T1", max_abs_diff(anticommutator(m.T1, m.T2), -m.T1), tol)
    report.add("[S,S*]=2T3", max_abs_diff(s_comm, 2 * m.T3), tol)
    report.add("[S,S*]=block form", max_abs_diff(s_comm, commutator_block_form(t)), tol)

    for check in report.checks:
        logger.debug("spin %s: %s residual=%.3e", t.s, check.name, check.residual)
    return report


# ============================================================
# PAULI-LUBANSKI VECTOR
# ============================================================

def levi_civita(dim: int = 4) -> npt.NDArray[np.float64]:
    """Totally antisymmetric symbol with epsilon[0, 1, ..., dim-1] = EPSILON_SIGN."""
    eps = np.zeros((dim,) * dim)
    for perm in itertools.permutations(range(dim)):
        inversions = sum(
            1 for i in range(dim) for j in range(i + 1, dim) if perm[i] > perm[j]
        )
        eps[perm] = EPSILON_SIGN * (-1) ** inversions
    return eps


def spin_blocks(spin: SpinInput) -> npt.NDArray[np.complex128]:
    """S_{rho lambda} as an array of shape (4, 4, d, d)."""
    t = _triple(spin)
    d = t.dim
    return build_S(t).reshape(4, d, 4, d).transpose(0, 2, 1, 3)


def build_W(spin: SpinInput, p: FourMomentum) -> tuple[CMatrix, CMatrix, CMatrix, CMatrix]:
    """W^mu = sum eps^{mu nu rho lambda} S_{rho lambda} p_nu."""
    w = np.einsum("mnrl,rlij,n->mij", levi_civita(4), spin_blocks(spin), p.as_array())
    return tuple(freeze(w[mu]) for mu in range(4))  # type: ignore[return-value]


def casimir_matrix(spin: SpinInput, p: FourMomentum) -> CMatrix:
    """sum_mu W_mu W^mu with W_mu = g_{mu mu} W^mu."""
    w = build_W(spin, p)
    return sum(METRIC[mu, mu] * (w[mu] @ w[mu]) for mu in range(4))  # type: ignore[return-value]


def empirical_normalization(
    spin: SpinInput = HalfInteger(1),
    p: FourMomentum = FourMomentum(1.0, 0.0, 0.0, 0.0),
) -> float:
    """c / (s(s+1) p.p) for a non-lightlike p."""
    t = _triple(spin)
    c = casimir_matrix(t, p)
    scalar = np.trace(c).real / t.dim
    return float(scalar / (t.s.casimir * minkowski_dot(p, p)))


def casimir_W(spin: SpinInput, p: FourMomentum, tol: float = CASIMIR_TOL) -> CasimirReport:
    t = _triple(spin)
    d = t.dim
    c = casimir_matrix(t, p)
    scalar = complex(np.trace(c)) / d
    off_scalar = max_abs_diff(c, scalar * identity(d))
    is_scalar = off_scalar <= tol

    pp = minkowski_dot(p, p)
    lightlike = abs(pp) <= tol * max(1.0, p.euclidean_norm_sq)
    predicted = CASIMIR_NORMALIZATION * t.s.casimir * pp
    ratio = None if lightlike else float(scalar.real / pp)

    if lightlike:
        logger.warning("Momentum %s is lightlike; ratio c/(p.p) undefined", p.components)
        relative_error = abs(scalar) / max(1.0, t.s.casimir * p.euclidean_norm_sq)
    else:
        relative_error = abs(scalar - predicted) / abs(predicted)

    return CasimirReport(
        spin=t.s,
        momentum=p,
        is_scalar=is_scalar,
        off_scalar_residual=off_scalar,
        scalar=float(scalar.real),
        minkowski_square=pp,
        lightlike=lightlike,
        ratio=ratio,
        predicted=predicted,
        relative_error=float(relative_error),
        passed=bool(is_scalar and relative_error <= tol),
        tolerance=tol,
    )
