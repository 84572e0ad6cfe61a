"""
Entanglement of the spin-1/2 eigenvectors of S (eigenvalue 1/2).

Qubit convention: amplitude index = 4*q1 + 2*q2 + q3 (q1 most significant),
so the 8-component eigenvector columns read directly as triple Kronecker
products.

Measures:
- three_tangle: Cayley hyperdeterminant, 4|d1 - 2 d2 + 4 d3|
- epsilon_contraction_tangle: epsilon-contraction n-tangle (n >= 2)
- schmidt_analysis: singular values across a 1|2 bipartition
"""

import logging
import re
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np
import numpy.typing as npt
from scipy import linalg

from services.algebra import kron
from services.errors import StateSpecError, UnsupportedTangleError, ZeroStateError

logger = logging.getLogger(__name__)

ENTANGLEMENT_THRESHOLD = 1e-9
ZERO_NORM = 1e-12

EPSILON_2 = np.array([[0.0, 1.0], [-1.0, 0.0]])

KET_0 = np.array([1.0, 0.0], dtype=np.complex128)
KET_1 = np.array([0.0, 1.0], dtype=np.complex128)


# ============================================================
# STATES
# ============================================================

@dataclass(frozen=True, eq=False)
class QubitState:
    """Normalized pure state of n qubits; the constructor normalizes."""
    amplitudes: npt.NDArray[np.complex128]

    def __post_init__(self) -> None:
        amps = np.array(self.amplitudes, dtype=np.complex128).ravel()
        n = amps.size
        if n < 2 or n & (n - 1):
            raise ValueError(f"state length must be a power of two >= 2, got {n}")
        norm = float(np.linalg.norm(amps))
        if norm < ZERO_NORM:
            raise ZeroStateError("state vector is zero")
        amps = amps / norm
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_qubits(self) -> int:
        return self.amplitudes.size.bit_length() - 1

    def tensor(self) -> npt.NDArray[np.complex128]:
        """Amplitudes as a (2, 2, ..., 2) array indexed by qubit."""
        return self.amplitudes.reshape((2,) * self.n_qubits)

    def amplitude(self, bits: str) -> complex:
        return complex(self.amplitudes[int(bits, 2)])

    def overlap(self, other: "QubitState") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def __neg__(self) -> "QubitState":
        return type(self)(-self.amplitudes)


@dataclass(frozen=True, eq=False)
class ThreeQubitState(QubitState):
    def __post_init__(self) -> None:
        super().__post_init__()
        if self.amplitudes.size != 8:
            raise ValueError(f"three-qubit state needs 8 amplitudes, got {self.amplitudes.size}")


def basis_state(bits: str) -> ThreeQubitState:
    amps = np.zeros(8, dtype=np.complex128)
    amps[int(bits, 2)] = 1.0
    return ThreeQubitState(amps)


def product_state(a: npt.ArrayLike, b: npt.ArrayLike, c: npt.ArrayLike) -> ThreeQubitState:
    return ThreeQubitState(kron(kron(np.asarray(a), np.asarray(b)), np.asarray(c)))


def ghz_state() -> ThreeQubitState:
    return ThreeQubitState(kron(kron(KET_0, KET_0), KET_0) + kron(kron(KET_1, KET_1), KET_1))


def w_state() -> ThreeQubitState:
    return ThreeQubitState(
        kron(kron(KET_0, KET_0), KET_1)
        + kron(kron(KET_0, KET_1), KET_0)
        + kron(kron(KET_1, KET_0), KET_0)
    )


def degenerate_eigenvectors() -> tuple[ThreeQubitState, ThreeQubitState, ThreeQubitState, ThreeQubitState]:
    """The four eigenvectors of S (spin 1/2) for eigenvalue 1/2."""
    v1 = kron(kron(KET_0, KET_1), KET_0) + kron(kron(KET_1, KET_1), KET_1)
    v2 = kron(KET_1, np.array([1, 0, 0, 1j]))
    v3 = kron(kron(KET_0, KET_1), KET_1) - kron(kron(KET_1, KET_1), KET_0)
    v4 = kron(KET_1, np.array([0, 1, 1j, 0]))
    return (ThreeQubitState(v1), ThreeQubitState(v2), ThreeQubitState(v3), ThreeQubitState(v4))


def combine(states: Sequence[QubitState], coeffs: Sequence[complex]) -> ThreeQubitState:
    """Normalized sum of coeffs[i] * states[i]."""
    if len(states) != len(coeffs):
        raise ValueError(f"{len(states)} states but {len(coeffs)} coefficients")
    if not states:
        raise ZeroStateError("empty combination")
    total = sum(
        (complex(c) * st.amplitudes for st, c in zip(states, coeffs, strict=True)),
        np.zeros_like(states[0].amplitudes),
    )
    if np.linalg.norm(total) < ZERO_NORM:
        raise ZeroStateError("combination cancels to the zero vector")
    return ThreeQubitState(total)


@dataclass(frozen=True, eq=False)
class ReferenceCombination:
    label: str
    state: ThreeQubitState
    expected_entangled: bool


def reference_combinations() -> list[ReferenceCombination]:
    """The eight normalized +/- combinations with their expected verdicts."""
    vecs = degenerate_eigenvectors()
    out = []
    for i, j, entangled in ((1, 3, False), (2, 4, False), (1, 4, True), (2, 3, True)):
        for sign, symbol in ((1, "+"), (-1, "-")):
            out.append(
                ReferenceCombination(
                    label=f"v{i}{symbol}v{j}",
                    state=combine([vecs[i - 1], vecs[j - 1]], [1, sign]),
                    expected_entangled=entangled,
                )
            )
    return out


# ============================================================
# STATE GRAMMAR
# ============================================================

_NUMBER = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_TERM = re.compile(
    rf"(?P<sign>[+-]?)"
    rf"(?:(?:(?P<real>{_NUMBER})|\((?P<re>[+-]?{_NUMBER}),(?P<im>[+-]?{_NUMBER})\))\*)?"
    rf"v(?P<index>[1-4])"
)


def parse_state_terms(text: str) -> list[tuple[complex, int]]:
    """Terms of e.g. "0.5*v1 + (0,1)*v2" as (coefficient, 1-based index)."""
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise StateSpecError("empty state specification")
    terms: list[tuple[complex, int]] = []
    pos = 0
    while pos < len(compact):
        match = _TERM.match(compact, pos)
        if match is None or match.end() == pos:
            raise StateSpecError(f"cannot parse state {text!r} at {compact[pos:]!r}")
        if terms and not match.group("sign"):
            raise StateSpecError(f"missing + or - before {compact[pos:]!r}")
        if match.group("real") is not None:
            coeff = complex(float(match.group("real")))
        elif match.group("re") is not None:
            coeff = complex(float(match.group("re")), float(match.group("im")))
        else:
            coeff = 1 + 0j
        if match.group("sign") == "-":
            coeff = -coeff
        terms.append((coeff, int(match.group("index"))))
        pos = match.end()
    return terms


def parse_state_spec(text: str) -> ThreeQubitState:
    vecs = degenerate_eigenvectors()
    terms = parse_state_terms(text)
    return combine([vecs[i - 1] for _, i in terms], [c for c, _ in terms])


# ============================================================
# TANGLES
# ============================================================

def three_tangle(psi: QubitState) -> float:
    """4 |d1 - 2 d2 + 4 d3| on the amplitudes a_ijk."""
    a = np.asarray(psi.amplitudes, dtype=np.complex128).reshape(2, 2, 2)
    a000, a001, a010, a011 = a[0, 0, 0], a[0, 0, 1], a[0, 1, 0], a[0, 1, 1]
    a100, a101, a110, a111 = a[1, 0, 0], a[1, 0, 1], a[1, 1, 0], a[1, 1, 1]

    d1 = a000**2 * a111**2 + a001**2 * a110**2 + a010**2 * a101**2 + a100**2 * a011**2
    d2 = (
        a000 * a111 * a011 * a100
        + a000 * a111 * a101 * a010
        + a000 * a111 * a110 * a001
        + a011 * a100 * a101 * a010
        + a011 * a100 * a110 * a001
        + a101 * a010 * a110 * a001
    )
    d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100
    tau = 4 * abs(d1 - 2 * d2 + 4 * d3)
    return float(min(max(tau, 0.0), 1.0))


def epsilon_contraction_tangle(amplitudes: npt.ArrayLike, n: int) -> float:
    """2 |sum a_alpha a_beta a_gamma a_delta eps...eps|, any n >= 2.

    The first n-1 qubit indices pair alpha with beta and gamma with delta;
    the last qubit pairs alpha with gamma and beta with delta.
    """
    amps = np.asarray(amplitudes, dtype=np.complex128).ravel()
    if amps.size != 2**n:
        raise ValueError(f"{n}-qubit state needs {2**n} amplitudes, got {amps.size}")
    head = np.array([[1.0]])
    for _ in range(n - 1):
        head = np.kron(head, EPSILON_2)
    a = amps.reshape(2 ** (n - 1), 2)
    # pair[x, y] = sum_{head indices} a[alpha', x] eps(alpha', beta') a[beta', y]
    pair = a.T @ head @ a
    total = np.einsum("ab,cd,ac,bd->", pair, pair, EPSILON_2, EPSILON_2)
    return float(2 * abs(total))


def n_tangle(psi: QubitState | npt.ArrayLike, n: int) -> float:
    """n-tangle for n in {2, 3, 4}; n = 3 is the hyperdeterminant."""
    if n not in (2, 3, 4):
        raise UnsupportedTangleError(f"n-tangle supported for n in 2..4, got {n}")
    amps = psi.amplitudes if isinstance(psi, QubitState) else np.asarray(psi, dtype=np.complex128)
    if amps.size != 2**n:
        raise ValueError(f"{n}-qubit state needs {2**n} amplitudes, got {amps.size}")
    if n == 3:
        return three_tangle(ThreeQubitState(amps))
    return min(epsilon_contraction_tangle(amps, n), 1.0)


# ============================================================
# SCHMIDT ANALYSIS AND CLASSIFICATION
# ============================================================

class Cut(str, Enum):
    """Bipartition of three qubits; the named qubit is split off."""
    Q1 = "1|23"
    Q2 = "2|13"
    Q3 = "3|12"

    @property
    def qubit(self) -> int:
        return int(self.value[0]) - 1


class EntanglementClass(str, Enum):
    PRODUCT = "product"
    BISEPARABLE = "biseparable"
    W_CLASS = "W-class"
    GHZ_CLASS = "GHZ-class"


@dataclass(frozen=True)
class SchmidtResult:
    cut: Cut
    rank: int
    coefficients: tuple[float, ...]


def schmidt_analysis(psi: QubitState, cut: Cut | str, tol: float = ENTANGLEMENT_THRESHOLD) -> SchmidtResult:
    cut = Cut(cut)
    tensor = np.asarray(psi.amplitudes, dtype=np.complex128).reshape(2, 2, 2)
    matrix = np.moveaxis(tensor, cut.qubit, 0).reshape(2, 4)
    sv = linalg.svdvals(matrix)
    rank = int(np.count_nonzero(sv > tol * sv[0])) if sv[0] > 0 else 0
    return SchmidtResult(cut=cut, rank=rank, coefficients=tuple(float(x) for x in sv))


@dataclass(frozen=True)
class EntanglementVerdict:
    tangle: float
    schmidt_ranks: tuple[int, int, int]
    entanglement_class: EntanglementClass
    biseparable_cut: Cut | None
    threshold: float

    @property
    def label(self) -> str:
        if self.entanglement_class is EntanglementClass.BISEPARABLE and self.biseparable_cut is not None:
            return f"biseparable({self.biseparable_cut.value})"
        return self.entanglement_class.value

    @property
    def tangle_verdict(self) -> str:
        """Verdict from the tangle alone: vanishing tangle reads as non-entangled."""
        return "entangled" if self.tangle > self.threshold else "non-entangled"


def classify(psi: QubitState, tol: float = ENTANGLEMENT_THRESHOLD) -> EntanglementVerdict:
    tangle = three_tangle(psi)
    results = [schmidt_analysis(psi, cut, tol) for cut in Cut]
    ranks = tuple(r.rank for r in results)
    separable = [r.cut for r in results if r.rank == 1]

    cut = None
    if len(separable) == 3:
        klass = EntanglementClass.PRODUCT
    elif len(separable) == 1:
        klass = EntanglementClass.BISEPARABLE
        cut = separable[0]
    elif tangle > tol:
        klass = EntanglementClass.GHZ_CLASS
    else:
        klass = EntanglementClass.W_CLASS

    verdict = EntanglementVerdict(
        tangle=tangle,
        schmidt_ranks=ranks,  # type: ignore[arg-type]
        entanglement_class=klass,
        biseparable_cut=cut,
        threshold=tol,
    )
    if verdict.tangle_verdict == "non-entangled" and klass is not EntanglementClass.PRODUCT:
        logger.debug("Zero tangle but Schmidt structure %s (%s)", ranks, verdict.label)
    return verdict


def apply_local_phase(psi: QubitState, qubit: int, theta: float) -> QubitState:
    """diag(1, e^{i theta}) on one qubit."""
    tensor = np.array(psi.tensor())
    index = [slice(None)] * psi.n_qubits
    index[qubit] = 1
    tensor[tuple(index)] *= np.exp(1j * theta)
    return type(psi)(tensor.ravel())


def permute_qubits(psi: QubitState, order: Sequence[int]) -> QubitState:
    return type(psi)(np.transpose(psi.tensor(), tuple(order)).ravel())

