"""
Identity reports and the machine-readable report document.

Domain code produces IdentityReport dataclasses; the CLI turns them into a
ReportDocument (pydantic) for JSON output.
"""

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, model_validator


@dataclass(frozen=True)
class IdentityCheck:
    """One named identity with its max-abs residual."""
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance


@dataclass
class IdentityReport:
    """Ordered collection of identity checks."""
    checks: list[IdentityCheck] = field(default_factory=list)

    def add(self, name: str, residual: float, tolerance: float) -> IdentityCheck:
        check = IdentityCheck(name=name, residual=float(residual), tolerance=float(tolerance))
        self.checks.append(check)
        return check

    def extend(self, other: "IdentityReport", prefix: str = "") -> None:
        for check in other.checks:
            self.checks.append(
                IdentityCheck(prefix + check.name, check.residual, check.tolerance)
            )

    @property
    def all_passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> list[IdentityCheck]:
        return [check for check in self.checks if not check.passed]

    def __getitem__(self, name: str) -> IdentityCheck:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def __len__(self) -> int:
        return len(self.checks)


# ============================================================
# WIRE MODELS
# ============================================================

class Check(BaseModel):
    """Serialized identity check."""
    model_config = ConfigDict(populate_by_name=True, frozen=True)

    name: str
    residual: float
    tolerance: float
    passed: bool = Field(alias="pass")

    @model_validator(mode="after")
    def _consistent(self) -> "Check":
        if not math.isfinite(self.residual):
            raise ValueError(f"residual of {self.name!r} is not finite")
        if self.passed != (self.residual <= self.tolerance):
            raise ValueError(f"pass flag of {self.name!r} disagrees with residual")
        return self

    @classmethod
    def from_identity(cls, check: IdentityCheck) -> "Check":
        return cls(
            name=check.name,
            residual=check.residual,
            tolerance=check.tolerance,
            passed=check.passed,
        )


class ReportDocument(BaseModel):
    """Top-level JSON document emitted by every command."""
    command: str
    spin: str | None = None
    payload: dict[str, Any] = Field(default_factory=dict)
    checks: list[Check] = Field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def add_report(self, report: IdentityReport, prefix: str = "") -> None:
        for check in report.checks:
            self.checks.append(
                Check.from_identity(
                    IdentityCheck(prefix + check.name, check.residual, check.tolerance)
                )
            )

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)


# ============================================================
# ENCODING HELPERS
# ============================================================

def encode_complex(z: complex) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def decode_complex(pair: list[float]) -> complex:
    re, im = pair
    return complex(float(re), float(im))


def encode_matrix(m: npt.ArrayLike) -> list[list[list[float]]]:
    """Row-major nested lists of [re, im] pairs."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    return [[encode_complex(z) for z in row] for row in arr]


def decode_matrix(data: list[list[list[float]]]) -> npt.NDArray[np.complex128]:
    return np.array(
        [[decode_complex(pair) for pair in row] for row in data],
        dtype=np.complex128,
    )


def encode_vector(v: npt.ArrayLike) -> list[list[float]]:
    return [encode_complex(z) for z in np.asarray(v, dtype=np.complex128).ravel()]
