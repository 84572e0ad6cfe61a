"""
Unit tests for services/reports.py
"""

import json
import math

import numpy as np
import pytest
from pydantic import ValidationError

from services.reports import (
    Check,
    IdentityCheck,
    IdentityReport,
    ReportDocument,
    decode_complex,
    decode_matrix,
    encode_complex,
    encode_matrix,
    encode_vector,
)


class TestIdentityReport:
    """Domain-side report collection."""

    def test_pass_is_residual_within_tolerance(self):
        """passed <=> residual <= tolerance, boundary included."""
        assert IdentityCheck("a", 1e-10, 1e-10).passed
        assert not IdentityCheck("a", 2e-10, 1e-10).passed

    def test_add_and_lookup(self):
        """Checks are kept in order and looked up by name."""
        report = IdentityReport()
        report.add("first", 0.0, 1e-10)
        report.add("second", 1.0, 1e-10)
        assert len(report) == 2
        assert report["second"].residual == 1.0
        assert [c.name for c in report.failures] == ["second"]
        assert not report.all_passed
        with pytest.raises(KeyError):
            report["third"]

    def test_extend_with_prefix(self):
        """extend copies checks under a prefix."""
        inner = IdentityReport()
        inner.add("x", 0.0, 1.0)
        outer = IdentityReport()
        outer.extend(inner, prefix="s=1/2: ")
        assert outer.checks[0].name == "s=1/2: x"

    def test_empty_report_passes(self):
        """No checks, no failures."""
        assert IdentityReport().all_passed


class TestCheckModel:
    """Serialized checks."""

    def test_alias(self):
        """The pass flag is serialized as "pass"."""
        check = Check(name="a", residual=0.0, tolerance=1e-10, passed=True)
        data = json.loads(check.model_dump_json(by_alias=True))
        assert data == {"name": "a", "residual": 0.0, "tolerance": 1e-10, "pass": True}

    def test_parses_alias(self):
        """JSON with "pass" validates back."""
        check = Check.model_validate({"name": "a", "residual": 0.5, "tolerance": 1.0, "pass": True})
        assert check.passed

    def test_inconsistent_pass_rejected(self):
        """pass must agree with residual <= tolerance."""
        with pytest.raises(ValidationError):
            Check(name="a", residual=1.0, tolerance=1e-10, passed=True)

    def test_non_finite_rejected(self):
        """Residuals must be finite."""
        with pytest.raises(ValidationError):
            Check(name="a", residual=math.inf, tolerance=1.0, passed=False)
        with pytest.raises(ValidationError):
            Check(name="a", residual=math.nan, tolerance=1.0, passed=False)

    def test_from_identity(self):
        """Conversion keeps every field."""
        check = Check.from_identity(IdentityCheck("b", 3e-11, 1e-10))
        assert (check.name, check.residual, check.tolerance, check.passed) == ("b", 3e-11, 1e-10, True)


class TestReportDocument:
    """Top-level JSON document."""

    def _document(self) -> ReportDocument:
        report = IdentityReport()
        report.add("[S1,S2]=iS3", 1e-17, 1e-10)
        report.add("tamper", 1e-3, 1e-10)
        doc = ReportDocument(
            command="spin-matrices",
            spin="3/2",
            payload={"S3": encode_matrix(np.diag([1.5, 0.5, -0.5, -1.5])), "dim": 4},
        )
        doc.add_report(report, prefix="s=3/2: ")
        return doc

    def test_round_trip(self):
        """parse(emit(doc)) == doc."""
        doc = self._document()
        again = ReportDocument.model_validate_json(doc.to_json())
        assert again == doc

    def test_schema_keys(self):
        """Top-level keys and check keys follow the wire format."""
        data = json.loads(self._document().to_json())
        assert set(data) == {"command", "spin", "payload", "checks"}
        assert set(data["checks"][0]) == {"name", "residual", "tolerance", "pass"}
        assert data["checks"][1]["pass"] is False

    def test_all_passed(self):
        """One failing check fails the document."""
        assert not self._document().all_passed
        assert ReportDocument(command="x").all_passed

    def test_spin_optional(self):
        """verify has no single spin."""
        data = json.loads(ReportDocument(command="verify").to_json())
        assert data["spin"] is None


class TestEncoding:
    """Complex numbers as [re, im], matrices as nested rows."""

    def test_complex(self):
        """[re, im] pairs decode to the same complex."""
        z = complex(-0.5, math.sqrt(23) / 2)
        assert encode_complex(z) == [-0.5, math.sqrt(23) / 2]
        assert decode_complex(encode_complex(z)) == z

    def test_matrix_lossless(self, rng):
        """Matrices survive a JSON trip bit for bit."""
        m = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        restored = decode_matrix(json.loads(json.dumps(encode_matrix(m))))
        np.testing.assert_array_equal(restored, m)

    def test_row_major(self):
        """Rows come first."""
        data = encode_matrix(np.array([[1, 2j], [3, 4]]))
        assert data[0][1] == [0.0, 2.0]
        assert data[1][0] == [3.0, 0.0]

    def test_vector(self):
        """Vectors are flat lists of pairs."""
        assert encode_vector([1, 1j]) == [[1.0, 0.0], [0.0, 1.0]]
