"""
End-to-end tests for the pl CLI.
"""

import json

import pytest

from cli.main import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main
from services.reports import ReportDocument, decode_complex, decode_matrix

pytestmark = pytest.mark.integration


def _run_json(capsys, *argv: str) -> tuple[int, dict]:
    code = main([*argv, "--format", "json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestSpinMatrices:
    """pl spin-matrices"""

    def test_spin_one_json(self, capsys):
        """S3 is diag(1, 0, -1)."""
        code, data = _run_json(capsys, "spin-matrices", "--spin", "1")
        assert code == EXIT_OK
        assert data["command"] == "spin-matrices"
        assert data["spin"] == "1"
        s3 = decode_matrix(data["payload"]["S3"])
        assert [s3[k, k].real for k in range(3)] == [1.0, 0.0, -1.0]
        assert all(check["pass"] for check in data["checks"])

    def test_spin_half_casimir_residual(self, capsys):
        """The Casimir identity residual is below 1e-12."""
        _, data = _run_json(capsys, "spin-matrices", "--spin", "1/2")
        check = next(c for c in data["checks"] if c["name"] == "S1^2+S2^2+S3^2=s(s+1)I")
        assert check["residual"] < 1e-12

    def test_twice_spin_form(self, capsys):
        """--twice-spin 3 is s = 3/2."""
        _, data = _run_json(capsys, "spin-matrices", "--twice-spin", "3")
        assert data["spin"] == "3/2"
        assert data["payload"]["dim"] == 4

    @pytest.mark.parametrize("spin", ["0", "1.5", "abc"])
    def test_bad_spin_exit_2(self, capsys, spin):
        """Unparseable or zero spins exit 2."""
        assert main(["spin-matrices", "--spin", spin]) == EXIT_USAGE
        assert "error" in capsys.readouterr().err

    def test_missing_spin_exit_2(self, capsys):
        """No spin at all exits 2."""
        assert main(["spin-matrices"]) == EXIT_USAGE

    def test_both_spin_flags_exit_2(self, capsys):
        """--spin and --twice-spin are exclusive."""
        assert main(["spin-matrices", "--spin", "1", "--twice-spin", "2"]) == EXIT_USAGE

    def test_table_output(self, capsys):
        """The default format is a readable table with a PASS column."""
        assert main(["spin-matrices", "--spin", "1/2"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "pl spin-matrices  (spin 1/2)" in out
        assert "PASS" in out
        assert "checks passed" in out


class TestSpectrum:
    """pl spectrum"""

    @staticmethod
    def _predicted(data: dict) -> dict[complex, int]:
        return {
            decode_complex(entry["value"]): entry["multiplicity"]
            for entry in data["payload"]["predicted"]
        }

    def test_spin_one(self, capsys):
        """Eigenvalue -2 appears once."""
        code, data = _run_json(capsys, "spectrum", "--spin", "1")
        assert code == EXIT_OK
        assert self._predicted(data)[-2 + 0j] == 1
        assert len(data["payload"]["computed"]) == 12
        assert data["payload"]["match_distance"] < 1e-7

    def test_spin_two(self, capsys):
        """2 x7, -3 x3 and the complex pair x5."""
        _, data = _run_json(capsys, "spectrum", "--spin", "2")
        predicted = self._predicted(data)
        assert predicted[2 + 0j] == 7
        assert predicted[-3 + 0j] == 3
        assert sorted(m for z, m in predicted.items() if z.imag != 0) == [5, 5]

    def test_spin_half(self, capsys):
        """No -(s+1) entry at s = 1/2."""
        _, data = _run_json(capsys, "spectrum", "--spin", "1/2")
        assert -1.5 + 0j not in self._predicted(data)
        assert len(data["payload"]["predicted"]) == 3

    def test_multiplicities_and_newton(self, capsys):
        """Geometric multiplicities and power sums agree."""
        _, data = _run_json(capsys, "spectrum", "--spin", "3/2")
        assert all(m["consistent"] for m in data["payload"]["multiplicities"])
        assert data["payload"]["newton_passed"]
        assert all(c["pass"] for c in data["checks"])

    def test_multiplicities_reported_not_checked(self, capsys, monkeypatch):
        """A geometric/algebraic mismatch shows in the payload but does not fail --strict."""
        from cli.commands import spectrum as spectrum_cmd
        from services.spectral import MultiplicityProbe

        def deficient(m, pred, tol=1e-9):
            return [MultiplicityProbe(value=v, algebraic=k, geometric=max(k - 1, 0)) for v, k in pred.entries]

        monkeypatch.setattr(spectrum_cmd, "probe_multiplicities", deficient)
        code, data = _run_json(capsys, "spectrum", "--spin", "1", "--strict")
        assert code == EXIT_OK
        assert not any(m["consistent"] for m in data["payload"]["multiplicities"])
        assert not any("multiplicity" in c["name"] for c in data["checks"])

    def test_deterministic_output(self, capsys):
        """Identical invocations print identical bytes."""
        main(["spectrum", "--spin", "5/2", "--format", "json"])
        first = capsys.readouterr().out
        main(["spectrum", "--spin", "5/2", "--format", "json"])
        assert capsys.readouterr().out == first


class TestTraces:
    """pl traces"""

    def test_spin_one_n3(self, capsys):
        """Row N = 3 is 12 at s = 1."""
        _, data = _run_json(capsys, "traces", "--spin", "1", "--max-power", "3")
        rows = data["payload"]["rows"]
        assert [r["N"] for r in rows] == [1, 2, 3]
        assert rows[2]["direct"] == pytest.approx(12.0)
        assert rows[2]["table"] == pytest.approx(12.0)

    def test_second_row_zero(self, capsys):
        """tr(S^2) = 0."""
        _, data = _run_json(capsys, "traces", "--spin", "7/2", "--max-power", "2")
        assert data["payload"]["rows"][1]["closed_form"] == pytest.approx(0.0, abs=1e-9)

    def test_spin_five_halves(self, capsys):
        """All residuals below 1e-8 up to N = 8."""
        code, data = _run_json(capsys, "traces", "--spin", "5/2", "--max-power", "8", "--strict")
        assert code == EXIT_OK
        assert all(c["residual"] < 1e-8 for c in data["checks"])

    def test_table_stops_at_eight(self, capsys):
        """Rows past N = 8 have no table value."""
        _, data = _run_json(capsys, "traces", "--spin", "1", "--max-power", "10")
        assert data["payload"]["rows"][9]["table"] is None
        assert data["payload"]["rows"][7]["table"] is not None

    def test_max_power_zero_exit_2(self, capsys):
        """max_power must be positive."""
        assert main(["traces", "--spin", "1", "--max-power", "0"]) == EXIT_USAGE

    def test_default_max_power(self, capsys, clean_env):
        """Without --max-power the rows stop at PL_MAX_POWER."""
        from config import settings

        _, data = _run_json(capsys, "traces", "--spin", "1")
        assert len(data["payload"]["rows"]) == settings.PL_MAX_POWER


class TestCasimir:
    """pl casimir"""

    def test_rest_frame(self, capsys):
        """Scalar-multiple check passes at p = (1,0,0,0)."""
        code, data = _run_json(capsys, "casimir", "--spin", "1/2", "--momentum", "1,0,0,0", "--strict")
        assert code == EXIT_OK
        assert data["payload"]["is_scalar"]
        assert data["payload"]["normalization"] == 4.0
        assert data["payload"]["ratio"] == pytest.approx(3.0)

    def test_scalar_check_tolerance_is_absolute(self, capsys):
        """At s = 5 the off-scalar residual is held to 1e-9, not a scaled bound."""
        _, data = _run_json(capsys, "casimir", "--spin", "5", "--momentum", "0.3,1.7,-2.0,1.1")
        check = next(c for c in data["checks"] if c["name"] == "sum W_mu W^mu = c I")
        assert check["tolerance"] == 1e-9
        assert check["pass"]

    def test_lightlike_warns(self, capsys):
        """Lightlike momenta warn on stderr but do not fail."""
        code, data = _run_json(capsys, "casimir", "--spin", "1", "--momentum", "1,1,0,0")
        assert code == EXIT_OK
        assert data["payload"]["lightlike"]
        assert data["payload"]["ratio"] is None
        assert all(c["pass"] for c in data["checks"])

    def test_lightlike_message(self, capsys):
        """The warning reaches stderr at the default log level."""
        main(["casimir", "--spin", "1", "--momentum", "1,1,0,0"])
        assert "lightlike" in capsys.readouterr().err

    def test_ratio_independent_of_momentum(self, capsys):
        """Two momenta at the same spin give the same ratio."""
        _, a = _run_json(capsys, "casimir", "--spin", "3/2", "--momentum", "0.3,1.2,-0.7,2.0")
        _, b = _run_json(capsys, "casimir", "--spin", "3/2", "--momentum", "-1.1,0.4,0.9,-0.2")
        assert a["payload"]["ratio"] == pytest.approx(b["payload"]["ratio"], rel=1e-10)

    @pytest.mark.parametrize("momentum", ["1,0,0", "1,x,0,0"])
    def test_bad_momentum_exit_2(self, capsys, momentum):
        """Momentum must be four reals."""
        assert main(["casimir", "--spin", "1", "--momentum", momentum]) == EXIT_USAGE

    def test_missing_momentum_exit_2(self, capsys):
        """--momentum is required."""
        assert main(["casimir", "--spin", "1"]) == EXIT_USAGE


class TestTangle:
    """pl tangle"""

    def test_v1_plus_v4(self, capsys):
        """Tangle 1/4, GHZ class."""
        code, data = _run_json(capsys, "tangle", "--state", "v1+v4")
        assert code == EXIT_OK
        assert data["payload"]["tangle"] == pytest.approx(0.25, abs=1e-9)
        assert data["payload"]["class"] == "GHZ-class"
        assert data["payload"]["tangle_verdict"] == "entangled"
        assert all(c["pass"] for c in data["checks"])

    def test_v1_minus_v3(self, capsys):
        """Tangle 0 reads as non-entangled."""
        _, data = _run_json(capsys, "tangle", "--state", "v1-v3")
        assert data["payload"]["tangle"] < 1e-9
        assert data["payload"]["tangle_verdict"] == "non-entangled"
        assert data["payload"]["schmidt"]["2|13"]["rank"] == 1

    def test_complex_coefficients(self, capsys):
        """Coefficient syntax reaches the parser."""
        code, data = _run_json(capsys, "tangle", "--state", "0.5*v1 + (0,1)*v2")
        assert code == EXIT_OK
        assert len(data["payload"]["amplitudes"]) == 8

    def test_cancellation_exit_2(self, capsys):
        """v1-v1 is the zero vector."""
        assert main(["tangle", "--state", "v1-v1"]) == EXIT_USAGE

    def test_grammar_error_exit_2(self, capsys):
        """Unknown vectors are parse errors."""
        assert main(["tangle", "--state", "v7"]) == EXIT_USAGE


class TestLubanski:
    """pl lubanski"""

    def test_dump(self, capsys):
        """All five matrices are 4(2s+1) square and S S^-1 = I passes."""
        code, data = _run_json(capsys, "lubanski", "--spin", "1")
        assert code == EXIT_OK
        for name in ("S", "S_inverse", "T1", "T2", "T3"):
            m = decode_matrix(data["payload"][name])
            assert m.shape == (12, 12)
        assert data["payload"]["nonnormality"] > 0
        assert {c["name"] for c in data["checks"]} == {"S S^-1=I", "S^-1 S=I"}


class TestVerify:
    """pl verify"""

    def test_sweep_passes(self, capsys):
        """twice-spin 1..5 at 1e-10 exits 0."""
        code, data = _run_json(capsys, "verify", "--max-twice-spin", "5", "--tol", "1e-10")
        assert code == EXIT_OK
        assert [row["spin"] for row in data["payload"]["spins"]] == ["1/2", "1", "3/2", "2", "5/2"]
        assert all(row["failed"] == 0 for row in data["payload"]["spins"])

    @pytest.mark.slow
    def test_sweep_to_ten_round_trips(self, capsys):
        """twice-spin 1..10 exits 0 and its JSON validates back."""
        code = main(["verify", "--max-twice-spin", "10", "--format", "json"])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        doc = ReportDocument.model_validate_json(out)
        assert doc.all_passed
        assert doc.to_json() == out.rstrip("\n")

    def test_entanglement_block_at_spin_half(self, capsys):
        """--max-twice-spin 1 includes the v1..v4 tangle checks."""
        _, data = _run_json(capsys, "verify", "--max-twice-spin", "1")
        names = [c["name"] for c in data["checks"]]
        assert "s=1/2: tangle(v1) = 0" in names
        assert "s=1/2: tangle(v1+v4) = 0.25" in names
        assert "s=1/2: Schmidt rank(v2, 1|23) = 1" in names

    def test_entanglement_block_only_at_spin_half(self, capsys):
        """Higher spins skip the tangle block."""
        _, data = _run_json(capsys, "verify", "--max-twice-spin", "2")
        assert not any(c["name"].startswith("s=1: tangle") for c in data["checks"])

    @pytest.mark.slow
    def test_casimir_samples_absolute_tolerance(self, capsys):
        """Twenty momenta per spin, each held to 1e-9 with no spin-dependent scaling."""
        _, data = _run_json(capsys, "verify", "--max-twice-spin", "10")
        for spin in ("1/2", "5"):
            scalar = [c for c in data["checks"] if c["name"].startswith(f"s={spin}: Casimir scalar #")]
            assert len(scalar) == 20
            assert all(c["tolerance"] == 1e-9 and c["residual"] < 1e-9 for c in scalar)

    def test_tamper_exit_1(self, capsys):
        """A tampered S1 entry fails and names the identity and spin."""
        code, data = _run_json(capsys, "verify", "--max-twice-spin", "2", "--debug-tamper", "1e-3")
        assert code == EXIT_FAILED
        failed = [c["name"] for c in data["checks"] if not c["pass"]]
        assert "s=1/2: [S1,S2]=iS3" in failed
        assert "s=1: [S2,S3]=iS1" in failed

    def test_order_independent_of_concurrency(self, capsys):
        """Serial and parallel sweeps print the same report."""
        main(["verify", "--max-twice-spin", "3", "--concurrency", "1", "--format", "json"])
        serial = capsys.readouterr().out
        main(["verify", "--max-twice-spin", "3", "--concurrency", "3", "--format", "json"])
        assert capsys.readouterr().out == serial

    def test_zero_max_twice_exit_2(self, capsys):
        """max_twice_spin must be at least 1."""
        assert main(["verify", "--max-twice-spin", "0"]) == EXIT_USAGE

    def test_env_tolerance(self, capsys, clean_env):
        """PL_TOL sets the tolerance; --tol wins."""
        clean_env.setenv("PL_TOL", "1e-9")
        _, data = _run_json(capsys, "verify", "--max-twice-spin", "1")
        assert data["payload"]["tolerance"] == 1e-9
        _, data = _run_json(capsys, "verify", "--max-twice-spin", "1", "--tol", "1e-11")
        assert data["payload"]["tolerance"] == 1e-11


class TestSweepAsync:
    """The concurrent sweep itself."""

    async def test_results_in_spin_order(self):
        """gather keeps twice-spin order whatever finishes first."""
        from cli.commands.verify import sweep

        results = await sweep(3, 1e-10, concurrency=2)
        assert [str(spin) for spin, _ in results] == ["1/2", "1", "3/2"]
        assert all(report.all_passed for _, report in results)


class TestUsage:
    """Argument handling."""

    def test_help_exits_0(self, capsys):
        """--help is not an error."""
        assert main(["--help"]) == EXIT_OK

    def test_unknown_command_exit_2(self, capsys):
        """Unknown subcommands are usage errors."""
        assert main(["frobnicate"]) == EXIT_USAGE

    def test_no_command_exit_2(self, capsys):
        """A subcommand is required."""
        assert main([]) == EXIT_USAGE
