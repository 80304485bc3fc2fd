"""Unit tests for the command-line surface: parsing, exit codes, output."""

import json
from collections.abc import Iterator
from pathlib import Path

import pytest

from app.algebra.series import QRatFun
from app.config import get_settings
from app.core.partitions import CorrespondenceSides
from app.main import EXIT_CHECK_FAILED, EXIT_CONTRACT, EXIT_OK, EXIT_USAGE, run
from app.models import CheckPayload, SeriesPayload, ValuePayload

LOCAL_P1_SERIES = "-2*q^3 + 4*q^4 - 10*q^5 + 16*q^6 - 28*q^7"


@pytest.fixture(autouse=True)
def _fresh_settings(monkeypatch: pytest.MonkeyPatch) -> Iterator[None]:
    monkeypatch.delenv("QUOTPAIRS_OUTPUT_FORMAT", raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


def _out(capsys: pytest.CaptureFixture[str]) -> str:
    return capsys.readouterr().out.strip()


# ---------------------------------------------------------------------------
# Text output
# ---------------------------------------------------------------------------


class TestTextOutput:
    def test_pt_series(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Local P^1 (g=0, d=-2) through q^7 in text form."""
        code = run(["pt-series", "--genus", "0", "--degree", "-2", "--chi-max", "7"])
        assert code == EXIT_OK
        assert _out(capsys) == LOCAL_P1_SERIES

    def test_genus0_c(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert run(["genus0-c", "--degree", "-2", "--e", "-3", "--n", "1"]) == EXIT_OK
        assert _out(capsys) == "-8404"

    def test_max_subbundles(self, capsys: pytest.CaptureFixture[str]) -> None:
        """2^g maximal subbundles at g=3."""
        assert run(["max-subbundles", "--genus", "3"]) == EXIT_OK
        assert _out(capsys) == "8"

    def test_pt_invariant(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert run(["pt-invariant", "--genus", "0", "--degree", "-2", "--chi", "4"]) == EXIT_OK
        assert _out(capsys) == "4"

    def test_minimal_reports_chi(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Text form of a value with chi prefixes the Euler characteristic."""
        assert run(["minimal", "--genus", "0", "--degree", "-2"]) == EXIT_OK
        assert _out(capsys) == "chi=3 -2"

    def test_gw_pt_check_passes(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert run(["gw-pt-check", "--genus", "1", "--degree", "1"]) == EXIT_OK
        assert _out(capsys).startswith("PASS gw-pt-check")

    def test_series_check_genus_zero(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Genus 0 matches the closed form, so the minimal chi line reads True."""
        args = ["series-check", "--genus", "0", "--degree", "-2", "--extra-orders", "3"]
        assert run(args) == EXIT_OK
        assert "minimal chi match: True" in _out(capsys)

    def test_oracle_check(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert run(["oracle-check", "--gmax", "1"]) == EXIT_OK
        assert _out(capsys).splitlines()[-1] == "PASS"

    def test_parallel_matches_sequential(self, capsys: pytest.CaptureFixture[str]) -> None:
        """--parallel changes scheduling only, never the printed series."""
        args = ["pt-series", "--genus", "0", "--degree", "-2", "--chi-max", "7"]
        run(args)
        sequential = _out(capsys)
        run(args + ["--parallel"])
        assert _out(capsys) == sequential


# ---------------------------------------------------------------------------
# JSON output
# ---------------------------------------------------------------------------


class TestJsonOutput:
    def test_series_round_trip(self, capsys: pytest.CaptureFixture[str]) -> None:
        """JSON output parses back into SeriesPayload and dumps to the same text."""
        run(["pt-series", "--genus", "0", "--degree", "-2", "--chi-max", "5", "--format", "json"])
        raw = _out(capsys)
        payload = SeriesPayload.model_validate_json(raw)
        assert payload.model_dump_json() == raw
        assert payload.meta.chi_min == 3
        assert [row.q for row in payload.series] == [3, 4, 5]

    def test_value_carries_params(self, capsys: pytest.CaptureFixture[str]) -> None:
        run(["genus0-c", "--degree", "-2", "--e", "-1", "--n", "2", "--format", "json"])
        payload = ValuePayload.model_validate_json(_out(capsys))
        assert payload.command == "genus0-c"
        assert payload.params == {"degree": -2, "e": -1, "n": 2}
        assert payload.value.to_tpoly() == 626

    def test_gw_pt_check_reports_compared_sides(
        self, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """lhs and rhs are the two rational functions of q that were compared."""
        run(["gw-pt-check", "--genus", "1", "--degree", "1", "--format", "json"])
        payload = CheckPayload.model_validate_json(_out(capsys))
        assert payload.passed
        assert payload.lhs == payload.rhs
        assert "q" in payload.lhs

    def test_out_file(self, capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
        """--out writes JSON next to the text on stdout."""
        target = tmp_path / "series.json"
        run(["macmahon", "--order", "3", "--out", str(target)])
        assert _out(capsys) == "1 + 1*q^1 + 3*q^2 + 6*q^3"
        data = json.loads(target.read_text(encoding="utf-8"))
        assert [row["q"] for row in data["series"]] == [0, 1, 2, 3]

    def test_format_from_environment(
        self, capsys: pytest.CaptureFixture[str], monkeypatch: pytest.MonkeyPatch
    ) -> None:
        monkeypatch.setenv("QUOTPAIRS_OUTPUT_FORMAT", "json")
        get_settings.cache_clear()
        run(["max-subbundles", "--genus", "2"])
        assert json.loads(_out(capsys))["command"] == "max-subbundles"


# ---------------------------------------------------------------------------
# Exit codes
# ---------------------------------------------------------------------------


class TestExitCodes:
    def test_missing_parameter(self, capsys: pytest.CaptureFixture[str]) -> None:
        """A subcommand without its required flag is a usage error naming the flag."""
        assert run(["pt-series", "--genus", "0", "--degree", "-2"]) == EXIT_USAGE
        assert "--chi-max" in capsys.readouterr().err

    def test_unknown_subcommand(self) -> None:
        assert run(["dt-series", "--genus", "0"]) == EXIT_USAGE

    def test_bad_integer(self) -> None:
        assert run(["max-subbundles", "--genus", "two"]) == EXIT_USAGE

    def test_negative_genus(self) -> None:
        assert run(["max-subbundles", "--genus", "-1"]) == EXIT_USAGE

    def test_negative_dimension_component(self, capsys: pytest.CaptureFixture[str]) -> None:
        """A component with negative Quot dimension is a contract violation."""
        code = run(["contribution", "--genus", "0", "--degree", "-2", "--e", "1", "--n", "0"])
        assert code == EXIT_CONTRACT
        assert "negative expected dimension" in capsys.readouterr().err

    def test_negative_vdim1(self) -> None:
        args = ["quot-integral", "--genus", "1", "--vdim1", "-1", "--even-pairs", "0"]
        assert run(args) == EXIT_CONTRACT

    def test_oracle_cap(self) -> None:
        """gmax above oracle_max_genus is refused."""
        assert run(["oracle-check", "--gmax", "9"]) == EXIT_CONTRACT

    def test_failed_check_exit_code(
        self, capsys: pytest.CaptureFixture[str], monkeypatch: pytest.MonkeyPatch
    ) -> None:
        """Unequal sides give exit 3 and both sides are still printed."""
        sides = CorrespondenceSides(QRatFun({0: 1}), QRatFun({0: 2}))
        monkeypatch.setattr("app.main.gwpt_sides", lambda gd: sides)
        assert run(["gw-pt-check", "--genus", "1", "--degree", "1"]) == EXIT_CHECK_FAILED
        assert _out(capsys).startswith("FAIL gw-pt-check")

    def test_invalid_settings(
        self, capsys: pytest.CaptureFixture[str], monkeypatch: pytest.MonkeyPatch
    ) -> None:
        """An unknown QUOTPAIRS_OUTPUT_FORMAT is a usage error, not a traceback."""
        monkeypatch.setenv("QUOTPAIRS_OUTPUT_FORMAT", "xml")
        get_settings.cache_clear()
        assert run(["max-subbundles", "--genus", "2"]) == EXIT_USAGE
        assert "invalid settings" in capsys.readouterr().err

    def test_unwritable_out(self, capsys: pytest.CaptureFixture[str], tmp_path: Path) -> None:
        """--out into a missing directory reports the path and exits 1."""
        target = tmp_path / "missing" / "x.json"
        assert run(["max-subbundles", "--genus", "2", "--out", str(target)]) == EXIT_CONTRACT
        err = capsys.readouterr().err
        assert "cannot write" in err
        assert not target.exists()
