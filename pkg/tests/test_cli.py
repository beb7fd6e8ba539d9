"""Tests for the command line."""

from __future__ import annotations

import json
import logging
from pathlib import Path

import pytest

from lemniscate_ruler.cli import build_parser, main
from lemniscate_ruler.const import (
    ENV_PRECISION,
    EXIT_CERTIFICATE_FAILED,
    EXIT_OK,
    EXIT_USAGE,
)


@pytest.fixture(autouse=True)
def isolated(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    """Run each command away from any configuration file or override."""
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv(ENV_PRECISION, raising=False)
    return tmp_path


class TestParser:
    """Test the argument parser."""

    def test_subcommands(self) -> None:
        """Test parsing of each subcommand."""
        parser = build_parser()
        assert parser.parse_args(["ngon", "17"]).numeric is False
        assert parser.parse_args(["ngon", "17", "--numeric"]).numeric is True
        assert parser.parse_args(["arc", "add", "0.3", "0.4"]).radii == ["0.3", "0.4"]
        assert parser.parse_args(["verify", "arcs", "--precision", "40"]).precision == 40

    def test_help(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that --help exits cleanly."""
        assert main(["--help"]) == EXIT_OK
        assert "lemniscate-ruler" in capsys.readouterr().out

    @pytest.mark.parametrize(
        "argv",
        [[], ["ngon"], ["verify", "astrology"], ["arc", "trisect", "0.5"], ["ngon", "five"]],
    )
    def test_usage_errors(self, argv: list[str]) -> None:
        """Test that malformed command lines exit with 2."""
        assert main(argv) == EXIT_USAGE


class TestArc:
    """Test the arc command."""

    def test_double(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test doubling an arc."""
        assert main(["arc", "double", "0.5"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith("double: ")
        assert "closed form: " in out
        assert "FAILED" not in out

    def test_double_tip(self) -> None:
        """Test that the tip doubles to the origin."""
        assert main(["arc", "double", "1.0"]) == EXIT_OK

    def test_add(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that the constructed sum matches the closed form."""
        assert main(["arc", "add", "0.3", "0.4"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        constructed = float(lines[0].split(": ")[1])
        closed_form = float(lines[1].split(": ")[1])
        assert abs(constructed - closed_form) < 1e-12

    def test_halve(self) -> None:
        """Test halving an arc."""
        assert main(["arc", "halve", "0.7"]) == EXIT_OK

    def test_halve_origin(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that the origin cannot be halved."""
        assert main(["arc", "halve", "0"]) == EXIT_USAGE
        assert capsys.readouterr().err.startswith("error: ")

    @pytest.mark.parametrize(
        "argv",
        [
            ["arc", "add", "0.5"],
            ["arc", "add", "half", "0.5"],
            ["arc", "add", "0.5", "1.5"],
            ["arc", "double", "0.1", "0.2"],
        ],
    )
    def test_bad_radii(self, argv: list[str]) -> None:
        """Test wrong counts, non-numbers and radii above 1."""
        assert main(argv) == EXIT_USAGE


class TestNgon:
    """Test the ngon command."""

    def test_not_constructible(self) -> None:
        """Test that the 9-gon is refused."""
        assert main(["ngon", "9", "--construct"]) == EXIT_USAGE

    def test_numeric_json(self, isolated: Path) -> None:
        """Test the numeric pentagon as JSON."""
        out = isolated / "pentagon.json"
        assert main(["ngon", "5", "--numeric", "--format", "json", "--out", str(out)]) == EXIT_OK
        data = json.loads(out.read_text(encoding="utf-8"))
        assert data["n"] == 5
        assert data["mode"] == "numeric"
        assert "trace" not in data

    def test_constructed_json(self, isolated: Path) -> None:
        """Test that a constructed polygon carries its trace."""
        out = isolated / "pentagon.json"
        assert main(["ngon", "5", "--format", "json", "--out", str(out)]) == EXIT_OK
        data = json.loads(out.read_text(encoding="utf-8"))
        assert data["mode"] == "constructed"
        assert data["trace"]["steps"]

    def test_svg(self, isolated: Path) -> None:
        """Test SVG output, the default format."""
        out = isolated / "figures" / "triangle.svg"
        assert main(["ngon", "3", "--out", str(out)]) == EXIT_OK
        assert out.read_text(encoding="utf-8").startswith("<svg")

    def test_config_file(self, isolated: Path) -> None:
        """Test that the default config file is picked up."""
        (isolated / "config").mkdir()
        (isolated / "config" / "lemniscate.yaml").write_text("output_format: json\n", encoding="utf-8")
        out = isolated / "triangle.out"
        assert main(["ngon", "3", "--numeric", "--out", str(out)]) == EXIT_OK
        assert json.loads(out.read_text(encoding="utf-8"))["n"] == 3

    def test_bad_env(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that a malformed precision override is a usage error."""
        monkeypatch.setenv(ENV_PRECISION, "lots")
        assert main(["ngon", "3", "--numeric"]) == EXIT_USAGE


class TestVerify:
    """Test the verify command."""

    def test_text(self, capsys: pytest.CaptureFixture[str]) -> None:
        """Test the text summary."""
        assert main(["verify", "numerics"]) == EXIT_OK
        assert capsys.readouterr().out.startswith("numerics: passed")

    def test_json(self, isolated: Path) -> None:
        """Test the JSON report."""
        out = isolated / "numerics.json"
        assert main(["verify", "numerics", "--format", "json", "--out", str(out)]) == EXIT_OK
        data = json.loads(out.read_text(encoding="utf-8"))
        assert data["suite"] == "numerics"
        assert data["passed"] is True


class TestTrace:
    """Test writing and replaying traces."""

    def test_write_and_replay(self, isolated: Path, capsys: pytest.CaptureFixture[str]) -> None:
        """Test that a written trace replays without mismatches."""
        out = isolated / "double.json"
        assert main(["trace", "double", "--out", str(out)]) == EXIT_OK
        assert main(["trace", "replay", str(out)]) == EXIT_OK
        assert capsys.readouterr().out.endswith(" 0 mismatches\n")

    def test_tampered(self, isolated: Path, caplog: pytest.LogCaptureFixture) -> None:
        """Test that an edited trace fails its replay."""
        out = isolated / "halve.json"
        assert main(["trace", "halve", "--out", str(out)]) == EXIT_OK
        data = json.loads(out.read_text(encoding="utf-8"))
        last = next(step for step in reversed(data["steps"]) if step["coordinates"])
        last["coordinates"][0][1] = "0.5"
        out.write_text(json.dumps(data), encoding="utf-8")
        with caplog.at_level(logging.ERROR):
            assert main(["trace", "replay", str(out)]) == EXIT_CERTIFICATE_FAILED
        assert "Replay mismatch" in caplog.text

    @pytest.mark.parametrize("argv", [["trace", "replay"], ["trace", "replay", "missing.json"]])
    def test_replay_errors(self, argv: list[str]) -> None:
        """Test a missing path and a missing file."""
        assert main(argv) == EXIT_USAGE

    def test_not_json(self, isolated: Path) -> None:
        """Test that a file that is not JSON is refused."""
        out = isolated / "notes.json"
        out.write_text("not json", encoding="utf-8")
        assert main(["trace", "replay", str(out)]) == EXIT_USAGE
