"""Tests for output adapters."""

import csv
import json
import logging
from pathlib import Path
from typing import Any

import pytest

from spin_semiclassics.outputs.base import BaseOutput
from spin_semiclassics.outputs.file import FileOutput
from spin_semiclassics.outputs.stdout import StdoutOutput

ROWS = [{"N": 8, "value": 0.1, "masses": [0.5, 0.25]}, {"N": 16, "value": 1 / 3, "masses": [0.5, 0.5]}]


class TestFileOutput:
    """Tests for FileOutput."""

    def test_csv(self, tmp_path: Path) -> None:
        output = FileOutput(tmp_path)
        output.send(ROWS, "limit")
        path = tmp_path / "limit.csv"
        with path.open(encoding="utf-8") as fh:
            rows = list(csv.DictReader(fh))
        assert rows[1]["value"] == repr(1 / 3)
        assert json.loads(rows[0]["masses"]) == [0.5, 0.25]
        assert output.written == [path]

    def test_jsonl(self, tmp_path: Path) -> None:
        FileOutput(tmp_path, file_format="jsonl").send(ROWS, "limit")
        lines = (tmp_path / "limit.jsonl").read_text(encoding="utf-8").splitlines()
        assert [json.loads(line) for line in lines] == ROWS

    def test_reports_always_jsonl(self, tmp_path: Path) -> None:
        output = FileOutput(tmp_path)
        output.send_reports([{"model": "cw", "records": [{"N": 8}]}], "ssb_report")
        record = json.loads((tmp_path / "ssb_report.jsonl").read_text(encoding="utf-8"))
        assert record["records"] == [{"N": 8}]

    def test_curve(self, tmp_path: Path) -> None:
        output = FileOutput(tmp_path)
        output.send_curve("dgr_x_y", [8, 16], [0.25, 0.125])
        assert (tmp_path / "curves" / "dgr_x_y.dat").read_text(encoding="utf-8") == "8 0.25\n16 0.125\n"

    def test_identical_runs_identical_bytes(self, tmp_path: Path) -> None:
        for name in ("a", "b"):
            FileOutput(tmp_path / name).send(ROWS, "limit")
        assert (tmp_path / "a" / "limit.csv").read_bytes() == (tmp_path / "b" / "limit.csv").read_bytes()

    def test_empty_records_skipped(self, tmp_path: Path, caplog: pytest.LogCaptureFixture) -> None:
        output = FileOutput(tmp_path / "out")
        with caplog.at_level(logging.WARNING):
            output.send([], "limit")
        assert "No records" in caplog.text
        assert not (tmp_path / "out").exists()
        assert output.written == []

    def test_unknown_format(self, tmp_path: Path) -> None:
        with pytest.raises(ValueError, match="Unsupported"):
            FileOutput(tmp_path, file_format="parquet")


class TestStdoutOutput:
    """Tests for StdoutOutput."""

    def test_prints_json_lines(self, capsys: pytest.CaptureFixture[str]) -> None:
        output = StdoutOutput()
        output.send(ROWS, "limit")
        output.send_curve("ignored", [1], [2])
        lines = capsys.readouterr().out.splitlines()
        assert [json.loads(line) for line in lines] == ROWS

    def test_pretty(self, capsys: pytest.CaptureFixture[str]) -> None:
        StdoutOutput(pretty=True).send(ROWS[:1], "limit")
        assert json.loads(capsys.readouterr().out) == ROWS[0]


class _Recorder(BaseOutput):
    def __init__(self) -> None:
        self.calls: list[tuple[list[dict[str, Any]], str]] = []

    def send(self, records: list[dict[str, Any]], stream_name: str) -> None:
        self.calls.append((records, stream_name))


class TestBaseOutput:
    """Tests for BaseOutput defaults."""

    def test_reports_fall_back_to_send(self) -> None:
        recorder = _Recorder()
        recorder.send_reports([{"a": 1}], "report")
        assert recorder.calls == [([{"a": 1}], "report")]

    def test_cannot_instantiate_abstract(self) -> None:
        with pytest.raises(TypeError):
            BaseOutput()  # type: ignore[abstract]
