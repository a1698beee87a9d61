import json
from pathlib import Path

import pytest

from techsub.ingest import CSV_HEADER, TimeSeries


def make_series(points, name="series", unit=""):
    return TimeSeries(name=name, unit=unit, points=tuple(points))


def write_csv(path: Path, points) -> Path:
    lines = [CSV_HEADER] + [f"{y},{v!r}" for y, v in points]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def write_manifest(path: Path, doc: dict) -> Path:
    path.write_text(json.dumps(doc, indent=2), encoding="utf-8")
    return path


@pytest.fixture
def run_cli(capsys):
    """Invoke the CLI in-process, returning (exit_code, stdout, stderr)."""
    from techsub.cli import main

    def run(*argv):
        code = main([str(a) for a in argv])
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run
