"""Time-series ingestion: CSV parsing, validation, alignment, manifests.

Series files are two-column CSV with the exact header ``year,value``.
Blank lines and lines starting with ``#`` are ignored, years are
integers, values decimal reals (no thousands separators). Year gaps are
permitted; duplicate or decreasing years are not.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ParseError, ValidationError

CSV_HEADER = "year,value"


@dataclass(frozen=True)
class TimeSeries:
    """Ordered (year, value) observations for one technology measure."""

    name: str
    unit: str
    points: tuple[tuple[int, float], ...]

    def __post_init__(self):
        prev = None
        for year, value in self.points:
            if prev is not None and year <= prev:
                raise ValidationError(
                    f"series {self.name!r}: years must be strictly increasing "
                    f"({year} follows {prev})"
                )
            if not math.isfinite(value):
                raise ValidationError(
                    f"series {self.name!r}: non-finite value at year {year}"
                )
            prev = year

    def __len__(self):
        return len(self.points)

    @property
    def years(self) -> tuple[int, ...]:
        return tuple(y for y, _ in self.points)

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(v for _, v in self.points)

    def restrict(self, bounds: tuple[int, int] | None) -> "TimeSeries":
        """Copy limited to years inside [first, last]; no-op when bounds is None."""
        if bounds is None:
            return self
        first, last = bounds
        pts = tuple(p for p in self.points if first <= p[0] <= last)
        return TimeSeries(self.name, self.unit, pts)


def parse_series(text: str, name: str = "series", unit: str = "") -> TimeSeries:
    """Parse CSV text into a validated TimeSeries.

    Raises ParseError (with the 1-based line number) on malformed rows and
    ValidationError on duplicate/decreasing years or non-finite values.
    """
    points: list[tuple[int, float]] = []
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not header_seen:
            if line != CSV_HEADER:
                raise ParseError(
                    f"expected header {CSV_HEADER!r}, got {line!r}", line=lineno
                )
            header_seen = True
            continue
        cells = line.split(",")
        if len(cells) != 2:
            raise ParseError(
                f"expected 2 comma-separated fields, got {len(cells)}", line=lineno
            )
        try:
            year = int(cells[0].strip())
        except ValueError:
            raise ParseError(f"year is not an integer: {cells[0]!r}", line=lineno)
        try:
            value = float(cells[1].strip())
        except ValueError:
            raise ParseError(f"value is not a number: {cells[1]!r}", line=lineno)
        points.append((year, value))
    if not header_seen:
        raise ParseError(f"missing header row {CSV_HEADER!r}", line=1)
    return TimeSeries(name=name, unit=unit, points=tuple(points))


def read_series(path: str | Path, name: str | None = None, unit: str = "") -> TimeSeries:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not valid UTF-8 ({exc})")
    try:
        return parse_series(text, name=name or path.stem, unit=unit)
    except (ParseError, ValidationError) as exc:
        raise type(exc)(f"{path}: {exc}")


def serialize_series(series: TimeSeries) -> str:
    """Render a TimeSeries back to CSV text; parse_series inverts this exactly."""
    lines = [CSV_HEADER]
    lines.extend(f"{year},{value!r}" for year, value in series.points)
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class AlignedPair:
    """Inner join of a killer and victim series on year."""

    years: tuple[int, ...]
    killer_values: tuple[float, ...]
    victim_values: tuple[float, ...]
    killer_dropped: int
    victim_dropped: int

    def __len__(self):
        return len(self.years)


def align_pair(
    killer: TimeSeries,
    victim: TimeSeries,
    bounds: tuple[int, int] | None = None,
) -> AlignedPair:
    """Pair the two series year-by-year, restricted to bounds when given.

    Years present on only one side (or outside the bounds) are dropped and
    counted per side. An empty intersection raises ValidationError.
    """
    k = killer.restrict(bounds)
    v = victim.restrict(bounds)
    victim_by_year = dict(v.points)
    years = []
    kv = []
    vv = []
    for year, value in k.points:
        if year in victim_by_year:
            years.append(year)
            kv.append(value)
            vv.append(victim_by_year[year])
    if not years:
        raise ValidationError(
            f"series {killer.name!r} and {victim.name!r} share no years"
            + (f" within {bounds[0]}-{bounds[1]}" if bounds else "")
        )
    return AlignedPair(
        years=tuple(years),
        killer_values=tuple(kv),
        victim_values=tuple(vv),
        killer_dropped=len(killer) - len(years),
        victim_dropped=len(victim) - len(years),
    )


@dataclass(frozen=True)
class SeriesRef:
    """Manifest entry pointing at one series file."""

    file: str
    name: str | None = None
    unit: str = ""
    role: str = ""


@dataclass(frozen=True)
class DatasetManifest:
    """Describes a dataset: where its series live and how to use them.

    ``killer``/``victim`` name an aligned pair for the log-log regression;
    ``series`` lists technologies in succession order for wave analytics.
    ``adjustment`` is provenance only (values arrive already adjusted).
    """

    dataset: str
    description: str = ""
    killer: SeriesRef | None = None
    victim: SeriesRef | None = None
    series: tuple[SeriesRef, ...] = ()
    period: tuple[int, int] | None = None
    adjustment: str | None = None
    base_dir: Path = field(default_factory=Path, compare=False)

    def resolve(self, ref: SeriesRef) -> TimeSeries:
        series = read_series(self.base_dir / ref.file, name=ref.name, unit=ref.unit)
        if self.period is not None and series.points:
            first, last = self.period
            years = series.years
            if last < years[0] or first > years[-1]:
                raise ValidationError(
                    f"manifest period {first}-{last} does not overlap series "
                    f"{series.name!r} ({years[0]}-{years[-1]})"
                )
        return series


def _series_ref(obj, context: str) -> SeriesRef:
    if not isinstance(obj, dict) or "file" not in obj:
        raise ParseError(f"manifest {context} entry must be an object with a 'file' key")
    return SeriesRef(
        file=str(obj["file"]),
        name=obj.get("name"),
        unit=str(obj.get("unit", "")),
        role=str(obj.get("role", "")),
    )


def load_manifest(path: str | Path) -> DatasetManifest:
    """Load and validate a JSON dataset manifest (schema in the README)."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})", line=exc.lineno)
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: manifest root must be an object")

    period = None
    if "period" in doc:
        p = doc["period"]
        if (
            not isinstance(p, dict)
            or not isinstance(p.get("first"), int)
            or not isinstance(p.get("last"), int)
        ):
            raise ParseError(f"{path}: 'period' must hold integer 'first' and 'last'")
        if p["first"] > p["last"]:
            raise ValidationError(f"{path}: period first {p['first']} > last {p['last']}")
        period = (p["first"], p["last"])

    return DatasetManifest(
        dataset=str(doc.get("dataset", path.stem)),
        description=str(doc.get("description", "")),
        killer=_series_ref(doc["killer"], "killer") if "killer" in doc else None,
        victim=_series_ref(doc["victim"], "victim") if "victim" in doc else None,
        series=tuple(_series_ref(s, "series") for s in doc.get("series", [])),
        period=period,
        adjustment=doc.get("adjustment"),
        base_dir=path.parent,
    )
