"""Technological-wave analytics: cycle events, disruption periods,
takeover years and aggregate wave statistics.

A wave is read off a revenue (or usage) history as three anchor years:
begin (first year above the activity threshold), peak (year of maximum)
and end (last year above the threshold, absent while the technology is
still active). The downwave Z - M is the disruption period.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import mean, stdev

from scipy import stats

from .errors import ValidationError
from .ingest import TimeSeries


@dataclass(frozen=True)
class WaveEvents:
    """Anchor years of one technology's life cycle."""

    tech_name: str
    begin_year: int
    peak_year: int
    end_year: int | None

    def __post_init__(self):
        if self.begin_year > self.peak_year:
            raise ValidationError(
                f"{self.tech_name!r}: begin {self.begin_year} after peak {self.peak_year}"
            )
        if self.end_year is not None and self.peak_year > self.end_year:
            raise ValidationError(
                f"{self.tech_name!r}: peak {self.peak_year} after end {self.end_year}"
            )

    @property
    def complete(self) -> bool:
        return self.end_year is not None


@dataclass(frozen=True)
class WaveMetrics:
    """Lengths and phase fractions of one completed wave."""

    upwave_years: int
    downwave_years: int
    cycle_years: int
    upwave_fraction: float | None
    downwave_fraction: float | None


@dataclass(frozen=True)
class WaveSummary:
    """Mean and sample standard deviation of each metric across waves.

    SDs use the n-1 denominator and are absent for fewer than two waves;
    fraction statistics skip zero-length cycles.
    """

    n_waves: int
    n_excluded: int
    mean_upwave: float | None
    sd_upwave: float | None
    mean_downwave: float | None
    sd_downwave: float | None
    mean_cycle: float | None
    sd_cycle: float | None
    mean_upwave_fraction: float | None
    sd_upwave_fraction: float | None
    mean_downwave_fraction: float | None
    sd_downwave_fraction: float | None


def extract_wave_events(
    series: TimeSeries, active_threshold: float = 0.0
) -> WaveEvents:
    """Read (begin, peak, end) years from a series.

    begin is the first year with value above the threshold, peak the year
    of the maximum (earliest on ties), end the last year above the
    threshold. When the final observation itself is above the threshold
    the technology counts as still in progress and end is absent.
    """
    if not series.points:
        raise ValidationError(f"series {series.name!r} is empty")
    active = [(y, v) for y, v in series.points if v > active_threshold]
    if not active:
        raise ValidationError(
            f"series {series.name!r} never exceeds threshold {active_threshold}"
        )
    begin_year = active[0][0]
    peak_year = max(series.points, key=lambda p: (p[1], -p[0]))[0]
    if series.points[-1][1] > active_threshold:
        end_year = None
    else:
        end_year = active[-1][0]
    return WaveEvents(
        tech_name=series.name,
        begin_year=begin_year,
        peak_year=peak_year,
        end_year=end_year,
    )


def wave_metrics(events: WaveEvents) -> WaveMetrics:
    """Arithmetic wave lengths M-A, Z-M, Z-A and their percentage split."""
    if events.end_year is None:
        raise ValidationError(
            f"{events.tech_name!r} is still in progress, wave incomplete"
        )
    up = events.peak_year - events.begin_year
    down = events.end_year - events.peak_year
    cycle = events.end_year - events.begin_year
    if cycle > 0:
        up_frac = 100.0 * up / cycle
        down_frac = 100.0 * down / cycle
    else:
        up_frac = down_frac = None
    return WaveMetrics(
        upwave_years=up,
        downwave_years=down,
        cycle_years=cycle,
        upwave_fraction=up_frac,
        downwave_fraction=down_frac,
    )


def _mean_sd(values: list[float]) -> tuple[float | None, float | None]:
    if not values:
        return None, None
    return mean(values), (stdev(values) if len(values) >= 2 else None)


def summarize_waves(metrics: list[WaveMetrics], n_excluded: int = 0) -> WaveSummary:
    """Aggregate completed waves; n_excluded records incomplete ones left out."""
    ups = [float(m.upwave_years) for m in metrics]
    downs = [float(m.downwave_years) for m in metrics]
    cycles = [float(m.cycle_years) for m in metrics]
    up_fracs = [m.upwave_fraction for m in metrics if m.upwave_fraction is not None]
    down_fracs = [m.downwave_fraction for m in metrics if m.downwave_fraction is not None]
    mu_up, sd_up = _mean_sd(ups)
    mu_down, sd_down = _mean_sd(downs)
    mu_cycle, sd_cycle = _mean_sd(cycles)
    mu_uf, sd_uf = _mean_sd(up_fracs)
    mu_df, sd_df = _mean_sd(down_fracs)
    return WaveSummary(
        n_waves=len(metrics),
        n_excluded=n_excluded,
        mean_upwave=mu_up,
        sd_upwave=sd_up,
        mean_downwave=mu_down,
        sd_downwave=sd_down,
        mean_cycle=mu_cycle,
        sd_cycle=sd_cycle,
        mean_upwave_fraction=mu_uf,
        sd_upwave_fraction=sd_uf,
        mean_downwave_fraction=mu_df,
        sd_downwave_fraction=sd_df,
    )


@dataclass(frozen=True)
class Takeover:
    """First year the new technology's level strictly exceeds the established one."""

    year: int
    new_value: float
    old_value: float

    @property
    def established_share_pct(self) -> float:
        """Established technology's share of the pairwise total, in percent."""
        return 100.0 * self.old_value / (self.old_value + self.new_value)


def takeover_year(new_tech: TimeSeries, established: TimeSeries) -> Takeover | None:
    """Scan common years for the first strict crossing; None when it never happens."""
    old_by_year = dict(established.points)
    common = [(y, v) for y, v in new_tech.points if y in old_by_year]
    if not common:
        raise ValidationError(
            f"series {new_tech.name!r} and {established.name!r} share no years"
        )
    for year, new_value in common:
        old_value = old_by_year[year]
        if new_value > old_value:
            return Takeover(year=year, new_value=new_value, old_value=old_value)
    return None


@dataclass(frozen=True)
class IntroGapDiagnostic:
    """Introduction-gap vs disruption-period pairs with their rank correlation."""

    points: tuple[tuple[int, int], ...]
    spearman: float | None


def intro_gap_diagnostic(
    pairs: list[tuple[WaveEvents, WaveEvents]],
) -> IntroGapDiagnostic:
    """For each (established, killer) pair, relate how soon after the
    established technology the killer arrived (gap of begin years) to the
    established technology's disruption period Z - M."""
    points = []
    for established, killer in pairs:
        if established.end_year is None:
            raise ValidationError(
                f"{established.tech_name!r} has no disruption period yet (in progress)"
            )
        gap = abs(killer.begin_year - established.begin_year)
        dp = established.end_year - established.peak_year
        points.append((gap, dp))
    spearman = None
    if len(points) >= 2:
        rho = stats.spearmanr([g for g, _ in points], [d for _, d in points]).statistic
        spearman = float(rho) if math.isfinite(rho) else None
    return IntroGapDiagnostic(points=tuple(points), spearman=spearman)
