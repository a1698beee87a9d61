import json

import pytest

from conftest import make_series
from techsub.estimation import killer_fit
from techsub.reporting import (
    build_report,
    killer_fit_payload,
    regime_narrative,
    render_report,
    significance_stars,
)


class TestSignificanceStars:
    @pytest.mark.parametrize(
        "p,stars",
        [
            (0.0005, "***"),
            (0.001, "**"),
            (0.005, "**"),
            (0.01, "*"),
            (0.049, "*"),
            (0.05, ""),
            (0.5, ""),
        ],
    )
    def test_thresholds(self, p, stars):
        assert significance_stars(p) == stars


@pytest.fixture
def inverse_fit():
    years = range(2000, 2008)
    victim = make_series([(y, 100.0 * 0.8**i) for i, y in enumerate(years)], "v")
    killer = make_series([(y, 2.0 * 1.5**i) for i, y in enumerate(years)], "k")
    return killer_fit(killer, victim)


class TestNarrative:
    def test_under_development_with_inverse_note(self, inverse_fit):
        text = regime_narrative(inverse_fit)
        assert "under-development" in text
        assert "opposite" in text
        assert inverse_fit.co_movement == "inverse"

    def test_payload_carries_regime_and_direction(self, inverse_fit):
        payload = killer_fit_payload(inverse_fit)
        assert payload["regime"] == "under-development"
        assert payload["co_movement"] == "inverse"
        assert payload["beta"] < 0


class TestBuildReport:
    def test_field_order_and_digest(self, tmp_path):
        src = tmp_path / "input.csv"
        src.write_text("year,value\n2000,1.0\n")
        doc = build_report(
            command="fit-killer",
            dataset="demo",
            payload={"x": 0.1 + 0.2},
            inputs=[src],
            narrative="n",
            timestamp=False,
        )
        keys = list(doc.keys())
        assert keys == [
            "tool", "version", "command", "dataset", "log_base",
            "inputs", "payload", "narrative", "warnings",
        ]
        assert len(doc["inputs"][0]["sha256"]) == 64

    def test_numeric_fields_survive_serialization_exactly(self, tmp_path):
        src = tmp_path / "input.csv"
        src.write_text("year,value\n2000,1.0\n")
        value = 0.1 + 0.2  # not exactly representable in decimal
        doc = build_report("c", "d", {"v": value, "inf": float("inf")}, [src], timestamp=False)
        back = json.loads(render_report(doc))
        assert back["payload"]["v"] == value
        assert back["payload"]["inf"] == float("inf")

    def test_timestamp_toggle(self, tmp_path):
        src = tmp_path / "input.csv"
        src.write_text("year,value\n2000,1.0\n")
        with_ts = build_report("c", "d", {}, [src], timestamp=True)
        without = build_report("c", "d", {}, [src], timestamp=False)
        assert "timestamp" in with_ts
        assert "timestamp" not in without
