"""Data handling: loading, aggregation, domains, nice ticks, band positions.

The tick algorithm is cross-checked against a brute-force oracle that
re-derives the best {1,2,5}x10^k step by exhaustive search.
"""

import math
import random
import statistics

import pytest

from tactilechart.datatable import (DataError, DataTable, LinearScale,
                                    aggregate_rows, band_positions,
                                    infer_domain, load_data, nice_ticks)
from tactilechart.model import DataSpec


def table(rows):
    return DataTable.from_records(rows)


class TestLoadAndAggregate:
    def test_inline_values(self):
        t = load_data(DataSpec(values=({"a": 1, "b": "x"},)))
        assert t.rows[0]["a"] == 1
        assert "a" in t.fields and "b" in t.fields

    def test_file_url(self, tmp_path):
        p = tmp_path / "rows.json"
        p.write_text('[{"v": 3}, {"v": 4}]', encoding="utf-8")
        t = load_data(DataSpec(url="rows.json"), base_dir=str(tmp_path))
        assert [r["v"] for r in t.rows] == [3, 4]

    def test_missing_file_is_data_error(self):
        with pytest.raises(DataError):
            load_data(DataSpec(url="/nonexistent/rows.json"))

    def test_average_matches_statistics_mean(self):
        rng = random.Random(11)
        rows = [{"g": g, "v": rng.uniform(0, 100)}
                for g in "abc" for _ in range(7)]
        t = aggregate_rows(table(rows), ["g"], "v", "average")
        for out in t.rows:
            expected = statistics.mean(
                r["v"] for r in rows if r["g"] == out["g"])
            assert out["v"] == pytest.approx(expected)

    def test_group_order_is_first_appearance(self):
        rows = [{"g": "z"}, {"g": "a"}, {"g": "z"}]
        t = aggregate_rows(table(rows), ["g"], None, "count")
        assert [r["g"] for r in t.rows] == ["z", "a"]
        assert [r["count"] for r in t.rows] == [2, 1]

    def test_sum_min_max(self):
        rows = [{"g": "a", "v": 1}, {"g": "a", "v": 5}]
        assert aggregate_rows(table(rows), ["g"], "v", "sum").rows[0]["v"] == 6
        assert aggregate_rows(table(rows), ["g"], "v", "min").rows[0]["v"] == 1
        assert aggregate_rows(table(rows), ["g"], "v", "max").rows[0]["v"] == 5


class TestDomains:
    def test_quantitative_includes_zero_for_bars(self):
        t = table([{"v": 5}, {"v": 9}])
        assert infer_domain(t, "v", "quantitative", mark="bar") == [0, 9]

    def test_line_keeps_tight_positive_domain(self):
        t = table([{"v": 100}, {"v": 110}])
        assert infer_domain(t, "v", "quantitative", mark="line") == [100, 110]

    def test_line_with_wide_spread_keeps_zero(self):
        t = table([{"v": 10}, {"v": 100}])
        assert infer_domain(t, "v", "quantitative", mark="line") == [0, 100]

    def test_negative_values_extend_domain(self):
        t = table([{"v": -4}, {"v": 9}])
        assert infer_domain(t, "v", "quantitative") == [-4, 9]

    def test_explicit_domain_wins(self):
        t = table([{"v": 5}])
        assert infer_domain(t, "v", "quantitative", explicit=(1, 7)) == [1, 7]

    def test_categorical_first_appearance(self):
        t = table([{"c": "b"}, {"c": "a"}, {"c": "b"}])
        assert infer_domain(t, "c", "nominal") == ["b", "a"]

    def test_sort_list_reorders(self):
        t = table([{"c": "b"}, {"c": "a"}])
        assert infer_domain(t, "c", "nominal", sort=("a", "b")) == ["a", "b"]

    def test_sort_missing_value_is_error(self):
        t = table([{"c": "b"}, {"c": "a"}])
        with pytest.raises(DataError):
            infer_domain(t, "c", "nominal", sort=("a",))


def brute_force_ticks(lo, hi, requested):
    """Independent oracle: exhaustive search over candidate steps.

    Candidates must genuinely cover the domain; ties on (count distance,
    count) resolve to the smallest step, matching the documented rule
    that equal-count candidates keep the finer grid.
    """
    span = hi - lo
    tol = span * 1e-9
    best = None
    for k in range(-12, 13):
        for m in (1, 2, 5):
            step = m * 10.0 ** k
            if span / step > 1000:
                continue
            first = math.floor(lo / step + 1e-9)
            last = math.ceil(hi / step - 1e-9)
            if first * step > lo + tol or last * step < hi - tol:
                continue  # does not actually cover the domain
            count = last - first + 1
            if count < 2:
                continue
            key = (abs(count - requested), count, step)
            if best is None or key < best[0]:
                best = (key, step, first, last)
    _, step, first, last = best
    return [round(i * step, 10) for i in range(first, last + 1)]


class TestNiceTicks:
    def test_frozen_examples(self):
        assert nice_ticks([0, 82.3], 5) == [0, 20, 40, 60, 80, 100]
        assert nice_ticks([1, 7], 7) == [1, 2, 3, 4, 5, 6, 7]
        assert nice_ticks([0, 1], 2) == [0, 1]
        assert nice_ticks([0, 111], 7) == [0, 20, 40, 60, 80, 100, 120]
        assert nice_ticks([2500, 6000], 8) == [2500, 3000, 3500, 4000, 4500,
                                               5000, 5500, 6000]
        assert nice_ticks([180, 220], 5) == [180, 190, 200, 210, 220]

    def test_ticks_cover_domain(self):
        rng = random.Random(5)
        for _ in range(300):
            lo = rng.uniform(-1000, 1000)
            hi = lo + rng.uniform(0.1, 2000)
            req = rng.randint(2, 12)
            ticks = nice_ticks([lo, hi], req)
            assert ticks[0] <= lo + 1e-9
            assert ticks[-1] >= hi - 1e-9
            steps = {round(b - a, 9) for a, b in zip(ticks, ticks[1:])}
            assert len(steps) == 1  # uniform spacing

    def test_matches_brute_force_oracle(self):
        rng = random.Random(99)
        for _ in range(300):
            lo = rng.uniform(-500, 500)
            hi = lo + rng.uniform(0.5, 900)
            req = rng.randint(2, 10)
            got = [float(t) for t in nice_ticks([lo, hi], req)]
            want = brute_force_ticks(lo, hi, req)
            assert got == pytest.approx(want), (lo, hi, req)

    def test_degenerate_domain(self):
        assert nice_ticks([3, 3], 5) == [3]

    def test_zero_is_tick_when_spanned(self):
        ticks = nice_ticks([-30, 70], 5)
        assert 0 in ticks


class TestBandsAndScale:
    def test_band_centers(self):
        got = band_positions(["a", "b", "c"], 72, 48)
        assert got == {"a": 36.0, "b": 108.0, "c": 180.0}

    def test_band_width_cannot_exceed_step(self):
        with pytest.raises(DataError):
            band_positions(["a"], 10, 20)

    def test_linear_scale_endpoints_and_midpoint(self):
        s = LinearScale((0, 10), (100, 200))
        assert s.apply(0) == 100
        assert s.apply(10) == 200
        assert s.apply(5) == 150

    def test_inverted_range(self):
        s = LinearScale((0, 10), (200, 100))
        assert s.apply(10) == 100
