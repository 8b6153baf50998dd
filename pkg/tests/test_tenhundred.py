import math

import pytest

from epigrowth.tenhundred import decade_crossings, tenhundred_points
from epigrowth.timeseries import CaseSeries


def exp_case_series(rate, n, start_count=2.0, region="x", start_day=1):
    days = tuple(range(start_day, start_day + n))
    counts = tuple(int(round(start_count * math.exp(rate * i))) for i in range(n))
    return CaseSeries(region, days, counts)


class TestDecadeCrossings:
    def test_exact_hits(self):
        days = tuple(range(1, 16))
        counts = [1, 2, 10, 20, 40, 70, 90, 100, 200, 400, 600, 800, 900, 1000, 1500]
        s = CaseSeries("x", days, tuple(counts))
        c = decade_crossings(s)
        assert c.thresholds == (10, 100, 1000)
        assert c.times == (3.0, 8.0, 14.0)

    def test_log_interpolation(self):
        s = CaseSeries("x", (3, 4, 5, 6), (6, 8, 12, 20))
        c = decade_crossings(s)
        expected = 4 + (math.log(10) - math.log(8)) / (math.log(12) - math.log(8))
        assert c.times[0] == pytest.approx(expected, abs=1e-9)
        assert c.times[0] == pytest.approx(4.550, abs=1e-3)

    def test_never_reaches_threshold(self):
        s = CaseSeries("x", (1, 2, 3), (3, 5, 9))
        with pytest.warns(UserWarning):
            c = decade_crossings(s)
        assert c.thresholds == ()

    def test_crossing_times_increase(self):
        s = exp_case_series(0.4, 25)
        c = decade_crossings(s)
        assert len(c.times) >= 3
        assert all(b > a for a, b in zip(c.times, c.times[1:]))


class TestTenHundredPoints:
    def test_constant_rate_is_exponential_on_diagonal(self):
        # counts 2^t are exactly exponential with no integer-rounding error,
        # so log interpolation puts every interval exactly at ln10/ln2 days
        days = tuple(range(1, 21))
        s = CaseSeries("x", days, tuple(2 ** t for t in days))
        points = tenhundred_points(decade_crossings(s))
        assert points
        expected = math.log(10) / math.log(2)
        for p in points:
            assert p.classification == "exponential"
            assert p.x == pytest.approx(expected, abs=0.01)
            assert p.y == pytest.approx(expected, abs=0.01)

    def test_rounded_constant_rate_stays_near_diagonal(self):
        # integer rounding at small counts perturbs the first crossing only
        points = tenhundred_points(decade_crossings(exp_case_series(0.46, 25)))
        expected = math.log(10) / 0.46
        assert points
        for p in points:
            assert p.classification == "exponential"
            assert p.x == pytest.approx(expected, abs=0.05)
            assert p.y == pytest.approx(expected, abs=0.05)

    def test_slowing_growth_is_sub_exponential(self):
        from epigrowth.tenhundred import DecadeCrossings

        c = DecadeCrossings("x", (10, 100, 1000), (3.0, 8.0, 18.0))
        points = tenhundred_points(c)
        assert len(points) == 1
        assert points[0].x == 10.0
        assert points[0].y == 5.0
        assert points[0].classification == "sub_exponential"

    def test_accelerating_growth_is_super_exponential(self):
        from epigrowth.tenhundred import DecadeCrossings

        c = DecadeCrossings("x", (10, 100, 1000), (3.0, 13.0, 18.0))
        assert tenhundred_points(c)[0].classification == "super_exponential"

    def test_too_few_crossings(self):
        from epigrowth.tenhundred import DecadeCrossings

        c = DecadeCrossings("x", (10, 100), (3.0, 8.0))
        assert tenhundred_points(c) == []

    def test_rate_halving_trajectory(self):
        # growth at 0.46/day until ~100 cases, then 0.23/day: the later interval
        # doubles, pushing the trajectory into the lower-right region
        days = tuple(range(1, 41))
        counts = []
        y = 2.0
        for t in days:
            counts.append(int(round(y)))
            y *= math.exp(0.46 if y < 100 else 0.23)
        s = CaseSeries("x", days, tuple(counts))
        points = tenhundred_points(decade_crossings(s))
        assert points
        below = [p for p in points if p.classification == "sub_exponential"]
        assert below  # the decade spanning the slowdown leaves the diagonal
        assert all(p.x > p.y for p in below)
        # intervals before the slowdown match the fast rate, after it the slow one
        assert points[0].y == pytest.approx(math.log(10) / 0.46, abs=0.1)
        assert points[-1].x == pytest.approx(math.log(10) / 0.23, abs=0.1)

    def test_classification_trichotomy(self):
        s = exp_case_series(0.3, 40)
        for p in tenhundred_points(decade_crossings(s)):
            labels = ["sub_exponential", "exponential", "super_exponential"]
            assert p.classification in labels

    def test_time_translation_invariance(self):
        a = exp_case_series(0.35, 30, start_day=1)
        b = exp_case_series(0.35, 30, start_day=11)
        pa = tenhundred_points(decade_crossings(a))
        pb = tenhundred_points(decade_crossings(b))
        assert len(pa) == len(pb)
        for p, q in zip(pa, pb):
            assert p.x == pytest.approx(q.x, abs=1e-9)
            assert p.y == pytest.approx(q.y, abs=1e-9)
            assert p.classification == q.classification
