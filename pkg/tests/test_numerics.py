import math

import pytest

from railbeam.numerics import CumulativeIntegral, adaptive_simpson


class TestAdaptiveSimpson:
    def test_polynomial_is_exact(self):
        assert adaptive_simpson(lambda x: x**3, 0.0, 2.0) == pytest.approx(4.0, rel=1e-12)

    def test_smooth_transcendental(self):
        value = adaptive_simpson(math.sin, 0.0, math.pi, rel_tol=1e-12)
        assert value == pytest.approx(2.0, rel=1e-10)

    def test_empty_interval(self):
        assert adaptive_simpson(math.exp, 1.5, 1.5) == 0.0

    def test_reversed_interval_flips_sign(self):
        forward = adaptive_simpson(math.exp, 0.0, 1.0)
        assert adaptive_simpson(math.exp, 1.0, 0.0) == pytest.approx(-forward, rel=1e-12)

    def test_peaked_integrand(self):
        value = adaptive_simpson(lambda x: math.exp(-x * x / 2), -8.0, 8.0, rel_tol=1e-11)
        assert value == pytest.approx(math.sqrt(2 * math.pi), rel=1e-9)


class TestCumulativeIntegral:
    def test_matches_direct_quadrature(self):
        cum = CumulativeIntegral(lambda x: (2.0 + x * x) ** 1.5)
        direct = adaptive_simpson(lambda x: (2.0 + x * x) ** 1.5, 1.0, 7.0)
        assert cum.between(1.0, 7.0) == pytest.approx(direct, rel=1e-9)

    def test_additive_over_splits(self):
        cum = CumulativeIntegral(math.cosh)
        total = cum.between(-2.0, 3.0)
        assert cum.between(-2.0, 0.5) + cum.between(0.5, 3.0) == pytest.approx(
            total, rel=1e-12
        )

    def test_memoized_points_are_consistent(self):
        calls = []

        def f(x):
            calls.append(x)
            return x * x

        cum = CumulativeIntegral(f)
        first = cum.value(4.0)
        before = len(calls)
        second = cum.value(4.0)
        assert second == first
        assert len(calls) == before

    def test_negative_direction(self):
        cum = CumulativeIntegral(lambda x: 1.0 + x * x)
        assert cum.value(-3.0) == pytest.approx(-(3.0 + 9.0), rel=1e-9)
