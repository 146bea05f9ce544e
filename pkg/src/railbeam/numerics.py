"""Scalar quadrature helpers used by the rate and probability models."""

from __future__ import annotations

import threading
from bisect import bisect_left
from typing import Callable


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    rel_tol: float = 1e-9,
    abs_tol: float = 0.0,
    max_depth: int = 48,
) -> float:
    """Integrate ``f`` over ``[a, b]`` with adaptive Simpson refinement.

    Intervals are split until the Richardson error estimate of the local
    Simpson rule drops below the tolerance (halved on each split). Signed
    intervals (``a > b``) integrate with the usual sign flip.
    """
    if a == b:
        return 0.0
    fa, fb = f(a), f(b)
    mid = 0.5 * (a + b)
    fm = f(mid)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    tol = max(abs_tol, rel_tol * abs(whole))
    if tol == 0.0:
        tol = rel_tol
    return _refine(f, a, b, fa, fm, fb, whole, tol, max_depth)


def _refine(f, a, b, fa, fm, fb, whole, tol, depth):
    mid = 0.5 * (a + b)
    lm = 0.5 * (a + mid)
    rm = 0.5 * (mid + b)
    flm, frm = f(lm), f(rm)
    left = (mid - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - mid) / 6.0 * (fm + 4.0 * frm + fb)
    err = left + right - whole
    if depth <= 0 or abs(err) <= 15.0 * tol:
        return left + right + err / 15.0
    half = 0.5 * tol
    return _refine(f, a, mid, fa, flm, fm, left, half, depth - 1) + _refine(
        f, mid, b, fm, frm, fb, right, half, depth - 1
    )


class CumulativeIntegral:
    """Memoized antiderivative ``F(t) = integral of f from origin to t``.

    Repeated queries at nearby points (bisection loops over a split time)
    only pay for the short gap from the closest already-known point, so the cost
    of solving coupled power equalities stays flat. Thread-safe.
    """

    def __init__(self, f: Callable[[float], float], origin: float = 0.0, rel_tol: float = 1e-9):
        self._f = f
        self._rel_tol = rel_tol
        self._knots = [origin]
        self._values = [0.0]
        self._lock = threading.Lock()

    def value(self, t: float) -> float:
        with self._lock:
            i = bisect_left(self._knots, t)
            if i < len(self._knots) and self._knots[i] == t:
                return self._values[i]
            if i == 0:
                j = 0
            elif i == len(self._knots):
                j = i - 1
            else:
                j = i - 1 if (t - self._knots[i - 1]) <= (self._knots[i] - t) else i
            v = self._values[j] + adaptive_simpson(
                self._f, self._knots[j], t, rel_tol=self._rel_tol
            )
            self._knots.insert(i, t)
            self._values.insert(i, v)
            return v

    def between(self, a: float, b: float) -> float:
        """Integral of ``f`` over ``[a, b]``."""
        return self.value(b) - self.value(a)
