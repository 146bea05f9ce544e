"""Gaussian positioning error and the beam-count search it constrains.

The relay selects its beam from a position estimate whose along-rail error
is zero-mean Gaussian. A beam is effective while the station stays inside
the selected beam's rail footprint, so narrower beams trade gain against
the probability of pointing past the station.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import ArrayConfig, RailGeometry, beam_bounds_on_rail, directivity

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class PositioningModel:
    """Along-rail error deviation, required success probability, search cap."""

    error_stddev: float  # m
    threshold: float  # probability
    max_beam_count: int

    def __post_init__(self):
        if self.error_stddev < 0:
            raise ValueError("error_stddev must be >= 0")
        if not 0.0 < self.threshold < 1.0:
            raise ValueError("threshold must lie in (0, 1)")
        if self.max_beam_count < 1:
            raise ValueError("max_beam_count must be >= 1")


@dataclass(frozen=True)
class SearchResult:
    optimal_beam_count: int
    achieved_probability: float
    directivity_at_optimum: float
    feasible: bool


def gaussian_tail(x: float) -> float:
    """Upper tail of the standard normal distribution, Q(x)."""
    return 0.5 * math.erfc(x / _SQRT2)


def effective_probability(left_bound: float, right_bound: float, sigma: float) -> float:
    """Probability that a Gaussian position error keeps the station in-beam.

    ``left_bound`` and ``right_bound`` are the rail distances from the
    station to the serving beam's edges; ``sigma = 0`` means perfect
    positioning and returns 1.0 exactly.
    """
    if left_bound < 0 or right_bound < 0:
        raise ValueError("beam bounds must be nonnegative")
    if sigma < 0:
        raise ValueError("sigma must be >= 0")
    if sigma == 0:
        return 1.0
    return 1.0 - 0.5 * (gaussian_tail(left_bound / sigma) + gaussian_tail(right_bound / sigma))


def _probability_at(cfg: ArrayConfig, geo: RailGeometry, sigma: float, beam_count: int) -> float:
    left, right, _ = beam_bounds_on_rail(geo, cfg, beam_count)
    return effective_probability(left, right, sigma)


def search_beam_count(
    cfg: ArrayConfig,
    geo: RailGeometry,
    model: PositioningModel,
    all_integers: bool = False,
) -> SearchResult:
    """Largest admissible beam count meeting the success threshold.

    The default candidate set is the doubling sequence 1, 2, 4, ... capped
    at ``model.max_beam_count``; along it the success probability can only
    fall as beams split, so the scan stops at the first miss. With
    ``all_integers`` every count up to the cap is tried instead (oracle
    mode; no monotonicity holds there). When even a single beam misses the
    threshold, the result carries ``feasible=False`` with that count.
    """
    if model.max_beam_count > cfg.element_count:
        raise ValueError(
            f"max_beam_count {model.max_beam_count} exceeds element_count "
            f"{cfg.element_count}"
        )
    sigma = model.error_stddev

    if all_integers:
        candidates = range(1, model.max_beam_count + 1)
        best = None
        best_prob = 0.0
        for n in candidates:
            prob = _probability_at(cfg, geo, sigma, n)
            if prob >= model.threshold:
                best, best_prob = n, prob
        if best is None:
            return SearchResult(1, _probability_at(cfg, geo, sigma, 1), directivity(cfg, 1), False)
        return SearchResult(best, best_prob, directivity(cfg, best), True)

    best = None
    best_prob = 0.0
    n = 1
    while n <= model.max_beam_count:
        prob = _probability_at(cfg, geo, sigma, n)
        if prob < model.threshold:
            break
        best, best_prob = n, prob
        n *= 2
    if best is None:
        return SearchResult(1, _probability_at(cfg, geo, sigma, 1), directivity(cfg, 1), False)
    return SearchResult(best, best_prob, directivity(cfg, best), True)
