"""Closed-form beam geometry for a uniform linear array serving a rail line.

The array points its beams at a wayside base station whose direction,
seen from the moving relay, is the angle ``theta_b`` measured from the
direction of travel. The total angular coverage splits into equal cells,
one per beam; each cell projects onto a stretch of rail around the base
station's position.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

SPEED_OF_LIGHT = 2.998e8  # m/s

BROADSIDE = 2
END_FIRE = 4


class OutOfCoverageError(ValueError):
    """The requested angle falls outside the array's total coverage."""


class SingularGeometryError(ValueError):
    """Rail projection undefined (line of sight parallel to the rail)."""


def wavelength_from_frequency(carrier_hz: float) -> float:
    """Carrier wavelength in meters."""
    if carrier_hz <= 0:
        raise ValueError("carrier frequency must be positive")
    return SPEED_OF_LIGHT / carrier_hz


@dataclass(frozen=True)
class ArrayConfig:
    """Uniform linear array and carrier parameters.

    ``array_type_factor`` is 2 for a broadside array and 4 for an ordinary
    end-fire array. ``bs_coverage_angle`` is the wayside station's own
    coverage angle; the array's total coverage must exceed it.
    """

    element_count: int
    spacing: float  # m
    wavelength: float  # m
    design_constant: float = 2.782
    array_type_factor: int = BROADSIDE
    bs_coverage_angle: float = 1.0  # rad

    def __post_init__(self):
        if self.element_count < 1:
            raise ValueError("element_count must be >= 1")
        if self.spacing <= 0:
            raise ValueError("spacing must be positive")
        if self.wavelength <= 0:
            raise ValueError("wavelength must be positive")
        if self.design_constant <= 0:
            raise ValueError("design_constant must be positive")
        if self.array_type_factor not in (BROADSIDE, END_FIRE):
            raise ValueError("array_type_factor must be 2 (broadside) or 4 (end-fire)")
        alpha = total_coverage(self)
        if not alpha > self.bs_coverage_angle:
            raise ValueError(
                f"total coverage {alpha:.6g} rad must exceed the station "
                f"coverage angle {self.bs_coverage_angle:.6g} rad"
            )


@dataclass(frozen=True)
class RailGeometry:
    """Position of the relay relative to the wayside station.

    ``train_angle`` is the station direction seen from the relay, measured
    from the direction of travel; ``perpendicular_distance`` is the
    station-to-rail offset and ``antenna_height`` the station's antenna
    height above the relay plane.
    """

    perpendicular_distance: float  # m
    antenna_height: float = 0.0  # m
    train_angle: float = math.pi / 2  # rad

    def __post_init__(self):
        if self.perpendicular_distance <= 0:
            raise ValueError("perpendicular_distance must be positive")
        if self.antenna_height < 0:
            raise ValueError("antenna_height must be >= 0")


@dataclass(frozen=True)
class BeamGeometry:
    """Per-beam figures for one beam count and one relay position."""

    beam_count: int
    beamwidth: float  # rad
    directivity: float
    beam_index: int
    index_offset: int
    left_bound: float  # m
    right_bound: float  # m
    coverage_length: float  # m


def total_coverage(cfg: ArrayConfig) -> float:
    """Total covered angle, the sum of all beam cells."""
    return cfg.design_constant * cfg.wavelength / (math.pi * cfg.spacing)


def coverage_interval(cfg: ArrayConfig) -> tuple[float, float]:
    """Angular interval covered by the beam set, centered on broadside."""
    half = 0.5 * total_coverage(cfg)
    return math.pi / 2 - half, math.pi / 2 + half


def _check_beam_count(cfg: ArrayConfig, beam_count: int) -> None:
    if beam_count < 1:
        raise ValueError("beam_count must be >= 1")
    if beam_count > cfg.element_count:
        raise ValueError(
            f"beam_count {beam_count} exceeds element_count {cfg.element_count}"
        )


def beamwidth(cfg: ArrayConfig, beam_count: int) -> float:
    """Half-power width of one beam when the coverage splits into N cells."""
    _check_beam_count(cfg, beam_count)
    # spacing*beam_count grouped so (s*d, N/s) rescalings stay bit-identical
    return cfg.design_constant * cfg.wavelength / (
        math.pi * (cfg.spacing * beam_count)
    )


def directivity(cfg: ArrayConfig, beam_count: int) -> float:
    """Peak-over-isotropic gain of one beam; grows linearly with N."""
    _check_beam_count(cfg, beam_count)
    return cfg.array_type_factor * cfg.spacing * beam_count / cfg.wavelength


def index_offset(theta_b: float, cfg: ArrayConfig, beam_count: int) -> int:
    """Signed cell offset of ``theta_b`` from broadside (floor convention)."""
    width = beamwidth(cfg, beam_count)
    return math.floor((2.0 * theta_b - math.pi) / (2.0 * width))


def beam_index(theta_b: float, cfg: ArrayConfig, beam_count: int) -> int:
    """Index of the beam serving direction ``theta_b``, clamped to [1, N].

    Floor arithmetic lands coverage-edge angles on 0 or N+1; those belong
    to the outermost beams, hence the clamp.
    """
    _check_beam_count(cfg, beam_count)
    lo, hi = coverage_interval(cfg)
    if not lo <= theta_b <= hi:
        raise OutOfCoverageError(
            f"theta_b={theta_b:.6g} outside coverage [{lo:.6g}, {hi:.6g}]"
        )
    width = beamwidth(cfg, beam_count)
    if beam_count % 2 == 0:
        # broadside-anchored form: exact at theta_b = pi/2 since 2*fl(pi/2) == fl(pi)
        raw = index_offset(theta_b, cfg, beam_count) + beam_count // 2
    else:
        raw = math.floor((theta_b - lo) / width)
    return min(max(raw, 1), beam_count)


def _cell_edges(theta_b: float, cfg: ArrayConfig, beam_count: int) -> tuple[float, float]:
    """Angular edges of the equal-width cell containing ``theta_b``.

    Even counts anchor the cell grid at broadside, odd counts at the lower
    coverage edge; the grids coincide for even counts and both refine
    dyadically when the count doubles.
    """
    width = beamwidth(cfg, beam_count)
    if beam_count % 2 == 0:
        half = beam_count // 2
        chi = min(max(index_offset(theta_b, cfg, beam_count), -half), half - 1)
        low = math.pi / 2 + chi * width
    else:
        lo, _ = coverage_interval(cfg)
        cell = min(max(math.floor((theta_b - lo) / width), 0), beam_count - 1)
        low = lo + cell * width
    return low, low + width


def rail_coordinate(theta: float, perpendicular_distance: float) -> float:
    """Rail position (m, measured from the station's foot point) at which the
    station appears under angle ``theta``."""
    s = math.sin(theta)
    if abs(s) < 1e-15:
        raise SingularGeometryError("line of sight parallel to the rail")
    return perpendicular_distance / math.tan(theta)


def beam_bounds_on_rail(
    geo: RailGeometry, cfg: ArrayConfig, beam_count: int
) -> tuple[float, float, float]:
    """Rail distances from the station to the serving beam's edges.

    Returns ``(left, right, total)`` in meters, ``left`` toward the lower
    angular edge of the cell and ``right`` toward the upper one; their sum
    is the beam's rail coverage length ``d0 * beamwidth / sin(theta_b)``.
    The rail projection ``rail_coordinate`` fixes which edge lies on which
    side of the station.
    """
    _check_beam_count(cfg, beam_count)
    theta_b = geo.train_angle
    lo, hi = coverage_interval(cfg)
    if not lo < theta_b < hi:
        raise OutOfCoverageError(
            f"theta_b={theta_b:.6g} outside open coverage ({lo:.6g}, {hi:.6g})"
        )
    s = math.sin(theta_b)
    if s < 1e-15:
        raise SingularGeometryError("sin(theta_b) vanishes, no rail projection")
    edge_low, edge_high = _cell_edges(theta_b, cfg, beam_count)
    d0 = geo.perpendicular_distance
    left = max((theta_b - edge_low) * d0 / s, 0.0)
    right = max((edge_high - theta_b) * d0 / s, 0.0)
    return left, right, left + right


def beam_geometry(cfg: ArrayConfig, geo: RailGeometry, beam_count: int) -> BeamGeometry:
    """Bundle the per-beam figures for one beam count and relay position."""
    left, right, total = beam_bounds_on_rail(geo, cfg, beam_count)
    return BeamGeometry(
        beam_count=beam_count,
        beamwidth=beamwidth(cfg, beam_count),
        directivity=directivity(cfg, beam_count),
        beam_index=beam_index(geo.train_angle, cfg, beam_count),
        index_offset=index_offset(geo.train_angle, cfg, beam_count),
        left_bound=left,
        right_bound=right,
        coverage_length=total,
    )
