"""Offline phase-excitation codebook and location-driven beam selection.

Every beam is a column of per-element phases precomputed for the cell
midpoints of the covered angular range. Selecting a beam is a pure table
lookup on the station direction; no channel measurements enter anywhere.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .geometry import ArrayConfig, coverage_interval, total_coverage


class NotYetEnteredError(ValueError):
    """The station direction lies before the start of coverage."""


@dataclass(frozen=True)
class PhaseMapper:
    """Element-by-beam phase table plus the beam center angles.

    ``phases[m, i]`` is the phase (rad) applied on element ``m+1`` for beam
    ``i+1``; ``beam_centers[i]`` is the midpoint of beam ``i+1``'s angular
    cell.
    """

    phases: np.ndarray  # (M, N) rad
    beam_centers: np.ndarray  # (N,) rad

    @property
    def element_count(self) -> int:
        return self.phases.shape[0]

    @property
    def beam_count(self) -> int:
        return self.phases.shape[1]


@dataclass(frozen=True)
class SteeringVector:
    """Per-element unit phasors of the array response toward one angle."""

    entries: np.ndarray  # (M,) complex, |entry| = 1, entries[0] = 1
    wavenumber: float  # rad/m


@dataclass(frozen=True)
class BeamWeight:
    """Aggregate excitation of one beam: weight = amplitude_sum * directivity."""

    amplitude_sum: float
    directivity: float

    @property
    def weight(self) -> float:
        return self.amplitude_sum * self.directivity


@dataclass(frozen=True)
class TraverseSample:
    time: float  # s
    train_angle: float  # rad
    beam_id: int
    switched: bool


@dataclass(frozen=True)
class TraverseLog:
    samples: tuple[TraverseSample, ...]

    def switch_count(self) -> int:
        return sum(1 for s in self.samples if s.switched)

    def switch_times(self) -> list[float]:
        return [s.time for s in self.samples if s.switched]


def wavenumber(cfg: ArrayConfig) -> float:
    return 2.0 * math.pi / cfg.wavelength


def build_phase_mapper(cfg: ArrayConfig, beam_count: int) -> PhaseMapper:
    """Phase table steering one beam at each cell midpoint.

    Element ``m`` of beam ``i`` gets the cumulative progressive phase
    ``-(m-1) * k * d * cos(center_i)`` so that the per-element propagation
    phase cancels exactly at the beam center.
    """
    if beam_count < 1:
        raise ValueError("beam_count must be >= 1")
    if beam_count > cfg.element_count:
        raise ValueError(
            f"beam_count {beam_count} exceeds element_count {cfg.element_count}"
        )
    lo, _ = coverage_interval(cfg)
    cell = total_coverage(cfg) / beam_count
    centers = lo + (np.arange(1, beam_count + 1) - 0.5) * cell
    k = wavenumber(cfg)
    phases = np.outer(np.arange(cfg.element_count), -k * cfg.spacing * np.cos(centers))
    return PhaseMapper(phases=phases, beam_centers=centers)


def steering_vector(
    theta: float, beam: int, mapper: PhaseMapper, cfg: ArrayConfig
) -> SteeringVector:
    """Array response toward ``theta`` through beam ``beam``'s phase column."""
    if not 1 <= beam <= mapper.beam_count:
        raise ValueError(f"beam {beam} outside [1, {mapper.beam_count}]")
    k = wavenumber(cfg)
    m = np.arange(mapper.element_count)
    entries = np.exp(1j * (m * k * cfg.spacing * math.cos(theta) + mapper.phases[:, beam - 1]))
    return SteeringVector(entries=entries, wavenumber=k)


def array_factor(
    theta: float,
    beam: int,
    mapper: PhaseMapper,
    cfg: ArrayConfig,
    amplitudes: np.ndarray | None = None,
) -> float:
    """Normalized power pattern of one beam, 1.0 at its center.

    ``amplitudes`` are the per-element excitations; a uniform array is
    assumed when omitted.
    """
    vec = steering_vector(theta, beam, mapper, cfg).entries
    if amplitudes is None:
        amplitudes = np.ones(mapper.element_count)
    total = float(np.sum(amplitudes))
    return float(np.abs(np.sum(amplitudes * vec)) ** 2) / total**2


def select_beam(
    theta_b: float, mapper: PhaseMapper, cfg: ArrayConfig
) -> tuple[int, np.ndarray]:
    """Beam id and phase column for the station direction ``theta_b``.

    Angles past the upper coverage edge reset to beam 1 (ready for the
    next station); angles before the lower edge raise, the relay has not
    entered this station's coverage yet. A direction exactly on a shared
    cell boundary belongs to the higher-indexed cell.
    """
    lo, hi = coverage_interval(cfg)
    if theta_b < lo:
        raise NotYetEnteredError(
            f"theta_b={theta_b:.6g} precedes coverage start {lo:.6g}"
        )
    if theta_b >= hi:
        return 1, mapper.phases[:, 0]
    cell = total_coverage(cfg) / mapper.beam_count
    idx = min(int(math.floor((theta_b - lo) / cell)) + 1, mapper.beam_count)
    return idx, mapper.phases[:, idx - 1]


def simulate_traverse(
    trajectory: list[tuple[float, float]], mapper: PhaseMapper, cfg: ArrayConfig
) -> TraverseLog:
    """Replay beam selection along a (time, angle) trajectory.

    ``switched`` marks samples whose beam differs from the previous one;
    an empty trajectory yields an empty log.
    """
    samples: list[TraverseSample] = []
    previous: int | None = None
    last_t = None
    for t, theta in trajectory:
        if last_t is not None and t <= last_t:
            raise ValueError("trajectory times must be strictly increasing")
        last_t = t
        beam, _ = select_beam(theta, mapper, cfg)
        samples.append(
            TraverseSample(
                time=t,
                train_angle=theta,
                beam_id=beam,
                switched=previous is not None and beam != previous,
            )
        )
        previous = beam
    return TraverseLog(samples=tuple(samples))


def export_phase_mapper(mapper: PhaseMapper, path: str | Path) -> None:
    """Write the phase table as beam_id,element_id,phase_rad rows."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["beam_id", "element_id", "phase_rad"])
        for i in range(mapper.beam_count):
            for m in range(mapper.element_count):
                writer.writerow([i + 1, m + 1, f"{mapper.phases[m, i]:.12g}"])


def load_phase_mapper(path: str | Path, cfg: ArrayConfig) -> PhaseMapper:
    """Rebuild a mapper from its CSV export; centers come from ``cfg``."""
    rows: dict[tuple[int, int], float] = {}
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            rows[(int(row["beam_id"]), int(row["element_id"]))] = float(row["phase_rad"])
    n_beams = max(key[0] for key in rows)
    n_elem = max(key[1] for key in rows)
    phases = np.empty((n_elem, n_beams))
    for (i, m), phase in rows.items():
        phases[m - 1, i - 1] = phase
    lo, _ = coverage_interval(cfg)
    cell = total_coverage(cfg) / n_beams
    centers = lo + (np.arange(1, n_beams + 1) - 0.5) * cell
    return PhaseMapper(phases=phases, beam_centers=centers)


def export_traverse(log: TraverseLog, path: str | Path) -> None:
    """Write a traverse log as t_s,theta_b_rad,beam_id,switch rows."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t_s", "theta_b_rad", "beam_id", "switch"])
        for s in log.samples:
            writer.writerow(
                [f"{s.time:.12g}", f"{s.train_angle:.12g}", s.beam_id, int(s.switched)]
            )
