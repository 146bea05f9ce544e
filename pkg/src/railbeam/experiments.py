"""Deterministic CSV experiments reproducing the headline sweeps.

Each experiment writes one or more CSVs plus a JSON manifest echoing the
resolved configuration. Identical configuration yields byte-identical
CSVs; timestamps live only in the manifest.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Iterable, Sequence

from . import __version__
from .codebook import build_phase_mapper, simulate_traverse
from .config import ExperimentConfig
from .encounter import rate_region, symmetric_rate, tfds_baseline
from .geometry import coverage_interval, rail_coordinate
from .positioning import search_beam_count


@dataclass(frozen=True)
class RunManifest:
    experiment: str
    version: str
    generated_at: str
    config: dict
    files: dict[str, int]
    notes: tuple[str, ...]

    def write(self, path: Path) -> None:
        payload = {
            "experiment": self.experiment,
            "version": self.version,
            "generated_at": self.generated_at,
            "config": self.config,
            "files": self.files,
            "notes": list(self.notes),
        }
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _fmt(value) -> str:
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    return f"{value:.12g}"


def _write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> int:
    count = 0
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")
            count += 1
    return count


def _pmap(fn: Callable, items: Sequence, parallel: bool) -> list:
    """Map preserving input order; thread pool only when asked."""
    if not parallel or len(items) < 2:
        return [fn(item) for item in items]
    with ThreadPoolExecutor() as pool:
        return list(pool.map(fn, items))


def _run_tradeoff(cfg: ExperimentConfig, parallel: bool):
    n = cfg.tradeoff_grid_size
    lo, hi = cfg.tradeoff_theta_h_min, cfg.tradeoff_theta_h_max
    factor = cfg.array_type_factor * cfg.design_constant / math.pi
    rows = []
    for i in range(n):
        width = lo + (hi - lo) * i / (n - 1)
        rows.append((width, factor / width))
    return {"tradeoff.csv": (("theta_h_rad", "directivity"), rows)}, []


def _search_rows(cfg: ExperimentConfig, jobs, parallel: bool, lead: str):
    array_cfg = cfg.array_config()

    def run(job):
        lead_value, theta, p_th, sigma = job
        geo = cfg.rail_geometry(theta)
        model = cfg.positioning_model(sigma=sigma, p_th=p_th)
        result = search_beam_count(array_cfg, geo, model)
        row = [lead_value, p_th, result.optimal_beam_count, result.directivity_at_optimum,
               result.achieved_probability, not result.feasible]
        if lead == "theta_b_rad":
            # spacing/beam-count duality columns: d'/d shrinks as N* grows
            row.insert(3, cfg.beam_count / result.optimal_beam_count)
            row.insert(4, result.optimal_beam_count / cfg.beam_count)
        return tuple(row)

    return _pmap(run, jobs, parallel)


def _run_d_vs_theta(cfg: ExperimentConfig, parallel: bool):
    array_cfg = cfg.array_config()
    lo, hi = coverage_interval(array_cfg)
    margin = (hi - lo) * 1e-3
    n = cfg.theta_grid_size
    thetas = [lo + margin + (hi - lo - 2 * margin) * i / (n - 1) for i in range(n)]
    jobs = [
        (theta, theta, p_th, cfg.sigma_m)
        for p_th in cfg.p_th_list
        for theta in thetas
    ]
    rows = _search_rows(cfg, jobs, parallel, "theta_b_rad")
    header = (
        "theta_b_rad", "p_th", "n_star", "d_ratio", "n_ratio",
        "directivity", "achieved_probability", "infeasible",
    )
    notes = [
        f"theta_b swept across the computed coverage interval ({lo:.6g}, {hi:.6g}) rad"
    ]
    return {"d_vs_theta.csv": (header, rows)}, notes


def _run_directivity_vs_sigma(cfg: ExperimentConfig, parallel: bool):
    jobs = [
        (sigma, cfg.theta_b_rad, p_th, sigma)
        for p_th in cfg.p_th_list
        for sigma in cfg.sigma_grid_m
    ]
    rows = _search_rows(cfg, jobs, parallel, "sigma_m")
    header = (
        "sigma_m", "p_th", "n_star", "directivity", "achieved_probability", "infeasible",
    )
    return {"directivity_vs_sigma.csv": (header, rows)}, []


def _run_rate_region(cfg: ExperimentConfig, parallel: bool):
    def region_rows(eta: float):
        region = rate_region(cfg.encounter_scenario(eta=eta), cfg.r2_grid_size)
        return [(r2, r1) for (r1, r2) in region.pairs]

    results = _pmap(region_rows, list(cfg.eta_list), parallel)
    files = {}
    for eta, rows in zip(cfg.eta_list, results):
        files[f"rate_region_eta{eta:g}.csv"] = (("R2_bps_hz", "R1_bps_hz"), rows)
    baseline = tfds_baseline(cfg.encounter_scenario(), cfg.r2_grid_size)
    files["tfds.csv"] = (
        ("R2_bps_hz", "R1_bps_hz"),
        [(r2, r1) for (r1, r2) in baseline.pairs],
    )
    return files, []


def _run_symmetric(cfg: ExperimentConfig, parallel: bool):
    n = cfg.eta_grid_size
    etas = [2.0 * i / (n - 1) for i in range(n)]
    jobs = [(eta, dbm) for dbm in cfg.p0_dbm_list for eta in etas]

    def run(job):
        eta, dbm = job
        sc = cfg.encounter_scenario(eta=eta, p0_w=10.0 ** ((dbm - 30.0) / 10.0))
        return (eta, symmetric_rate(sc), dbm)

    rows = _pmap(run, jobs, parallel)
    return {"symmetric.csv": (("eta", "R0_bps_hz", "p0_dbm"), rows)}, []


def _run_traverse(cfg: ExperimentConfig, parallel: bool):
    array_cfg = cfg.array_config()
    mapper = build_phase_mapper(array_cfg, cfg.beam_count)
    lo, hi = coverage_interval(array_cfg)
    margin = (hi - lo) * 1e-6
    u_start = rail_coordinate(lo + margin, cfg.d0_m)
    u_end = rail_coordinate(hi - margin, cfg.d0_m)
    trajectory = []
    t = 0.0
    u = u_start
    while u > u_end:
        trajectory.append((t, math.atan2(cfg.d0_m, u)))
        t += cfg.traverse_dt_s
        u = u_start - cfg.v0_mps * t
    log = simulate_traverse(trajectory, mapper, array_cfg)
    rows = [
        (s.time, s.train_angle, s.beam_id, s.switched) for s in log.samples
    ]
    header = ("t_s", "theta_b_rad", "beam_id", "switch")
    return {"traverse.csv": (header, rows)}, []


def _run_export_codebook(cfg: ExperimentConfig, parallel: bool):
    array_cfg = cfg.array_config()
    mapper = build_phase_mapper(array_cfg, cfg.beam_count)
    rows = [
        (i + 1, m + 1, mapper.phases[m, i])
        for i in range(mapper.beam_count)
        for m in range(mapper.element_count)
    ]
    return {"codebook.csv": (("beam_id", "element_id", "phase_rad"), rows)}, []


EXPERIMENTS: dict[str, Callable] = {
    "tradeoff": _run_tradeoff,
    "d-vs-theta": _run_d_vs_theta,
    "directivity-vs-sigma": _run_directivity_vs_sigma,
    "rate-region": _run_rate_region,
    "symmetric": _run_symmetric,
    "traverse": _run_traverse,
    "export-codebook": _run_export_codebook,
}


def run_experiment(
    cfg: ExperimentConfig,
    experiment: str,
    out_dir: str | Path,
    parallel: bool = False,
) -> RunManifest:
    """Run one named experiment, returning the manifest written next to it."""
    if experiment not in EXPERIMENTS:
        raise ValueError(f"unknown experiment {experiment!r}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files, notes = EXPERIMENTS[experiment](cfg, parallel)
    counts = {}
    for name, (header, rows) in files.items():
        counts[name] = _write_csv(out / name, header, rows)
    manifest = RunManifest(
        experiment=experiment,
        version=__version__,
        generated_at=datetime.now(timezone.utc).isoformat(),
        config=cfg.as_dict(),
        files=counts,
        notes=tuple(notes),
    )
    manifest.write(out / f"{experiment.replace('-', '_')}_manifest.json")
    return manifest
