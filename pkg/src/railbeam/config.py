"""Key-value experiment configuration with declared defaults.

The file format is one ``key = value`` per line, ``#`` starts a comment.
Unknown keys are rejected with their line number. Quantities with a unit
choice carry it in the key name (``theta_b_rad`` vs ``theta_b_deg``,
``p0_dbm`` vs ``p0_w``), never guessed from magnitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

from .encounter import EncounterScenario
from .geometry import ArrayConfig, RailGeometry, directivity, wavelength_from_frequency
from .positioning import PositioningModel


class ConfigError(ValueError):
    """Malformed key, value, or invariant violation in a config file."""


def dbm_to_watts(dbm: float) -> float:
    return 10.0 ** ((dbm - 30.0) / 10.0)


def watts_to_dbm(watts: float) -> float:
    return 10.0 * math.log10(watts) + 30.0


def kmh_to_mps(kmh: float) -> float:
    return kmh / 3.6


DEFAULT_NOISE_POWER_W = 10.0 ** (-13.4)  # -104 dBm

# key -> (parser, description); None default means "derived after parsing"
_FLOAT = float
_INT = int


def _float_list(text: str) -> tuple[float, ...]:
    """Comma list (``a,b,c``) or linspace shorthand (``start:stop:count``)."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError("expected start:stop:count")
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        if count < 2:
            raise ValueError("count must be >= 2")
        step = (stop - start) / (count - 1)
        return tuple(start + i * step for i in range(count))
    return tuple(float(p) for p in text.split(",") if p.strip())


_KEY_PARSERS = {
    "carrier_frequency_hz": _FLOAT,
    "wavelength_m": _FLOAT,
    "spacing_m": _FLOAT,
    "element_count": _INT,
    "beam_count": _INT,
    "design_constant": _FLOAT,
    "array_type_factor": _INT,
    "bs_coverage_angle_rad": _FLOAT,
    "bs_coverage_angle_deg": _FLOAT,
    "d0_m": _FLOAT,
    "h0_m": _FLOAT,
    "theta_b_rad": _FLOAT,
    "theta_b_deg": _FLOAT,
    "sigma_m": _FLOAT,
    "p_th": _FLOAT,
    "n_max": _INT,
    "L_m": _FLOAT,
    "v0_mps": _FLOAT,
    "v0_kmh": _FLOAT,
    "path_loss_exp": _FLOAT,
    "p0_dbm": _FLOAT,
    "p0_w": _FLOAT,
    "noise_power_w": _FLOAT,
    "noise_power_dbm": _FLOAT,
    "eta": _FLOAT,
    "beam_weight_1": _FLOAT,
    "beam_weight_2": _FLOAT,
    "seed": _INT,
    "theta_grid_size": _INT,
    "sigma_grid_m": _float_list,
    "p_th_list": _float_list,
    "r2_grid_size": _INT,
    "eta_list": _float_list,
    "eta_grid_size": _INT,
    "p0_dbm_list": _float_list,
    "traverse_dt_s": _FLOAT,
    "tradeoff_theta_h_min": _FLOAT,
    "tradeoff_theta_h_max": _FLOAT,
    "tradeoff_grid_size": _INT,
    "out_dir": str,
}

_UNIT_PAIRS = [
    ("theta_b_rad", "theta_b_deg"),
    ("bs_coverage_angle_rad", "bs_coverage_angle_deg"),
    ("v0_mps", "v0_kmh"),
    ("p0_dbm", "p0_w"),
    ("noise_power_w", "noise_power_dbm"),
]


@dataclass
class ExperimentConfig:
    """Fully resolved parameters for the library and the experiment runner."""

    # array / carrier
    carrier_frequency_hz: float = 2.4e9
    wavelength_m: float = 0.0  # derived from the carrier unless given
    spacing_m: float = 0.0  # defaults to wavelength / 2
    element_count: int = 128
    beam_count: int = 128
    design_constant: float = 2.782
    array_type_factor: int = 2
    bs_coverage_angle_rad: float = 1.0
    # rail geometry
    d0_m: float = 50.0
    h0_m: float = 20.0
    theta_b_rad: float = math.pi / 4
    # positioning
    sigma_m: float = 1.0
    p_th: float = 0.9
    n_max: int = 0  # defaults to element_count
    # encounter
    L_m: float = 800.0
    v0_mps: float = 100.0
    path_loss_exp: float = 3.0
    p0_w: float = dbm_to_watts(43.0)
    noise_power_w: float = DEFAULT_NOISE_POWER_W
    eta: float = 0.0
    beam_weight_1: float = 0.0  # defaults to directivity at beam_count
    beam_weight_2: float = 0.0
    # harness
    seed: int = 42
    theta_grid_size: int = 101
    sigma_grid_m: tuple[float, ...] = field(
        default_factory=lambda: tuple(0.5 * (i + 1) for i in range(20))
    )
    p_th_list: tuple[float, ...] = (0.7, 0.8, 0.9)
    r2_grid_size: int = 101
    eta_list: tuple[float, ...] = (0.0, 0.8, 1.6, 2.0)
    eta_grid_size: int = 21
    p0_dbm_list: tuple[float, ...] = (37.0, 43.0, 47.0)
    traverse_dt_s: float = 0.001
    tradeoff_theta_h_min: float = 0.01
    tradeoff_theta_h_max: float = math.pi
    tradeoff_grid_size: int = 200
    out_dir: str = "out"

    def array_config(self) -> ArrayConfig:
        return ArrayConfig(
            element_count=self.element_count,
            spacing=self.spacing_m,
            wavelength=self.wavelength_m,
            design_constant=self.design_constant,
            array_type_factor=self.array_type_factor,
            bs_coverage_angle=self.bs_coverage_angle_rad,
        )

    def rail_geometry(self, theta_b: float | None = None) -> RailGeometry:
        return RailGeometry(
            perpendicular_distance=self.d0_m,
            antenna_height=self.h0_m,
            train_angle=self.theta_b_rad if theta_b is None else theta_b,
        )

    def positioning_model(self, sigma: float | None = None, p_th: float | None = None) -> PositioningModel:
        return PositioningModel(
            error_stddev=self.sigma_m if sigma is None else sigma,
            threshold=self.p_th if p_th is None else p_th,
            max_beam_count=self.n_max,
        )

    def encounter_scenario(
        self, eta: float | None = None, p0_w: float | None = None
    ) -> EncounterScenario:
        return EncounterScenario(
            half_coverage=self.L_m,
            speed=self.v0_mps,
            perpendicular_distance=self.d0_m,
            antenna_height=self.h0_m,
            path_loss_exponent=self.path_loss_exp,
            avg_power=self.p0_w if p0_w is None else p0_w,
            noise_power=self.noise_power_w,
            entry_offset=self.eta if eta is None else eta,
            beam_weight_1=self.beam_weight_1,
            beam_weight_2=self.beam_weight_2,
        )

    def as_dict(self) -> dict:
        out = {}
        for name in self.__dataclass_fields__:
            value = getattr(self, name)
            out[name] = list(value) if isinstance(value, tuple) else value
        return out


def _parse_lines(path: str | Path) -> dict[str, tuple[object, int]]:
    values: dict[str, tuple[object, int]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
            key, _, text = line.partition("=")
            key = key.strip()
            text = text.strip()
            if key not in _KEY_PARSERS:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
            if key in values:
                raise ConfigError(f"line {lineno}: duplicate key {key!r}")
            try:
                values[key] = (_KEY_PARSERS[key](text), lineno)
            except (ValueError, TypeError) as exc:
                raise ConfigError(f"line {lineno}: bad value for {key!r}: {exc}") from exc
    return values


def _check_ranges(cfg: ExperimentConfig) -> None:
    if not 0.0 <= cfg.eta <= 2.0:
        raise ConfigError(f"eta={cfg.eta:g} outside [0, 2]")
    if not 2.0 <= cfg.path_loss_exp <= 5.0:
        raise ConfigError(f"path_loss_exp={cfg.path_loss_exp:g} outside [2, 5]")
    if not 0.0 < cfg.p_th < 1.0:
        raise ConfigError(f"p_th={cfg.p_th:g} outside (0, 1)")
    for name in ("d0_m", "L_m", "v0_mps", "p0_w", "noise_power_w", "traverse_dt_s"):
        if getattr(cfg, name) <= 0:
            raise ConfigError(f"{name} must be positive")
    if cfg.h0_m < 0 or cfg.sigma_m < 0:
        raise ConfigError("h0_m and sigma_m must be >= 0")
    if cfg.n_max < 1 or cfg.n_max > cfg.element_count:
        raise ConfigError(f"n_max={cfg.n_max} outside [1, element_count]")
    if not 1 <= cfg.beam_count <= cfg.element_count:
        raise ConfigError(f"beam_count={cfg.beam_count} outside [1, element_count]")
    for p in cfg.p_th_list:
        if not 0.0 < p < 1.0:
            raise ConfigError(f"p_th_list entry {p:g} outside (0, 1)")
    for e in cfg.eta_list:
        if not 0.0 <= e <= 2.0:
            raise ConfigError(f"eta_list entry {e:g} outside [0, 2]")
    for s in cfg.sigma_grid_m:
        if s < 0:
            raise ConfigError(f"sigma_grid_m entry {s:g} must be >= 0")
    for size_name in ("theta_grid_size", "r2_grid_size", "eta_grid_size", "tradeoff_grid_size"):
        if getattr(cfg, size_name) < 2:
            raise ConfigError(f"{size_name} must be >= 2")


def load_config(path: str | Path | None = None) -> ExperimentConfig:
    """Parse a config file on top of the defaults; None means all defaults."""
    values = _parse_lines(path) if path is not None else {}

    for a, b in _UNIT_PAIRS:
        if a in values and b in values:
            line = values[b][1]
            raise ConfigError(f"line {line}: {a!r} and {b!r} both set, pick one unit")

    cfg = ExperimentConfig()
    converted: dict[str, object] = {}
    for key, (value, _) in values.items():
        if key == "theta_b_deg":
            converted["theta_b_rad"] = math.radians(value)
        elif key == "bs_coverage_angle_deg":
            converted["bs_coverage_angle_rad"] = math.radians(value)
        elif key == "v0_kmh":
            converted["v0_mps"] = kmh_to_mps(value)
        elif key == "p0_dbm":
            converted["p0_w"] = dbm_to_watts(value)
        elif key == "noise_power_dbm":
            converted["noise_power_w"] = dbm_to_watts(value)
        else:
            converted[key] = value
    for key, value in converted.items():
        setattr(cfg, key, value)

    if "wavelength_m" not in converted:
        cfg.wavelength_m = wavelength_from_frequency(cfg.carrier_frequency_hz)
    if "spacing_m" not in converted:
        cfg.spacing_m = cfg.wavelength_m / 2.0
    if "n_max" not in converted:
        cfg.n_max = cfg.element_count

    _check_ranges(cfg)
    try:
        array_cfg = cfg.array_config()
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    default_weight = directivity(array_cfg, cfg.beam_count)
    if "beam_weight_1" not in converted:
        cfg.beam_weight_1 = default_weight
    if "beam_weight_2" not in converted:
        cfg.beam_weight_2 = default_weight
    if cfg.beam_weight_1 <= 0 or cfg.beam_weight_2 <= 0:
        raise ConfigError("beam weights must be positive")
    return cfg
