"""Configuration loading utilities for neutrino-lgi."""

from __future__ import annotations

import json
import math
import os
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Optional, Type, TypeVar

from dotenv import load_dotenv

from .errors import ConfigError, ParameterError
from .optimizer import Evaluator, ScanGrid, SweepAxis
from .oscillation import OscillationParams, phase_from_degrees
from .paths import DEFAULT_CONFIG_PATH
from .reporting import Tolerances

# Load .env file if it exists
load_dotenv()

ENV_CONFIG = "NEUTRINO_LGI_CONFIG"
ENV_WORKERS = "NEUTRINO_LGI_WORKERS"
ENV_LOG_LEVEL = "NEUTRINO_LGI_LOG_LEVEL"

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

T = TypeVar("T")


def _check_number(path: str, value: Any, *, minimum: Optional[float] = None, maximum: Optional[float] = None) -> None:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ConfigError(path, f"expected a finite number, got {value!r}")
    if minimum is not None and value < minimum:
        raise ConfigError(path, f"must be >= {minimum}, got {value}")
    if maximum is not None and value > maximum:
        raise ConfigError(path, f"must be <= {maximum}, got {value}")


def _check_int(path: str, value: Any, *, minimum: int) -> None:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(path, f"expected an integer, got {value!r}")
    if value < minimum:
        raise ConfigError(path, f"must be >= {minimum}, got {value}")


def _check_numbers(path: str, values: Any, **bounds: float) -> None:
    if not isinstance(values, list) or not values:
        raise ConfigError(path, f"expected a non-empty list of numbers, got {values!r}")
    for i, value in enumerate(values):
        _check_number(f"{path}[{i}]", value, **bounds)


@dataclass
class PhysicsConfig:
    """Oscillation inputs in laboratory units; defaults are the global-fit point."""

    dm21_sq: float = 7.50e-5  # eV^2
    dm31_sq: float = 2.457e-3  # eV^2
    theta12_deg: float = 33.48
    theta13_deg: float = 8.50
    theta23_deg: float = 42.3
    delta_cp_deg: float = 306.0
    energy_gev: float = 1.0
    density_g_cm3: float = 3.0
    electron_fraction: float = 0.5
    potential_ev: Optional[float] = None  # 设置后覆盖 density * Y_e
    alpha_override: Optional[float] = None

    def validate(self, path: str = "physics") -> None:
        _check_number(f"{path}.dm21_sq", self.dm21_sq)
        _check_number(f"{path}.dm31_sq", self.dm31_sq)
        if self.dm31_sq == 0.0:
            raise ConfigError(f"{path}.dm31_sq", "must be non-zero")
        for name in ("theta12_deg", "theta13_deg", "theta23_deg"):
            _check_number(f"{path}.{name}", getattr(self, name), minimum=0.0, maximum=90.0)
        _check_number(f"{path}.delta_cp_deg", self.delta_cp_deg)
        _check_number(f"{path}.energy_gev", self.energy_gev)
        if self.energy_gev <= 0.0:
            raise ConfigError(f"{path}.energy_gev", f"must be positive, got {self.energy_gev}")
        _check_number(f"{path}.density_g_cm3", self.density_g_cm3, minimum=0.0)
        _check_number(f"{path}.electron_fraction", self.electron_fraction, minimum=0.0, maximum=1.0)
        if self.potential_ev is not None:
            _check_number(f"{path}.potential_ev", self.potential_ev, minimum=0.0)
        if self.alpha_override is not None:
            _check_number(f"{path}.alpha_override", self.alpha_override)

    def to_params(self) -> OscillationParams:
        """The one place degrees become radians."""
        try:
            return OscillationParams.from_degrees(
                dm21_sq=self.dm21_sq,
                dm31_sq=self.dm31_sq,
                theta12_deg=self.theta12_deg,
                theta13_deg=self.theta13_deg,
                theta23_deg=self.theta23_deg,
                delta_cp_deg=self.delta_cp_deg,
                energy_gev=self.energy_gev,
                potential_ev=self.potential_ev,
                density_g_cm3=self.density_g_cm3,
                electron_fraction=self.electron_fraction,
                alpha_override=self.alpha_override,
            )
        except ParameterError as exc:
            raise ConfigError("physics", str(exc)) from exc


@dataclass
class ScheduleConfig:
    l1_km: float = 140.15
    spacing_km: float = 1255.7

    def validate(self, path: str = "schedule") -> None:
        _check_number(f"{path}.l1_km", self.l1_km, minimum=0.0)
        _check_number(f"{path}.spacing_km", self.spacing_km, minimum=0.0)


@dataclass
class ScanConfig:
    l1_min_km: float = 0.0
    l1_max_km: float = 1500.0
    l1_steps: int = 151
    dl_min_km: float = 0.0
    dl_max_km: float = 3000.0
    dl_steps: int = 301
    tolerance_km: float = 1e-3
    max_iterations: int = 2000
    workers: int = 0  # 0 = 每个物理核一个线程
    evaluator: str = Evaluator.EXPANSION.value

    def validate(self, path: str = "scan") -> None:
        for name in ("l1_min_km", "l1_max_km", "dl_min_km", "dl_max_km"):
            _check_number(f"{path}.{name}", getattr(self, name), minimum=0.0)
        _check_int(f"{path}.l1_steps", self.l1_steps, minimum=1)
        _check_int(f"{path}.dl_steps", self.dl_steps, minimum=1)
        _check_number(f"{path}.tolerance_km", self.tolerance_km)
        if self.tolerance_km <= 0.0:
            raise ConfigError(f"{path}.tolerance_km", "must be positive")
        _check_int(f"{path}.max_iterations", self.max_iterations, minimum=1)
        _check_int(f"{path}.workers", self.workers, minimum=0)
        if self.evaluator not in {item.value for item in Evaluator}:
            raise ConfigError(f"{path}.evaluator", f"expected 'expansion' or 'oracle', got {self.evaluator!r}")
        try:
            self.to_grid()
        except ParameterError as exc:
            raise ConfigError(path, str(exc)) from exc

    def to_grid(self) -> ScanGrid:
        return ScanGrid(
            l1_min=float(self.l1_min_km),
            l1_max=float(self.l1_max_km),
            l1_steps=self.l1_steps,
            dl_min=float(self.dl_min_km),
            dl_max=float(self.dl_max_km),
            dl_steps=self.dl_steps,
        )


@dataclass
class SweepConfig:
    theta13_deg: List[float] = field(default_factory=lambda: [0.0, 4.0, 6.0, 8.5, 12.0])
    alpha: List[float] = field(default_factory=lambda: [0.0, 0.01, 0.0305, 0.06])
    delta_cp_deg: List[float] = field(default_factory=lambda: [0.0, 306.0])
    refine: bool = True
    fixed_l1_km: Optional[float] = 140.15

    def validate(self, path: str = "sweep") -> None:
        _check_numbers(f"{path}.theta13_deg", self.theta13_deg, minimum=0.0, maximum=90.0)
        _check_numbers(f"{path}.alpha", self.alpha)
        _check_numbers(f"{path}.delta_cp_deg", self.delta_cp_deg)
        if not isinstance(self.refine, bool):
            raise ConfigError(f"{path}.refine", f"expected true or false, got {self.refine!r}")
        if self.fixed_l1_km is not None:
            _check_number(f"{path}.fixed_l1_km", self.fixed_l1_km, minimum=0.0)

    def values(self, axis: SweepAxis) -> List[float]:
        """Sweep values in internal units (radians for angles)."""
        if axis is SweepAxis.THETA13:
            return [math.radians(value) for value in self.theta13_deg]
        if axis is SweepAxis.DELTA_CP:
            return [phase_from_degrees(value) for value in self.delta_cp_deg]
        return [float(value) for value in self.alpha]

    def display_values(self, axis: SweepAxis) -> List[float]:
        """Sweep values as written in the config (degrees for angles)."""
        if axis is SweepAxis.THETA13:
            return [float(value) for value in self.theta13_deg]
        if axis is SweepAxis.DELTA_CP:
            return [float(value) for value in self.delta_cp_deg]
        return [float(value) for value in self.alpha]


@dataclass
class SimulationConfig:
    n_runs: int = 1_000_000
    seed: int = 20150917
    chunk_size: int = 1 << 16

    def validate(self, path: str = "simulation") -> None:
        _check_int(f"{path}.n_runs", self.n_runs, minimum=2)
        _check_int(f"{path}.seed", self.seed, minimum=0)
        if self.seed >= 2**64:
            raise ConfigError(f"{path}.seed", "must be below 2**64")
        _check_int(f"{path}.chunk_size", self.chunk_size, minimum=1)


@dataclass
class OutputConfig:
    significant_digits: int = 12

    def validate(self, path: str = "output") -> None:
        _check_int(f"{path}.significant_digits", self.significant_digits, minimum=1)


@dataclass
class ReproduceConfig:
    tolerance: float = 1e-2  # 绝对容差，作用于 C*
    relative_tolerance: float = 0.6  # 相对于各派生目标值的比例

    def validate(self, path: str = "reproduce") -> None:
        for name in ("tolerance", "relative_tolerance"):
            _check_number(f"{path}.{name}", getattr(self, name), minimum=0.0)

    def to_tolerances(self) -> Tolerances:
        return Tolerances(c_star=self.tolerance, relative=self.relative_tolerance)


@dataclass
class LoggingConfig:
    level: str = "WARNING"

    def validate(self, path: str = "logging") -> None:
        if not isinstance(self.level, str) or self.level.upper() not in _LOG_LEVELS:
            raise ConfigError(f"{path}.level", f"expected one of {', '.join(_LOG_LEVELS)}, got {self.level!r}")


def _section(cls: Type[T], payload: Any, path: str) -> T:
    """Build one config section on top of its defaults, rejecting unknown keys."""
    if payload is None:
        payload = {}
    if not isinstance(payload, dict):
        raise ConfigError(path, f"expected an object, got {type(payload).__name__}")
    # 过滤掉以下划线开头的注释字段
    cleaned = {key: value for key, value in payload.items() if not key.startswith("_")}
    known = {item.name for item in fields(cls)}  # type: ignore[arg-type]
    for key in cleaned:
        if key not in known:
            raise ConfigError(f"{path}.{key}", "unknown key")
    return cls(**{**asdict(cls()), **cleaned})  # type: ignore[call-arg]


@dataclass
class AppConfig:
    """Top-level configuration."""

    physics: PhysicsConfig = field(default_factory=PhysicsConfig)
    schedule: ScheduleConfig = field(default_factory=ScheduleConfig)
    scan: ScanConfig = field(default_factory=ScanConfig)
    sweep: SweepConfig = field(default_factory=SweepConfig)
    simulation: SimulationConfig = field(default_factory=SimulationConfig)
    output: OutputConfig = field(default_factory=OutputConfig)
    reproduce: ReproduceConfig = field(default_factory=ReproduceConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "AppConfig":
        if not isinstance(payload, dict):
            raise ConfigError("<root>", f"expected an object, got {type(payload).__name__}")
        sections = {item.name: item for item in fields(cls)}
        for key in payload:
            if not key.startswith("_") and key not in sections:
                raise ConfigError(key, "unknown section")
        config = cls(
            physics=_section(PhysicsConfig, payload.get("physics"), "physics"),
            schedule=_section(ScheduleConfig, payload.get("schedule"), "schedule"),
            scan=_section(ScanConfig, payload.get("scan"), "scan"),
            sweep=_section(SweepConfig, payload.get("sweep"), "sweep"),
            simulation=_section(SimulationConfig, payload.get("simulation"), "simulation"),
            output=_section(OutputConfig, payload.get("output"), "output"),
            reproduce=_section(ReproduceConfig, payload.get("reproduce"), "reproduce"),
            logging=_section(LoggingConfig, payload.get("logging"), "logging"),
        )
        config.validate()
        return config

    def validate(self) -> None:
        self.physics.validate()
        self.schedule.validate()
        self.scan.validate()
        self.sweep.validate()
        self.simulation.validate()
        self.output.validate()
        self.reproduce.validate()
        self.logging.validate()
        self.physics.to_params()

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _apply_env(config: AppConfig) -> None:
    env_workers = os.getenv(ENV_WORKERS)
    if env_workers:
        try:
            config.scan.workers = int(env_workers)
        except ValueError as exc:
            raise ConfigError(ENV_WORKERS, f"expected an integer, got {env_workers!r}") from exc

    env_level = os.getenv(ENV_LOG_LEVEL)
    if env_level:
        config.logging.level = env_level.upper()


def load_config(path: Optional[str] = None) -> AppConfig:
    """Load configuration from `path`, the environment or the default location.

    Precedence (lowest first): built-in defaults, config file, environment.
    The file is `path` when given, else $NEUTRINO_LGI_CONFIG, else
    config/default_config.json when it exists; an explicitly named file
    that does not exist raises FileNotFoundError.

    Environment variables (higher priority than config file):
    - NEUTRINO_LGI_WORKERS: worker threads for scans and simulations
    - NEUTRINO_LGI_LOG_LEVEL: logging level
    """
    explicit = path or os.getenv(ENV_CONFIG)
    candidate: Optional[Path] = None
    if explicit:
        candidate = Path(explicit)
        if not candidate.is_file():
            raise FileNotFoundError(f"Could not find configuration file: {candidate}")
    elif DEFAULT_CONFIG_PATH.is_file():
        candidate = DEFAULT_CONFIG_PATH

    if candidate is None:
        config = AppConfig()
    else:
        with candidate.open("r", encoding="utf-8") as handle:
            try:
                data = json.load(handle)
            except json.JSONDecodeError as exc:
                raise ConfigError(str(candidate), f"invalid JSON: {exc}") from exc
        config = AppConfig.from_dict(data)

    _apply_env(config)
    config.validate()
    return config
