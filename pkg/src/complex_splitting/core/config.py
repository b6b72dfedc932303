"""Configuration management using Pydantic Settings and YAML."""

from pathlib import Path
from typing import Any

import yaml
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from ..models.study import StudyConfig
from ..numerics import geometric_ladder
from .exceptions import ConfigurationError


class Settings(BaseSettings):
    """Environment settings loaded from .env file."""

    model_config = SettingsConfigDict(
        env_file="config/.env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    log_level: str = Field(default="INFO", alias="LOG_LEVEL")
    config_path: str = Field(default="config/config.yaml", alias="SPLITTING_CONFIG")
    output_dir: str = Field(default="./results", alias="SPLITTING_OUTPUT_DIR")


class StudySection:
    """Which problem, methods and sub-integrator a study runs."""

    def __init__(self, data: dict[str, Any]):
        self.problem: str = data.get("problem", "adr2d")
        self.methods: list[str] = _as_list(
            data.get("methods", ["strang", "clt2", "clt3", "cstrang3"])
        )
        self.sub_integrator: str | None = data.get("sub_integrator")
        self.substeps: int = int(data.get("substeps", 1))
        self.project_real: bool = bool(data.get("project_real", False))
        self.seed: int = int(data.get("seed", 20240917))
        self.workers: int = int(data.get("workers", 1))


class LadderSection:
    """Geometric step-size ladder; dt0 None means the problem default."""

    def __init__(self, data: dict[str, Any]):
        dt0 = data.get("dt0")
        self.dt0: float | None = float(dt0) if dt0 is not None else None
        self.ratio: float = float(data.get("ratio", 2.0))
        self.rungs: int = int(data.get("rungs", 6))


class ReferenceSection:
    """Tolerances of the adaptive reference solver."""

    def __init__(self, data: dict[str, Any]):
        self.abs_tol: float = float(data.get("abs_tol", 1e-13))
        self.rel_tol: float = float(data.get("rel_tol", 1e-13))


class AdrSection:
    """Advection-diffusion-reaction problem parameters."""

    def __init__(self, data: dict[str, Any]):
        self.alpha: float = float(data.get("alpha", -10.0))
        self.epsilon: float = float(data.get("epsilon", 0.01))
        self.gamma: float = float(data.get("gamma", 100.0))
        self.dx: float = float(data.get("dx", 1 / 40))
        self.t_final: float = float(data.get("t_final", 0.1))


class ComplexOdeSection:
    """Complex-valued ODE problem parameters."""

    def __init__(self, data: dict[str, Any]):
        # strings such as "0.1+0.2i" are parsed by the problem config
        self.u0: complex | str = data.get("u0", 0.1)
        self.t_final: float = float(data.get("t_final", 100.0))
        self.samples: int = int(data.get("samples", 100))


class BchSection:
    """Defaults for the BCH truncation check."""

    def __init__(self, data: dict[str, Any]):
        self.n_operators: int = int(data.get("n_operators", 3))
        self.dimension: int = int(data.get("dimension", 3))
        self.seed: int = int(data.get("seed", 20240917))
        self.t0: float = float(data.get("t0", 0.1))
        self.refinements: int = int(data.get("refinements", 3))


class OutputSection:
    """Artifact output configuration."""

    def __init__(self, data: dict[str, Any]):
        self.dir: str | None = data.get("dir")
        self.csv: bool = bool(data.get("csv", True))
        self.svg: bool = bool(data.get("svg", True))


class AppConfig:
    """Application configuration loaded from YAML file."""

    def __init__(self, config_path: Path | str | None = Path("config/config.yaml")):
        """Load configuration.

        Args:
            config_path: YAML file to read, or None for built-in defaults only.
        """
        self._config_path = Path(config_path) if config_path is not None else None
        self._config: dict[str, Any] = {}
        self._load()

    def _load(self) -> None:
        """Load configuration from YAML file."""
        if self._config_path is None:
            self._config = {}
            return
        if not self._config_path.exists():
            raise ConfigurationError(f"Config file not found: {self._config_path}")

        try:
            with open(self._config_path, encoding="utf-8") as f:
                self._config = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigurationError(f"Invalid YAML in {self._config_path}: {e}") from e
        if not isinstance(self._config, dict):
            raise ConfigurationError(f"{self._config_path} must contain a mapping")

    def reload(self) -> None:
        """Reload configuration from file."""
        self._load()

    def override(self, dotted_key: str, value: Any) -> None:
        """Set a nested key such as ``ladder.dt0``.

        Args:
            dotted_key: Dot-separated path into the configuration.
            value: New value; strings are coerced to numbers, booleans or lists.
        """
        parts = dotted_key.split(".")
        if not all(parts):
            raise ConfigurationError(f"Invalid configuration key: {dotted_key!r}")

        node = self._config
        for part in parts[:-1]:
            child = node.setdefault(part, {})
            if not isinstance(child, dict):
                raise ConfigurationError(f"{dotted_key}: {part} is not a section")
            node = child

        current = node.get(parts[-1])
        if isinstance(value, str):
            value = _coerce(value, list_expected=isinstance(current, list))
        node[parts[-1]] = value

    def apply_assignments(self, assignments: list[str]) -> None:
        """Apply ``key.path=value`` assignments from the command line."""
        for assignment in assignments:
            key, sep, value = assignment.partition("=")
            if not sep:
                raise ConfigurationError(f"Expected key=value, got {assignment!r}")
            self.override(key.strip(), value.strip())

    @property
    def path(self) -> Path | None:
        """Get the configuration file path."""
        return self._config_path

    @property
    def study(self) -> StudySection:
        """Get study configuration."""
        return StudySection(self._config.get("study", {}))

    @property
    def ladder(self) -> LadderSection:
        """Get step-size ladder configuration."""
        return LadderSection(self._config.get("ladder", {}))

    @property
    def reference(self) -> ReferenceSection:
        """Get reference solver configuration."""
        return ReferenceSection(self._config.get("reference", {}))

    @property
    def adr(self) -> AdrSection:
        """Get ADR problem configuration."""
        return AdrSection(self._config.get("adr", {}))

    @property
    def complex_ode(self) -> ComplexOdeSection:
        """Get complex ODE configuration."""
        return ComplexOdeSection(self._config.get("complex_ode", {}))

    @property
    def bch(self) -> BchSection:
        """Get BCH check configuration."""
        return BchSection(self._config.get("bch", {}))

    @property
    def output(self) -> OutputSection:
        """Get output configuration."""
        return OutputSection(self._config.get("output", {}))

    def problem_options(self) -> dict[str, dict[str, Any]]:
        """Problem parameter sections as plain dictionaries."""
        adr = self.adr
        complex_ode = self.complex_ode
        return {
            "adr": {
                "alpha": adr.alpha,
                "epsilon": adr.epsilon,
                "gamma": adr.gamma,
                "dx": adr.dx,
                "t_final": adr.t_final,
            },
            "complex_ode": {
                "u0": complex_ode.u0,
                "t_final": complex_ode.t_final,
                "samples": complex_ode.samples,
            },
        }

    def to_study_config(self, default_dt0: float, output_dir: str | None = None) -> StudyConfig:
        """Build the validated study configuration.

        Args:
            default_dt0: Largest step when ``ladder.dt0`` is unset (problem default).
            output_dir: Output directory when ``output.dir`` is unset.

        Raises:
            ConfigurationError: If the ladder or the study section is invalid.
        """
        study = self.study
        ladder = self.ladder
        reference = self.reference
        try:
            dt_values = geometric_ladder(ladder.dt0 or default_dt0, ladder.ratio, ladder.rungs)
            return StudyConfig(
                problem=study.problem,
                methods=tuple(study.methods),
                dt_values=tuple(dt_values),
                sub_integrator=study.sub_integrator or _default_sub_integrator(study.problem),
                substeps_per_flow=study.substeps,
                project_real=study.project_real,
                abs_tol=reference.abs_tol,
                rel_tol=reference.rel_tol,
                output_dir=self.output.dir or output_dir or "./results",
                seed=study.seed,
                workers=study.workers,
                problem_options=self.problem_options(),
            )
        except ValueError as e:
            raise ConfigurationError(f"Invalid study configuration: {e}") from e


def _as_list(value: Any) -> list[str]:
    if isinstance(value, str):
        return [v.strip() for v in value.split(",") if v.strip()]
    return [str(v) for v in value]


def _coerce(text: str, list_expected: bool = False) -> Any:
    """Turn command-line text into a config value."""
    if list_expected:
        return _as_list(text)
    for convert in (int, float):
        try:
            return convert(text)
        except ValueError:
            pass
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError:
        return text


def _default_sub_integrator(problem: str) -> str:
    # RK4 for the PDE, Kutta's third-order method for the scalar ODE
    return "rk4" if problem == "adr2d" else "kutta3"
