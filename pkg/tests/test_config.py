"""Tests for YAML configuration and command-line overrides."""

from pathlib import Path

import pytest

from complex_splitting.core.config import AppConfig
from complex_splitting.core.exceptions import ConfigurationError

CONFIG_YAML = """
study:
  problem: complex-ode
  methods: [strang, clt3]
  workers: 2
ladder:
  dt0: 0.125
  ratio: 2
  rungs: 4
complex_ode:
  u0: "0.1+0.05i"
  t_final: 10
  samples: 10
output:
  dir: out
"""


@pytest.fixture
def config_file(tmp_path):
    """A config file with a complex ODE study."""
    path = tmp_path / "config.yaml"
    path.write_text(CONFIG_YAML, encoding="utf-8")
    return path


class TestAppConfig:
    """Tests for loading configuration files."""

    def test_defaults(self):
        """Test built-in defaults without a file."""
        config = AppConfig(None)
        assert config.path is None
        assert config.study.problem == "adr2d"
        assert config.study.methods == ["strang", "clt2", "clt3", "cstrang3"]
        assert config.reference.abs_tol == 1e-13
        assert config.bch.refinements == 3

    def test_load(self, config_file):
        """Test sections read from YAML."""
        config = AppConfig(config_file)
        assert config.study.methods == ["strang", "clt3"]
        assert config.ladder.dt0 == 0.125
        assert config.complex_ode.samples == 10

    def test_missing_file(self, tmp_path):
        """Test that a missing file raises ConfigurationError."""
        with pytest.raises(ConfigurationError, match="not found"):
            AppConfig(tmp_path / "missing.yaml")

    def test_invalid_yaml(self, tmp_path):
        """Test that malformed YAML raises ConfigurationError."""
        path = tmp_path / "bad.yaml"
        path.write_text("study: [unclosed\n", encoding="utf-8")
        with pytest.raises(ConfigurationError, match="Invalid YAML"):
            AppConfig(path)

    def test_not_a_mapping(self, tmp_path):
        """Test that a top-level list is rejected."""
        path = tmp_path / "list.yaml"
        path.write_text("- a\n- b\n", encoding="utf-8")
        with pytest.raises(ConfigurationError):
            AppConfig(path)


class TestOverrides:
    """Tests for dotted-key overrides."""

    def test_numbers_coerced(self):
        """Test that numeric text becomes numbers."""
        config = AppConfig(None)
        config.apply_assignments(["ladder.rungs=3", "ladder.ratio=4.0", "study.project_real=true"])
        assert config.ladder.rungs == 3
        assert config.ladder.ratio == 4.0
        assert config.study.project_real is True

    def test_lists(self, config_file):
        """Test comma-separated method lists."""
        config = AppConfig(config_file)
        config.override("study.methods", "lt,clt2")
        assert config.study.methods == ["lt", "clt2"]

    def test_bad_assignment(self):
        """Test malformed assignments and keys."""
        config = AppConfig(None)
        with pytest.raises(ConfigurationError):
            config.apply_assignments(["ladder.rungs"])
        with pytest.raises(ConfigurationError):
            config.override("ladder..rungs", "3")

    def test_not_a_section(self, config_file):
        """Test that scalars cannot be descended into."""
        config = AppConfig(config_file)
        with pytest.raises(ConfigurationError, match="not a section"):
            config.override("study.problem.name", "x")


class TestStudyConfig:
    """Tests for building validated study configurations."""

    def test_from_file(self, config_file):
        """Test ladder, problem options and output directory."""
        study = AppConfig(config_file).to_study_config(default_dt0=1.0)
        assert study.dt_values == (0.125, 0.0625, 0.03125, 0.015625)
        assert study.sub_integrator == "kutta3"
        assert study.workers == 2
        assert study.output_dir == "out"
        assert study.problem_options["complex_ode"]["t_final"] == 10.0

    def test_problem_default_ladder(self):
        """Test that the problem default dt0 and sub-integrator are used."""
        study = AppConfig(None).to_study_config(default_dt0=0.1 / 32, output_dir="elsewhere")
        assert study.dt_values[0] == 0.1 / 32
        assert len(study.dt_values) == 6
        assert study.sub_integrator == "rk4"
        assert study.output_dir == "elsewhere"

    def test_invalid_ladder(self):
        """Test that a ratio of one is rejected."""
        config = AppConfig(None)
        config.override("ladder.ratio", "1")
        with pytest.raises(ConfigurationError):
            config.to_study_config(default_dt0=0.1)

    def test_empty_methods(self):
        """Test that an empty method list is rejected."""
        config = AppConfig(None)
        config.override("study.methods", [])
        with pytest.raises(ConfigurationError):
            config.to_study_config(default_dt0=0.1)

    def test_example_config_leaves_output_to_environment(self):
        """Test that the shipped example does not shadow SPLITTING_OUTPUT_DIR."""
        example = Path(__file__).parents[1] / "config" / "config.example.yaml"
        config = AppConfig(example)
        assert config.output.dir is None
        study = config.to_study_config(default_dt0=0.1 / 32, output_dir="from-env")
        assert study.output_dir == "from-env"
