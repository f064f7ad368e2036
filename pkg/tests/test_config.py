from pathlib import Path

import pytest

from kasner_resonance.core.config import (
    Command,
    OutputFormat,
    Section,
    build_config,
    load_config_file,
)
from kasner_resonance.core.errors import ConfigError


def write(tmp_path: Path, text: str) -> str:
    path = tmp_path / "run.yaml"
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_defaults_without_file(tmp_path: Path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    cfg = build_config(command="analyze", word="2,3")
    assert cfg.command is Command.ANALYZE
    assert cfg.smoothness == 1
    assert cfg.oracle_order == 30
    assert cfg.format is OutputFormat.TEXT
    assert cfg.section is Section.ALL


def test_yaml_values_and_sweep_section(tmp_path: Path):
    path = write(tmp_path, """
format: json
smoothness: 2
sweep:
  min_period: 2
  max_period: 2
  max_entry: 12
  admissible_only: true
""")
    cfg = build_config(path, command="sweep")
    assert cfg.format is OutputFormat.JSON
    assert cfg.smoothness == 2
    assert (cfg.min_period, cfg.max_period, cfg.max_entry) == (2, 2, 12)
    assert cfg.admissible_only is True


def test_overrides_win_and_none_is_ignored(tmp_path: Path):
    path = write(tmp_path, "smoothness: 3\noracle_order: 40\n")
    cfg = build_config(path, command="verify", smoothness=1, oracle_order=None)
    assert cfg.smoothness == 1
    assert cfg.oracle_order == 40


@pytest.mark.parametrize("text", [
    "smoothness: 0\n",
    "format: html\n",
    "n_jobs: 0\n",
    "sweep:\n  min_period: 3\n  max_period: 2\n",
    "sweep: [1, 2]\n",
    "- just\n- a list\n",
    "format: [unclosed\n",
])
def test_invalid_files(tmp_path: Path, text):
    with pytest.raises(ConfigError):
        build_config(write(tmp_path, text), command="analyze")


def test_validation_details(tmp_path: Path):
    with pytest.raises(ConfigError) as exc:
        build_config(write(tmp_path, "oracle_order: -1\n"), command="verify")
    fields = [e["field"] for e in exc.value.details["errors"]]
    assert "oracle_order" in fields


def test_missing_explicit_file(tmp_path: Path):
    with pytest.raises(ConfigError):
        load_config_file(str(tmp_path / "missing.yaml"))


def test_shipped_config_loads():
    path = Path(__file__).parent.parent / "conf" / "run_config.yaml"
    values = load_config_file(str(path))
    assert values["oracle_order"] == 30
    assert values["max_period"] == 3
