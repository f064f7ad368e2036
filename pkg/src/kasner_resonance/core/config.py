from __future__ import annotations
import os
from enum import Enum
from typing import Any, Dict, Optional

import yaml
from pydantic import BaseModel, Field, ValidationError, model_validator

from .errors import ConfigError

DEFAULT_CONFIG_FILE = os.path.join("conf", "run_config.yaml")


class Command(str, Enum):
    ANALYZE = "analyze"
    APPENDIX = "appendix"
    SWEEP = "sweep"
    VERIFY = "verify"


class OutputFormat(str, Enum):
    TEXT = "text"
    CSV = "csv"
    JSON = "json"


class Section(str, Enum):
    A1 = "a1"
    A2 = "a2"
    A3 = "a3"
    A4 = "a4"
    ALL = "all"


class RunConfig(BaseModel):
    """一次运行的全部参数（YAML默认值 + CLI覆盖）"""
    command: Command = Command.ANALYZE
    word: Optional[str] = None
    smoothness: int = Field(default=1, ge=1)
    format: OutputFormat = OutputFormat.TEXT
    oracle_order: int = Field(default=30, ge=1)
    n_jobs: int = 1
    section: Section = Section.ALL
    min_period: int = Field(default=1, ge=1)
    max_period: int = Field(default=3, ge=1)
    min_entry: int = Field(default=1, ge=1)
    max_entry: int = Field(default=5, ge=1)
    admissible_only: bool = False
    quiet: bool = False

    @model_validator(mode="after")
    def _check_bounds(self) -> "RunConfig":
        if self.min_period > self.max_period:
            raise ValueError(f"min_period {self.min_period} > max_period {self.max_period}")
        if self.min_entry > self.max_entry:
            raise ValueError(f"min_entry {self.min_entry} > max_entry {self.max_entry}")
        if self.n_jobs == 0 or self.n_jobs < -1:
            raise ValueError(f"n_jobs must be -1 or a positive integer, got {self.n_jobs}")
        return self


def _flatten(raw: Dict[str, Any]) -> Dict[str, Any]:
    """sweep: 小节展开到顶层"""
    flat = {k: v for k, v in raw.items() if k != "sweep"}
    sweep = raw.get("sweep") or {}
    if not isinstance(sweep, dict):
        raise ConfigError("'sweep' section must be a mapping", {"sweep": sweep})
    flat.update(sweep)
    return flat


def load_config_file(path: Optional[str] = None) -> Dict[str, Any]:
    """读取YAML配置；未指定时使用默认文件（不存在则返回空）"""
    explicit = path is not None
    path = path or DEFAULT_CONFIG_FILE
    if not os.path.exists(path):
        if explicit:
            raise ConfigError(f"Config file not found: {path}", {"file": path})
        return {}
    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise ConfigError(f"Invalid YAML in {path}: {e}", {"file": path}) from e
    if not isinstance(raw, dict):
        raise ConfigError(f"Config file {path} must contain a mapping", {"file": path})
    return _flatten(raw)


def build_config(path: Optional[str] = None, **overrides: Any) -> RunConfig:
    """文件值 < 显式参数（None 表示未指定）"""
    values = load_config_file(path)
    values.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return RunConfig(**values)
    except ValidationError as e:
        raise ConfigError(
            "Invalid run configuration",
            {"errors": [{"field": ".".join(str(p) for p in err["loc"]), "message": err["msg"]}
                        for err in e.errors()]},
        ) from e
