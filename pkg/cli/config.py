"""
Run configuration: JSON config file first, command-line flags override field by field.
"""
import json
import os
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from algebra.index import VectorIndex, make_index
from algebra.parallel import thread_count
from algebra.scalars import Mode
from algebra.series import DEFAULT_TRUNCATION

VERSION = "1.0.0"

COMMANDS = ("eval", "apply", "translate", "convolve", "fourier", "identities", "certify")


def default_log_level() -> str:
    return os.getenv("HB_LOG_LEVEL", "WARNING").upper()


def default_api_port() -> int:
    return int(os.getenv("HB_API_PORT", "8000"))


class RunConfig(BaseModel):
    """
    Validated parameters of one command.

    Args:
        command: One of the CLI commands
        r: Order of the operator
        gamma: Vector index as rational strings
        truncation: Series truncation order N
        mode: Exact or float arithmetic
        params: Command-specific parameters
        output: Output path (stdout when absent)
        seed: Seed of randomized suites
        threads: Parallelism cap
    """
    model_config = ConfigDict(extra="forbid", use_enum_values=False)

    command: str
    r: int = 2
    gamma: List[str] = Field(default_factory=lambda: ["-1/2"])
    truncation: int = Field(DEFAULT_TRUNCATION, ge=0)
    mode: Mode = Mode.FLOAT
    params: Dict[str, Any] = Field(default_factory=dict)
    output: Optional[str] = None
    seed: int = 0
    threads: int = Field(default_factory=thread_count, ge=1)

    @field_validator("command")
    @classmethod
    def _known_command(cls, value: str) -> str:
        if value not in COMMANDS:
            raise ValueError(f"unknown command {value!r}, expected one of {', '.join(COMMANDS)}")
        return value

    @field_validator("gamma", mode="before")
    @classmethod
    def _rational_strings(cls, value):
        if isinstance(value, str):
            value = [part for part in value.replace(",", " ").split() if part]
        result = []
        for g in value:
            if isinstance(g, float):
                raise ValueError("gamma entries must be rational strings such as '-1/2', not floats")
            if isinstance(g, (list, tuple)) and len(g) == 2:
                g = f"{g[0]}/{g[1]}"
            result.append(str(g))
        return result

    @model_validator(mode="after")
    def _valid_index(self) -> 'RunConfig':
        make_index(self.r, self.gamma)
        return self

    @property
    def vi(self) -> VectorIndex:
        return make_index(self.r, self.gamma)

    def echo(self) -> Dict[str, Any]:
        """JSON-safe copy of the configuration for reports."""
        return self.model_dump(mode="json")


def load_config(path: Optional[str] = None, **overrides) -> RunConfig:
    """
    Build a RunConfig from an optional JSON file and flag overrides.

    Overrides equal to None are ignored; ``params`` overrides are merged key by key.
    """
    data: Dict[str, Any] = {}
    if path:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    params = dict(data.get("params", {}))
    params.update(overrides.pop("params", None) or {})
    for key, value in overrides.items():
        if value is not None:
            data[key] = value
    data["params"] = params
    return RunConfig.model_validate(data)
