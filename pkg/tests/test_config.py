import json
from fractions import Fraction

import pytest
from pydantic import ValidationError

from algebra.errors import InvalidIndexError
from algebra.scalars import Mode
from cli.config import RunConfig, default_api_port, default_log_level, load_config


def test_defaults():
    config = RunConfig(command="eval")
    assert config.r == 2
    assert config.gamma == ["-1/2"]
    assert config.mode is Mode.FLOAT
    assert config.vi.gamma == (Fraction(-1, 2),)
    assert config.threads >= 1


def test_gamma_forms():
    assert RunConfig(command="eval", r=3, gamma="-2/3, -1/3").gamma == ["-2/3", "-1/3"]
    assert RunConfig(command="eval", r=3, gamma=[[-2, 3], "1/3"]).gamma == ["-2/3", "1/3"]
    with pytest.raises(ValidationError):
        RunConfig(command="eval", gamma=[-0.5])


def test_rejections():
    with pytest.raises(ValidationError):
        RunConfig(command="plot")
    with pytest.raises(ValidationError):
        RunConfig(command="eval", truncation=-1)
    with pytest.raises(ValidationError):
        RunConfig(command="eval", colour="blue")
    with pytest.raises((ValidationError, InvalidIndexError)):
        RunConfig(command="eval", r=2, gamma=["-2"])


def test_threads_from_environment(monkeypatch):
    monkeypatch.setenv("HB_THREADS", "3")
    assert RunConfig(command="certify").threads == 3
    assert RunConfig(command="certify", threads=1).threads == 1


def test_environment_defaults(monkeypatch):
    monkeypatch.setenv("HB_LOG_LEVEL", "debug")
    monkeypatch.setenv("HB_API_PORT", "9100")
    assert default_log_level() == "DEBUG"
    assert default_api_port() == 9100
    monkeypatch.delenv("HB_LOG_LEVEL")
    assert default_log_level() == "WARNING"


def test_load_config_merges_file_and_flags(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({
        "command": "eval",
        "r": 3,
        "gamma": ["-2/3", "-1/3"],
        "params": {"z": [1, 0], "tol": 1e-10},
    }))
    config = load_config(str(path), command="eval", r=None, seed=7, params={"tol": 1e-8})
    assert config.r == 3
    assert config.seed == 7
    assert config.params == {"z": [1, 0], "tol": 1e-8}


def test_echo_is_json_safe():
    config = RunConfig(command="identities", mode="exact", params={"cases": 3})
    echoed = config.echo()
    assert echoed["mode"] == "exact"
    assert json.loads(json.dumps(echoed)) == echoed
