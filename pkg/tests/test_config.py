from __future__ import annotations

import json
from pathlib import Path

import pytest

from conic_heat.core.config import RunConfig, load_config
from conic_heat.core.errors import ConfigError


def test_defaults_are_valid() -> None:
    config = RunConfig().validate()
    assert config.convention == "sin"
    assert config.reading == "published"
    assert config.window is None


def test_json_document_overrides_defaults(tmp_path: Path) -> None:
    path = tmp_path / "run.json"
    path.write_text(
        json.dumps(
            {
                "profile": "curved_spindle",
                "params": {"c": 0.6, "kappa": 0.4},
                "lambda_max": "4000",
                "basis": ["t^-1", "1", "t^1/2"],
                "window": [0.01, 0.1],
            }
        ),
        encoding="utf-8",
    )
    config = load_config(path, environ={}).validate()
    assert config.profile == "curved_spindle"
    assert config.params == {"c": 0.6, "kappa": 0.4}
    assert config.lambda_max == 4000.0
    assert config.basis == ("t^-1", "1", "t^1/2")
    assert config.window == (0.01, 0.1)


def test_environment_overrides_document(tmp_path: Path) -> None:
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"threads": 2, "tol": 1e-8}), encoding="utf-8")
    environ = {"CONIC_HEAT_THREADS": "4", "CONIC_HEAT_READING": "continued", "CONIC_HEAT_TOL": ""}
    config = load_config(path, environ=environ)
    assert config.threads == 4
    assert config.reading == "continued"
    assert config.tol == 1e-8


def test_environment_skips_structured_fields() -> None:
    config = RunConfig().with_environment({"CONIC_HEAT_PARAMS": "{}", "CONIC_HEAT_BASIS": "1"})
    assert config.params == {}
    assert config.basis == ()


def test_bad_environment_value() -> None:
    with pytest.raises(ConfigError, match="CONIC_HEAT_THREADS"):
        RunConfig().with_environment({"CONIC_HEAT_THREADS": "many"})


def test_round_trip_through_json() -> None:
    config = RunConfig(profile="flat_cone", params={"c": 0.5}, window=(0.01, 0.1))
    assert RunConfig.from_json(config.to_json()) == config


@pytest.mark.parametrize(
    "text",
    ["not json", "[1, 2]", '{"colour": "red"}', '{"params": [1]}', '{"window": [0.1]}'],
)
def test_malformed_documents_rejected(text: str) -> None:
    with pytest.raises(ConfigError):
        RunConfig.from_json(text)


def test_missing_file_rejected(tmp_path: Path) -> None:
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(tmp_path / "absent.json", environ={})


@pytest.mark.parametrize(
    "changes",
    [
        {"profile": "torus"},
        {"profile": "flat_cone", "params": {"c": 1.5}},
        {"tol": 0.0},
        {"epsilon": -1.0},
        {"lambda_max": -1.0},
        {"t_min": 0.5, "t_max": 0.1},
        {"window": (0.001, 0.1)},
        {"points_per_decade": 0},
        {"max_points": 8},
        {"max_condition": 0.5},
        {"d": 1},
        {"threads": 0},
        {"convention": "cos"},
        {"reading": "literal"},
        {"basis": ("t^1/3",)},
    ],
)
def test_validation_rejects(changes: dict[str, object]) -> None:
    with pytest.raises(ConfigError):
        RunConfig(**changes).validate()  # type: ignore[arg-type]


def test_config_error_is_value_error() -> None:
    assert issubclass(ConfigError, ValueError)
    assert ConfigError.exit_code == 1
