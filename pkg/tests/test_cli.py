from __future__ import annotations

import json
import logging
from pathlib import Path

import pytest

from conic_heat import __version__, cli
from conic_heat.checks import CheckResult, load_all_checks

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def _config(tmp_path: Path, data: dict[str, object]) -> str:
    path = tmp_path / "config.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def test_version(capsys: pytest.CaptureFixture[str]) -> None:
    with pytest.raises(SystemExit) as info:
        cli.main(["--version"])
    assert info.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_predict_writes_json(tmp_path: Path) -> None:
    out = tmp_path / "out"
    code = cli.main(
        ["predict", "--config", str(CONFIGS / "curved_spindle.json"), "--out", str(out)]
    )
    assert code == 0
    data = json.loads((out / "predict.json").read_text(encoding="utf-8"))
    assert data["profile"]["label"].startswith("curved_spindle")
    assert data["prediction"]["totals"]["bhalf"] == pytest.approx(0.0391797, rel=1e-5)
    continued = data["prediction"]["alternatives"]["bhalf_continued"]
    assert sum(continued) == pytest.approx(-0.1003883, rel=1e-5)


def test_reading_flag_overrides_config(tmp_path: Path) -> None:
    out = tmp_path / "out"
    args = ["predict", "--config", str(CONFIGS / "curved_spindle.json"), "--out", str(out)]
    assert cli.main([*args, "--reading", "continued"]) == 0
    data = json.loads((out / "predict.json").read_text(encoding="utf-8"))
    assert data["prediction"]["reading"] == "continued"
    assert data["prediction"]["totals"]["bhalf"] == pytest.approx(-0.1003883, rel=1e-5)


def test_invalid_profile_exits_with_config_code(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    out = tmp_path / "out"
    config = _config(tmp_path, {"profile": "flat_cone", "params": {"c": 2.0}})
    assert cli.main(["predict", "--config", config, "--out", str(out)]) == 1
    record = json.loads((out / "error.json").read_text(encoding="utf-8"))
    assert record["exit_code"] == 1
    assert record["error"] == "ConfigError"
    assert "ConfigError" in capsys.readouterr().err


def test_unknown_key_exits_with_config_code(tmp_path: Path) -> None:
    config = _config(tmp_path, {"lambda_maximum": 10})
    assert cli.main(["predict", "--config", config, "--out", str(tmp_path / "out")]) == 1


def test_failed_check_exits_with_verification_code(
    tmp_path: Path, monkeypatch: pytest.MonkeyPatch
) -> None:
    load_all_checks()
    failing = [CheckResult(name="wronskian", passed=False, worst_error=1.0, tolerance=1e-11)]
    monkeypatch.setattr(cli, "run_all_checks", lambda: failing)
    out = tmp_path / "out"
    assert cli.main(["verify", "--out", str(out)]) == 3
    data = json.loads((out / "verify.json").read_text(encoding="utf-8"))
    assert data["checks"][0]["passed"] is False
    record = json.loads((out / "error.json").read_text(encoding="utf-8"))
    assert record["error"] == "VerificationError"


def test_empty_spectrum_is_deterministic(tmp_path: Path) -> None:
    config = _config(tmp_path, {"profile": "flat_cone", "params": {"c": 0.5}})
    cache = tmp_path / "cache"
    outputs = []
    for run in ("miss", "hit"):
        out = tmp_path / run
        args = ["spectrum", "--config", config, "--out", str(out), "--cache", str(cache)]
        assert cli.main([*args, "--lambda-max", "0"]) == 0
        outputs.append((out / "spectrum.csv").read_bytes())
    assert outputs[0] == outputs[1] == b"k,n,lambda,mult,err\n"
    assert len(list(cache.glob("*.json"))) == 1


def test_solved_spectrum_is_deterministic_across_cache(tmp_path: Path) -> None:
    config = _config(tmp_path, {"profile": "flat_cone", "params": {"c": 0.5}})
    cache = tmp_path / "cache"
    outputs = []
    for run in ("miss", "hit"):
        out = tmp_path / run
        args = ["spectrum", "--config", config, "--out", str(out), "--cache", str(cache)]
        assert cli.main([*args, "--lambda-max", "60"]) == 0
        outputs.append((out / "spectrum.csv").read_bytes())
    assert outputs[0] == outputs[1]
    assert len(outputs[0].splitlines()) > 1
    assert len(list(cache.glob("*.json"))) == 1


def test_unexpected_failure_exits_with_numerical_code(
    tmp_path: Path, monkeypatch: pytest.MonkeyPatch, caplog: pytest.LogCaptureFixture
) -> None:
    def broken(*args: object, **kwargs: object) -> None:
        raise RuntimeError("integrator state clobbered")

    monkeypatch.setattr(cli, "load_spectrum", broken)
    config = _config(tmp_path, {"profile": "flat_cone", "params": {"c": 0.5}})
    out = tmp_path / "out"
    with caplog.at_level(logging.ERROR, logger="conic_heat"):
        assert cli.main(["spectrum", "--config", config, "--out", str(out), "--no-cache"]) == 2
    record = json.loads((out / "error.json").read_text(encoding="utf-8"))
    assert record == {
        "error": "RuntimeError",
        "message": "integrator state clobbered",
        "exit_code": 2,
    }
    assert "Traceback" in caplog.text


def test_no_cache_leaves_cache_untouched(tmp_path: Path) -> None:
    config = _config(tmp_path, {"profile": "flat_cone", "params": {"c": 0.5}})
    cache = tmp_path / "cache"
    args = ["spectrum", "--config", config, "--out", str(tmp_path / "out"), "--cache", str(cache)]
    assert cli.main([*args, "--lambda-max", "0", "--no-cache"]) == 0
    assert not cache.exists()


def test_format_table_aligns_columns() -> None:
    table = cli.format_table([{"a": 1.5, "bb": None}], ("a", "bb"))
    header, rule, row = table.splitlines()
    assert header == "a   | bb"
    assert rule == "----+---"
    assert row == "1.5 | - "


@pytest.mark.slow
def test_spectrum_matches_flat_cone_oracle(tmp_path: Path) -> None:
    from conic_heat.spectral import flat_cone_spectrum

    config = _config(tmp_path, {"profile": "flat_cone", "params": {"c": 0.5}})
    out = tmp_path / "out"
    args = ["spectrum", "--config", config, "--out", str(out), "--no-cache"]
    assert cli.main([*args, "--lambda-max", "600", "--threads", "2"]) == 0
    lines = (out / "spectrum.csv").read_text(encoding="utf-8").splitlines()[1:]
    solved = sorted(float(line.split(",")[2]) for line in lines)
    expected = sorted(entry.lam for entry in flat_cone_spectrum(0.5, 600.0).entries)
    assert solved == pytest.approx(expected, rel=1e-7)


@pytest.mark.slow
def test_sphere_fit_end_to_end(tmp_path: Path) -> None:
    out = tmp_path / "out"
    args = ["fit", "--config", str(CONFIGS / "sphere.json"), "--out", str(out), "--no-cache"]
    assert cli.main([*args, "--threads", "4"]) == 0
    data = json.loads((out / "fit.json").read_text(encoding="utf-8"))
    rows = {row["term"]: row for row in data["comparison"]}
    assert rows["t^-1"]["fitted"] == pytest.approx(1.0, rel=1e-3)
    assert rows["1"]["fitted"] == pytest.approx(1.0 / 3.0, abs=0.01)
    for name in ("fit_table.txt", "fit_plot.csv", "heat_trace.csv", "spectrum.csv"):
        assert (out / name).is_file(), name


@pytest.mark.slow
def test_curved_spindle_supports_published_reading(tmp_path: Path) -> None:
    out = tmp_path / "out"
    args = ["fit", "--config", str(CONFIGS / "curved_spindle.json"), "--out", str(out)]
    assert cli.main([*args, "--no-cache", "--threads", "4"]) == 0
    data = json.loads((out / "fit.json").read_text(encoding="utf-8"))
    verdict = data["discrimination"]["bhalf_reading"]
    assert verdict["measured"] == pytest.approx(0.039180, rel=0.1)
    assert verdict["supported"] == "published"
    assert "continued" in verdict["excluded"]
    assert verdict["decided"], verdict


@pytest.mark.slow
def test_spindle_fit_end_to_end(tmp_path: Path) -> None:
    out = tmp_path / "out"
    args = ["fit", "--config", str(CONFIGS / "spindle.json"), "--out", str(out), "--no-cache"]
    assert cli.main([*args, "--threads", "4"]) == 0
    data = json.loads((out / "fit.json").read_text(encoding="utf-8"))
    rows = {row["term"]: row for row in data["comparison"]}
    assert rows["t^-1"]["fitted"] == pytest.approx(0.5, rel=1e-3)
    assert data["decomposition"]["interior"] == pytest.approx(1.0 / 6.0, rel=1e-10)
    assert data["decomposition"]["singular"] == pytest.approx(0.25, rel=0.05)
    assert data["discrimination"]["b0_convention"]["supported"] == "sin"
