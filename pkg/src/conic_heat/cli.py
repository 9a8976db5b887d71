"""``conic-heat`` command-line driver.

Commands:
    spectrum     certified eigenvalues below lambda_max -> spectrum.csv
    heat-trace   Z(t) on the configured grid -> heat_trace.csv
    fit          small-t expansion fit vs predictions -> fit.json, fit_table.txt, fit_plot.csv
    predict      predicted coefficients only -> predict.json
    verify       analytic self-checks -> verify.json (exit 3 on any failure)

Example:
    conic-heat fit --config configs/curved_spindle.json --out out/curved --threads 4
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from collections.abc import Callable, Sequence
from dataclasses import replace
from pathlib import Path
from typing import Any

from conic_heat import __version__
from conic_heat.checks import INFO, run_all_checks
from conic_heat.core.base import LOGGER, install_crash_hook
from conic_heat.core.cache import SpectrumCache
from conic_heat.core.config import RunConfig, load_config
from conic_heat.core.errors import ConicHeatError, VerificationError
from conic_heat.pipeline import (
    compute_heat_trace,
    fit_and_compare,
    load_spectrum,
    prediction_for,
    profile_for,
)
from conic_heat.spectral import Spectrum, spectrum_to_csv
from conic_heat.trace import plot_csv

Command = Callable[[RunConfig, argparse.Namespace], int]


def _fmt(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.10g}" if math.isfinite(value) else str(value)
    return str(value)


def format_table(rows: Sequence[dict[str, Any]], headers: Sequence[str]) -> str:
    cells = [[_fmt(row.get(hdr)) for hdr in headers] for row in rows]
    widths = [max([len(hdr), *(len(line[i]) for line in cells)]) for i, hdr in enumerate(headers)]
    line = " | ".join(hdr.ljust(width) for hdr, width in zip(headers, widths, strict=True))
    parts = [line, "-+-".join("-" * width for width in widths)]
    for row_cells in cells:
        parts.append(
            " | ".join(cell.ljust(width) for cell, width in zip(row_cells, widths, strict=True))
        )
    return "\n".join(parts)


def _write(out_dir: Path, name: str, text: str) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / name
    path.write_text(text, encoding="utf-8", newline="\n")
    LOGGER.info("wrote %s", path)
    return path


def _dump(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _cache(args: argparse.Namespace, config: RunConfig) -> SpectrumCache | None:
    if args.no_cache:
        return None
    return SpectrumCache(config.cache_dir or None)


def _spectrum(config: RunConfig, args: argparse.Namespace) -> Spectrum:
    spectrum = load_spectrum(config, _cache(args, config))
    _write(Path(config.out_dir), "spectrum.csv", spectrum_to_csv(spectrum))
    return spectrum


def cmd_spectrum(config: RunConfig, args: argparse.Namespace) -> int:
    spectrum = _spectrum(config, args)
    count = len(spectrum.entries)
    print(f"{count} eigenvalues below {config.lambda_max:g} (k <= {spectrum.k_max})")
    return 0


def cmd_heat_trace(config: RunConfig, args: argparse.Namespace) -> int:
    samples = compute_heat_trace(config, _spectrum(config, args))
    _write(Path(config.out_dir), "heat_trace.csv", samples.to_csv())
    print(f"{samples.t.size} samples, smallest usable t = {samples.min_usable_t}")
    return 0


def cmd_fit(config: RunConfig, args: argparse.Namespace) -> int:
    out_dir = Path(config.out_dir)
    samples = compute_heat_trace(config, _spectrum(config, args))
    _write(out_dir, "heat_trace.csv", samples.to_csv())
    outcome = fit_and_compare(config, samples)
    table = format_table(
        [row.to_dict() for row in outcome.rows],
        ("term", "fitted", "standard_error", "predicted", "discrepancy_se"),
    )
    decomposition = outcome.decomposition
    lines = [
        f"profile {profile_for(config).label}, window [{outcome.fit.window[0]:.6g}, "
        f"{outcome.fit.window[1]:.6g}], condition {outcome.fit.condition_number:.3g}",
        table,
        "",
        f"t^0 = interior {decomposition.interior:.10g} + boundary {decomposition.boundary:.10g}"
        f" + singular {decomposition.singular:.10g} (+/- {decomposition.fitted_error:.3g})",
    ]
    for name, verdict in outcome.discrimination.items():
        state = "decided" if verdict["decided"] else "undecided"
        lines.append(f"{name}: supports {verdict['supported']} ({state})")
    text = "\n".join(lines) + "\n"
    _write(out_dir, "fit.json", _dump(outcome.to_dict(config)))
    _write(out_dir, "fit_table.txt", text)
    _write(out_dir, "fit_plot.csv", plot_csv(samples, outcome.fit))
    print(text, end="")
    return 0


def cmd_predict(config: RunConfig, args: argparse.Namespace) -> int:
    prediction = prediction_for(config)
    data = {"profile": profile_for(config).to_dict(), "prediction": prediction.to_dict()}
    _write(Path(config.out_dir), "predict.json", _dump(data))
    totals = prediction.to_dict()["totals"]
    print(format_table([totals], ("b0", "bhalf", "t_half", "t0")))
    return 0


def cmd_verify(config: RunConfig, args: argparse.Namespace) -> int:
    results = run_all_checks()
    rows = [{**result.to_dict(), "group": INFO[result.name].group} for result in results]
    _write(Path(config.out_dir), "verify.json", _dump({"checks": rows}))
    print(format_table(rows, ("name", "group", "passed", "worst_error", "tolerance")))
    failed = [result.name for result in results if not result.passed]
    if failed:
        raise VerificationError(f"{len(failed)} check(s) failed: {', '.join(failed)}")
    return 0


COMMANDS: dict[str, Command] = {
    "spectrum": cmd_spectrum,
    "heat-trace": cmd_heat_trace,
    "fit": cmd_fit,
    "predict": cmd_predict,
    "verify": cmd_verify,
}

COMMAND_HELP: dict[str, str] = {
    "spectrum": "Certified eigenvalues below lambda_max",
    "heat-trace": "Heat trace on the configured t grid",
    "fit": "Fit the small-t expansion and compare with predictions",
    "predict": "Predicted heat coefficients only",
    "verify": "Run the analytic self-checks",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON run configuration")
    common.add_argument("--out", help="Output directory (overrides out_dir)")
    common.add_argument("--cache", help="Eigenvalue cache directory (overrides cache_dir)")
    common.add_argument("--no-cache", action="store_true", help="Neither read nor write the cache")
    common.add_argument("--threads", type=int, help="Worker threads for mode solves and sums")
    common.add_argument("--convention", choices=("sin", "tan"), help="Angle convention for b0")
    common.add_argument(
        "--reading", choices=("published", "continued"), help="Reading of the b1/2 chain"
    )
    common.add_argument("--lambda-max", type=float, help="Spectral cutoff (overrides lambda_max)")

    parser = argparse.ArgumentParser(
        prog="conic-heat",
        description="Heat-trace workbench for surfaces of revolution with conic tips.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=COMMAND_HELP[name])
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    config = load_config(args.config)
    flags = {
        "out_dir": args.out,
        "cache_dir": args.cache,
        "threads": args.threads,
        "convention": args.convention,
        "reading": args.reading,
        "lambda_max": args.lambda_max,
    }
    config = replace(config, **{key: value for key, value in flags.items() if value is not None})
    return config.validate()


def _report_error(exc: Exception, exit_code: int, out_dir: Path | None) -> int:
    record = {"error": type(exc).__name__, "message": str(exc), "exit_code": exit_code}
    text = json.dumps(record, sort_keys=True)
    print(text, file=sys.stderr)
    if out_dir is not None:
        try:
            _write(out_dir, "error.json", text + "\n")
        except OSError as write_exc:
            LOGGER.warning("could not write error.json: %s", write_exc)
    LOGGER.error("%s failed: %s", type(exc).__name__, exc)
    return exit_code


def main(argv: Sequence[str] | None = None) -> int:
    install_crash_hook()
    args = build_parser().parse_args(argv)
    out_dir = Path(args.out) if args.out else None
    try:
        config = resolve_config(args)
        out_dir = Path(config.out_dir)
        return COMMANDS[args.command](config, args)
    except ConicHeatError as exc:
        return _report_error(exc, exc.exit_code, out_dir)
    except ValueError as exc:
        return _report_error(exc, 1, out_dir)
    except Exception as exc:
        LOGGER.exception("unexpected failure in %s", args.command)
        return _report_error(exc, 2, out_dir)


if __name__ == "__main__":
    sys.exit(main())
