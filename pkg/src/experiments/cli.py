"""Command-line interface.

Subcommands: signal, factor, contrast, adapt-compare, schedule, primes,
replay. Every file output gets a ``.manifest.json`` next to it.

Exit codes: 0 success, 1 usage or config error, 2 domain error,
3 I/O error.
"""
import argparse
import sys
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, Field, ValidationError

from src.experiments.manifest import (
    build_manifest,
    manifest_path,
    mismatched_outputs,
    read_manifest,
    write_manifest,
)
from src.experiments.runners import (
    Engine,
    export_schedule,
    run_adaptation_comparison,
    run_contrast_scan,
    run_factorization,
    run_primes,
    run_signal_trace,
    to_csv,
)
from src.gauss_core.schedule import Timing
from src.gauss_core.trial_factors import Strategy
from src.simulation.beam_physics import PhysicsConfig, ideal_limit_config, load_physics_config
from src.utils.config import (
    ARTIFACTS_DIR,
    DEFAULT_ADAPT_FACTORS,
    DEFAULT_L_MAX,
    DEFAULT_L_MIN,
    DEFAULT_M,
    DEFAULT_N,
    DEFAULT_T_US,
    DEFAULT_TAU_PI_US,
    DEFAULT_THRESHOLD,
    default_config_path,
)
from src.utils.errors import ConfigError, DomainError, GaussFactorError
from src.utils.logging_utils import setup_logging

logger = setup_logging(name=__name__)

Command = Literal["signal", "factor", "contrast", "adapt-compare", "schedule", "primes"]
EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_IO = 0, 1, 2, 3


class UsageError(GaussFactorError):
    """Bad command-line usage."""


class RunRequest(BaseModel):
    """Fully resolved inputs of one CLI run."""
    command: Command
    n: int = Field(DEFAULT_N, ge=2)
    l: int = Field(151, ge=1)
    m: int = Field(DEFAULT_M, ge=0)
    m_max: int = Field(DEFAULT_M, ge=0)
    strategy: Strategy = "range"
    l_min: int = Field(DEFAULT_L_MIN, ge=1)
    l_max: int = Field(DEFAULT_L_MAX, ge=1)
    threshold: float = Field(DEFAULT_THRESHOLD, gt=0, lt=1)
    physics: PhysicsConfig | None = None
    timing: Timing = Field(default_factory=Timing)
    factors: list[int] = Field(default_factory=lambda: list(DEFAULT_ADAPT_FACTORS))
    engine: Engine = "closed-form"
    include_unit: bool = False
    threads: int = Field(1, ge=1)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--n", type=int, default=DEFAULT_N, help="Number to factor")
    common.add_argument("--l", type=int, default=151, help="Trial factor (signal, schedule)")
    common.add_argument("--m", type=int, default=DEFAULT_M, help="Factorization index (schedule)")
    common.add_argument("--m-max", type=int, default=DEFAULT_M, help="Truncation order M")
    common.add_argument("--l-min", type=int, default=DEFAULT_L_MIN)
    common.add_argument("--l-max", type=int, default=DEFAULT_L_MAX)
    common.add_argument("--strategy", choices=["primes", "range"], default="range")
    common.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    common.add_argument("--physics", choices=["ideal", "beam"], default="ideal")
    common.add_argument("--config", type=Path, default=None, help="Physics config file")
    common.add_argument("--seed", type=int, default=None, help="Overrides the config seed")
    common.add_argument("--engine", choices=["closed-form", "pulse-sim"], default="closed-form")
    common.add_argument("--factors", type=int, nargs="+", default=list(DEFAULT_ADAPT_FACTORS))
    common.add_argument("--include-unit", action="store_true", help="Report l = 1 as a factor")
    common.add_argument("--T-us", dest="t_us", type=float, default=DEFAULT_T_US)
    common.add_argument("--tau-pi-us", type=float, default=DEFAULT_TAU_PI_US)
    common.add_argument("--out", type=str, default=None, help="Output path, '-' for stdout")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--log-level", default=None)

    parser = _Parser(prog="gaussfactor", description="Gauss sum factorization with cold atoms")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("signal", "Interference signal c_m versus m"),
        ("factor", "Gauss sum over the trial factors"),
        ("contrast", "Contrast V versus M"),
        ("adapt-compare", "Mean factor signal with and without pulse-length adaptation"),
        ("schedule", "Export the pulse schedule"),
        ("primes", "List prime trial factors"),
    ]:
        sub.add_parser(name, parents=[common], help=help_text)
    replay = sub.add_parser("replay", help="Re-run a manifest and verify checksums")
    replay.add_argument("--manifest", type=Path, required=True)
    replay.add_argument("--threads", type=int, default=None)
    replay.add_argument("--log-level", default=None)
    return parser


def _resolve_physics(args: argparse.Namespace) -> PhysicsConfig | None:
    if args.physics == "ideal":
        return ideal_limit_config() if args.command == "adapt-compare" else None
    path = args.config or default_config_path()
    config = load_physics_config(path) if path else PhysicsConfig()
    if args.seed is not None:
        config = config.model_copy(update={"seed": args.seed})
    return config


def resolve_request(args: argparse.Namespace) -> RunRequest:
    """Turn parsed arguments into a validated RunRequest."""
    try:
        return RunRequest(
            command=args.command,
            n=args.n,
            l=args.l,
            m=args.m,
            m_max=args.m_max,
            strategy=args.strategy,
            l_min=args.l_min,
            l_max=args.l_max,
            threshold=args.threshold,
            physics=_resolve_physics(args),
            timing=Timing(T_us=args.t_us, tau_pi_us=args.tau_pi_us),
            factors=args.factors,
            engine=args.engine,
            include_unit=args.include_unit,
            threads=args.threads,
        )
    except ValidationError as e:
        raise DomainError(f"invalid arguments: {e}") from e


def execute(request: RunRequest) -> tuple[str, dict[str, Any]]:
    """Run the request; returns the output text and a summary."""
    r = request
    if r.command == "signal":
        df = run_signal_trace(r.n, r.l, r.m_max, r.physics, r.timing, r.engine)
        return to_csv(df), {"rows": len(df)}
    if r.command == "factor":
        df, claimed = run_factorization(
            r.n, r.m_max, r.strategy, r.l_min, r.l_max, r.threshold,
            r.physics, r.timing, r.threads, r.engine, r.include_unit,
        )
        return to_csv(df), {"rows": len(df), "claimed_factors": claimed}
    if r.command == "contrast":
        df = run_contrast_scan(
            r.n, r.m_max, r.strategy, r.l_min, r.l_max, r.physics, r.timing, r.threads, r.engine
        )
        return to_csv(df), {"rows": len(df)}
    if r.command == "adapt-compare":
        df = run_adaptation_comparison(r.n, r.factors, r.m_max, r.physics or PhysicsConfig(), r.timing)
        return to_csv(df), {"rows": len(df)}
    if r.command == "schedule":
        return export_schedule(r.n, r.l, r.m, r.timing), {"pulses": r.m + 3}
    if r.command == "primes":
        df = run_primes(r.n)
        return to_csv(df), {"rows": len(df)}
    raise UsageError(f"unknown command {r.command!r}")


def default_output(command: str) -> Path:
    suffix = ".txt" if command == "schedule" else ".csv"
    return ARTIFACTS_DIR / f"{command}{suffix}"


def write_outputs(request: RunRequest, text: str, summary: dict[str, Any], out: Path) -> Path:
    """Write the output file and its manifest; returns the manifest path."""
    out = out.resolve()
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, newline="\n")
    manifest = build_manifest(
        request.command, request.model_dump(mode="json", exclude={"threads"}), [out], summary
    )
    path = manifest_path(out)
    write_manifest(manifest, path)
    logger.info(f"Saved {out} and {path}")
    return path


def replay(manifest_file: Path, threads: int | None = None) -> int:
    """Re-run a manifest in place and compare checksums."""
    manifest = read_manifest(manifest_file)
    try:
        request = RunRequest.model_validate({**manifest.request, "threads": threads or 1})
    except ValidationError as e:
        raise ConfigError(f"{manifest_file} records an invalid request: {e}") from e
    text, _ = execute(request)
    for output in manifest.outputs:
        Path(output).write_text(text, newline="\n")
    mismatched = mismatched_outputs(manifest)
    if mismatched:
        logger.error(f"Replay of {manifest_file} changed outputs: {mismatched}")
        return EXIT_DOMAIN
    logger.info(f"Replay of {manifest_file} reproduced {len(manifest.outputs)} output(s)")
    return EXIT_OK


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.log_level:
        setup_logging(args.log_level)
    if args.command == "replay":
        return replay(args.manifest, args.threads)
    request = resolve_request(args)
    text, summary = execute(request)
    if args.out == "-":
        sys.stdout.write(text)
        return EXIT_OK
    write_outputs(request, text, summary, Path(args.out) if args.out else default_output(args.command))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    """Entry point; maps failures to exit codes."""
    try:
        return run(argv)
    except (UsageError, ConfigError) as e:
        logger.error(f"Usage error: {e}")
        return EXIT_USAGE
    except DomainError as e:
        logger.error(f"Domain error: {e}")
        return EXIT_DOMAIN
    except OSError as e:
        logger.error(f"I/O error: {e}")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
