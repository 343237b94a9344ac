import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError

from specsense.cli.commands import run_command
from specsense.cli.config import load_config, parse_config
from specsense.cli.constants import EXIT_USAGE
from specsense.cli.models import Command, ExperimentConfig, OutputFormat
from specsense.core.exceptions import ConfigError, OutputError
from specsense.utils.runtime import RuntimeConfig, configure_logging

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='specsense',
        description="Energy-optimal periodic spectrum sensing schedules for remote Kalman filtering.",
    )
    parser.add_argument('--config', type=Path, default=None, help="Experiment file; reference scenario if omitted.")
    parser.add_argument('--command', type=Command, choices=list(Command), default=Command.SOLVE)
    parser.add_argument('--output', type=Path, default=None, help="Result file, overrides output.path.")
    parser.add_argument('--format', type=OutputFormat, choices=list(OutputFormat), default=None)
    parser.add_argument('--seed', type=int, default=None, help="Master seed, overrides monte_carlo.master_seed.")
    parser.add_argument('--workers', type=int, default=None, help="Worker threads, overrides SPECSENSE_WORKERS.")
    return parser


def apply_overrides(cfg: ExperimentConfig, args: argparse.Namespace) -> ExperimentConfig:
    """Command-line flags take precedence over the file; the result is validated again."""
    data = cfg.model_dump()
    if args.output is not None:
        data['output']['path'] = args.output
    if args.format is not None:
        data['output']['format'] = args.format
    if args.seed is not None:
        data['monte_carlo']['master_seed'] = args.seed
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as error:
        raise ConfigError(f"Invalid command-line override: {error}") from error


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        runtime = RuntimeConfig() if args.workers is None else RuntimeConfig(workers=args.workers)
    except ValidationError as error:
        print(f"Invalid runtime settings: {error}", file=sys.stderr)
        return EXIT_USAGE
    configure_logging(runtime)
    try:
        cfg = parse_config('') if args.config is None else load_config(args.config)
        return run_command(apply_overrides(cfg, args), args.command, workers=runtime.workers)
    except (ConfigError, OutputError) as error:
        logger.error(str(error))
        return EXIT_USAGE


if __name__ == '__main__':
    raise SystemExit(main())
