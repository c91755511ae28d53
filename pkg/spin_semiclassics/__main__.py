"""CLI entry point for spin-semiclassics."""

import argparse
import logging
import sys
from pathlib import Path

from spin_semiclassics import __version__
from spin_semiclassics.core.config import SUBCOMMANDS, load_config
from spin_semiclassics.core.engine import run
from spin_semiclassics.utils.exceptions import (
    ConfigurationError,
    InvariantViolationError,
    SpinSemiclassicsError,
)

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"
LOG_DATEFMT = "%Y-%m-%dT%H:%M:%S"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INVARIANT = 2
EXIT_CONFIG = 3
EXIT_INTERRUPTED = 130


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    """Parse command-line arguments.

    Args:
        argv: Optional list of arguments (defaults to sys.argv).

    Returns:
        Parsed arguments namespace.
    """
    parser = argparse.ArgumentParser(
        prog="spin-semiclassics",
        description="Quantization of polynomials on the sphere and semiclassical studies of mean-field spin models.",
    )
    parser.add_argument("subcommand", choices=SUBCOMMANDS, help="Experiment to run")
    parser.add_argument(
        "assignments",
        nargs="*",
        metavar="key=value",
        help="Configuration overrides, e.g. model=cw J=1 B=0.5 N=32:1024:2 f=x,z^2",
    )
    parser.add_argument(
        "--config",
        type=Path,
        default=None,
        help="YAML (.yaml/.yml) or key=value configuration file",
    )
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default="INFO",
        help="Set logging level (default: INFO)",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser.parse_args(argv)


def configure_logging(level: str, log_file: Path | None = None) -> None:
    """Configure the root logger.

    Args:
        level: Logging level string (DEBUG, INFO, WARNING, ERROR).
        log_file: Optional file that receives the same records as the console.
    """
    logging.basicConfig(level=getattr(logging, level), format=LOG_FORMAT, datefmt=LOG_DATEFMT)
    if log_file is not None:
        root = logging.getLogger()
        for stale in [h for h in root.handlers if isinstance(h, logging.FileHandler)]:
            root.removeHandler(stale)
            stale.close()
        log_file.parent.mkdir(parents=True, exist_ok=True)
        handler = logging.FileHandler(log_file, mode="w", encoding="utf-8")
        handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=LOG_DATEFMT))
        handler.setLevel(getattr(logging, level))
        logging.getLogger().addHandler(handler)


def main(argv: list[str] | None = None) -> int:
    """Main entry point for the CLI.

    Args:
        argv: Optional list of arguments.

    Returns:
        Exit code: 0 pass, 2 invariant violation, 3 configuration error,
        1 any other failure, 130 on interrupt.
    """
    args = parse_args(argv)
    configure_logging(args.log_level)

    logger.info("spin-semiclassics v%s starting", __version__)

    try:
        config = load_config(args.subcommand, args.assignments, args.config)
        if config.output == "file":
            configure_logging(args.log_level, config.out / "run.log")

        summary = run(config)

        for name in summary["artifacts"]:
            logger.debug("  wrote %s", name)
        if summary["failed"]:
            logger.error("%d check(s) failed: %s", len(summary["failed"]), ", ".join(summary["failed"]))
            return EXIT_INVARIANT
        return EXIT_OK

    except ConfigurationError as exc:
        logger.error("Configuration error: %s", exc)
        return EXIT_CONFIG
    except InvariantViolationError as exc:
        logger.error("Invariant violated: %s", exc)
        return EXIT_INVARIANT
    except SpinSemiclassicsError as exc:
        logger.error("Error: %s", exc)
        return EXIT_ERROR
    except KeyboardInterrupt:
        logger.info("Interrupted by user.")
        return EXIT_INTERRUPTED


if __name__ == "__main__":
    sys.exit(main())
