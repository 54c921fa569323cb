"""Logging utilities."""
import logging
import sys

from src.utils.config import LOG_LEVEL


def setup_logging(log_level: str | None = None, name: str | None = None) -> logging.Logger:
    """Setup logging configuration."""
    level = getattr(logging, (log_level or LOG_LEVEL).upper(), logging.INFO)
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[
            # stderr keeps CSV on stdout clean
            logging.StreamHandler(sys.stderr),
        ],
    )
    if log_level is not None:
        logging.getLogger().setLevel(level)
    return logging.getLogger(name or __name__)
