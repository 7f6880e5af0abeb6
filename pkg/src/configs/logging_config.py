"""Centralized logging configuration for the baire-bins project."""

from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Optional, Union

LOG_DIR = Path(__file__).resolve().parents[2] / "logs"
DEFAULT_LOG_FILE = LOG_DIR / "baire_bins.log"
ROOT_LOGGER_NAME = "baire_bins"


def configure_logging(
    level: Union[int, str] = logging.INFO,
    log_file: Optional[Path] = None,
    log_to_console: bool = True,
) -> logging.Logger:
    """
    Configure and return the root logger for the application.

    Parameters
    ----------
    level : int or str
        Logging level (e.g., logging.INFO, "DEBUG").
    log_file : Optional[Path]
        Path to a log file. When omitted no file handler is attached.
    log_to_console : bool
        If True, emit logs to stderr. Standard output stays reserved for
        JSON results.

    Returns
    -------
    logging.Logger
        The configured root logger.
    """
    formatter = logging.Formatter(
        "%(asctime)s [%(levelname)s] %(name)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )

    root_logger = logging.getLogger(ROOT_LOGGER_NAME)
    root_logger.setLevel(level)

    # Avoid adding duplicate handlers on repeated calls
    if not root_logger.handlers:
        if log_file is not None:
            log_path = Path(log_file)
            log_path.parent.mkdir(parents=True, exist_ok=True)
            file_handler = logging.FileHandler(log_path, encoding="utf-8")
            file_handler.setFormatter(formatter)
            root_logger.addHandler(file_handler)

        if log_to_console:
            console_handler = logging.StreamHandler(sys.stderr)
            console_handler.setFormatter(formatter)
            root_logger.addHandler(console_handler)

    return root_logger


def get_logger(name: str) -> logging.Logger:
    """
    Return a child logger under the baire_bins namespace.

    Parameters
    ----------
    name : str
        Logger name (typically __name__ of the calling module).

    Returns
    -------
    logging.Logger
    """
    return logging.getLogger(f"{ROOT_LOGGER_NAME}.{name}")
