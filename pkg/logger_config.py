"""
Logging configuration module for the type-2 convolution toolkit.
Provides the console and rotating-file setup shared by the CLI and the library.
"""

import logging
import logging.handlers
import sys
from pathlib import Path
from typing import Dict, Union


LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR')

_SIZE_UNITS = {'KB': 1024, 'MB': 1024 * 1024, 'GB': 1024 * 1024 * 1024}


class ColoredFormatter(logging.Formatter):
    """Colored formatter for console output."""

    COLORS = {
        'DEBUG': '\033[36m',      # Cyan
        'INFO': '\033[32m',       # Green
        'WARNING': '\033[33m',    # Yellow
        'ERROR': '\033[31m',      # Red
        'CRITICAL': '\033[35m',   # Magenta
        'RESET': '\033[0m'
    }

    def format(self, record):
        # work on a copy so the file handler sees the plain level name
        record = logging.makeLogRecord(record.__dict__)
        color = self.COLORS.get(record.levelname, self.COLORS['RESET'])
        record.levelname = f"{color}{record.levelname}{self.COLORS['RESET']}"
        return super().format(record)


def parse_size(value: Union[str, int]) -> int:
    """
    Parse a size such as "10MB", "512KB" or a plain byte count.

    Args:
        value: Size string or integer

    Returns:
        Size in bytes
    """
    if isinstance(value, int):
        return value
    text = str(value).strip().upper()
    for suffix, factor in _SIZE_UNITS.items():
        if text.endswith(suffix):
            return int(float(text[:-len(suffix)]) * factor)
    return int(text)


def setup_logging(config: Dict) -> None:
    """
    Setup logging configuration based on the logging section of the config.

    Console output goes to stderr so JSON written to stdout stays clean.

    Args:
        config: Logging configuration dictionary
    """
    log_level = str(config.get('level', 'INFO')).upper()
    log_file = config.get('log_file', 'none')
    max_bytes = parse_size(config.get('max_file_size', '10MB'))
    backup_count = config.get('backup_count', 3)
    level = getattr(logging, log_level, logging.INFO)

    file_formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )
    console_formatter = ColoredFormatter(
        '%(asctime)s - %(levelname)s - %(message)s',
        datefmt='%H:%M:%S'
    )

    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    root_logger.handlers.clear()

    # Console handler (only show warnings and errors)
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(max(logging.WARNING, level))
    console_handler.setFormatter(console_formatter)
    root_logger.addHandler(console_handler)

    if log_file and str(log_file).lower() != 'none':
        try:
            log_path = Path(log_file)
            log_path.parent.mkdir(parents=True, exist_ok=True)

            file_handler = logging.handlers.RotatingFileHandler(
                log_path,
                maxBytes=max_bytes,
                backupCount=backup_count,
                encoding='utf-8'
            )
            file_handler.setLevel(level)
            file_handler.setFormatter(file_formatter)
            root_logger.addHandler(file_handler)

        except OSError as e:
            root_logger.warning(f"Could not setup file logging: {e}")

    logger = logging.getLogger(__name__)
    logger.info(f"Logging initialized at {log_level}")
    if log_file and str(log_file).lower() != 'none':
        logger.info(f"Log file: {log_file}")


def log_exception(logger: logging.Logger, message: str, exc_info: bool = True) -> None:
    """Log an error together with the active traceback."""
    logger.error(message, exc_info=exc_info)
