import logging
import sys
from datetime import datetime
from pathlib import Path

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


class CustomFormatter(logging.Formatter):
    """Console formatter that colors records by level."""

    COLORS = {
        logging.DEBUG: "\x1b[38;20m",
        logging.INFO: "\x1b[38;20m",
        logging.WARNING: "\x1b[33;20m",
        logging.ERROR: "\x1b[31;20m",
        logging.CRITICAL: "\x1b[31;1m",
    }
    RESET = "\x1b[0m"

    def __init__(self):
        super().__init__(LOG_FORMAT, datefmt=DATE_FORMAT)

    def format(self, record):
        color = self.COLORS.get(record.levelno, "")
        return f"{color}{super().format(record)}{self.RESET}"


def setup_logger(name: str, log_dir: str = "logs", console_level: int = logging.INFO) -> logging.Logger:
    """
    Set up a logger with a stderr console handler and a timestamped file handler.

    JSON reports go to stdout, so console records go to stderr. The
    ``src`` package loggers are routed to the same handlers. Calling this
    again for a configured name returns the existing logger.

    Args:
        name: Logger name
        log_dir: Directory for log files
        console_level: Level of the console handler

    Returns:
        Configured logger
    """
    logger = logging.getLogger(name)
    if logger.handlers:
        return logger

    log_dir = Path(log_dir)
    log_dir.mkdir(parents=True, exist_ok=True)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(console_level)
    console_handler.setFormatter(CustomFormatter())

    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    file_handler = logging.FileHandler(log_dir / f"{name}_{timestamp}.log")
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT))

    for target in (logger, logging.getLogger("src")):
        if target.handlers:
            continue
        target.setLevel(logging.DEBUG)
        target.addHandler(console_handler)
        target.addHandler(file_handler)
        target.propagate = False

    return logger
