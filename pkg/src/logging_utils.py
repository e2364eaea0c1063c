import logging
import sys
from typing import Optional, Union


PROJECT_LOGGER = "bci_workbench"


def setup_logger(name: str = PROJECT_LOGGER, level: Optional[int] = None) -> logging.Logger:
    logger = logging.getLogger(name)
    if logger.handlers:
        if level is not None:
            logger.setLevel(level)
        return logger

    logger.setLevel(logging.INFO if level is None else level)
    # stdout carries reports; logs go to stderr
    handler = logging.StreamHandler(sys.stderr)
    formatter = logging.Formatter(
        fmt="%(asctime)s | %(levelname)s | %(name)s | %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )
    handler.setFormatter(formatter)
    logger.addHandler(handler)
    logger.propagate = False
    return logger


def set_level(level: Union[int, str]) -> int:
    """Re-level every logger handed out by ``setup_logger`` (module loggers live under ``src.``)."""
    if isinstance(level, str):
        resolved = logging.getLevelName(level.upper())
        if not isinstance(resolved, int):
            raise ValueError(f"Unknown log level: {level}")
        level = resolved
    for name, candidate in logging.root.manager.loggerDict.items():
        if not isinstance(candidate, logging.Logger):
            continue
        if name in (PROJECT_LOGGER, "__main__") or name.startswith("src."):
            candidate.setLevel(level)
    return level
