import logging
import sys

logger = logging.getLogger("afmpi")


def configure_logging(level: str | int = "WARNING", stream=None):
    """Attach a single stream handler to the package logger."""
    for handler in list(logger.handlers):
        logger.removeHandler(handler)

    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    logger.addHandler(handler)
    logger.setLevel(level.upper() if isinstance(level, str) else level)
    logger.propagate = False
    return logger
