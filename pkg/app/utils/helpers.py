"""
Formatting and logging helpers shared by the command line and the HTTP surface.
"""
import logging
import os
from typing import Optional

from dotenv import load_dotenv

from app.models.learning import RoundReport

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(level: Optional[str] = None) -> None:
    """
    Install one stderr handler on the root logger.

    Args:
        level: Level name; defaults to LOG_LEVEL from the environment, then INFO
    """
    load_dotenv()
    name = (level or os.getenv("LOG_LEVEL", "INFO")).upper()
    logging.basicConfig(level=getattr(logging, name, logging.INFO), format=LOG_FORMAT, force=True)


def format_real(value: Optional[float]) -> str:
    """
    Format a real with 6 significant digits; None becomes an empty string.
    """
    if value is None:
        return ""
    return f"{value:.6g}"


def format_round(report: RoundReport) -> str:
    """
    One boosting round as printed by the train command.
    """
    return (
        f"round {report.round_index}: eps={report.epsilon:.6f} alpha={report.alpha:.6f} "
        f"evals={report.evaluations} ms={report.seconds * 1000.0:.3f}"
    )


def format_error(error: float) -> str:
    return f"error={error:.6f}"

