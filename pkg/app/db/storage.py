"""
Storage locations for the haarboost HTTP surface.
"""
import logging
import os
from pathlib import Path

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)

# Storage settings
MODEL_DIR = os.getenv("HAARBOOST_MODEL_DIR", "models")
DATA_DIR = os.getenv("HAARBOOST_DATA_DIR", "data")
DEFAULT_WORKERS = int(os.getenv("HAARBOOST_WORKERS", "1"))

model_dir = None
data_dir = None


def init_storage(models: str = None, data: str = None) -> None:
    """
    Resolve and create the model and data directories.
    """
    global model_dir, data_dir

    model_dir = Path(models or MODEL_DIR).resolve()
    data_dir = Path(data or DATA_DIR).resolve()
    model_dir.mkdir(parents=True, exist_ok=True)
    data_dir.mkdir(parents=True, exist_ok=True)

    logger.info("Model store at %s, data root at %s", model_dir, data_dir)


def get_model_dir() -> Path:
    """
    Directory holding stored model files.
    """
    if model_dir is None:
        init_storage()
    return model_dir


def get_data_dir() -> Path:
    """
    Base directory for relative dataset paths.
    """
    if data_dir is None:
        init_storage()
    return data_dir


def resolve_data_path(path: str) -> Path:
    """
    Resolve a dataset path; relative paths are taken from the data root.
    """
    candidate = Path(path)
    return candidate if candidate.is_absolute() else get_data_dir() / candidate
