"""
File repositories for images, manifests and model files.
"""
import logging
from pathlib import Path
from typing import List, Sequence, Tuple

import numpy as np
from PIL import Image, UnidentifiedImageError
from pydantic import ValidationError

from app.core.errors import DatasetError, ModelFileError
from app.models.classifier import ModelFile, StrongClassifier
from app.models.dataset import Dataset, Sample

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.txt"
IMAGE_SUBDIR = "img"

LABEL_TOKENS = {"+1": 1, "1": 1, "-1": -1, "0": -1}


class ImageRepository:
    """
    Binary 8-bit grayscale PGM (P5) files.
    """

    @staticmethod
    def read_pgm(path) -> np.ndarray:
        """
        Read a grayscale image.

        Returns:
            uint8 array of shape (height, width)
        """
        try:
            with Image.open(path) as image:
                if image.mode != "L":
                    raise DatasetError(f"{path}: expected 8-bit grayscale, got mode {image.mode}")
                return np.asarray(image, dtype=np.uint8).copy()
        except (UnidentifiedImageError, OSError) as exc:
            raise DatasetError(f"{path}: cannot read image ({exc})") from exc

    @staticmethod
    def write_pgm(path, pixels: np.ndarray) -> None:
        """
        Write a uint8 grid as binary PGM with maxval 255.
        """
        Image.fromarray(np.ascontiguousarray(pixels, dtype=np.uint8)).save(path, format="PPM")


class DatasetRepository:
    """
    Datasets stored as a manifest of ``<relative-path> <label>`` lines.
    """

    @staticmethod
    def write_dataset(out_dir, samples: Sequence[Sample]) -> Path:
        """
        Write every sample as a PGM file plus a manifest.

        Args:
            out_dir: Target directory, created if missing
            samples: Samples in manifest order

        Returns:
            Path of the written manifest
        """
        out_dir = Path(out_dir)
        (out_dir / IMAGE_SUBDIR).mkdir(parents=True, exist_ok=True)
        lines = []
        for index, sample in enumerate(samples):
            relative = f"{IMAGE_SUBDIR}/sample_{index:05d}.pgm"
            ImageRepository.write_pgm(out_dir / relative, sample.pixels)
            lines.append(f"{relative} {'+1' if sample.label == 1 else '-1'}")
        manifest = out_dir / MANIFEST_NAME
        manifest.write_text("\n".join(lines) + "\n", encoding="utf-8")
        logger.info("Wrote %d samples to %s", len(lines), manifest)
        return manifest

    @staticmethod
    def read_manifest(manifest_path) -> List[Tuple[int, Path, int]]:
        """
        Parse a manifest into (line number, image path, label) entries.
        """
        manifest_path = Path(manifest_path)
        try:
            text = manifest_path.read_text(encoding="utf-8")
        except OSError as exc:
            raise DatasetError(f"{manifest_path}: cannot read manifest ({exc})") from exc

        entries = []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.rsplit(None, 1)
            if len(parts) != 2:
                raise DatasetError(f"{manifest_path}:{number}: expected '<path> <label>', got {raw!r}")
            relative, token = parts
            if token not in LABEL_TOKENS:
                raise DatasetError(f"{manifest_path}:{number}: bad label {token!r} in {raw!r}")
            entries.append((number, manifest_path.parent / relative, LABEL_TOKENS[token]))
        if not entries:
            raise DatasetError(f"{manifest_path}: empty manifest")
        return entries

    @staticmethod
    def load_dataset(manifest_path) -> Dataset:
        """
        Load every image named by a manifest, in manifest order.

        Raises:
            DatasetError: naming the manifest line of a missing file, a bad
                label or an image whose size differs from the first one
        """
        samples = []
        shape = None
        for number, path, label in DatasetRepository.read_manifest(manifest_path):
            if not path.is_file():
                raise DatasetError(f"{manifest_path}:{number}: image not found: {path}")
            pixels = ImageRepository.read_pgm(path)
            if shape is None:
                shape = pixels.shape
            elif pixels.shape != shape:
                raise DatasetError(
                    f"{manifest_path}:{number}: {path} is {pixels.shape[1]}x{pixels.shape[0]}, "
                    f"expected {shape[1]}x{shape[0]}"
                )
            samples.append(Sample(pixels=pixels, label=label))
        data = Dataset.from_samples(samples)
        logger.info("Loaded %d samples of %dx%d from %s", len(data), data.window_w, data.window_h, manifest_path)
        return data


class ModelRepository:
    """
    Strong classifiers stored as JSON model files.
    """

    @staticmethod
    def dumps(strong: StrongClassifier) -> str:
        """Serialise with fixed field order so reruns are byte-identical."""
        return ModelFile.from_classifier(strong).json(indent=2) + "\n"

    @staticmethod
    def save_model(strong: StrongClassifier, path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(ModelRepository.dumps(strong), encoding="utf-8")
        return path

    @staticmethod
    def load_model(path) -> StrongClassifier:
        """
        Read and validate a model file.

        Raises:
            ModelFileError: if the file is unreadable or violates an invariant
        """
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ModelFileError(f"{path}: cannot read model ({exc})") from exc
        try:
            return ModelFile.parse_raw(text).to_classifier()
        except ValidationError as exc:
            raise ModelFileError(f"{path}: invalid model file: {exc}") from exc

    @staticmethod
    def list_models(directory) -> List[str]:
        """Names (file stems) of the model files in a directory."""
        directory = Path(directory)
        if not directory.is_dir():
            return []
        return sorted(p.stem for p in directory.glob("*.json"))
