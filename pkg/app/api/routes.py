"""
API routes for training, storing and evaluating haar classifiers.
"""
import logging
from pathlib import Path
from typing import List

from fastapi import APIRouter, HTTPException

from app.core.bench import make_learner, standard_configs, run_benchmark
from app.core.boost import adaboost_train
from app.core.errors import HaarBoostError
from app.core.metrics import classification_error
from app.core.synthetic import generate_samples
from app.db import storage
from app.db.repository import MANIFEST_NAME, DatasetRepository, ModelRepository
from app.models.api import (
    BenchRequest,
    DatasetInfo,
    DatasetRequest,
    EvaluateRequest,
    EvaluationResult,
    TrainRequest,
    TrainResult,
)
from app.models.classifier import ModelFile
from app.models.dataset import Dataset
from app.models.learning import BenchReport

logger = logging.getLogger(__name__)

# Create router
router = APIRouter()


def _load_data(path: str) -> Dataset:
    manifest = storage.resolve_data_path(path)
    if not manifest.is_file():
        raise HTTPException(status_code=404, detail=f"Manifest {path} not found")
    try:
        return DatasetRepository.load_dataset(manifest)
    except HaarBoostError as exc:
        raise HTTPException(status_code=400, detail=str(exc))


def _model_path(name: str) -> Path:
    return storage.get_model_dir() / f"{name}.json"


@router.post("/datasets", response_model=DatasetInfo, status_code=201)
def create_dataset(request: DatasetRequest):
    """
    Generate a synthetic dataset under the data root.
    """
    try:
        samples = generate_samples(request.count, request.window, request.seed, request.difficulty)
    except HaarBoostError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    DatasetRepository.write_dataset(storage.get_data_dir() / request.name, samples)

    positives = sum(1 for s in samples if s.label == 1)
    return DatasetInfo(
        manifest=f"{request.name}/{MANIFEST_NAME}",
        samples=len(samples),
        positives=positives,
        negatives=len(samples) - positives,
        window_w=request.window,
        window_h=request.window,
    )


@router.post("/models", response_model=TrainResult, status_code=201)
def train_model(request: TrainRequest):
    """
    Train a strong classifier and store it under the requested name.
    """
    data = _load_data(request.data)
    workers = request.workers or storage.DEFAULT_WORKERS
    reports = []
    try:
        learner = make_learner(request.learner_config(), request.seed, workers)
        strong = adaboost_train(data, learner, request.rounds, reports.append)
    except HaarBoostError as exc:
        raise HTTPException(status_code=400, detail=str(exc))

    ModelRepository.save_model(strong, _model_path(request.name))
    logger.info("Stored model %s with %d stages", request.name, len(strong.stages))
    return TrainResult(
        name=request.name,
        stages=len(strong.stages),
        train_error=classification_error(strong, data),
        rounds=reports,
    )


@router.get("/models", response_model=List[str])
def list_models():
    """
    Names of all stored models.
    """
    return ModelRepository.list_models(storage.get_model_dir())


@router.get("/models/{name}", response_model=ModelFile)
def get_model(name: str):
    """
    Get a stored model file.
    """
    path = _model_path(name)
    if not path.is_file():
        raise HTTPException(status_code=404, detail=f"Model {name} not found")
    try:
        return ModelFile.from_classifier(ModelRepository.load_model(path))
    except HaarBoostError as exc:
        raise HTTPException(status_code=400, detail=str(exc))


@router.post("/models/{name}/evaluate", response_model=EvaluationResult)
def evaluate_model(name: str, request: EvaluateRequest):
    """
    Misclassified fraction of a dataset under a stored model.
    """
    path = _model_path(name)
    if not path.is_file():
        raise HTTPException(status_code=404, detail=f"Model {name} not found")
    data = _load_data(request.data)
    try:
        strong = ModelRepository.load_model(path)
        error = classification_error(strong, data)
    except HaarBoostError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    return EvaluationResult(model=name, data=request.data, samples=len(data), error=error)


@router.post("/bench", response_model=BenchReport)
def bench(request: BenchRequest):
    """
    Run a learner comparison on two stored datasets.
    """
    train = _load_data(request.train)
    test = _load_data(request.test)
    try:
        return run_benchmark(
            train,
            test,
            request.configs or standard_configs(),
            request.rounds,
            request.seed,
            parallel=request.parallel,
            workers=request.workers,
        )
    except HaarBoostError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
