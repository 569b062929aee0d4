"""
Request and response bodies of the HTTP surface.
"""
from typing import List, Optional

from pydantic import BaseModel, Field

from app.models.learning import (
    DEFAULT_CROSSOVER_RATE,
    DEFAULT_GENERATIONS,
    DEFAULT_MUTATION_RATE,
    DEFAULT_POPULATION,
    DEFAULT_RESTARTS,
    LearnerConfig,
    LearnerKind,
    RoundReport,
)

NAME_PATTERN = r"^[A-Za-z0-9_-]+$"


class DatasetRequest(BaseModel):
    """
    Synthetic dataset to generate under the data root.
    """
    name: str = Field(..., regex=NAME_PATTERN, description="Directory name under the data root")
    count: int = Field(1000, ge=2)
    window: int = Field(24, ge=8)
    seed: int = Field(0, ge=0, lt=2 ** 64)
    difficulty: float = Field(0.0, ge=0, le=1)

    class Config:
        schema_extra = {
            "example": {"name": "edges16", "count": 200, "window": 16, "seed": 3, "difficulty": 0.2}
        }


class DatasetInfo(BaseModel):
    manifest: str = Field(..., description="Manifest path relative to the data root")
    samples: int
    positives: int
    negatives: int
    window_w: int
    window_h: int


class TrainRequest(BaseModel):
    """
    Boosting run whose result is stored under ``name``.
    """
    name: str = Field(..., regex=NAME_PATTERN, description="Model name")
    data: str = Field(..., description="Training manifest, relative to the data root")
    learner: LearnerKind = LearnerKind.GENETIC
    rounds: int = Field(10, gt=0)
    population_n: int = Field(DEFAULT_POPULATION, gt=0)
    generations_kmax: int = Field(DEFAULT_GENERATIONS, gt=0)
    crossover_rate: float = Field(DEFAULT_CROSSOVER_RATE, gt=0, le=1)
    mutation_rate: float = Field(DEFAULT_MUTATION_RATE, gt=0, le=1)
    restarts_s: int = Field(DEFAULT_RESTARTS, ge=1)
    seed: int = Field(0, ge=0, lt=2 ** 64)
    workers: Optional[int] = Field(None, ge=1, description="Defaults to HAARBOOST_WORKERS")

    class Config:
        schema_extra = {
            "example": {"name": "edges16-ga", "data": "edges16/manifest.txt", "learner": "genetic", "rounds": 5}
        }

    def learner_config(self) -> LearnerConfig:
        return LearnerConfig(
            learner=self.learner,
            restarts_s=self.restarts_s,
            population_n=self.population_n,
            generations_kmax=self.generations_kmax,
            crossover_rate=self.crossover_rate,
            mutation_rate=self.mutation_rate,
        )


class TrainResult(BaseModel):
    name: str
    stages: int
    train_error: float
    rounds: List[RoundReport]


class EvaluateRequest(BaseModel):
    data: str = Field(..., description="Manifest, relative to the data root")


class EvaluationResult(BaseModel):
    model: str
    data: str
    samples: int
    error: float


class BenchRequest(BaseModel):
    """
    Benchmark over two manifests; omitting configs runs the standard run patterns.
    """
    train: str
    test: str
    rounds: int = Field(10, gt=0)
    seed: int = Field(0, ge=0, lt=2 ** 64)
    configs: Optional[List[LearnerConfig]] = None
    parallel: bool = False
    workers: Optional[int] = Field(None, ge=1)
