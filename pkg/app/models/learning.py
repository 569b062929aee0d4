"""
Pydantic models for learner configuration, round reports and benchmark rows.
"""
import math
from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field, root_validator

from app.models.classifier import WeakClassifier

DEFAULT_POPULATION = 50
DEFAULT_GENERATIONS = 10
DEFAULT_CROSSOVER_RATE = 0.3
DEFAULT_MUTATION_RATE = 0.1
DEFAULT_RESTARTS = 1


class GeneticConfig(BaseModel):
    """
    Parameters of the genetic weak learner.
    """
    population_n: int = Field(DEFAULT_POPULATION, gt=0, description="Population size N")
    generations_kmax: int = Field(DEFAULT_GENERATIONS, gt=0, description="Generations K_max")
    crossover_rate: float = Field(DEFAULT_CROSSOVER_RATE, gt=0, le=1, description="Crossover rate R_c")
    mutation_rate: float = Field(DEFAULT_MUTATION_RATE, gt=0, le=1, description="Mutation rate R_m")
    restarts_s: int = Field(DEFAULT_RESTARTS, ge=1, description="Independent runs S per feature type")
    seed: int = Field(0, ge=0, lt=2 ** 64, description="Root seed of all random streams")
    workers: int = Field(1, ge=1, description="Process-pool size for the 5*S runs")

    class Config:
        schema_extra = {
            "example": {
                "population_n": 50,
                "generations_kmax": 10,
                "crossover_rate": 0.3,
                "mutation_rate": 0.1,
                "restarts_s": 1,
                "seed": 7,
                "workers": 1,
            }
        }

    @property
    def children_per_generation(self) -> int:
        return math.ceil(self.population_n * self.crossover_rate)

    @property
    def mutations_per_generation(self) -> int:
        return math.ceil(self.population_n * self.mutation_rate)

    @property
    def evaluations_per_run(self) -> int:
        """Upper bound on fitness evaluations of one evolve run."""
        return self.population_n + self.generations_kmax * (
            self.children_per_generation + self.mutations_per_generation
        )


class LearnerKind(str, Enum):
    GENETIC = "genetic"
    EXHAUSTIVE = "exhaustive"


class LearnerConfig(BaseModel):
    """
    One benchmark configuration: a learner kind plus its genetic parameters.
    """
    learner: LearnerKind = Field(..., description="genetic or exhaustive")
    restarts_s: Optional[int] = Field(None, ge=1)
    population_n: Optional[int] = Field(None, gt=0)
    generations_kmax: Optional[int] = Field(None, gt=0)
    crossover_rate: Optional[float] = Field(None, gt=0, le=1)
    mutation_rate: Optional[float] = Field(None, gt=0, le=1)

    @root_validator(skip_on_failure=True)
    def _fill_genetic_defaults(cls, values):
        if values["learner"] == LearnerKind.GENETIC:
            defaults = {
                "restarts_s": DEFAULT_RESTARTS,
                "population_n": DEFAULT_POPULATION,
                "generations_kmax": DEFAULT_GENERATIONS,
                "crossover_rate": DEFAULT_CROSSOVER_RATE,
                "mutation_rate": DEFAULT_MUTATION_RATE,
            }
            for key, default in defaults.items():
                if values.get(key) is None:
                    values[key] = default
        else:
            for key in ("restarts_s", "population_n", "generations_kmax", "crossover_rate", "mutation_rate"):
                values[key] = None
        return values

    def genetic_config(self, seed: int, workers: int = 1) -> GeneticConfig:
        """Expand a genetic row into a GeneticConfig."""
        if self.learner != LearnerKind.GENETIC:
            raise ValueError("only genetic configurations carry genetic parameters")
        return GeneticConfig(
            population_n=self.population_n,
            generations_kmax=self.generations_kmax,
            crossover_rate=self.crossover_rate,
            mutation_rate=self.mutation_rate,
            restarts_s=self.restarts_s,
            seed=seed,
            workers=workers,
        )


class LearnerOutcome(BaseModel):
    """
    Result of one weak-learner call inside a boosting round.
    """
    classifier: WeakClassifier
    error: float = Field(..., ge=0, description="Weighted error reported by the learner")
    evaluations: int = Field(..., ge=0, description="Fitness evaluations or candidates scored")
    zero_error: bool = Field(False, description="Learner found a classifier with E = 0")


class RoundReport(BaseModel):
    """
    What the boosting driver reports to its observer after each round.
    """
    round_index: int = Field(..., ge=1, description="1-based round number")
    epsilon: float = Field(..., description="Weighted error of the round's weak classifier")
    alpha: float = Field(..., description="Vote weight assigned to it")
    seconds: float = Field(..., ge=0, description="Wall time of the weak-learner call")
    evaluations: int = Field(..., ge=0)
    classifier: WeakClassifier


class BenchRow(BaseModel):
    """
    One benchmark line; genetic columns are None for the exhaustive learner.
    """
    learner: LearnerKind
    restarts_s: Optional[int] = None
    population_n: Optional[int] = None
    generations_kmax: Optional[int] = None
    crossover_rate: Optional[float] = None
    mutation_rate: Optional[float] = None
    rounds: int = Field(..., gt=0)
    seconds_per_round: Optional[float] = Field(None, ge=0)
    evals_per_round: float = Field(..., gt=0)
    accel_time: Optional[float] = None
    accel_evals: float = Field(..., gt=0)
    train_error: float = Field(..., ge=0, le=1)
    test_error: float = Field(..., ge=0, le=1)


class BenchReport(BaseModel):
    """
    Rows of a benchmark in configuration order.
    """
    window_w: int
    window_h: int
    exhaustive_candidates: int
    rows: List[BenchRow]
