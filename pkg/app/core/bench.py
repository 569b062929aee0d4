"""
Benchmark harness comparing weak learners per boosting round.

Acceleration by evaluation count is the reproducible measure; wall-clock
acceleration is reported for single-process runs only. Integral images are
computed before timing starts.
"""
import logging
import os
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd

from app.core.boost import adaboost_train
from app.core.errors import HaarBoostError, WindowMismatchError
from app.core.exhaustive import ExhaustiveWeakLearner
from app.core.genetic import GeneticWeakLearner
from app.core.haar import candidate_count
from app.core.metrics import classification_error
from app.models.dataset import Dataset
from app.models.learning import BenchReport, BenchRow, LearnerConfig, LearnerKind, RoundReport

logger = logging.getLogger(__name__)

CSV_COLUMNS = {
    "learner": "learner",
    "restarts_s": "S",
    "population_n": "N",
    "generations_kmax": "Kmax",
    "crossover_rate": "Rc",
    "mutation_rate": "Rm",
    "rounds": "rounds",
    "seconds_per_round": "sec_per_round",
    "evals_per_round": "evals_per_round",
    "accel_time": "accel_time",
    "accel_evals": "accel_evals",
    "train_error": "train_error",
    "test_error": "test_error",
}

CONFIG_COLUMNS = {
    "S": "restarts_s",
    "N": "population_n",
    "Kmax": "generations_kmax",
    "Rc": "crossover_rate",
    "Rm": "mutation_rate",
}


def standard_configs() -> List[LearnerConfig]:
    """
    The five genetic run patterns compared against exhaustive search.
    """
    patterns = [(1, 50, 10), (1, 100, 20), (1, 400, 40), (10, 10, 20), (20, 20, 40)]
    configs = [
        LearnerConfig(learner=LearnerKind.GENETIC, restarts_s=s, population_n=n, generations_kmax=k)
        for s, n, k in patterns
    ]
    configs.append(LearnerConfig(learner=LearnerKind.EXHAUSTIVE))
    return configs


def make_learner(config: LearnerConfig, seed: int, workers: int = 1):
    """Instantiate the weak learner a configuration describes."""
    if config.learner == LearnerKind.EXHAUSTIVE:
        return ExhaustiveWeakLearner()
    return GeneticWeakLearner(config.genetic_config(seed=seed, workers=workers))


def run_benchmark(
    train: Dataset,
    test: Dataset,
    configs: Sequence[LearnerConfig],
    rounds: int,
    seed: int,
    parallel: bool = False,
    workers: Optional[int] = None,
) -> BenchReport:
    """
    Train one strong classifier per configuration and compare the learners.

    Args:
        train: Training windows
        test: Test windows with the same window size
        configs: Learner configurations, reported in this order
        rounds: Boosting rounds T per configuration
        seed: Root seed shared by every genetic configuration
        parallel: Run genetic restarts on a process pool; timing columns stay empty
        workers: Pool size when parallel (defaults to the CPU count)

    Returns:
        BenchReport with one row per configuration
    """
    if not configs:
        raise HaarBoostError("benchmark needs at least one learner configuration")
    if not train.same_window(test):
        raise WindowMismatchError(
            f"train window {train.window_w}x{train.window_h} differs from "
            f"test window {test.window_w}x{test.window_h}"
        )
    pool_size = (workers or os.cpu_count() or 1) if parallel else 1

    # precompute integral stacks outside the timed region
    train.integral_images()
    test.integral_images()

    # Train one strong classifier per configuration
    measured = []
    for config in configs:
        learner = make_learner(config, seed, pool_size)
        reports: List[RoundReport] = []
        strong = adaboost_train(train, learner, rounds, reports.append)
        measured.append({
            "config": config,
            "seconds": None if parallel else float(np.mean([r.seconds for r in reports])),
            "evals": float(np.mean([r.evaluations for r in reports])),
            "train_error": classification_error(strong, train),
            "test_error": classification_error(strong, test),
        })
        logger.info("bench %s: evals/round=%.6g train_error=%.6f test_error=%.6f",
                    config.learner.value, measured[-1]["evals"],
                    measured[-1]["train_error"], measured[-1]["test_error"])

    # Compare against the exhaustive row, or the counted candidate total without one
    candidates = candidate_count(train.window_w, train.window_h)
    baseline = next((m for m in measured if m["config"].learner == LearnerKind.EXHAUSTIVE), None)
    baseline_evals = baseline["evals"] if baseline else float(candidates)
    baseline_seconds = baseline["seconds"] if baseline else None

    # Build rows in configuration order
    rows = []
    for m in measured:
        config = m["config"]
        accel_time = None
        if baseline_seconds is not None and m["seconds"]:
            accel_time = baseline_seconds / m["seconds"]
        rows.append(BenchRow(
            learner=config.learner,
            restarts_s=config.restarts_s,
            population_n=config.population_n,
            generations_kmax=config.generations_kmax,
            crossover_rate=config.crossover_rate,
            mutation_rate=config.mutation_rate,
            rounds=rounds,
            seconds_per_round=m["seconds"],
            evals_per_round=m["evals"],
            accel_time=accel_time,
            accel_evals=baseline_evals / m["evals"],
            train_error=m["train_error"],
            test_error=m["test_error"],
        ))
    return BenchReport(
        window_w=train.window_w,
        window_h=train.window_h,
        exhaustive_candidates=candidates,
        rows=rows,
    )


def bench_frame(rows: Sequence[BenchRow]) -> pd.DataFrame:
    """Rows as a DataFrame with the CSV column names."""
    records = []
    for row in rows:
        record = row.dict()
        record["learner"] = row.learner.value
        records.append({CSV_COLUMNS[key]: record[key] for key in CSV_COLUMNS})
    return pd.DataFrame.from_records(records, columns=list(CSV_COLUMNS.values()))


def write_bench_csv(rows: Sequence[BenchRow], path) -> None:
    """
    Write rows as CSV: blank for missing values, 6 significant digits for reals.
    """
    bench_frame(rows).to_csv(path, index=False, float_format="%.6g", na_rep="", lineterminator="\n")


def read_bench_configs(path) -> List[LearnerConfig]:
    """
    Read learner configurations from a CSV with columns learner,S,N,Kmax,Rc,Rm.

    Only ``learner`` is required; missing genetic parameters take defaults.
    """
    frame = pd.read_csv(path, skipinitialspace=True)
    if "learner" not in frame.columns:
        raise HaarBoostError(f"{path}: configuration file needs a 'learner' column")
    configs = []
    for line, record in enumerate(frame.to_dict(orient="records"), start=2):
        fields = {"learner": str(record["learner"]).strip()}
        for column, name in CONFIG_COLUMNS.items():
            value = record.get(column)
            if value is None or pd.isna(value):
                continue
            fields[name] = int(value) if name in ("restarts_s", "population_n", "generations_kmax") else float(value)
        try:
            configs.append(LearnerConfig(**fields))
        except ValueError as exc:
            raise HaarBoostError(f"{path}: line {line}: {exc}") from exc
    if not configs:
        raise HaarBoostError(f"{path}: no learner configurations")
    return configs
