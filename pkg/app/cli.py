"""
Command-line surface: gen-data, train, eval and bench.
"""
import logging
from contextlib import contextmanager

import click
from click.core import ParameterSource

from app.core.bench import make_learner, standard_configs, read_bench_configs, run_benchmark, write_bench_csv
from app.core.boost import adaboost_train
from app.core.errors import HaarBoostError
from app.core.metrics import classification_error
from app.core.synthetic import generate_samples
from app.db.repository import DatasetRepository, ModelRepository
from app.db.storage import DEFAULT_WORKERS
from app.models.learning import (
    DEFAULT_CROSSOVER_RATE,
    DEFAULT_GENERATIONS,
    DEFAULT_MUTATION_RATE,
    DEFAULT_POPULATION,
    DEFAULT_RESTARTS,
    LearnerConfig,
    LearnerKind,
)
from app.utils.helpers import configure_logging, format_error, format_real, format_round

logger = logging.getLogger(__name__)

GENETIC_OPTIONS = ("pop", "gens", "crossover_rate", "mutation_rate", "restarts", "workers")

EXISTING_FILE = click.Path(exists=True, dir_okay=False)
RATE = click.FloatRange(0.0, 1.0, min_open=True)
SEED = click.IntRange(0, 2 ** 64 - 1)


@contextmanager
def reported_errors():
    """Turn toolkit and I/O errors into a ClickException (exit status 1)."""
    try:
        yield
    except (HaarBoostError, OSError) as exc:
        raise click.ClickException(str(exc)) from exc


@click.group()
@click.option("--log-level", default=None, help="Log level (defaults to LOG_LEVEL or INFO).")
def cli(log_level):
    """Boosted haar-feature classifiers with genetic or exhaustive weak learners."""
    configure_logging(log_level)


@cli.command("gen-data")
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False), help="Output directory.")
@click.option("--count", type=click.IntRange(min=2), default=1000, show_default=True)
@click.option("--window", type=click.IntRange(min=8), default=24, show_default=True)
@click.option("--seed", type=SEED, default=0, show_default=True)
@click.option("--difficulty", type=click.FloatRange(0.0, 1.0), default=0.0, show_default=True)
def gen_data(out_dir, count, window, seed, difficulty):
    """Write synthetic PGM windows and a manifest."""
    with reported_errors():
        samples = generate_samples(count, window, seed, difficulty)
        manifest = DatasetRepository.write_dataset(out_dir, samples)
    click.echo(f"wrote {count} samples to {manifest}")


@cli.command()
@click.option("--data", required=True, type=EXISTING_FILE, help="Training manifest.")
@click.option("--learner", type=click.Choice([k.value for k in LearnerKind]), default=LearnerKind.GENETIC.value,
              show_default=True)
@click.option("--rounds", type=click.IntRange(min=1), default=10, show_default=True)
@click.option("--pop", type=click.IntRange(min=1), default=DEFAULT_POPULATION, show_default=True)
@click.option("--gens", type=click.IntRange(min=1), default=DEFAULT_GENERATIONS, show_default=True)
@click.option("--crossover-rate", type=RATE, default=DEFAULT_CROSSOVER_RATE, show_default=True)
@click.option("--mutation-rate", type=RATE, default=DEFAULT_MUTATION_RATE, show_default=True)
@click.option("--restarts", type=click.IntRange(min=1), default=DEFAULT_RESTARTS, show_default=True)
@click.option("--seed", type=SEED, default=0, show_default=True)
@click.option("--workers", type=click.IntRange(min=1), default=DEFAULT_WORKERS, show_default=True,
              help="Process-pool size for genetic restarts.")
@click.option("--model-out", required=True, type=click.Path(dir_okay=False), help="Model file to write.")
@click.pass_context
def train(ctx, data, learner, rounds, pop, gens, crossover_rate, mutation_rate, restarts, seed, workers, model_out):
    """Train a strong classifier and write its model file."""
    kind = LearnerKind(learner)
    if kind == LearnerKind.EXHAUSTIVE:
        given = [name for name in GENETIC_OPTIONS
                 if ctx.get_parameter_source(name) == ParameterSource.COMMANDLINE]
        if given:
            flags = ", ".join("--" + name.replace("_", "-") for name in given)
            raise click.UsageError(f"{flags} cannot be combined with --learner exhaustive")

    with reported_errors():
        dataset = DatasetRepository.load_dataset(data)
        config = LearnerConfig(
            learner=kind,
            restarts_s=restarts,
            population_n=pop,
            generations_kmax=gens,
            crossover_rate=crossover_rate,
            mutation_rate=mutation_rate,
        )
        weak_learner = make_learner(config, seed, workers)
        strong = adaboost_train(dataset, weak_learner, rounds, lambda report: click.echo(format_round(report)))
        ModelRepository.save_model(strong, model_out)
        train_error = classification_error(strong, dataset)
    click.echo(f"stages={len(strong.stages)} train_{format_error(train_error)}")


@cli.command("eval")
@click.option("--model", required=True, type=EXISTING_FILE, help="Model file.")
@click.option("--data", required=True, type=EXISTING_FILE, help="Manifest to classify.")
def evaluate(model, data):
    """Print the misclassified fraction of a dataset."""
    with reported_errors():
        strong = ModelRepository.load_model(model)
        dataset = DatasetRepository.load_dataset(data)
        error = classification_error(strong, dataset)
    click.echo(format_error(error))


@cli.command()
@click.option("--train", "train_manifest", required=True, type=EXISTING_FILE, help="Training manifest.")
@click.option("--test", "test_manifest", required=True, type=EXISTING_FILE, help="Test manifest.")
@click.option("--rounds", type=click.IntRange(min=1), default=10, show_default=True)
@click.option("--seed", type=SEED, default=0, show_default=True)
@click.option("--configs", type=EXISTING_FILE, default=None,
              help="CSV of learner,S,N,Kmax,Rc,Rm rows; defaults to the standard run patterns.")
@click.option("--out", required=True, type=click.Path(dir_okay=False), help="CSV report to write.")
@click.option("--parallel", is_flag=True, help="Run genetic restarts on a process pool; timing is not reported.")
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Pool size with --parallel.")
def bench(train_manifest, test_manifest, rounds, seed, configs, out, parallel, workers):
    """Compare learners per boosting round and write a CSV report."""
    if workers is not None and not parallel:
        raise click.UsageError("--workers requires --parallel")
    with reported_errors():
        train_data = DatasetRepository.load_dataset(train_manifest)
        test_data = DatasetRepository.load_dataset(test_manifest)
        learner_configs = read_bench_configs(configs) if configs else standard_configs()
        report = run_benchmark(train_data, test_data, learner_configs, rounds, seed,
                               parallel=parallel, workers=workers)
        write_bench_csv(report.rows, out)
    for row in report.rows:
        click.echo(
            f"{row.learner.value} S={format_real(row.restarts_s)} N={format_real(row.population_n)} "
            f"Kmax={format_real(row.generations_kmax)} evals/round={format_real(row.evals_per_round)} "
            f"accel_evals={format_real(row.accel_evals)} train_error={row.train_error:.6f} "
            f"test_error={row.test_error:.6f}"
        )
    click.echo(f"wrote {len(report.rows)} rows to {out}")


if __name__ == "__main__":
    cli()
