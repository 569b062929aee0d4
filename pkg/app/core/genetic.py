"""
Genetic weak learner.

Free parameters (x, y, width, height) are searched by a binary-chromosome
genetic algorithm with elitist selection; the linked parameters (polarity,
threshold) are solved exactly by the stump learner for every chromosome,
and the feature type is handled by running the algorithm once per type.
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import List, Optional, Tuple

import numpy as np

from app.core.errors import EncodingError, NoValidClassifierError
from app.core.haar import haar_values, is_valid_geometry
from app.core.stump import learn_stump, learn_stumps
from app.models.classifier import WeakClassifier
from app.models.dataset import Dataset
from app.models.geometry import HaarGeometry, HaarType
from app.models.learning import GeneticConfig, LearnerOutcome

logger = logging.getLogger(__name__)

# Errors below E_MIN are scored as E_MIN so fitness stays finite
E_MIN = 1e-10
FIELD_COUNT = 4


def bit_width(window_w: int, window_h: int) -> int:
    """B = ceil(log2(max(window_w, window_h) + 1))."""
    return int(max(window_w, window_h)).bit_length()


def encode(geometry, bits: int) -> np.ndarray:
    """
    Write (x, y, width, height) as four big-endian ``bits``-wide fields.

    Raises:
        EncodingError: if a field does not fit in ``bits`` bits
    """
    row = geometry.as_row() if isinstance(geometry, HaarGeometry) else tuple(int(v) for v in geometry)
    limit = (1 << bits) - 1
    for name, value in zip(("x", "y", "width", "height"), row):
        if not 0 <= value <= limit:
            raise EncodingError(f"{name}={value} does not fit in {bits} bits")
    shifts = np.arange(bits - 1, -1, -1)
    return ((np.array(row, dtype=np.int64)[:, np.newaxis] >> shifts) & 1).astype(np.uint8).ravel()


def decode(chromosome, bits: int) -> HaarGeometry:
    """
    Read four big-endian fields back into a geometry. No validity filtering.

    Raises:
        EncodingError: if the chromosome is not ``4 * bits`` binary digits
    """
    return HaarGeometry.from_row(_decode_row(chromosome, bits))


def _decode_row(chromosome, bits: int) -> Tuple[int, int, int, int]:
    genes = np.asarray(chromosome)
    if genes.shape != (FIELD_COUNT * bits,):
        raise EncodingError(f"chromosome must have {FIELD_COUNT * bits} bits, got shape {genes.shape}")
    if np.any((genes != 0) & (genes != 1)):
        raise EncodingError("chromosome bits must be 0 or 1")
    place = 1 << np.arange(bits - 1, -1, -1)
    x, y, width, height = (int(v) for v in genes.reshape(FIELD_COUNT, bits).astype(np.int64) @ place)
    return x, y, width, height


def crossover(a, b, cut: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    1-point crossover: swap every bit at or right of ``cut``.

    Returns:
        (a[:cut] + b[cut:], b[:cut] + a[cut:]); parents are not modified
    """
    a = np.asarray(a, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8)
    if a.shape != b.shape or a.ndim != 1:
        raise EncodingError("crossover parents must be chromosomes of equal length")
    if not 1 <= cut <= len(a) - 1:
        raise EncodingError(f"crossover cut {cut} outside [1, {len(a) - 1}]")
    return (np.concatenate([a[:cut], b[cut:]]),
            np.concatenate([b[:cut], a[cut:]]))


def mutate(chromosome, bit_index: int) -> np.ndarray:
    """
    Return a copy with one bit flipped.
    """
    genes = np.array(chromosome, dtype=np.uint8)
    if not 0 <= bit_index < len(genes):
        raise EncodingError(f"mutation index {bit_index} outside [0, {len(genes) - 1}]")
    genes[bit_index] ^= 1
    return genes


@dataclass(frozen=True)
class FitnessContext:
    """
    Everything a fitness evaluation reads: integral stack, labels, weights.
    """
    integrals: np.ndarray
    labels: np.ndarray
    weights: np.ndarray
    window_w: int
    window_h: int

    @classmethod
    def from_dataset(cls, data: Dataset, weights) -> "FitnessContext":
        weights = np.asarray(weights, dtype=np.float64)
        if weights.shape != (len(data),):
            raise ValueError(f"expected {len(data)} weights, got {weights.size}")
        return cls(
            integrals=data.integral_images(),
            labels=data.labels,
            weights=weights,
            window_w=data.window_w,
            window_h=data.window_h,
        )

    @property
    def bits(self) -> int:
        return bit_width(self.window_w, self.window_h)


@dataclass
class ScoredMember:
    """
    A chromosome with its fitness; ``error`` is None for invalid geometries.
    """
    chromosome: np.ndarray
    fitness: float
    error: Optional[float] = None
    zero_error: bool = False

    def rank_key(self):
        # higher fitness first, lexicographic bit order on ties
        return (-self.fitness, self.chromosome.tobytes())


@dataclass
class RunTrace:
    """
    Book-keeping of one evolve run.
    """
    haar_type: int = 0
    run_index: int = 0
    evaluations: int = 0
    generations: int = 0
    best_fitness: float = 0.0
    best_history: List[float] = field(default_factory=list)
    population_sizes: List[int] = field(default_factory=list)


def evaluate_member(chromosome, haar_type: HaarType, context: FitnessContext) -> ScoredMember:
    """
    Score one chromosome: zero for invalid geometry, else 1 / max(E, E_MIN).
    """
    row = _decode_row(chromosome, context.bits)
    if not is_valid_geometry(row, haar_type, context.window_w, context.window_h):
        return ScoredMember(chromosome=chromosome, fitness=0.0)
    values = haar_values(context.integrals, [row], haar_type)
    _, _, errors = learn_stumps(values, context.labels, context.weights)
    error = float(errors[0])
    return ScoredMember(
        chromosome=chromosome,
        fitness=1.0 / max(error, E_MIN),
        error=error,
        zero_error=error == 0.0,
    )


def fitness(chromosome, haar_type: HaarType, data: Dataset, weights) -> float:
    """
    Fitness of a chromosome for one feature type on a weighted dataset.
    """
    return evaluate_member(chromosome, haar_type, FitnessContext.from_dataset(data, weights)).fitness


def evolve(
    haar_type: HaarType,
    data: Dataset,
    weights,
    config: GeneticConfig,
    rng: np.random.Generator,
    trace: Optional[RunTrace] = None,
) -> ScoredMember:
    """
    Run the genetic algorithm for one feature type.

    Args:
        haar_type: Feature type held fixed during the run
        data: Training windows
        weights: Normalised sample weights
        config: Population size, generations and operator rates
        rng: Random stream consumed by this run only
        trace: Optional record filled with counts and per-generation bests

    Returns:
        The best member scored during the run
    """
    context = FitnessContext.from_dataset(data, weights)
    return _evolve(HaarType(haar_type), context, config, rng, trace or RunTrace(haar_type=int(haar_type)))


def _evolve(
    haar_type: HaarType,
    context: FitnessContext,
    config: GeneticConfig,
    rng: np.random.Generator,
    trace: RunTrace,
) -> ScoredMember:
    size = config.population_n
    length = FIELD_COUNT * context.bits
    n_children = config.children_per_generation
    n_mutations = config.mutations_per_generation
    best: Optional[ScoredMember] = None

    def score(chromosome) -> ScoredMember:
        nonlocal best
        member = evaluate_member(chromosome, haar_type, context)
        trace.evaluations += 1
        if best is None or member.fitness > best.fitness:
            best = member
        return member

    # Score a random initial population
    population = []
    for _ in range(size):
        population.append(score(rng.integers(0, 2, size=length, dtype=np.uint8)))
        if best.zero_error:
            return _finish(best, trace)
    # Rank it
    population.sort(key=ScoredMember.rank_key)
    trace.best_history.append(population[0].fitness)

    for _ in range(config.generations_kmax):
        trace.generations += 1

        # children of the best pairs (1,2), (3,4), ...; wraps around for small N
        children = []
        pair = 0
        while len(children) < n_children:
            first = population[(2 * pair) % size]
            second = population[(2 * pair + 1) % size]
            cut = int(rng.integers(1, length))
            for child in crossover(first.chromosome, second.chromosome, cut):
                if len(children) < n_children:
                    children.append(score(child))
            pair += 1
        if best.zero_error:
            return _finish(best, trace)

        # mutate in place; the best member of the pool is left alone
        pool = population + children
        targets = mutation_targets(pool, n_mutations, rng)
        for index in targets:
            bit = int(rng.integers(0, length))
            pool[index] = score(mutate(pool[index].chromosome, bit))
        if best.zero_error:
            return _finish(best, trace)

        # Keep the best N of parents, children and mutants
        pool.sort(key=ScoredMember.rank_key)
        population = pool[:size]
        trace.population_sizes.append(len(population))
        trace.best_history.append(population[0].fitness)

    return _finish(best, trace)


def mutation_targets(pool: List[ScoredMember], count: int, rng: np.random.Generator) -> np.ndarray:
    """
    Draw ``count`` distinct pool indices to mutate, never the best-ranked member.

    The best member is the first one under ``ScoredMember.rank_key``, so a child that
    outscored the previous elite is protected too.
    """
    elite = min(range(len(pool)), key=lambda index: pool[index].rank_key())
    candidates = np.delete(np.arange(len(pool)), elite)
    return rng.choice(candidates, size=count, replace=False)


def _finish(best: ScoredMember, trace: RunTrace) -> ScoredMember:
    trace.best_fitness = best.fitness
    return best


def run_stream(seed: int, round_index: int, type_index: int, run_index: int) -> np.random.Generator:
    """
    Independent PCG64 stream for one (round, feature type, restart) triple.
    """
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(round_index, type_index, run_index))
    return np.random.default_rng(sequence)


@dataclass
class GeneticSearch:
    """
    Outcome of all 5*S runs of one weak-learner call.
    """
    classifier: WeakClassifier
    error: float
    fitness: float
    zero_error: bool
    evaluations: int
    runs: List[RunTrace]


def _run_single(context: FitnessContext, config: GeneticConfig, round_index: int,
                task: Tuple[int, int]) -> Tuple[ScoredMember, RunTrace]:
    type_index, run_index = task
    trace = RunTrace(haar_type=type_index, run_index=run_index)
    rng = run_stream(config.seed, round_index, type_index, run_index)
    member = _evolve(HaarType(type_index), context, config, rng, trace)
    logger.debug(
        "run type=%s restart=%d fitness=%.6g evals=%d generations=%d",
        HaarType(type_index).tag, run_index, member.fitness, trace.evaluations, trace.generations,
    )
    return member, trace


def genetic_search(data: Dataset, weights, config: GeneticConfig, round_index: int = 0) -> GeneticSearch:
    """
    Run the genetic algorithm S times per feature type and keep the best member.

    Ties in fitness go to the lower type index, then the lower restart index.

    Raises:
        NoValidClassifierError: if every run ends with zero fitness
    """
    # One task per (feature type, restart)
    context = FitnessContext.from_dataset(data, weights)
    tasks = [(int(t), r) for t in HaarType for r in range(config.restarts_s)]
    worker = partial(_run_single, context, config, round_index)

    results: List[Tuple[ScoredMember, RunTrace]] = []
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as executor:
            results = list(executor.map(worker, tasks))
    else:
        for task in tasks:
            results.append(worker(task))
            if results[-1][0].zero_error:
                # later runs can only tie, and ties go to earlier runs
                break

    # Pick the fittest run; ties go to the lower type, then the lower restart
    member, trace = min(results, key=lambda r: (-r[0].fitness, r[1].haar_type, r[1].run_index))
    if member.fitness <= 0:
        raise NoValidClassifierError()

    haar_type = HaarType(trace.haar_type)
    geometry = decode(member.chromosome, context.bits)
    values = haar_values(context.integrals, [geometry.as_row()], haar_type)[:, 0]
    stump, error = learn_stump(values, context.labels, context.weights)
    classifier = WeakClassifier(
        geometry=geometry,
        haar_type=haar_type,
        polarity=stump.polarity,
        threshold=stump.threshold,
    )
    return GeneticSearch(
        classifier=classifier,
        error=error,
        fitness=member.fitness,
        zero_error=member.zero_error,
        evaluations=sum(t.evaluations for _, t in results),
        runs=[t for _, t in results],
    )


def genetic_weak_learner(data: Dataset, weights, config: GeneticConfig, round_index: int = 0) -> WeakClassifier:
    """
    Best weak classifier found by 5*S independent genetic runs.
    """
    return genetic_search(data, weights, config, round_index).classifier


def evaluation_bound(config: GeneticConfig) -> int:
    """Upper bound on fitness evaluations of one genetic weak-learner call."""
    return len(HaarType) * config.restarts_s * config.evaluations_per_run


class GeneticWeakLearner:
    """
    Boosting adapter around genetic_search.
    """

    def __init__(self, config: GeneticConfig):
        self.config = config
        self.searches: List[GeneticSearch] = []

    def __call__(self, data: Dataset, weights, round_index: int = 0) -> LearnerOutcome:
        search = genetic_search(data, weights, self.config, round_index)
        self.searches.append(search)
        return LearnerOutcome(
            classifier=search.classifier,
            error=search.error,
            evaluations=search.evaluations,
            zero_error=search.zero_error,
        )

    def describe(self) -> str:
        c = self.config
        return (f"genetic S={c.restarts_s} N={c.population_n} Kmax={c.generations_kmax} "
                f"Rc={c.crossover_rate:g} Rm={c.mutation_rate:g} seed={c.seed}")
