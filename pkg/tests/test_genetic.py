"""
Tests for the genetic weak learner.
"""
import unittest
from unittest.mock import patch

import numpy as np

from app.core import genetic
from app.core.errors import EncodingError
from app.core.exhaustive import exhaustive_search
from app.core.genetic import (
    E_MIN,
    GeneticWeakLearner,
    RunTrace,
    ScoredMember,
    bit_width,
    crossover,
    decode,
    encode,
    evaluation_bound,
    evolve,
    fitness,
    genetic_search,
    mutate,
    mutation_targets,
    run_stream,
)
from app.core.haar import enumerate_geometries, haar_values
from app.core.metrics import uniform_weights
from app.core.stump import learn_stump
from app.models.dataset import Dataset, Sample
from app.models.geometry import HaarGeometry, HaarType
from app.models.learning import GeneticConfig, LearnerOutcome
from tests.factories import random_dataset, random_weights


class TestChromosome(unittest.TestCase):
    """
    Test cases for the chromosome codec and operators.
    """

    def setUp(self):
        self.rng = np.random.default_rng(17)

    def test_bit_width(self):
        """
        Test B = ceil(log2(max(w, h) + 1)).
        """
        self.assertEqual(bit_width(24, 24), 5)
        self.assertEqual(bit_width(8, 8), 4)
        self.assertEqual(bit_width(31, 2), 5)
        self.assertEqual(bit_width(32, 2), 6)

    def test_encode_examples(self):
        """
        Test big-endian field layout.
        """
        self.assertEqual(encode((5, 0, 0, 0), 5)[:5].tolist(), [0, 0, 1, 0, 1])
        self.assertEqual(encode((0, 0, 0, 0), 5).tolist(), [0] * 20)
        self.assertEqual(encode(HaarGeometry(x=1, y=2, width=3, height=4), 3).tolist(),
                         [0, 0, 1, 0, 1, 0, 0, 1, 1, 1, 0, 0])

    def test_decode_examples(self):
        """
        Test the all-zero and all-one patterns.
        """
        self.assertEqual(decode(np.zeros(20, dtype=np.uint8), 5).as_row(), (0, 0, 0, 0))
        self.assertEqual(decode(np.ones(20, dtype=np.uint8), 5).as_row(), (31, 31, 31, 31))

    def test_round_trip(self):
        """
        Test encode/decode on 1000 random in-range geometries and bit patterns.
        """
        for _ in range(1000):
            row = tuple(int(v) for v in self.rng.integers(0, 32, size=4))
            self.assertEqual(decode(encode(row, 5), 5).as_row(), row)
            bits = self.rng.integers(0, 2, size=20, dtype=np.uint8)
            np.testing.assert_array_equal(encode(decode(bits, 5), 5), bits)

    def test_codec_errors(self):
        """
        Test out-of-range fields and malformed chromosomes.
        """
        with self.assertRaises(EncodingError):
            encode((32, 0, 0, 0), 5)
        with self.assertRaises(EncodingError):
            encode((-1, 0, 0, 0), 5)
        with self.assertRaises(EncodingError):
            decode(np.zeros(19, dtype=np.uint8), 5)
        with self.assertRaises(EncodingError):
            decode(np.full(20, 2, dtype=np.uint8), 5)

    def test_crossover(self):
        """
        Test 1-point crossover on the definitional example.
        """
        a = np.array([0, 0, 0, 0], dtype=np.uint8)
        b = np.array([1, 1, 1, 1], dtype=np.uint8)
        first, second = crossover(a, b, 2)
        self.assertEqual(first.tolist(), [0, 0, 1, 1])
        self.assertEqual(second.tolist(), [1, 1, 0, 0])
        self.assertEqual(a.tolist(), [0, 0, 0, 0])
        self.assertEqual(b.tolist(), [1, 1, 1, 1])

    def test_crossover_properties(self):
        """
        Test identical parents and per-position bit preservation.
        """
        a = self.rng.integers(0, 2, size=16, dtype=np.uint8)
        b = self.rng.integers(0, 2, size=16, dtype=np.uint8)
        for cut in range(1, 16):
            first, second = crossover(a, b, cut)
            np.testing.assert_array_equal(first.astype(int) + second, a.astype(int) + b)
            same_first, same_second = crossover(a, a, cut)
            np.testing.assert_array_equal(same_first, a)
            np.testing.assert_array_equal(same_second, a)
        for cut in (0, 16):
            with self.assertRaises(EncodingError):
                crossover(a, b, cut)

    def test_mutate(self):
        """
        Test single-bit flips.
        """
        self.assertEqual(mutate(np.zeros(4, dtype=np.uint8), 2).tolist(), [0, 0, 1, 0])
        chromosome = self.rng.integers(0, 2, size=20, dtype=np.uint8)
        for index in range(20):
            flipped = mutate(chromosome, index)
            self.assertEqual(int(np.sum(flipped != chromosome)), 1)
            np.testing.assert_array_equal(mutate(flipped, index), chromosome)
        with self.assertRaises(EncodingError):
            mutate(chromosome, 20)


class TestFitness(unittest.TestCase):
    """
    Test cases for the fitness function.
    """

    def setUp(self):
        self.rng = np.random.default_rng(23)
        self.data = random_dataset(self.rng, 25, 8)
        self.weights = random_weights(self.rng, 25)

    def test_out_of_window_scores_zero(self):
        """
        Test that a geometry beyond the window has zero fitness.
        """
        chromosome = encode((15, 0, 2, 1), bit_width(8, 8))
        self.assertEqual(fitness(chromosome, HaarType.EDGE_H, self.data, self.weights), 0.0)

    def test_quarter_error_gives_four(self):
        """
        Test fitness 4 for a best stump error of 0.25.
        """
        rows = [[1, 0], [0, 1], [2, 0], [0, 2]]
        data = Dataset.from_samples(
            Sample(pixels=np.array([row]), label=label) for row, label in zip(rows, [1, 1, -1, -1])
        )
        chromosome = encode((0, 0, 2, 1), bit_width(2, 1))
        self.assertEqual(fitness(chromosome, HaarType.EDGE_H, data, uniform_weights(4)), 4.0)

    def test_matches_recomputed_stump(self):
        """
        Test fitness against 1 / error of an independently learned stump.
        """
        bits = bit_width(8, 8)
        integrals = self.data.integral_images()
        for haar_type in HaarType:
            rows = enumerate_geometries(haar_type, 8, 8)
            for index in self.rng.integers(0, len(rows), size=10):
                row = rows[index]
                _, error = learn_stump(haar_values(integrals, [row], haar_type)[:, 0], self.data.labels, self.weights)
                self.assertEqual(
                    fitness(encode(row, bits), haar_type, self.data, self.weights),
                    1.0 / max(error, E_MIN),
                )

    def test_total_over_bit_patterns(self):
        """
        Test that no bit pattern raises and all scores are non-negative.
        """
        for haar_type in HaarType:
            for _ in range(100):
                chromosome = self.rng.integers(0, 2, size=16, dtype=np.uint8)
                self.assertGreaterEqual(fitness(chromosome, haar_type, self.data, self.weights), 0.0)


class TestEvolve(unittest.TestCase):
    """
    Test cases for one run of the genetic algorithm.
    """

    def setUp(self):
        self.rng = np.random.default_rng(31)
        self.data = random_dataset(self.rng, 30, 8)
        self.weights = random_weights(self.rng, 30)
        self.config = GeneticConfig(population_n=10, generations_kmax=5, crossover_rate=0.3, mutation_rate=0.1)

    def test_operator_counts(self):
        """
        Test children and mutations added per generation.
        """
        config = GeneticConfig(population_n=50, crossover_rate=0.3, mutation_rate=0.1)
        self.assertEqual(config.children_per_generation, 15)
        self.assertEqual(config.mutations_per_generation, 5)
        self.assertEqual(config.evaluations_per_run, 50 + 10 * 20)

    def test_invariants_over_seeded_runs(self):
        """
        Test population size, elitism and evaluation counts over 50 seeded runs.
        """
        bound = self.config.evaluations_per_run
        for seed in range(50):
            haar_type = HaarType(seed % 5)
            trace = RunTrace(haar_type=int(haar_type))
            best = evolve(haar_type, self.data, self.weights, self.config, run_stream(seed, 0, int(haar_type), 0), trace)

            self.assertTrue(all(size == self.config.population_n for size in trace.population_sizes))
            self.assertTrue(all(a <= b for a, b in zip(trace.best_history, trace.best_history[1:])))
            self.assertLessEqual(trace.evaluations, bound)
            if not best.zero_error:
                self.assertEqual(trace.evaluations, bound)
                self.assertEqual(trace.generations, self.config.generations_kmax)
            self.assertEqual(best.fitness, trace.best_fitness)
            self.assertGreaterEqual(best.fitness, trace.best_history[-1])

            again = evolve(haar_type, self.data, self.weights, self.config, run_stream(seed, 0, int(haar_type), 0))
            self.assertEqual(again.chromosome.tobytes(), best.chromosome.tobytes())
            self.assertEqual(again.fitness, best.fitness)

    def test_mutation_targets_spare_best(self):
        """
        Test that a best member anywhere in the pool is never drawn for mutation.
        """
        rng = np.random.default_rng(3)
        for elite in (0, 7, 19):
            pool = [ScoredMember(chromosome=encode((i, 0, 0, 0), 5), fitness=1.0) for i in range(20)]
            pool[elite] = ScoredMember(chromosome=pool[elite].chromosome, fitness=5.0)
            for _ in range(100):
                targets = mutation_targets(pool, 19, rng).tolist()
                self.assertEqual(len(set(targets)), 19)
                self.assertNotIn(elite, targets)

    def test_mutation_targets_tie_break(self):
        """
        Test that among equally fit members the lowest chromosome bytes are protected.
        """
        pool = [ScoredMember(chromosome=encode((i, 0, 0, 0), 5), fitness=2.0) for i in (3, 1, 2)]
        targets = mutation_targets(pool, 2, np.random.default_rng(0)).tolist()
        self.assertEqual(sorted(targets), [0, 2])

    def test_best_survives_mutation(self):
        """
        Test over 30 seeded runs with R_c = R_m = 1 that mutation keeps the pool maximum.
        """
        config = GeneticConfig(population_n=10, generations_kmax=10, crossover_rate=1.0, mutation_rate=1.0)
        pools = []
        real = genetic.mutation_targets

        def spy(pool, count, rng):
            targets = real(pool, count, rng)
            pools.append(([member.fitness for member in pool], targets.tolist()))
            return targets

        with patch("app.core.genetic.mutation_targets", side_effect=spy):
            for seed in range(30):
                haar_type = HaarType(seed % 5)
                evolve(haar_type, self.data, self.weights, config, run_stream(seed, 0, int(haar_type), 0))

        self.assertTrue(pools)
        for fitnesses, targets in pools:
            kept = [f for index, f in enumerate(fitnesses) if index not in targets]
            self.assertEqual(max(kept), max(fitnesses))

    def test_streams(self):
        """
        Test that streams repeat per key and differ across rounds.
        """
        self.assertEqual(run_stream(7, 0, 1, 2).integers(0, 2 ** 32, size=4).tolist(),
                         run_stream(7, 0, 1, 2).integers(0, 2 ** 32, size=4).tolist())
        self.assertNotEqual(run_stream(7, 0, 1, 2).integers(0, 2 ** 32, size=4).tolist(),
                            run_stream(7, 1, 1, 2).integers(0, 2 ** 32, size=4).tolist())


class TestGeneticSearch(unittest.TestCase):
    """
    Test cases for the 5*S-run weak learner.
    """

    def setUp(self):
        self.rng = np.random.default_rng(37)
        self.data = random_dataset(self.rng, 40, 8)
        self.weights = random_weights(self.rng, 40)
        self.config = GeneticConfig(population_n=10, generations_kmax=3, seed=5)

    def test_evaluation_bound(self):
        """
        Test the counting bound 5*S*(N + Kmax*(children + mutations)).
        """
        config = GeneticConfig(population_n=10, generations_kmax=3, restarts_s=2, seed=1)
        search = genetic_search(self.data, self.weights, config)
        self.assertLessEqual(search.evaluations, evaluation_bound(config))
        if not search.zero_error:
            self.assertEqual(search.evaluations, evaluation_bound(config))
            self.assertEqual(len(search.runs), 10)

    def test_deterministic(self):
        """
        Test that identical inputs give an identical classifier.
        """
        first = genetic_search(self.data, self.weights, self.config, round_index=3)
        second = genetic_search(self.data, self.weights, self.config, round_index=3)
        self.assertEqual(first.classifier, second.classifier)
        self.assertEqual(first.error, second.error)

    def test_never_beats_exhaustive(self):
        """
        Test on 20 random 8x8 instances that the genetic error is never below the optimum.
        """
        for instance in range(20):
            data = random_dataset(self.rng, 30, 8)
            weights = random_weights(self.rng, 30)
            config = GeneticConfig(population_n=10, generations_kmax=3, seed=instance)
            search = genetic_search(data, weights, config)
            _, optimum, _ = exhaustive_search(data, weights)
            self.assertGreaterEqual(search.error, optimum)

    def test_best_of_restarts(self):
        """
        Test that best-of-S fitness dominates every individual run for S=10, N=10.
        """
        config = GeneticConfig(population_n=10, generations_kmax=3, restarts_s=10, seed=9)
        search = genetic_search(self.data, self.weights, config)
        self.assertEqual(search.fitness, max(run.best_fitness for run in search.runs))
        for run in search.runs:
            self.assertGreaterEqual(search.fitness, run.best_fitness)

    def test_zero_error_run_ends_search(self):
        """
        Test that a zero-error member stops the search and is returned.
        """
        real = genetic.evaluate_member
        planted = encode((0, 0, 1, 2), bit_width(8, 8))

        def stub(chromosome, haar_type, context):
            if haar_type == HaarType.EDGE_V:
                return ScoredMember(chromosome=planted, fitness=1.0 / E_MIN, error=0.0, zero_error=True)
            return real(chromosome, haar_type, context)

        with patch("app.core.genetic.evaluate_member", side_effect=stub):
            search = genetic_search(self.data, self.weights, self.config)
        self.assertTrue(search.zero_error)
        self.assertEqual(search.classifier.haar_type, HaarType.EDGE_V)
        self.assertEqual([run.haar_type for run in search.runs], [0, 1])
        self.assertEqual(search.runs[1].evaluations, 1)
        self.assertEqual(search.classifier.geometry.as_row(), (0, 0, 1, 2))

    def test_parallel_matches_sequential(self):
        """
        Test that a process pool returns the sequential result.
        """
        sequential = genetic_search(self.data, self.weights, self.config)
        parallel = genetic_search(self.data, self.weights, self.config.copy(update={"workers": 2}))
        self.assertEqual(parallel.classifier, sequential.classifier)
        self.assertEqual(parallel.fitness, sequential.fitness)

    def test_learner_adapter(self):
        """
        Test the boosting adapter's outcome and search log.
        """
        learner = GeneticWeakLearner(self.config)
        outcome = learner(self.data, self.weights, 0)
        self.assertIsInstance(outcome, LearnerOutcome)
        self.assertEqual(len(learner.searches), 1)
        self.assertEqual(outcome.evaluations, learner.searches[0].evaluations)
        self.assertTrue(outcome.classifier.fits(8, 8))
        self.assertIn("N=10", learner.describe())


if __name__ == "__main__":
    unittest.main()
