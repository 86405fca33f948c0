"""Key-search strategies over the 1024-key space, all minimising a fitness.

Three strategies: uniform random sampling, a generational genetic algorithm
(tournament selection, one-point crossover, single-bit-flip mutation,
elitist truncation survival), and exhaustive brute force as the
ground-truth oracle. Keys are integers in 0..1023; randomness comes from
numpy's seedable PCG64 generator, one independent stream per run.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .sdes import KEY_BITS, KEY_SPACE

Objective = Callable[[int], float]

RANDOM_SEARCH = "rs"
GENETIC_ALGORITHM = "ga"


@dataclass(frozen=True)
class GAConfig:
    population_size: int = 10
    crossover_probability: float = 0.95
    mutation_probability: float = 0.05
    generations: int = 10
    tournament_size: int = 2

    def __post_init__(self):
        if self.population_size < 1 or self.generations < 1 or self.tournament_size < 1:
            raise ValueError("population_size, generations and tournament_size must be >= 1")
        for p in (self.crossover_probability, self.mutation_probability):
            if not 0.0 <= p <= 1.0:
                raise ValueError("probabilities must lie in [0, 1]")

    @property
    def evaluations(self) -> int:
        """Total objective evaluations: the initial population counts as generation 1."""
        return self.population_size * self.generations


@dataclass
class RunRecord:
    """Outcome of one search run."""

    algorithm: str
    returned_key: int
    returned_fitness: float
    evaluations_used: int
    matched_bits: Optional[int]
    seed: int


def matched_bits(a: int, b: int) -> int:
    """Number of agreeing bit positions between two keys (10 - Hamming distance)."""
    return KEY_BITS - ((a ^ b) & (KEY_SPACE - 1)).bit_count()


def random_search(
    objective: Objective, budget: int, seed: int, true_key: Optional[int] = None
) -> RunRecord:
    """Sample ``budget`` keys uniformly with replacement, return the best seen.

    Ties keep the first-encountered key, so the result is replayable from
    the seed alone.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    rng = np.random.default_rng(seed)
    draws = rng.integers(0, KEY_SPACE, size=budget)
    best_key, best_fit = -1, float("inf")
    for k in draws:
        fit = objective(int(k))
        if fit < best_fit:
            best_key, best_fit = int(k), fit
    return RunRecord(
        RANDOM_SEARCH,
        best_key,
        best_fit,
        budget,
        matched_bits(best_key, true_key) if true_key is not None else None,
        seed,
    )


def one_point_crossover(a: int, b: int, rng: np.random.Generator) -> int:
    """Left part of ``a`` up to a uniform cut in 1..9, right part of ``b``."""
    cut = int(rng.integers(1, KEY_BITS))
    right_mask = (1 << (KEY_BITS - cut)) - 1
    return (a & ~right_mask & (KEY_SPACE - 1)) | (b & right_mask)


def bit_flip_mutation(key: int, rng: np.random.Generator) -> int:
    """Flip exactly one uniformly chosen bit."""
    position = int(rng.integers(0, KEY_BITS))  # 0 = leftmost
    return key ^ (1 << (KEY_BITS - 1 - position))


def tournament_select(
    population: Sequence[int],
    fitnesses: Sequence[float],
    size: int,
    rng: np.random.Generator,
) -> int:
    """Draw ``size`` members with replacement; return the fittest (ties: earliest drawn)."""
    picks = rng.integers(0, len(population), size=size)
    best_idx = int(picks[0])
    for i in picks[1:]:
        if fitnesses[int(i)] < fitnesses[best_idx]:
            best_idx = int(i)
    return population[best_idx]


def survival_select(
    parents: Sequence[int],
    parent_fitnesses: Sequence[float],
    offspring: Sequence[int],
    offspring_fitnesses: Sequence[float],
    population_size: int,
) -> tuple[list[int], list[float]]:
    """Elitist truncation over the union; ties prefer offspring, then lower index."""
    pool = [(fit, 0, i, key) for i, (key, fit) in enumerate(zip(offspring, offspring_fitnesses))]
    pool += [(fit, 1, i, key) for i, (key, fit) in enumerate(zip(parents, parent_fitnesses))]
    pool.sort(key=lambda item: item[:3])
    kept = pool[:population_size]
    return [key for _, _, _, key in kept], [fit for fit, _, _, _ in kept]


def ga_search(
    objective: Objective,
    config: GAConfig = GAConfig(),
    seed: int = 0,
    true_key: Optional[int] = None,
) -> RunRecord:
    """Generational GA; returns the best key ever evaluated.

    Per offspring slot: select parent one; with the crossover probability
    select a second parent and cross, otherwise copy; then mutate with the
    mutation probability (one bit flip per mutated offspring).
    """
    rng = np.random.default_rng(seed)
    size = config.population_size

    population = [int(k) for k in rng.integers(0, KEY_SPACE, size=size)]
    fitnesses = [objective(k) for k in population]
    evaluations = size
    best_key, best_fit = -1, float("inf")
    for k, fit in zip(population, fitnesses):
        if fit < best_fit:
            best_key, best_fit = k, fit

    for _ in range(config.generations - 1):
        offspring: list[int] = []
        for _ in range(size):
            child = tournament_select(population, fitnesses, config.tournament_size, rng)
            if rng.random() < config.crossover_probability:
                partner = tournament_select(population, fitnesses, config.tournament_size, rng)
                child = one_point_crossover(child, partner, rng)
            if rng.random() < config.mutation_probability:
                child = bit_flip_mutation(child, rng)
            offspring.append(child)
        offspring_fitnesses = [objective(k) for k in offspring]
        evaluations += size
        for k, fit in zip(offspring, offspring_fitnesses):
            if fit < best_fit:
                best_key, best_fit = k, fit
        population, fitnesses = survival_select(
            population, fitnesses, offspring, offspring_fitnesses, size
        )

    return RunRecord(
        GENETIC_ALGORITHM,
        best_key,
        best_fit,
        evaluations,
        matched_bits(best_key, true_key) if true_key is not None else None,
        seed,
    )


@dataclass
class BruteForceResult:
    """Fitness of every key (indexed by key value) plus the exact argmin set."""

    fitnesses: np.ndarray  # (1024,)
    min_fitness: float
    argmin_keys: list[int]


def brute_force(objective: Objective) -> BruteForceResult:
    """Evaluate all 1024 keys exactly once."""
    fitnesses = np.array([objective(k) for k in range(KEY_SPACE)], dtype=float)
    min_fitness = float(fitnesses.min())
    argmin = [int(k) for k in np.flatnonzero(fitnesses == min_fitness)]
    return BruteForceResult(fitnesses, min_fitness, argmin)
