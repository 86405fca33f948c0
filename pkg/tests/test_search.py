import numpy as np
import pytest
from hypothesis import given, strategies as st

from sdeslab import search


class FakeRNG:
    """Replays scripted values in place of a numpy Generator."""

    def __init__(self, ints=(), randoms=()):
        self._ints = list(ints)
        self._rand = list(randoms)

    def integers(self, low, high=None, size=None):
        value = self._ints.pop(0)
        return np.asarray(value) if size is not None else value

    def random(self):
        return self._rand.pop(0)


def test_matched_bits_examples():
    assert search.matched_bits(0, 0) == 10
    assert search.matched_bits(0b1111111111, 0) == 0
    assert search.matched_bits(0b1010000010, 0b1010000011) == 9


@given(st.integers(0, 1023), st.integers(0, 1023))
def test_matched_bits_symmetric(a, b):
    assert search.matched_bits(a, b) == search.matched_bits(b, a)
    assert 0 <= search.matched_bits(a, b) <= 10
    assert search.matched_bits(a, a) == 10


def test_one_point_crossover_all_cuts():
    a, b = 0b1111111111, 0b0000000000
    for cut in range(1, 10):
        child = search.one_point_crossover(a, b, FakeRNG(ints=[cut]))
        expected = int(format(a, "010b")[:cut] + format(b, "010b")[cut:], 2)
        assert child == expected


@given(st.integers(0, 1023), st.integers(0, 1023), st.integers(0, 2**32 - 1))
def test_crossover_mixes_prefix_and_suffix(a, b, seed):
    child = search.one_point_crossover(a, b, np.random.default_rng(seed))
    bits_a, bits_b, bits_c = (format(x, "010b") for x in (a, b, child))
    assert any(
        bits_c == bits_a[:cut] + bits_b[cut:] for cut in range(1, 10)
    )
    assert search.one_point_crossover(a, a, np.random.default_rng(seed)) == a


def test_bit_flip_positions():
    key = 0b0000000000
    for position in range(10):
        mutated = search.bit_flip_mutation(key, FakeRNG(ints=[position]))
        assert format(mutated, "010b")[position] == "1"
        assert bin(mutated).count("1") == 1


@given(st.integers(0, 1023), st.integers(0, 2**32 - 1))
def test_mutation_flips_exactly_one_bit(key, seed):
    mutated = search.bit_flip_mutation(key, np.random.default_rng(seed))
    assert bin(key ^ mutated).count("1") == 1


def test_tournament_prefers_fitter_then_earlier_draw():
    population = [100, 200, 300]
    fitnesses = [1.0, 5.0, 1.0]
    assert search.tournament_select(population, fitnesses, 2, FakeRNG(ints=[[2, 0]])) == 300
    assert search.tournament_select(population, fitnesses, 2, FakeRNG(ints=[[0, 2]])) == 100
    assert search.tournament_select(population, fitnesses, 2, FakeRNG(ints=[[1, 0]])) == 100


def test_survival_keeps_best_and_prefers_offspring_on_ties():
    kept, fits = search.survival_select(
        parents=[10, 11], parent_fitnesses=[1.0, 3.0],
        offspring=[20, 21], offspring_fitnesses=[3.0, 0.5],
        population_size=2,
    )
    assert kept == [21, 10] and fits == [0.5, 1.0]

    # all equal: offspring first, then parents, by index
    kept, fits = search.survival_select(
        parents=[1, 2], parent_fitnesses=[7.0, 7.0],
        offspring=[3, 4], offspring_fitnesses=[7.0, 7.0],
        population_size=3,
    )
    assert kept == [3, 4, 1]


def test_random_search_is_replayable():
    objective = lambda k: float((k * 37) % 101)
    a = search.random_search(objective, 50, seed=9, true_key=5)
    b = search.random_search(objective, 50, seed=9, true_key=5)
    assert a == b
    assert a.evaluations_used == 50
    assert a.algorithm == search.RANDOM_SEARCH

    draws = np.random.default_rng(9).integers(0, 1024, size=50)
    assert a.returned_fitness == min(objective(int(k)) for k in draws)


def test_random_search_ties_keep_first_draw():
    record = search.random_search(lambda k: 1.0, 20, seed=3)
    first = int(np.random.default_rng(3).integers(0, 1024, size=20)[0])
    assert record.returned_key == first
    assert record.matched_bits is None


def test_random_search_budget_validation():
    with pytest.raises(ValueError):
        search.random_search(lambda k: 0.0, 0, seed=1)


def test_ga_config_validation():
    with pytest.raises(ValueError):
        search.GAConfig(population_size=0)
    with pytest.raises(ValueError):
        search.GAConfig(crossover_probability=1.5)
    with pytest.raises(ValueError):
        search.GAConfig(mutation_probability=-0.1)
    with pytest.raises(ValueError):
        search.GAConfig(generations=0)
    assert search.GAConfig().evaluations == 100


def test_ga_is_replayable_and_counts_evaluations():
    objective = lambda k: float((k ^ 0b1010101010).bit_count())
    a = search.ga_search(objective, seed=4, true_key=0b1010101010)
    b = search.ga_search(objective, seed=4, true_key=0b1010101010)
    assert a == b
    assert a.evaluations_used == 100
    assert a.algorithm == search.GENETIC_ALGORITHM
    assert 0 <= a.matched_bits <= 10


def test_ga_returns_best_ever_evaluated():
    seen = {}

    def recording(k):
        value = float((k * 997) % 443)
        seen[k] = value
        return value

    record = search.ga_search(recording, search.GAConfig(), seed=11)
    assert record.returned_fitness == min(seen.values())
    assert seen[record.returned_key] == record.returned_fitness


def test_ga_single_generation_is_initial_population():
    config = search.GAConfig(generations=1)
    record = search.ga_search(lambda k: float(k), config, seed=2)
    assert record.evaluations_used == 10
    population = np.random.default_rng(2).integers(0, 1024, size=10)
    assert record.returned_key == min(int(k) for k in population)


def test_brute_force_exact_argmin():
    result = search.brute_force(lambda k: float(abs(k - 642)))
    assert result.argmin_keys == [642]
    assert result.min_fitness == 0.0
    assert result.fitnesses.shape == (1024,)
    assert result.fitnesses[0] == 642.0

    flat = search.brute_force(lambda k: 2.5)
    assert flat.argmin_keys == list(range(1024))
