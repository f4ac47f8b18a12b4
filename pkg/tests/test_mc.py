import math

import numpy as np
import pytest

from mixdisc.discrimination import counting_test_error, preparation_discrimination
from mixdisc.mc import (
    BLOCK_SIZE,
    InvalidScenario,
    Scenario,
    block_rng,
    estimate_error,
    result_record,
    sample_record,
    wilson_interval,
)
from mixdisc.qubits import X, Z, BlochAxis, balanced_type1, balanced_type2, outcome_count_distribution, type1, type2


def within_4_sigma(p_hat, p, trials):
    return abs(p_hat - p) <= 4 * math.sqrt(p * (1 - p) / trials)


def test_type1_eigenbasis_records_are_deterministic():
    rng = block_rng(1, 0)
    for _ in range(200):
        rec = sample_record(balanced_type1(2, Z), Z, rng)
        assert rec.ups == 2
        assert sorted(rec.components.tolist()) == [0, 0, 1, 1]


def test_type2_up_fraction():
    rng = block_rng(2, 0)
    rec = sample_record(balanced_type2(Z), Z, rng, size=10**6)
    assert within_4_sigma(rec.ups / 10**6, 0.5, 10**6)


def test_type1_x_records_match_count_distribution():
    rng = block_rng(3, 0)
    n = 40_000
    counts = np.bincount([sample_record(balanced_type1(1, X), Z, rng).ups for _ in range(n)], minlength=3)
    for k, p in enumerate(outcome_count_distribution(balanced_type1(1, X), Z)):
        assert within_4_sigma(counts[k] / n, p, n)


def test_type1_records_keep_exact_counts():
    prep = type1([(Z, "up", 3), (X, "down", 2), (BlochAxis(0, 1, 0), "up", 4)])
    rng = block_rng(4, 0)
    for _ in range(100):
        rec = sample_record(prep, X, rng)
        assert np.bincount(rec.components, minlength=3).tolist() == [3, 2, 4]


def test_record_interleaving_is_uniform():
    rng = block_rng(5, 0)
    n = 20_000
    first_slot = sum(sample_record(balanced_type1(1, Z), Z, rng).components[0] == 0 for _ in range(n))
    assert within_4_sigma(first_slot / n, 0.5, n)


def test_estimate_error_balanced_n4():
    s = Scenario(balanced_type1(4, Z), balanced_type2(Z), Z, 10**6, 99)
    est = estimate_error(s)
    assert within_4_sigma(est.p_hat, 35 / 256, 10**6)
    lo, hi = est.ci95
    assert lo <= est.p_hat <= hi


def test_estimate_error_self_is_half():
    prep = balanced_type1(3, X)
    est = estimate_error(Scenario(prep, prep, Z, 200_000, 7))
    assert within_4_sigma(est.p_hat, 0.5, 200_000)


def test_estimate_error_type2_axes_indistinguishable():
    s = Scenario(balanced_type2(Z), balanced_type2(X), Z, 10**6, 8, size=10)
    assert within_4_sigma(estimate_error(s).p_hat, 0.5, 10**6)


def test_determinism_and_parallel_independence():
    s = Scenario(balanced_type1(3, Z), balanced_type2(Z), Z, 5 * BLOCK_SIZE + 123, 2**64 - 1)
    a = estimate_error(s)
    assert estimate_error(s) == a
    assert estimate_error(s, workers=4) == a
    assert estimate_error(Scenario(s.prep_a, s.prep_b, s.axis, s.trials, 0)) != a


def test_single_trial():
    est = estimate_error(Scenario(balanced_type1(4, Z), balanced_type2(Z), Z, 1, 5))
    assert est.p_hat in (0.0, 1.0)
    assert 0 <= est.ci95[0] <= est.ci95[1] <= 1


@pytest.mark.parametrize(
    "prep_a, prep_b, axis, size",
    [
        (balanced_type1(4, Z), balanced_type2(Z), Z, None),
        (balanced_type1(2, Z), balanced_type1(2, X), Z, None),
        (type2([(Z, "up", 0.7), (Z, "down", 0.3)]), balanced_type2(X), Z, 9),
    ],
)
def test_consistency_over_seeds(prep_a, prep_b, axis, size):
    p = preparation_discrimination(prep_a, prep_b, axis, size).p_error
    trials = 10**5
    hits = sum(
        within_4_sigma(estimate_error(Scenario(prep_a, prep_b, axis, trials, seed, size)).p_hat, p, trials)
        for seed in range(100)
    )
    assert hits >= 99


def test_wilson_interval():
    lo, hi = wilson_interval(0, 10)
    assert lo == 0.0 and 0 < hi < 0.35
    lo, hi = wilson_interval(50, 100)
    assert lo == pytest.approx(0.40383, abs=1e-5) and hi == pytest.approx(0.59617, abs=1e-5)


def test_scenario_json_round_trip_and_hash():
    s = Scenario(balanced_type1(4, Z), balanced_type2(Z), Z, 1000, 42)
    back = Scenario.from_dict(s.to_dict())
    assert back.digest() == s.digest()
    assert Scenario(s.prep_a, s.prep_b, s.axis, 1000, 43).digest() != s.digest()
    rec = result_record(s, estimate_error(s))
    assert set(rec) >= {"scenario_hash", "p_hat", "ci95", "trials", "seed"}


@pytest.mark.parametrize(
    "doc, match",
    [
        ({"prepA": {}, "prepB": {}, "axis": [0, 0, 1], "trials": 10}, "seed"),
        ({"prepA": None, "prepB": None, "axis": [0, 0, 1], "trials": 10, "seed": 1}, "object"),
        ({"prepA": balanced_type2(Z).to_dict(), "prepB": balanced_type2(Z).to_dict(), "axis": [0, 0, 1], "trials": 10, "seed": 1}, "size"),
        ({"prepA": balanced_type1(1).to_dict(), "prepB": balanced_type2(Z).to_dict(), "axis": [0, 0, 1], "trials": 0, "seed": 1}, "trials"),
        ({"prepA": balanced_type1(1).to_dict(), "prepB": balanced_type2(Z).to_dict(), "axis": [0, 0, 1], "trials": 5, "seed": -1}, "seed"),
        ({"prepA": balanced_type1(1).to_dict(), "prepB": balanced_type2(Z).to_dict(), "axis": [0, 0, 1], "trials": 5.5, "seed": 1}, "trials"),
    ],
)
def test_scenario_validation(doc, match):
    with pytest.raises(InvalidScenario, match=match):
        Scenario.from_dict(doc)
