"""Seeded Monte Carlo of the individual-particle counting test.

Trials are grouped into fixed-size blocks and block ``b`` draws from a Philox
stream keyed by ``(seed, b)``. The block layout never depends on the number
of workers, so serial and threaded runs give bit-identical error counts.
"""
from __future__ import annotations

import hashlib
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .discrimination import common_size, bayes_rule
from .qubits import BlochAxis, Kind, Preparation, outcome_count_distribution, up_probability

BLOCK_SIZE = 1 << 14
Z95 = 1.959963984540054


class InvalidScenario(ValueError):
    pass


def block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, block])))


@dataclass(frozen=True)
class Scenario:
    prep_a: Preparation
    prep_b: Preparation
    axis: BlochAxis
    trials: int
    seed: int
    size: int | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise InvalidScenario("trials must be a positive integer")
        if not 0 <= self.seed < 2**64:
            raise InvalidScenario("seed must be a 64-bit unsigned integer")
        common_size(self.prep_a, self.prep_b, self.size)

    @property
    def particles(self) -> int:
        return common_size(self.prep_a, self.prep_b, self.size)

    def to_dict(self) -> dict:
        doc = {
            "prepA": self.prep_a.to_dict(),
            "prepB": self.prep_b.to_dict(),
            "axis": list(self.axis.vector),
            "trials": self.trials,
            "seed": self.seed,
        }
        if self.size is not None:
            doc["size"] = self.size
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "Scenario":
        if not isinstance(doc, dict):
            raise InvalidScenario("scenario must be a JSON object")
        missing = [k for k in ("prepA", "prepB", "axis", "trials", "seed") if k not in doc]
        if missing:
            raise InvalidScenario(f"scenario is missing {', '.join(missing)}")
        for k in ("trials", "seed", "size"):
            v = doc.get(k)
            if v is not None and (isinstance(v, bool) or not isinstance(v, int)):
                raise InvalidScenario(f"{k} must be an integer")
        try:
            return cls(
                Preparation.from_dict(doc["prepA"]),
                Preparation.from_dict(doc["prepB"]),
                BlochAxis.from_vector(doc["axis"]),
                doc["trials"],
                doc["seed"],
                doc.get("size"),
            )
        except InvalidScenario:
            raise
        except (TypeError, ValueError) as exc:
            raise InvalidScenario(str(exc)) from None

    def digest(self) -> str:
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class EstimateWithCI:
    p_hat: float
    stderr: float
    ci95: tuple[float, float]
    trials: int
    errors: int

    @classmethod
    def from_counts(cls, errors: int, trials: int) -> "EstimateWithCI":
        p = errors / trials
        return cls(p, math.sqrt(p * (1 - p) / trials), wilson_interval(errors, trials), trials, errors)


def wilson_interval(successes: int, n: int, z: float = Z95) -> tuple[float, float]:
    p = successes / n
    denom = 1 + z * z / n
    center = (p + z * z / (2 * n)) / denom
    half = z / denom * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n))
    return max(0.0, min(p, center - half)), min(1.0, max(p, center + half))


@dataclass(frozen=True)
class Record:
    """One measured run: which recipe component each particle came from, and its outcome."""

    components: np.ndarray
    outcomes: np.ndarray

    @property
    def ups(self) -> int:
        return int(np.count_nonzero(self.outcomes))


def sample_record(prep: Preparation, axis: BlochAxis, rng: np.random.Generator, size: int | None = None) -> Record:
    """Simulate one run and measure every particle along ``axis``.

    Type 1 lays out the exact counts in a uniformly random order; type 2 draws
    each particle's component independently.
    """
    qs = np.array([up_probability(c.state, axis) for c in prep.components])
    if prep.kind is Kind.TYPE1:
        comps = np.repeat(np.arange(len(prep.components)), [c.weight for c in prep.components])
        comps = rng.permutation(comps)
    else:
        m = size if size is not None else prep.size
        if m is None:
            raise InvalidScenario("type-2 recipe needs a size (number of particles)")
        comps = rng.choice(len(prep.components), size=m, p=prep.probabilities())
    outcomes = rng.random(comps.shape[0]) < qs[comps]
    return Record(comps, outcomes)


def sample_up_counts(prep: Preparation, axis: BlochAxis, m: int, rng: np.random.Generator, n: int) -> np.ndarray:
    """Up-counts of ``n`` independent runs, drawn directly in count space."""
    qs = [up_probability(c.state, axis) for c in prep.components]
    if prep.kind is Kind.TYPE1:
        counts = np.zeros(n, dtype=np.int64)
        for c, q in zip(prep.components, qs):
            counts += rng.binomial(c.weight, q, size=n)
        return counts
    qbar = min(1.0, max(0.0, sum(p * q for p, q in zip(prep.probabilities(), qs))))
    return rng.binomial(m, qbar, size=n)


def _block_errors(scenario: Scenario, rule: np.ndarray, block: int) -> int:
    start = block * BLOCK_SIZE
    n = min(BLOCK_SIZE, scenario.trials - start)
    rng = block_rng(scenario.seed, block)
    m = scenario.particles
    truth_a = rng.random(n) < 0.5
    counts = np.empty(n, dtype=np.int64)
    n_a = int(np.count_nonzero(truth_a))
    counts[truth_a] = sample_up_counts(scenario.prep_a, scenario.axis, m, rng, n_a)
    counts[~truth_a] = sample_up_counts(scenario.prep_b, scenario.axis, m, rng, n - n_a)
    return int(np.count_nonzero(rule[counts] != truth_a))


def estimate_error(scenario: Scenario, workers: int = 1) -> EstimateWithCI:
    """Empirical error rate of the Bayes-optimal counting decision.

    Each trial picks A or B with probability 1/2, simulates a run, and guesses
    from the up-count using the exact analytic count distributions.
    """
    m = scenario.particles
    pa = outcome_count_distribution(scenario.prep_a, scenario.axis, m)
    pb = outcome_count_distribution(scenario.prep_b, scenario.axis, m)
    rule = bayes_rule(pa, pb)
    blocks = range(math.ceil(scenario.trials / BLOCK_SIZE))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            errors = sum(pool.map(lambda b: _block_errors(scenario, rule, b), blocks))
    else:
        errors = sum(_block_errors(scenario, rule, b) for b in blocks)
    return EstimateWithCI.from_counts(errors, scenario.trials)


def result_record(scenario: Scenario, est: EstimateWithCI) -> dict:
    return {
        "scenario_hash": scenario.digest(),
        "p_hat": est.p_hat,
        "stderr": est.stderr,
        "ci95": list(est.ci95),
        "errors": est.errors,
        "trials": est.trials,
        "seed": scenario.seed,
    }
