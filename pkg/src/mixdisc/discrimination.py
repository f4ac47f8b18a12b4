"""Minimum-error probabilities for telling two preparations apart.

All results carry the method that produced them so that the report can set
closed forms against the Helstrom computation and the Monte Carlo estimate.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, NamedTuple

import numpy as np

from . import fock
from .linalg import BasisMismatch, DensityOperator, StateVector, orthonormal_span, trace_norm
from .qubits import BlochAxis, Preparation, outcome_count_distribution

UNDERFLOW = 1e-300
EXACT_COUNTING_MAX_N = 10_000


class InvalidPrior(ValueError):
    pass


class OutOfRange(ValueError):
    pass


class LogValue(NamedTuple):
    """A probability together with its log10, for values that underflow."""

    value: float
    log10: float

    @classmethod
    def from_log10(cls, log10: float) -> "LogValue":
        return cls(10.0**log10 if log10 > -400 else 0.0, log10)


@dataclass
class DiscriminationResult:
    p_error: float
    method: str
    trace_distance: float | None = None
    details: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not (-1e-12 <= self.p_error <= 0.5 + 1e-12):
            raise ValueError(f"error probability {self.p_error!r} outside [0, 1/2]")
        if self.method not in ("helstrom", "closed-form", "counting", "monte-carlo"):
            raise ValueError(f"unknown method {self.method!r}")

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def helstrom_error(rho1: DensityOperator, rho2: DensityOperator, prior1: float = 0.5) -> DiscriminationResult:
    """Optimal error probability for a single copy of rho1 or rho2.

    Equal priors give 1/2 - Tr|rho1 - rho2|/4; otherwise
    (1 - Tr|p rho1 - (1-p) rho2|)/2.
    """
    if rho1.basis != rho2.basis:
        raise BasisMismatch("density operators live in different bases")
    if not 0 < prior1 < 1:
        raise InvalidPrior(f"prior must lie strictly between 0 and 1, got {prior1!r}")
    tn = trace_norm(rho1.matrix - rho2.matrix)
    if prior1 == 0.5:
        p = 0.5 - 0.25 * tn
    else:
        p = 0.5 * (1 - trace_norm(prior1 * rho1.matrix - (1 - prior1) * rho2.matrix))
    return DiscriminationResult(
        p_error=min(0.5, max(0.0, p)),
        method="helstrom",
        trace_distance=0.5 * tn,
        details={"prior1": prior1, "dim": rho1.dim},
    )


def pure_helstrom_error(psi: StateVector, phi: StateVector, prior1: float = 0.5) -> DiscriminationResult:
    """Helstrom error of two pure states, evaluated inside their common span.

    Both projectors are supported on span{psi, phi}, so the trace norm of their
    difference is unchanged by the restriction and the eigenproblem is at most 2x2.
    """
    if psi.basis != phi.basis:
        raise BasisMismatch("states live in different bases")
    q = orthonormal_span([psi, phi])
    a, b = q.conj().T @ psi.amplitudes, q.conj().T @ phi.amplitudes
    r1 = DensityOperator(np.outer(a, a.conj()) / np.vdot(a, a).real)
    r2 = DensityOperator(np.outer(b, b.conj()) / np.vdot(b, b).real)
    result = helstrom_error(r1, r2, prior1)
    result.details["dim"] = psi.dim
    result.details["span_dim"] = q.shape[1]
    return result


def pure_state_error(overlap_magnitude: float) -> float:
    """(1 - sqrt(1 - s^2)) / 2 for overlap magnitude s.

    Written as s^2 / (2 (1 + sqrt(1 - s^2))) to keep relative accuracy as s -> 0.
    """
    s = float(overlap_magnitude)
    if not 0.0 <= s <= 1.0 + 1e-12:
        raise OutOfRange(f"overlap magnitude must lie in [0, 1], got {s!r}")
    s = min(s, 1.0)
    return s * s / (2.0 * (1.0 + math.sqrt((1.0 - s) * (1.0 + s))))


def log10_pure_state_error(log10_overlap: float) -> float:
    if log10_overlap == -math.inf:
        return -math.inf
    s = 10.0**log10_overlap
    return 2 * log10_overlap - math.log10(2.0 * (1.0 + math.sqrt(max(0.0, (1.0 - s) * (1.0 + s)))))


def counting_test_error_exact(n: int) -> Fraction:
    """C(2n, n) / 2^(2n+1) as an exact rational."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    return Fraction(math.comb(2 * n, n), 2 ** (2 * n + 1))


def log_counting_test_error(n: int) -> float:
    """Natural log of the counting-test error, via lgamma."""
    return math.lgamma(2 * n + 1) - 2 * math.lgamma(n + 1) - (2 * n + 1) * math.log(2)


def counting_test_error(n: int) -> float:
    """Bayes error for "exactly n up, n down" against 2n fair coin flips.

    The exact-count recipe puts all its mass on k = n ups; the binomial puts
    C(2n, n)/4^n there, so the error is half that. Up to n = 10^4 the value is
    the correctly rounded float of the exact rational; beyond, it comes from
    the log-gamma form.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if n <= EXACT_COUNTING_MAX_N:
        return float(counting_test_error_exact(n))
    return math.exp(log_counting_test_error(n))


def counting_test_asymptote(n: int) -> float:
    if n < 1:
        raise ValueError("n must be a positive integer")
    return 1.0 / (2.0 * math.sqrt(math.pi * n))


def distinguishable_particles_error(n: int) -> tuple[float, float]:
    """(exact, approx) error for the z- vs x-prepared product states.

    ``exact`` applies the pure-state formula to the overlap 2^-n; ``approx`` is
    its small-overlap limit s^2/4 = 2^-(2n+2). The overlap is taken as the
    exact power of two: the product of 2n rounded factors of 1/sqrt2 carries
    ~n ulp of error, more than the 4^-n gap being resolved at large n.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    exact = pure_state_error(math.ldexp(1.0, -n))
    approx = math.ldexp(1.0, -(2 * n + 2))
    return exact, approx


def photon_error(n: int) -> tuple[LogValue, LogValue]:
    """(exact, asymptote) for the two photon states, each as (value, log10).

    Odd n gives orthogonal states and zero error. For even n the exact value
    uses the closed-form overlap and the asymptote is
    (e/n)^(2n+2) / (2 pi e)^2.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if n % 2:
        zero = LogValue(0.0, -math.inf)
        return zero, zero
    exact = LogValue.from_log10(log10_pure_state_error(fock.log10_fock_overlap_closed_form(n)))
    log10_asym = (2 * n + 2) * (math.log10(math.e) - math.log10(n)) - 2 * math.log10(2 * math.pi * math.e)
    asym = LogValue.from_log10(log10_asym)
    if exact.value < UNDERFLOW:
        exact = LogValue(0.0, exact.log10)
    if asym.value < UNDERFLOW:
        asym = LogValue(0.0, asym.log10)
    return exact, asym


def photon_error_expansion(n: int) -> LogValue:
    """Pure-state error from the overlap of the explicitly expanded photon states."""
    s = fock.fock_overlap_expansion(n)
    if s == 0.0:
        return LogValue(0.0, -math.inf)
    return LogValue.from_log10(log10_pure_state_error(math.log10(s)))


def bayes_error(pa, pb) -> float:
    """Equal-prior Bayes error (1/2) sum_k min(P_A(k), P_B(k))."""
    pa, pb = np.asarray(pa, dtype=float), np.asarray(pb, dtype=float)
    if pa.shape != pb.shape:
        raise BasisMismatch(f"outcome spaces differ: {pa.shape[0]} vs {pb.shape[0]} outcomes")
    return float(0.5 * np.sum(np.minimum(pa, pb)))


def bayes_rule(pa, pb) -> np.ndarray:
    """True where the count k is assigned to hypothesis A (ties go to A)."""
    return np.asarray(pa) >= np.asarray(pb)


def common_size(a: Preparation, b: Preparation, size: int | None) -> int:
    sizes = {s for s in (a.total, b.total, size) if s is not None}
    if not sizes:
        raise BasisMismatch("neither preparation fixes the number of particles; pass size")
    if len(sizes) > 1:
        raise BasisMismatch(f"preparations describe different particle numbers {sorted(sizes)}")
    return sizes.pop()


def preparation_discrimination(
    prep_a: Preparation, prep_b: Preparation, axis: BlochAxis, size: int | None = None
) -> DiscriminationResult:
    """Bayes error of the counting test along ``axis`` between two recipes."""
    m = common_size(prep_a, prep_b, size)
    pa = outcome_count_distribution(prep_a, axis, m)
    pb = outcome_count_distribution(prep_b, axis, m)
    rule = bayes_rule(pa, pb)
    return DiscriminationResult(
        p_error=min(0.5, bayes_error(pa, pb)),
        method="counting",
        trace_distance=float(0.5 * np.sum(np.abs(pa - pb))),
        details={
            "particles": m,
            "axis": list(axis.vector),
            "decide_a": [int(k) for k in np.flatnonzero(rule)],
        },
    )
