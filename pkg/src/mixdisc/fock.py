"""Two-mode bosonic Fock space built from creation-operator polynomials.

States with a fixed total number of quanta ``T`` are stored on the basis
``|m, T - m>`` for ``m = 0..T`` (ascending occupation of mode a). A state is
described by a polynomial in the commuting operators a^dag and b^dag applied
to the vacuum, using ``(a^dag)^p (b^dag)^q |0,0> = sqrt(p! q!) |p,q>``.

Polynomial coefficients are kept as exact rationals whenever possible. Two
numeric backends turn them into amplitudes:

* ``"exact"``: amplitude^2 = c^2 p! q! in rational arithmetic, then one
  correctly rounded square root.
* ``"log"``: log|c| + (lgamma(p+1) + lgamma(q+1))/2 in floating point, which
  survives factorials far beyond the float range.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Mapping

import numpy as np

from .linalg import Basis, DensityOperator, StateVector, overlap

EXACT_MAX_DEGREE = 40
LOG_ACCURACY_MAX_N = 300

Coefficient = int | Fraction | float | complex


class NotHomogeneous(ValueError):
    pass


def _is_rational(c) -> bool:
    return isinstance(c, Rational)


class CreationPolynomial:
    """Polynomial in a^dag, b^dag: ``{(p, q): coefficient}`` for (a^dag)^p (b^dag)^q."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], Coefficient] | None = None):
        clean: dict[tuple[int, int], Coefficient] = {}
        for (p, q), c in (terms or {}).items():
            if p < 0 or q < 0:
                raise ValueError(f"negative exponent in monomial {(p, q)}")
            if c != 0:
                clean[(int(p), int(q))] = c
        self._terms = clean

    @property
    def terms(self) -> dict[tuple[int, int], Coefficient]:
        return dict(self._terms)

    @classmethod
    def constant(cls, c: Coefficient = 1) -> "CreationPolynomial":
        return cls({(0, 0): c})

    @classmethod
    def a_dag(cls) -> "CreationPolynomial":
        return cls({(1, 0): 1})

    @classmethod
    def b_dag(cls) -> "CreationPolynomial":
        return cls({(0, 1): 1})

    def degrees(self) -> set[int]:
        return {p + q for p, q in self._terms}

    def is_exact(self) -> bool:
        return all(_is_rational(c) for c in self._terms.values())

    def coefficient(self, p: int, q: int) -> Coefficient:
        return self._terms.get((p, q), 0)

    def __add__(self, other: "CreationPolynomial") -> "CreationPolynomial":
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return CreationPolynomial(out)

    def __neg__(self) -> "CreationPolynomial":
        return self.scale(-1)

    def __sub__(self, other: "CreationPolynomial") -> "CreationPolynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, CreationPolynomial):
            return poly_multiply(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "CreationPolynomial":
        return poly_power(self, n)

    def scale(self, c: Coefficient) -> "CreationPolynomial":
        return CreationPolynomial({k: v * c for k, v in self._terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, CreationPolynomial) and self._terms == other._terms

    def __repr__(self) -> str:
        body = " + ".join(f"({c})·a†^{p}·b†^{q}" for (p, q), c in sorted(self._terms.items()))
        return f"CreationPolynomial({body or '0'})"


def poly_multiply(P: CreationPolynomial, Q: CreationPolynomial) -> CreationPolynomial:
    """Product of two polynomials in commuting creation operators."""
    out: dict[tuple[int, int], Coefficient] = {}
    for (p1, q1), c1 in P._terms.items():
        for (p2, q2), c2 in Q._terms.items():
            k = (p1 + p2, q1 + q2)
            out[k] = out.get(k, 0) + c1 * c2
    return CreationPolynomial(out)


def poly_power(P: CreationPolynomial, n: int) -> CreationPolynomial:
    if n < 0:
        raise ValueError("negative power")
    result = CreationPolynomial.constant(1)
    base = P
    while n:
        if n & 1:
            result = poly_multiply(result, base)
        n >>= 1
        if n:
            base = poly_multiply(base, base)
    return result


def fock_basis(total_quanta: int) -> Basis:
    return Basis.of(f"|{m},{total_quanta - m}>" for m in range(total_quanta + 1))


@dataclass(frozen=True)
class FockVector:
    """Amplitudes over ``|m, T-m>``, m = 0..T, for T = ``total_quanta``."""

    total_quanta: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if self.total_quanta < 0 or amps.shape != (self.total_quanta + 1,):
            raise ValueError(f"need {self.total_quanta + 1} amplitudes, got shape {amps.shape}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.total_quanta + 1

    def amplitude(self, m: int, n: int) -> complex:
        if m + n != self.total_quanta or m < 0 or n < 0:
            return 0j
        return complex(self.amplitudes[m])

    def as_state(self) -> StateVector:
        return StateVector(self.amplitudes, fock_basis(self.total_quanta))

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def to_dict(self) -> dict:
        return {
            "total_quanta": self.total_quanta,
            "amplitudes": [[float(z.real), float(z.imag)] for z in self.amplitudes],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "FockVector":
        return cls(int(doc["total_quanta"]), np.array([complex(re, im) for re, im in doc["amplitudes"]]))


def number_state(m: int, n: int) -> FockVector:
    amps = np.zeros(m + n + 1, dtype=np.complex128)
    amps[m] = 1.0
    return FockVector(m + n, amps)


def _exact_amplitude(c, p: int, q: int) -> float:
    sq = Fraction(c) ** 2 * math.factorial(p) * math.factorial(q)
    return math.copysign(math.sqrt(sq), c)


def _log_amplitude(c, p: int, q: int) -> complex:
    if _is_rational(c):
        c = Fraction(c)
        log_mag = math.log(abs(c.numerator)) - math.log(c.denominator)
        phase = 1.0 if c > 0 else -1.0
    else:
        log_mag = math.log(abs(c))
        phase = c / abs(c)
    return phase * math.exp(log_mag + 0.5 * (math.lgamma(p + 1) + math.lgamma(q + 1)))


def apply_to_vacuum(P: CreationPolynomial, backend: str = "auto") -> FockVector:
    """Act with ``P`` on |0,0>; ``P`` must be homogeneous in total degree.

    ``backend`` is ``"exact"``, ``"log"`` or ``"auto"`` (exact up to total
    degree 40 when every coefficient is rational, log-domain otherwise).
    """
    degrees = P.degrees()
    if len(degrees) > 1:
        raise NotHomogeneous(f"polynomial mixes total degrees {sorted(degrees)}")
    total = degrees.pop() if degrees else 0
    if backend == "auto":
        backend = "exact" if total <= EXACT_MAX_DEGREE and P.is_exact() else "log"
    if backend not in ("exact", "log"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "exact" and not P.is_exact():
        raise TypeError("exact backend needs rational coefficients")
    amps = np.zeros(total + 1, dtype=np.complex128)
    for (p, q), c in P._terms.items():
        amps[p] = _exact_amplitude(c, p, q) if backend == "exact" else _log_amplitude(c, p, q)
    return FockVector(total, amps)


def _plus() -> CreationPolynomial:
    # a^dag + b^dag
    return CreationPolynomial({(1, 0): 1, (0, 1): 1})


def _minus() -> CreationPolynomial:
    # -a^dag + b^dag
    return CreationPolynomial({(1, 0): -1, (0, 1): 1})


def psi1_polynomial(n: int) -> CreationPolynomial:
    return poly_power(CreationPolynomial({(1, 1): 1}), n).scale(Fraction(1, math.factorial(n)))


def psi2_polynomial(n: int) -> CreationPolynomial:
    """(a^dag + b^dag)^n (-a^dag + b^dag)^n / (2^n n!)"""
    return poly_multiply(poly_power(_plus(), n), poly_power(_minus(), n)).scale(
        Fraction(1, 2**n * math.factorial(n))
    )


def psi1(n: int, backend: str = "auto") -> FockVector:
    """|n, n>, built as (a^dag b^dag)^n / n! on the vacuum."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    return apply_to_vacuum(psi1_polynomial(n), backend)


def psi2(n: int, backend: str = "auto") -> FockVector:
    """n photons polarized along each diagonal direction, symmetrized."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    return apply_to_vacuum(psi2_polynomial(n), backend)


def fock_overlap_expansion(n: int, backend: str = "auto") -> float:
    """|<psi1|psi2>| from the explicit polynomial expansion of both states."""
    return abs(overlap(psi1(n, backend).as_state(), psi2(n, backend).as_state()))


def fock_overlap_closed_form(n: int) -> float:
    """1 / (2^n ((n/2)!)^2) for even n, 0 for odd n.

    Flushes to 0.0 below the float range; use the log10 variant there.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if n % 2:
        return 0.0
    if n <= 2000:
        return float(Fraction(1, 2**n * math.factorial(n // 2) ** 2))
    return 10.0 ** log10_fock_overlap_closed_form(n)


def log10_fock_overlap_closed_form(n: int) -> float:
    if n % 2:
        return -math.inf
    return -(n * math.log10(2) + 2 * math.lgamma(n // 2 + 1) / math.log(10))


def phi(k: int, backend: str = "auto") -> FockVector:
    """Two-photon state with k photons along +45deg and 2-k along -45deg."""
    if k not in (0, 1, 2):
        raise ValueError("k must be 0, 1 or 2")
    poly = poly_multiply(poly_power(_plus(), k), poly_power(_minus(), 2 - k))
    vec = apply_to_vacuum(poly, backend)
    return FockVector(2, vec.amplitudes / (2 * math.sqrt(math.factorial(k) * math.factorial(2 - k))))


def two_photon_mixtures() -> tuple[DensityOperator, DensityOperator]:
    """rho1 over number states and rho2 over the rotated phi states, weights 1/4, 1/2, 1/4.

    Basis order is (|0,2>, |1,1>, |2,0>).
    """
    weights = (0.25, 0.5, 0.25)
    rho1 = DensityOperator.mixture(zip(weights, (number_state(k, 2 - k).as_state() for k in range(3))))
    rho2 = DensityOperator.mixture(zip(weights, (phi(k).as_state() for k in range(3))))
    return rho1, rho2
