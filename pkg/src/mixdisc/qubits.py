"""Spin-1/2 ensembles prepared by exact counts (type 1) or by probabilities (type 2).

A type-1 preparation fixes how many particles are put in each pure state; a
type-2 preparation draws every particle independently from the listed
probabilities. Both give the same single-particle density operator, but not
the same multi-particle statistics.

Spin eigenstates are expressed in the sigma_z basis with the phase convention

    up_z = (1, 0)    down_z = (0, 1)
    up_x = (1, 1)/sqrt2    down_x = (-1, 1)/sqrt2

which generalizes to an arbitrary Bloch axis (theta, phi) as
``up = (cos t/2, e^{i phi} sin t/2)`` and ``down = (-e^{-i phi} sin t/2, cos t/2)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

import numpy as np

from .linalg import QUBIT_BASIS, DensityOperator, StateVector, overlap, tensor_all

MAX_PRODUCT_QUBITS = 24

PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


class InvalidPreparation(ValueError):
    pass


class EmptyPreparation(InvalidPreparation):
    pass


class DimensionTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class BlochAxis:
    x: float
    y: float
    z: float

    def __post_init__(self):
        n = math.sqrt(self.x**2 + self.y**2 + self.z**2)
        if abs(n - 1.0) > 1e-12:
            raise ValueError(f"Bloch axis must be a unit vector (norm = {n!r})")

    @classmethod
    def from_vector(cls, v: Sequence[float], normalize: bool = False) -> "BlochAxis":
        x, y, z = (float(c) for c in v)
        if normalize:
            n = math.sqrt(x * x + y * y + z * z)
            if n == 0:
                raise ValueError("zero vector has no direction")
            x, y, z = x / n, y / n, z / n
        return cls(x, y, z)

    @property
    def vector(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)

    def spin_operator(self) -> np.ndarray:
        """n . sigma"""
        return self.x * PAULI_X + self.y * PAULI_Y + self.z * PAULI_Z


Z = BlochAxis(0.0, 0.0, 1.0)
X = BlochAxis(1.0, 0.0, 0.0)


class Sign(str, Enum):
    UP = "up"
    DOWN = "down"


def spin_eigenstate(axis: BlochAxis, sign: Sign | str) -> StateVector:
    """Eigenvector of ``axis . sigma`` with eigenvalue +1 (up) or -1 (down)."""
    sign = Sign(sign)
    theta = math.acos(max(-1.0, min(1.0, axis.z)))
    phi = math.atan2(axis.y, axis.x) if (axis.x or axis.y) else 0.0
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    if sign is Sign.UP:
        amps = [c, np.exp(1j * phi) * s]
    else:
        amps = [-np.exp(-1j * phi) * s, c]
    return StateVector(np.array(amps, dtype=np.complex128), QUBIT_BASIS)


def up_probability(state: StateVector, axis: BlochAxis) -> float:
    """Probability of the +1 outcome when ``state`` is measured along ``axis``."""
    return min(1.0, abs(overlap(spin_eigenstate(axis, Sign.UP), state)) ** 2)


class Kind(str, Enum):
    TYPE1 = "type1"
    TYPE2 = "type2"


@dataclass(frozen=True)
class Component:
    axis: BlochAxis
    sign: Sign
    weight: float | int | Fraction

    @property
    def state(self) -> StateVector:
        return spin_eigenstate(self.axis, self.sign)


@dataclass(frozen=True)
class Preparation:
    """Ensemble recipe over pure single-particle spin states.

    For ``Kind.TYPE1`` the weights are exact integer counts. For ``Kind.TYPE2``
    they are probabilities and ``size`` (optional) is the number of particles
    drawn in one run.
    """

    kind: Kind
    components: tuple[Component, ...]
    size: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise EmptyPreparation("preparation has no components")
        weights = [c.weight for c in self.components]
        if any(w < 0 for w in weights):
            raise InvalidPreparation("weights must be nonnegative")
        if self.kind is Kind.TYPE1:
            if any(int(w) != w for w in weights):
                raise InvalidPreparation("type-1 weights must be integer counts")
            object.__setattr__(
                self, "components", tuple(Component(c.axis, c.sign, int(c.weight)) for c in self.components)
            )
            if sum(weights) < 1:
                raise EmptyPreparation("type-1 preparation must contain at least one particle")
            if self.size is not None and self.size != sum(weights):
                raise InvalidPreparation("type-1 size must equal the total count")
        else:
            if abs(float(sum(weights)) - 1.0) > 1e-12:
                raise InvalidPreparation(f"type-2 probabilities must sum to 1 (sum = {float(sum(weights))!r})")
            if self.size is not None and self.size < 1:
                raise InvalidPreparation("type-2 size must be a positive integer")

    @property
    def total(self) -> int | None:
        """Number of particles in one run, if the recipe fixes it."""
        if self.kind is Kind.TYPE1:
            return int(sum(c.weight for c in self.components))
        return self.size

    def probabilities(self) -> list[float]:
        w = [float(c.weight) for c in self.components]
        s = sum(w)
        return [x / s for x in w]

    def to_dict(self) -> dict:
        doc = {
            "kind": self.kind.value,
            "components": [
                {
                    "axis": list(c.axis.vector),
                    "sign": c.sign.value,
                    "weight": c.weight if isinstance(c.weight, int) else float(c.weight),
                }
                for c in self.components
            ],
        }
        if self.kind is Kind.TYPE2 and self.size is not None:
            doc["size"] = self.size
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "Preparation":
        if not isinstance(doc, dict):
            raise InvalidPreparation("preparation must be a JSON object")
        try:
            kind = Kind(doc["kind"])
            comps = []
            for c in doc["components"]:
                comps.append(Component(BlochAxis.from_vector(c["axis"]), Sign(c["sign"]), _parse_weight(c["weight"])))
        except KeyError as exc:
            raise InvalidPreparation(f"missing field {exc}") from None
        except (TypeError, ValueError) as exc:
            raise InvalidPreparation(str(exc)) from None
        size = doc.get("size")
        return cls(kind, tuple(comps), None if size is None else int(size))


def _parse_weight(w):
    if isinstance(w, bool) or not isinstance(w, (int, float, str)):
        raise InvalidPreparation(f"weight must be a number, got {w!r}")
    if isinstance(w, str):
        return Fraction(w)
    return w


def type1(counts: Sequence[tuple[BlochAxis, Sign | str, int]]) -> Preparation:
    return Preparation(Kind.TYPE1, tuple(Component(a, Sign(s), n) for a, s, n in counts))


def type2(probabilities: Sequence[tuple[BlochAxis, Sign | str, float]], size: int | None = None) -> Preparation:
    return Preparation(Kind.TYPE2, tuple(Component(a, Sign(s), p) for a, s, p in probabilities), size)


def balanced_type1(n: int, axis: BlochAxis = Z) -> Preparation:
    """Exactly ``n`` up and ``n`` down along ``axis``."""
    return type1([(axis, Sign.UP, n), (axis, Sign.DOWN, n)])


def balanced_type2(axis: BlochAxis = Z, size: int | None = None) -> Preparation:
    """Up or down along ``axis`` with probability 1/2 each."""
    return type2([(axis, Sign.UP, Fraction(1, 2)), (axis, Sign.DOWN, Fraction(1, 2))], size)


def single_particle_density(prep: Preparation) -> DensityOperator:
    """Sum_i w_i |u_i><u_i| with the weights normalized to probabilities."""
    return DensityOperator.mixture(zip(prep.probabilities(), (c.state for c in prep.components)))


def type1_product_state(prep: Preparation, ordering: Sequence[int] | None = None) -> StateVector:
    """Product state of every particle of a type-1 run, in a 2^(total) space.

    The default slot order lists all copies of component 0, then component 1,
    and so on. ``ordering[i]`` names which default slot lands at position ``i``.
    """
    if prep.kind is not Kind.TYPE1:
        raise InvalidPreparation("product states are defined for type-1 preparations only")
    total = prep.total
    if total > MAX_PRODUCT_QUBITS:
        raise DimensionTooLarge(f"{total} particles exceed the explicit-construction cap of {MAX_PRODUCT_QUBITS}")
    slots = [c.state for c in prep.components for _ in range(c.weight)]
    if ordering is not None:
        ordering = list(ordering)
        if sorted(ordering) != list(range(total)):
            raise ValueError(f"ordering must be a permutation of range({total})")
        slots = [slots[i] for i in ordering]
    return tensor_all(slots)


def distinguishable_overlap(n: int) -> float:
    """|<psi_z|psi_x>| for n up + n down along z versus along x: 2^-n.

    Evaluated as the product of the 2n single-particle overlap magnitudes.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    pairs = [(Sign.UP, Sign.UP), (Sign.DOWN, Sign.DOWN)]
    mags = [abs(overlap(spin_eigenstate(Z, a), spin_eigenstate(X, b))) for a, b in pairs]
    return math.prod(mags * n)


def _binomial_pmf(n: int, q: float) -> np.ndarray:
    k = np.arange(n + 1)
    if q <= 0.0:
        return (k == 0).astype(float)
    if q >= 1.0:
        return (k == n).astype(float)
    logc = np.array([math.lgamma(n + 1) - math.lgamma(i + 1) - math.lgamma(n - i + 1) for i in k])
    return np.exp(logc + k * math.log(q) + (n - k) * math.log1p(-q))


def outcome_count_distribution(prep: Preparation, axis: BlochAxis, size: int | None = None) -> np.ndarray:
    """Probability of observing k "up" results (k = 0..total) along ``axis``.

    Type 1 convolves one binomial per component; type 2 is a single binomial
    with the mixed up-probability. ``size`` overrides or supplies the number
    of particles for type-2 recipes.
    """
    qs = [up_probability(c.state, axis) for c in prep.components]
    if prep.kind is Kind.TYPE1:
        if size is not None and size != prep.total:
            raise InvalidPreparation(f"type-1 recipe has {prep.total} particles, not {size}")
        pmf = np.array([1.0])
        for c, q in zip(prep.components, qs):
            pmf = np.convolve(pmf, _binomial_pmf(c.weight, q))
        return pmf
    m = size if size is not None else prep.size
    if m is None:
        raise InvalidPreparation("type-2 recipe needs a size (number of particles)")
    qbar = sum(p * q for p, q in zip(prep.probabilities(), qs))
    return _binomial_pmf(m, min(1.0, max(0.0, qbar)))
