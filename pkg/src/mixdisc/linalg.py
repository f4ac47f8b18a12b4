"""Dense complex linear algebra used throughout the package.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. State vectors and
density operators carry a :class:`Basis` so that operations between objects
living in different spaces fail loudly instead of silently producing garbage.

Tensor products use the row-major (A-major) index convention
``idx = i_A * dim_B + i_B``, i.e. the same convention as :func:`numpy.kron`.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

HERMITIAN_RTOL = 1e-12
NORM_TOL = 1e-10
JACOBI_RTOL = 1e-13
JACOBI_MAX_SWEEPS = 100


class NotHermitian(ValueError):
    pass


class BasisMismatch(ValueError):
    pass


class InvalidDensityOperator(ValueError):
    """Raised when a matrix violates one of the density-operator invariants."""


@dataclass(frozen=True)
class Basis:
    """Ordered basis labels, stored per tensor factor.

    Labels are expanded lazily, since a 24-qubit product basis would otherwise
    hold 16 million strings.
    """

    factors: tuple[tuple[str, ...], ...]

    @classmethod
    def of(cls, labels: Iterable[str]) -> "Basis":
        return cls((tuple(str(label) for label in labels),))

    @property
    def dim(self) -> int:
        return math.prod(len(f) for f in self.factors)

    @property
    def labels(self) -> list[str]:
        if len(self.factors) == 1:
            return list(self.factors[0])
        return ["⊗".join(parts) for parts in itertools.product(*self.factors)]

    def __mul__(self, other: "Basis") -> "Basis":
        return Basis(self.factors + other.factors)


QUBIT_BASIS = Basis.of(["0", "1"])


def computational_basis(dim: int) -> Basis:
    return Basis.of(str(i) for i in range(dim))


@dataclass(frozen=True)
class StateVector:
    amplitudes: np.ndarray
    basis: Basis

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.ndim != 1:
            raise ValueError("amplitudes must be one-dimensional")
        if amps.shape[0] != self.basis.dim:
            raise BasisMismatch(
                f"{amps.shape[0]} amplitudes for a basis of dimension {self.basis.dim}"
            )
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def basis_labels(self) -> list[str]:
        return self.basis.labels

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(float(np.vdot(self.amplitudes, self.amplitudes).real) - 1.0) <= tol

    def normalized(self) -> "StateVector":
        n = self.norm()
        if n == 0:
            raise ValueError("cannot normalize the zero vector")
        return StateVector(self.amplitudes / n, self.basis)


def basis_state(index: int, dim: int, basis: Basis | None = None) -> StateVector:
    amps = np.zeros(dim, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(amps, basis or computational_basis(dim))


def hermitian(a: np.ndarray, rtol: float = HERMITIAN_RTOL) -> bool:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    return float(np.max(np.abs(a - a.conj().T), initial=0.0)) <= rtol * scale


def as_complex_matrix(a) -> np.ndarray:
    m = np.array(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ValueError(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def _checked_hermitian(a) -> np.ndarray:
    # asymmetry below tolerance is symmetrized away; anything larger is an error
    m = as_complex_matrix(a)
    if not hermitian(m):
        dev = float(np.max(np.abs(m - m.conj().T)))
        raise NotHermitian(f"matrix is not Hermitian (max |A - A^H| = {dev:.3g})")
    return (m + m.conj().T) / 2


def tensor(a, b):
    """Kronecker product of two matrices or two :class:`StateVector` objects."""
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        return StateVector(np.kron(a.amplitudes, b.amplitudes), a.basis * b.basis)
    if isinstance(a, DensityOperator) and isinstance(b, DensityOperator):
        return DensityOperator(np.kron(a.matrix, b.matrix), a.basis * b.basis)
    if isinstance(a, (StateVector, DensityOperator)) or isinstance(b, (StateVector, DensityOperator)):
        raise TypeError("tensor operands must be of the same kind")
    return np.kron(as_complex_matrix(a), as_complex_matrix(b))


def tensor_all(items: Sequence):
    out = items[0]
    for item in items[1:]:
        out = tensor(out, item)
    return out


def _jacobi_unitary(app: float, aqq: float, apq: complex) -> np.ndarray:
    """2x2 unitary U with (U^H [[app, apq], [apq*, aqq]] U) diagonal."""
    r = abs(apq)
    phase = apq / r
    tau = (aqq - app) / (2 * r)
    t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1 + tau * tau))
    c = 1 / math.sqrt(1 + t * t)
    s = t * c
    # phase diag(1, conj(phase)) makes the pivot real, then a real rotation kills it
    return np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]], dtype=np.complex128)


def jacobi_diagonalize(a, rtol: float = JACOBI_RTOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Cyclic Jacobi diagonalization of a complex Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors, sweeps)`` with eigenvalues in
    ascending order and eigenvectors as matching columns.
    """
    m = _checked_hermitian(a)
    n = m.shape[0]
    v = np.eye(n, dtype=np.complex128)
    scale = float(np.linalg.norm(m))
    sweeps = 0
    idx = np.arange(n)
    while sweeps < max_sweeps:
        off = float(np.linalg.norm(m - np.diag(np.diag(m))))
        if off <= rtol * scale:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = m[p, q]
                if abs(apq) <= 1e-300 or abs(apq) <= 1e-18 * scale:
                    m[p, q] = m[q, p] = 0.0
                    continue
                u = _jacobi_unitary(m[p, p].real, m[q, q].real, apq)
                pq = idx[[p, q]]
                m[:, pq] = m[:, pq] @ u
                m[pq, :] = u.conj().T @ m[pq, :]
                m[p, q] = m[q, p] = 0.0
                m[p, p] = m[p, p].real
                m[q, q] = m[q, q].real
                v[:, pq] = v[:, pq] @ u
    evals = np.diag(m).real.copy()
    order = np.argsort(evals, kind="stable")
    return evals[order], v[:, order], sweeps


def hermitian_eigenvalues(a) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix in ascending order."""
    return jacobi_diagonalize(a)[0]


def trace_norm(a) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(hermitian_eigenvalues(a))))


def overlap(psi: StateVector, phi: StateVector) -> complex:
    if psi.basis != phi.basis:
        raise BasisMismatch("states live in different bases")
    return complex(np.vdot(psi.amplitudes, phi.amplitudes))


def outer(psi: StateVector, phi: StateVector | None = None) -> np.ndarray:
    phi = psi if phi is None else phi
    return np.outer(psi.amplitudes, phi.amplitudes.conj())


@dataclass(frozen=True)
class DensityOperator:
    """Hermitian, positive semidefinite, unit-trace matrix with basis labels."""

    matrix: np.ndarray
    basis: Basis = field(default=None)
    trace_tol: float = field(default=1e-10, repr=False, compare=False)
    psd_tol: float = field(default=1e-12, repr=False, compare=False)

    def __post_init__(self):
        m = as_complex_matrix(self.matrix)
        basis = self.basis or computational_basis(m.shape[0])
        if basis.dim != m.shape[0]:
            raise BasisMismatch(f"matrix of dimension {m.shape[0]} for a basis of dimension {basis.dim}")
        if not hermitian(m):
            raise InvalidDensityOperator("density operator must be Hermitian")
        m = (m + m.conj().T) / 2
        tr = float(np.trace(m).real)
        if abs(tr - 1.0) > self.trace_tol:
            raise InvalidDensityOperator(f"density operator must have unit trace (trace = {tr!r})")
        lam = float(np.linalg.eigvalsh(m)[0])
        if lam < -self.psd_tol:
            raise InvalidDensityOperator(
                f"density operator must be positive semidefinite (min eigenvalue = {lam:.3g})"
            )
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "basis", basis)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def basis_labels(self) -> list[str]:
        return self.basis.labels

    def eigenvalues(self) -> np.ndarray:
        return hermitian_eigenvalues(self.matrix)

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)

    @classmethod
    def pure(cls, psi: StateVector) -> "DensityOperator":
        return cls(outer(psi), psi.basis)

    @classmethod
    def mixture(cls, components: Iterable[tuple[float, StateVector]]) -> "DensityOperator":
        components = list(components)
        if not components:
            raise ValueError("mixture needs at least one component")
        basis = components[0][1].basis
        m = np.zeros((basis.dim, basis.dim), dtype=np.complex128)
        for weight, psi in components:
            if psi.basis != basis:
                raise BasisMismatch("mixture components live in different bases")
            m += weight * outer(psi)
        return cls(m, basis)

    @classmethod
    def maximally_mixed(cls, dim: int, basis: Basis | None = None) -> "DensityOperator":
        return cls(np.eye(dim, dtype=np.complex128) / dim, basis)

    def to_dict(self) -> dict:
        return {
            "basis": self.basis_labels,
            "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in self.matrix],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "DensityOperator":
        if not isinstance(doc, dict) or "matrix" not in doc:
            raise InvalidDensityOperator("document must be an object with a 'matrix' field")
        rows = doc["matrix"]
        if not isinstance(rows, list) or not rows or any(not isinstance(r, list) or len(r) != len(rows) for r in rows):
            raise InvalidDensityOperator("matrix must be square and non-empty")
        try:
            m = np.array([[_parse_complex(x) for x in row] for row in rows], dtype=np.complex128)
        except (TypeError, ValueError) as exc:
            raise InvalidDensityOperator(f"matrix entries must be numbers or [re, im] pairs: {exc}") from None
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise InvalidDensityOperator(f"matrix must be square and non-empty, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise InvalidDensityOperator("matrix entries must be finite")
        labels = doc.get("basis")
        basis = Basis.of(labels) if labels is not None else None
        return cls(m, basis)


def _parse_complex(x) -> complex:
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise ValueError(f"complex entry needs exactly two parts, got {x!r}")
        return complex(float(x[0]), float(x[1]))
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ValueError(f"not a number: {x!r}")
    return complex(float(x))


def random_unitary(dim: int, rng: np.random.Generator, rotations: int | None = None) -> np.ndarray:
    """Unitary built as a product of random complex Givens (Jacobi) rotations."""
    u = np.diag(np.exp(1j * rng.uniform(0, 2 * np.pi, dim)))
    for _ in range(rotations if rotations is not None else 3 * dim * dim):
        p, q = rng.choice(dim, size=2, replace=False)
        theta = rng.uniform(0, 2 * np.pi)
        phase = np.exp(1j * rng.uniform(0, 2 * np.pi))
        g = np.eye(dim, dtype=np.complex128)
        g[p, p] = g[q, q] = math.cos(theta)
        g[p, q] = math.sin(theta) * phase
        g[q, p] = -math.sin(theta) * phase.conjugate()
        u = g @ u
    return u


def random_state(dim: int, rng: np.random.Generator, basis: Basis | None = None) -> StateVector:
    """Haar-random pure state via normalized complex Gaussian amplitudes."""
    z = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return StateVector(z / np.linalg.norm(z), basis or computational_basis(dim))


def orthonormal_span(states: Sequence[StateVector], tol: float = 1e-13) -> np.ndarray:
    """Columns of an orthonormal basis of span(states), by modified Gram-Schmidt."""
    cols: list[np.ndarray] = []
    for psi in states:
        v = psi.amplitudes.copy()
        for _ in range(2):
            for c in cols:
                v = v - np.vdot(c, v) * c
        n = np.linalg.norm(v)
        if n > tol:
            cols.append(v / n)
    return np.array(cols).T
