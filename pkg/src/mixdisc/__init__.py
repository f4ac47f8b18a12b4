"""Discriminating exact-count ("type-1") from probabilistic ("type-2") ensemble
preparations: Helstrom bounds, closed forms, bosonic two-mode states and a
seeded Monte Carlo of the individual-particle counting test."""

from .discrimination import (
    DiscriminationResult,
    counting_test_asymptote,
    counting_test_error,
    distinguishable_particles_error,
    helstrom_error,
    photon_error,
    preparation_discrimination,
    pure_state_error,
)
from .fock import fock_overlap_closed_form, phi, psi1, psi2, two_photon_mixtures
from .linalg import DensityOperator, StateVector, hermitian_eigenvalues, overlap, tensor, trace_norm
from .qubits import X, Z, BlochAxis, Preparation, balanced_type1, balanced_type2, single_particle_density

__version__ = "0.1.0"
