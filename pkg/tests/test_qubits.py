import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mixdisc.linalg import overlap, trace_norm
from mixdisc.qubits import (
    X,
    Z,
    BlochAxis,
    DimensionTooLarge,
    EmptyPreparation,
    InvalidPreparation,
    Kind,
    Preparation,
    Sign,
    balanced_type1,
    balanced_type2,
    distinguishable_overlap,
    outcome_count_distribution,
    single_particle_density,
    spin_eigenstate,
    type1,
    type1_product_state,
    type2,
)

axes = st.tuples(st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1)).filter(
    lambda v: math.sqrt(sum(c * c for c in v)) > 1e-3
).map(lambda v: BlochAxis.from_vector(v, normalize=True))


def test_phase_conventions():
    s = 1 / math.sqrt(2)
    np.testing.assert_allclose(spin_eigenstate(Z, "up").amplitudes, [1, 0], atol=1e-16)
    np.testing.assert_allclose(spin_eigenstate(Z, "down").amplitudes, [0, 1], atol=1e-16)
    np.testing.assert_allclose(spin_eigenstate(X, "up").amplitudes, [s, s], atol=1e-16)
    np.testing.assert_allclose(spin_eigenstate(X, "down").amplitudes, [-s, s], atol=1e-16)


@settings(max_examples=50, deadline=None)
@given(axis=axes, sign=st.sampled_from(list(Sign)))
def test_spin_eigenstate_is_eigenvector(axis, sign):
    v = spin_eigenstate(axis, sign).amplitudes
    lam = 1 if sign is Sign.UP else -1
    np.testing.assert_allclose(axis.spin_operator() @ v, lam * v, atol=1e-12)


def test_bloch_axis_must_be_unit():
    with pytest.raises(ValueError):
        BlochAxis(1.0, 1.0, 0.0)


def test_preparation_validation():
    with pytest.raises(InvalidPreparation):
        type1([(Z, "up", 1.5)])
    with pytest.raises(EmptyPreparation):
        type1([(Z, "up", 0), (Z, "down", 0)])
    with pytest.raises(EmptyPreparation):
        Preparation(Kind.TYPE2, ())
    with pytest.raises(InvalidPreparation):
        type2([(Z, "up", 0.5), (Z, "down", 0.4)])
    with pytest.raises(InvalidPreparation):
        type2([(Z, "up", -0.5), (Z, "down", 1.5)])


def test_preparation_json_round_trip():
    for prep in (balanced_type1(3, X), balanced_type2(Z, size=6), type2([(X, "up", 0.25), (Z, "down", 0.75)])):
        back = Preparation.from_dict(prep.to_dict())
        assert back.kind == prep.kind
        assert back.total == prep.total
        assert back.probabilities() == pytest.approx(prep.probabilities())


def test_preparation_from_dict_errors():
    with pytest.raises(InvalidPreparation, match="missing"):
        Preparation.from_dict({"kind": "type1"})
    with pytest.raises(InvalidPreparation):
        Preparation.from_dict({"kind": "type3", "components": []})
    with pytest.raises(InvalidPreparation):
        Preparation.from_dict({"kind": "type1", "components": [{"axis": [0, 0, 2], "sign": "up", "weight": 1}]})


def test_single_particle_density_examples():
    np.testing.assert_allclose(single_particle_density(balanced_type2(Z)).matrix, np.eye(2) / 2, atol=1e-16)
    np.testing.assert_allclose(single_particle_density(balanced_type2(X)).matrix, np.eye(2) / 2, atol=1e-16)
    pure = single_particle_density(type2([(Z, "up", 1)]))
    np.testing.assert_array_equal(pure.matrix, [[1, 0], [0, 0]])


def test_type1_density_uses_count_fractions():
    rho = single_particle_density(type1([(Z, "up", 3), (Z, "down", 1)]))
    np.testing.assert_allclose(rho.matrix, np.diag([0.75, 0.25]))


@settings(max_examples=50, deadline=None)
@given(
    weights=st.lists(st.integers(0, 9), min_size=1, max_size=4).filter(lambda w: sum(w) > 0),
    axs=st.lists(axes, min_size=4, max_size=4),
    signs=st.lists(st.sampled_from(list(Sign)), min_size=4, max_size=4),
    kind=st.sampled_from(list(Kind)),
)
def test_density_invariants_random_preparations(weights, axs, signs, kind):
    if kind is Kind.TYPE1:
        prep = type1(list(zip(axs, signs, weights)))
    else:
        prep = type2(list(zip(axs, signs, [Fraction(w, sum(weights)) for w in weights])))
    rho = single_particle_density(prep)
    assert abs(np.trace(rho.matrix).real - 1) <= 1e-12
    assert np.linalg.eigvalsh(rho.matrix)[0] >= -1e-12
    np.testing.assert_allclose(rho.matrix, rho.matrix.conj().T)


@settings(max_examples=100, deadline=None)
@given(a=axes, b=axes)
def test_balanced_type2_axis_irrelevant(a, b):
    ra = single_particle_density(balanced_type2(a)).matrix
    rb = single_particle_density(balanced_type2(b)).matrix
    assert trace_norm(ra - rb) <= 1e-14


def test_type1_product_state_examples():
    np.testing.assert_array_equal(type1_product_state(balanced_type1(1, Z)).amplitudes, [0, 1, 0, 0])
    x_state = type1_product_state(balanced_type1(1, X))
    np.testing.assert_allclose(x_state.amplitudes, [-0.5, 0.5, -0.5, 0.5], atol=1e-16)
    assert abs(overlap(type1_product_state(balanced_type1(1, Z)), x_state)) == pytest.approx(0.5, abs=1e-15)


def test_type1_product_state_ordering():
    prep = balanced_type1(1, Z)
    np.testing.assert_array_equal(type1_product_state(prep, ordering=[1, 0]).amplitudes, [0, 0, 1, 0])
    with pytest.raises(ValueError):
        type1_product_state(prep, ordering=[0, 0])


def test_type1_product_state_guards():
    with pytest.raises(DimensionTooLarge):
        type1_product_state(balanced_type1(13, Z))
    with pytest.raises(InvalidPreparation):
        type1_product_state(balanced_type2(Z, size=2))


@pytest.mark.parametrize("n, expected", [(1, 0.5), (3, 0.125), (10, 2.0**-10)])
def test_distinguishable_overlap_examples(n, expected):
    assert distinguishable_overlap(n) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("n", range(1, 6))
def test_distinguishable_overlap_matches_tensor_build(n):
    s = abs(overlap(type1_product_state(balanced_type1(n, Z)), type1_product_state(balanced_type1(n, X))))
    assert abs(s - distinguishable_overlap(n)) <= 1e-12


def test_overlap_independent_of_common_ordering():
    rng = np.random.default_rng(5)
    perm = rng.permutation(6)
    a = type1_product_state(balanced_type1(3, Z), perm)
    b = type1_product_state(balanced_type1(3, X), perm)
    assert abs(overlap(a, b)) == pytest.approx(1 / 8, abs=1e-14)


def brute_force_counts(prep, axis):
    """Enumerate every particle outcome pattern of a type-1 run."""
    from mixdisc.qubits import up_probability

    qs = [up_probability(c.state, axis) for c in prep.components for _ in range(c.weight)]
    pmf = np.zeros(len(qs) + 1)
    for outcome in itertools.product((0, 1), repeat=len(qs)):
        pmf[sum(outcome)] += math.prod(q if o else 1 - q for q, o in zip(qs, outcome))
    return pmf


def test_outcome_count_examples():
    np.testing.assert_array_equal(outcome_count_distribution(balanced_type1(2, Z), Z), [0, 0, 1, 0, 0])
    np.testing.assert_allclose(outcome_count_distribution(balanced_type1(1, X), Z), [0.25, 0.5, 0.25], atol=1e-15)
    np.testing.assert_allclose(
        outcome_count_distribution(balanced_type2(Z, size=4), Z), np.array([1, 4, 6, 4, 1]) / 16, atol=1e-15
    )


@pytest.mark.parametrize("axis", [Z, X, BlochAxis.from_vector([1, 1, 1], normalize=True)])
def test_type1_counts_match_enumeration(axis):
    prep = type1([(Z, "up", 2), (X, "down", 3), (BlochAxis(0, 1, 0), "up", 1)])
    np.testing.assert_allclose(outcome_count_distribution(prep, axis), brute_force_counts(prep, axis), atol=1e-14)


def test_type2_needs_size():
    with pytest.raises(InvalidPreparation):
        outcome_count_distribution(balanced_type2(Z), Z)
    assert outcome_count_distribution(balanced_type2(Z), Z, size=3).shape == (4,)


@settings(max_examples=50, deadline=None)
@given(p=st.floats(0, 1), a=axes, m=st.integers(1, 60))
def test_count_distribution_normalized(p, a, m):
    prep = type2([(Z, "up", p), (X, "down", 1 - p)], size=m)
    pmf = outcome_count_distribution(prep, a)
    assert abs(pmf.sum() - 1) <= 1e-12
    assert np.all(pmf >= 0)
