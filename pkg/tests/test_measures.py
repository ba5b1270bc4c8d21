"""Tests for the entanglement measures."""
from functools import reduce
from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

import entlab.entlab_lib as glib
from entlab.errors import ContractError, ArgumentError
from entlab.measures import (SloccClass, entropy_of_entanglement, concurrence_pure, vidal_monotones,
                             tau_measures, concurrence_2q, eof_2q, negativity, log_negativity,
                             singlet_fraction, teleport_fidelity, concurrence_lower_bounds,
                             coherent_information, three_tangle, ckw_terms, sloc_class_3q,
                             werner_relent_reference, relent_werner, bell_diagonal_distillable_reference,
                             concurrence_mixed_reference, negativity_monogamy_terms, measure)
from entlab.states import (make_bell, make_maxent, make_ghz, make_w, make_aharonov, make_werner,
                           make_werner_qubit, make_isotropic, make_bell_diagonal, random_pure,
                           random_density, random_product_pure, random_unitary)
from entlab.tensor_core import (DensityMatrix, PureState, PartitionSpec, I2, SX, SZ, partial_trace, tensor_product,
                                binary_entropy, permute_subsystems)

seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)


def test_entropy_of_entanglement():
    assert entropy_of_entanglement(make_bell(0)) == pytest.approx(1.)
    assert entropy_of_entanglement(make_maxent(4)) == pytest.approx(2.)
    assert entropy_of_entanglement(random_product_pure((2, 3), 1)) == pytest.approx(0., abs=1e-10)


def test_concurrence_pure():
    assert concurrence_pure(make_bell(2)) == pytest.approx(1.)
    assert concurrence_pure(make_maxent(3)) == pytest.approx(np.sqrt(4. / 3.))


def test_vidal_monotones_and_tau():
    np.testing.assert_allclose(vidal_monotones(make_bell(3)), [1., 0.5])
    assert tau_measures(make_maxent(3), 1) == pytest.approx(1.)
    assert tau_measures(make_maxent(3), 2) == pytest.approx(1. / 3.)
    assert tau_measures(make_bell(3), 3) == 0.
    with pytest.raises(ArgumentError):
        tau_measures(make_bell(3), 0)


@pytest.mark.parametrize('p', [0., 0.2, 0.5, 0.8, 1.])
def test_concurrence_noisy_singlet(p):
    assert concurrence_2q(make_werner_qubit(p)) == pytest.approx(max(0., (3. * p - 1.) / 2.), abs=1e-6)


def test_concurrence_2q_needs_two_qubits():
    with pytest.raises(ContractError):
        concurrence_2q(make_isotropic(3, 0.5))


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_concurrence_2q_matches_pure_formula(seed):
    psi = random_pure((2, 2), seed)
    assert concurrence_2q(psi) == pytest.approx(concurrence_pure(psi), abs=1e-6)


def test_eof():
    assert eof_2q(make_bell(1)) == pytest.approx(1., abs=1e-6)
    assert eof_2q(DensityMatrix(np.eye(4) / 4, (2, 2))) == pytest.approx(0., abs=1e-6)


def test_negativity():
    assert negativity(make_bell(0)) == pytest.approx(0.5)
    assert log_negativity(make_bell(0)) == pytest.approx(1.)
    assert negativity(make_maxent(3)) == pytest.approx(1.)
    assert negativity(make_werner(2, 0.3)) == pytest.approx(0., abs=1e-12)


def test_singlet_and_teleport_fidelity():
    assert singlet_fraction(make_bell(3)) == pytest.approx(1.)
    assert singlet_fraction(make_bell(0)) == pytest.approx(0., abs=1e-15)
    flat = DensityMatrix(np.eye(4) / 4, (2, 2))
    assert teleport_fidelity(flat) == pytest.approx(0.5)
    assert teleport_fidelity(make_bell(3)) == pytest.approx(1.)
    with pytest.raises(ContractError):
        singlet_fraction(random_density((2, 3), seed=1))


def test_concurrence_lower_bounds():
    phi = concurrence_lower_bounds(make_bell(3))
    assert list(phi.keys()) == ['norm_bound', 'two_copy_witness_bound']
    assert phi['norm_bound'] == pytest.approx(1.)
    assert phi['two_copy_witness_bound'] == pytest.approx(0.5)
    qutrit = concurrence_lower_bounds(make_maxent(3))
    assert qutrit['norm_bound'] == pytest.approx(concurrence_pure(make_maxent(3)))


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_concurrence_lower_bounds_below_pure_value(seed):
    psi = random_pure((3, 3), seed)
    bounds = concurrence_lower_bounds(psi)
    c = concurrence_pure(psi)
    assert bounds['norm_bound'] <= c + 1e-8
    assert bounds['two_copy_witness_bound'] <= c + 1e-8


def test_coherent_information():
    assert coherent_information(make_bell(3)) == pytest.approx(1.)
    assert coherent_information(DensityMatrix(np.eye(4) / 4, (2, 2))) == pytest.approx(-1.)


def test_three_tangle():
    assert three_tangle(make_ghz(3)) == pytest.approx(1.)
    assert three_tangle(make_w(3)) == pytest.approx(0., abs=1e-12)
    with pytest.raises(ContractError):
        three_tangle(make_ghz(4))


@given(seeds)
@settings(max_examples=50, deadline=None)
def test_three_tangle_is_ckw_residual(seed):
    psi = random_pure((2, 2, 2), seed)
    terms = ckw_terms(psi)
    assert terms['slack'] >= -1e-8
    assert three_tangle(psi) == pytest.approx(terms['slack'], abs=1e-6)


def test_ckw_w_state():
    terms = ckw_terms(make_w(3))
    assert terms['c2_ab'] == pytest.approx(4. / 9., abs=1e-6)
    assert terms['c2_ac'] == pytest.approx(4. / 9., abs=1e-6)
    assert terms['c2_a_bc'] == pytest.approx(8. / 9.)
    assert terms['slack'] == pytest.approx(0., abs=1e-6)


def test_ckw_aharonov_violation():
    terms = ckw_terms(make_aharonov())
    assert terms['c2_ab'] == 1.
    assert terms['c2_ac'] == 1.
    assert terms['c2_a_bc'] == pytest.approx(4. / 3.)
    assert terms['slack'] < 0


def test_sloc_classes():
    assert sloc_class_3q(random_product_pure((2, 2, 2), 2)) == SloccClass.PRODUCT
    bisep = tensor_product(make_bell(3), PureState([1, 0]))
    assert sloc_class_3q(bisep) == SloccClass.BISEP_C
    assert sloc_class_3q(make_ghz(3)) == SloccClass.GHZ_CLASS
    assert sloc_class_3q(make_w(3)) == SloccClass.W_CLASS


def test_werner_relent_reference():
    assert werner_relent_reference(2, 0.5) == 0.
    assert werner_relent_reference(2, 1.) == pytest.approx(1.)
    assert werner_relent_reference(4, 0.7) == pytest.approx(1. - binary_entropy(0.7))
    for d in [3, 5]:
        edge = 0.5 + 1. / d
        assert werner_relent_reference(d, edge + 1e-12) == pytest.approx(werner_relent_reference(d, edge), abs=1e-9)
    with pytest.raises(ArgumentError):
        werner_relent_reference(1, 0.5)


def test_relent_werner_guard():
    assert relent_werner(make_werner(3, 0.9)) == pytest.approx(werner_relent_reference(3, 0.9))
    with pytest.raises(ArgumentError):
        relent_werner(random_density((2, 2), seed=3))


def test_bell_diagonal_distillable_reference():
    rho = make_bell_diagonal([0.75, 0., 0., 0.25])
    assert bell_diagonal_distillable_reference(rho) == pytest.approx(1. - binary_entropy(0.25))
    with pytest.raises(ArgumentError):
        bell_diagonal_distillable_reference(make_bell_diagonal([0.5, 0.2, 0.2, 0.1]))


def test_concurrence_mixed_reference():
    assert concurrence_mixed_reference(partial_trace(make_aharonov(), [0, 1])) == 1.
    with pytest.raises(ArgumentError):
        concurrence_mixed_reference(make_isotropic(3, 0.5))


def test_measure_registry():
    val = measure('tau:2', make_maxent(3))
    assert val.value == pytest.approx(1. / 3.)
    assert val.exact
    assert measure('conc', make_ghz(3), PartitionSpec.parse('0|1,2')).value == pytest.approx(1.)
    assert measure('ek', make_bell(3)).to_dict()['value'] == [1., 0.5]
    with pytest.raises(ArgumentError):
        measure('nope', make_bell(3))
    with pytest.raises(ArgumentError):
        measure('tau', make_bell(3))


@pytest.mark.parametrize('order', list(permutations(range(3))))
@given(seed=seeds)
@settings(max_examples=10, deadline=None)
def test_three_tangle_permutation_invariant(order, seed):
    psi = random_pure((2, 2, 2), seed)
    moved = PureState(permute_subsystems(psi.vector, psi.dims, order), psi.dims)
    assert three_tangle(moved) == pytest.approx(three_tangle(psi), abs=1e-10)


def test_negativity_monogamy_w_state():
    terms = negativity_monogamy_terms(make_w(3))
    assert terms['n2_ab'] == pytest.approx((6. - 2. * np.sqrt(5.)) / 9.)
    assert terms['n2_ac'] == pytest.approx(terms['n2_ab'])
    assert terms['n2_a_bc'] == pytest.approx(8. / 9.)
    assert terms['slack'] > 0.5
    ghz = negativity_monogamy_terms(make_ghz(3))
    assert ghz['n2_ab'] == pytest.approx(0., abs=1e-12)
    assert ghz['n2_a_bc'] == pytest.approx(1.)
    with pytest.raises(ContractError):
        negativity_monogamy_terms(make_aharonov())


@given(seeds)
@settings(max_examples=50, deadline=None)
def test_negativity_monogamy(seed):
    psi = random_pure((2, 2, 2), seed)
    terms = negativity_monogamy_terms(psi)
    assert terms['slack'] >= -1e-8
    # N(A:BC) equals C(A:BC) on pure states and N <= C on two qubits
    assert terms['n2_a_bc'] == pytest.approx(ckw_terms(psi)['c2_a_bc'], abs=1e-8)
    assert terms['n2_ab'] <= ckw_terms(psi)['c2_ab'] + 1e-6


@pytest.mark.parametrize('p', [0., 0.2, 0.3, 0.34, 0.4, 0.9])
def test_eof_zero_with_concurrence_noisy_singlet(p):
    rho = make_werner_qubit(p)
    assert (eof_2q(rho) == 0.) == (concurrence_2q(rho) == 0.)


@given(seeds, st.integers(min_value=1, max_value=4))
@settings(max_examples=50, deadline=None)
def test_eof_zero_with_concurrence(seed, rank):
    rho = random_density((2, 2), rank=rank, seed=seed)
    c = concurrence_2q(rho)
    assert (eof_2q(rho) == 0.) == (c == 0.)
    assert eof_2q(rho) <= c + 1e-12


def local(state, ops):
    u = reduce(np.kron, ops)
    if isinstance(state, PureState):
        return PureState(u @ state.vector, state.dims)
    return DensityMatrix(u @ state.matrix @ u.conj().T, state.dims)


LU_CASES = [
    ('ee', lambda rng: random_pure((2, 3), rng), 1e-8),
    ('conc', lambda rng: random_density((2, 2), seed=rng), 1e-6),
    ('conc', lambda rng: random_pure((3, 3), rng), 1e-8),
    ('eof', lambda rng: random_density((2, 2), seed=rng), 1e-6),
    ('neg', lambda rng: random_density((2, 3), seed=rng), 1e-8),
    ('logneg', lambda rng: random_density((3, 3), seed=rng), 1e-8),
    ('ek', lambda rng: random_pure((3, 3), rng), 1e-8),
    ('tau:2', lambda rng: random_pure((3, 3), rng), 1e-8),
    ('tangle3', lambda rng: random_pure((2, 2, 2), rng), 1e-8),
    ('coh', lambda rng: random_density((2, 2), seed=rng), 1e-8),
]


@pytest.mark.parametrize('token, draw, tol', LU_CASES)
@given(seed=seeds)
@settings(max_examples=10, deadline=None)
def test_measures_local_unitary_invariant(token, draw, tol, seed):
    rng = glib.check_random_state(seed)
    state = draw(rng)
    ops = [random_unitary(d, rng) for d in state.dims]
    np.testing.assert_allclose(measure(token, local(state, ops)).value, measure(token, state).value,
                               atol=tol, rtol=0)


def test_family_measures_keep_their_symmetry():
    rng = glib.check_random_state(11)
    u = random_unitary(3, rng)
    rho = make_werner(3, 0.8)
    assert measure('relent-werner', local(rho, [u, u])).value == pytest.approx(
        measure('relent-werner', rho).value, abs=1e-8)
    rho = random_density((3, 3), seed=rng)
    for token in ['fsing', 'ftel']:
        assert measure(token, local(rho, [u, u.conj()])).value == pytest.approx(measure(token, rho).value,
                                                                             abs=1e-10)
    # singlet fraction is not invariant under general local unitaries
    assert measure('fsing', local(make_bell(3), [SZ, I2])).value == pytest.approx(0., abs=1e-12)
    rho = make_bell_diagonal([0.7, 0.3, 0., 0.])
    assert measure('ed-rank2', local(rho, [SX, SZ])).value == pytest.approx(1. - binary_entropy(0.7))
