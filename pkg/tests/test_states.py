"""Tests for the state zoo."""
import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from entlab.errors import ArgumentError
from entlab.states import (make_bell, make_maxent, make_ghz, make_w, make_aharonov, make_avn_hyper,
                           make_werner, make_werner_qubit, make_isotropic, make_bell_diagonal,
                           make_smolin, make_chessboard, make_upb_shift_state, make_dur_cirac,
                           dur_cirac_weights, dur_cirac_partition_index, dur_cirac_separable,
                           random_unitary, random_pure, random_density, random_separable, purify,
                           bell_vectors, StateRecipe)
from entlab.tensor_core import (PartitionSpec, DensityMatrix, PAULI, partial_trace, swap_operator,
                                maxent_projector, hermitian_spectrum, kron_all)

seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)


def test_bell_basis_orthonormal():
    b = bell_vectors()
    np.testing.assert_allclose(b.conj() @ b.T, np.eye(4), atol=1e-12)
    with pytest.raises(ArgumentError):
        make_bell(4)


def test_ghz_and_w():
    ghz = make_ghz(3, 3)
    assert ghz.dims == (3, 3, 3)
    np.testing.assert_allclose(np.abs(ghz.vector[[0, 13, 26]]) ** 2, [1. / 3] * 3)
    w = make_w(3)
    np.testing.assert_allclose(np.abs(w.vector[[1, 2, 4]]) ** 2, [1. / 3] * 3)
    assert make_maxent(4).dims == (4, 4)


def test_aharonov_antisymmetric():
    v = make_aharonov().vector
    assert np.linalg.norm(v) == pytest.approx(1.)
    t = v.reshape(3, 3, 3)
    np.testing.assert_allclose(t.transpose(1, 0, 2), -t)
    np.testing.assert_allclose(t.transpose(0, 2, 1), -t)


def test_avn_hyper_is_product_of_singlets():
    psi = make_avn_hyper()
    pol = partial_trace(psi, [0, 2]).matrix
    singlet = make_bell(0).density().matrix
    np.testing.assert_allclose(pol, singlet, atol=1e-12)


@pytest.mark.parametrize('d', [2, 3, 4])
@pytest.mark.parametrize('p', [0., 0.3, 0.5, 1.])
def test_werner_swap_expectation(d, p):
    rho = make_werner(d, p)
    assert np.trace(rho.matrix).real == pytest.approx(1.)
    assert rho.expect(swap_operator(d)) == pytest.approx(1. - 2. * p)
    assert hermitian_spectrum(rho.matrix)[0][-1] >= -1e-12


def test_werner_qubit_endpoint():
    np.testing.assert_allclose(make_werner_qubit(1.).matrix, make_werner(2, 1.).matrix, atol=1e-12)
    with pytest.raises(ArgumentError):
        make_werner_qubit(1.5)


@pytest.mark.parametrize('d', [2, 3, 5])
def test_isotropic_singlet_fraction(d):
    for F in [0., 1. / d, 0.8]:
        rho = make_isotropic(d, F)
        assert rho.expect(maxent_projector(d)) == pytest.approx(F)
        assert hermitian_spectrum(rho.matrix)[0][-1] >= -1e-12


def test_bell_diagonal():
    rho = make_bell_diagonal([0.1, 0.2, 0.3, 0.4])
    np.testing.assert_allclose(np.real(np.einsum('ka,ab,kb->k', bell_vectors().conj(), rho.matrix,
                                                 bell_vectors())), [0.1, 0.2, 0.3, 0.4])
    with pytest.raises(ArgumentError):
        make_bell_diagonal([0.5, 0.6, 0., 0.])


def test_smolin_pauli_form():
    expected = np.eye(16, dtype=complex)
    for k in [1, 2, 3]:
        expected += kron_all([PAULI[k]] * 4)
    np.testing.assert_allclose(make_smolin().matrix, expected / 16., atol=1e-12)


@pytest.mark.parametrize('a', [0.1, 0.5, 0.9])
def test_chessboard_is_a_state(a):
    rho = make_chessboard(a)
    assert np.trace(rho.matrix).real == pytest.approx(1.)
    assert hermitian_spectrum(rho.matrix)[0][-1] >= -1e-12
    with pytest.raises(ArgumentError):
        make_chessboard(1.)


def test_upb_shift_state():
    rho = make_upb_shift_state()
    w = hermitian_spectrum(rho.matrix)[0]
    np.testing.assert_allclose(w, [0.25] * 4 + [0.] * 4, atol=1e-12)
    s = np.sqrt(0.5)
    v = kron_all([np.array([s, s]), np.array([0, 1]), np.array([s, -s])])
    assert abs(v @ rho.matrix @ v) < 1e-12


def test_dur_cirac_roundtrip():
    lams = [0.05, 0.1, 0.15]
    rho = make_dur_cirac(3, 0.3, 0.1, lams)
    lam0p, lam0m, rec = dur_cirac_weights(rho)
    assert lam0p == pytest.approx(0.3)
    assert lam0m == pytest.approx(0.1)
    np.testing.assert_allclose(rec, lams, atol=1e-12)
    assert dur_cirac_weights(make_w(3)) is None
    with pytest.raises(ArgumentError):
        make_dur_cirac(3, 0.3, 0.1, [0.2, 0.1, 0.1])


def test_dur_cirac_partition_index():
    # qubit 0 is the most significant bit; bit 0 means "with the last qubit"
    assert dur_cirac_partition_index(3, PartitionSpec.parse('0|1,2')) == 2
    assert dur_cirac_partition_index(3, PartitionSpec.parse('0,2|1')) == 1
    assert dur_cirac_partition_index(3, PartitionSpec.parse('0,1|2')) == 3


def test_dur_cirac_rule():
    split = PartitionSpec.parse('0|1,2')
    assert dur_cirac_separable(3, 0.3, 0.1, [0.05, 0.1, 0.15], split)
    assert not dur_cirac_separable(3, 0.4, 0., [0.05, 0.1, 0.15], split)


@given(seeds)
@settings(max_examples=20, deadline=None)
def test_random_states_are_valid(seed):
    u = random_unitary(3, seed)
    np.testing.assert_allclose(u.conj().T @ u, np.eye(3), atol=1e-12)
    psi = random_pure((2, 3), seed)
    assert np.linalg.norm(psi.vector) == pytest.approx(1.)
    rho = random_density((2, 2), rank=2, seed=seed)
    w = hermitian_spectrum(rho.matrix)[0]
    assert np.sum(w > 1e-10) == 2
    sep = random_separable((2, 3), seed=seed)
    assert isinstance(sep, DensityMatrix)


def test_random_states_reproducible():
    np.testing.assert_array_equal(random_density((2, 2), seed=11).matrix, random_density((2, 2), seed=11).matrix)
    assert not np.allclose(random_pure((4, ), 1).vector, random_pure((4, ), 2).vector)


def test_purify():
    rho = random_density((2, 2), seed=5)
    psi = purify(rho)
    assert psi.dims == (2, 2, 4)
    np.testing.assert_allclose(partial_trace(psi, [0, 1]).matrix, rho.matrix, atol=1e-12)


def test_recipe():
    rcp = StateRecipe('werner', d=2, p=0.9)
    assert str(rcp) == 'werner d=2 p=0.9'
    np.testing.assert_allclose(rcp.build().matrix, make_werner(2, 0.9).matrix)
    assert 'smolin' in StateRecipe.names()
    assert StateRecipe.parameters('isotropic') == ['d', 'F']
    with pytest.raises(ArgumentError):
        StateRecipe('nope')
    with pytest.raises(ArgumentError):
        StateRecipe('werner', d=2, q=0.1)
    with pytest.raises(ArgumentError):
        StateRecipe('werner', d=2).build()
