"""Tests for the tensor core."""
import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

import entlab.entlab_lib as glib
from entlab.errors import ContractError, ArgumentError, SizeError
from entlab.states import make_bell, make_ghz, make_werner, random_density, random_pure, random_unitary
from entlab.tensor_core import (DensityMatrix, PureState, PartitionSpec, partial_trace, partial_transpose,
                                realign, permute_indices, hermitian_spectrum, trace_norm, schmidt,
                                renyi_entropy, von_neumann_entropy, tensor_product, kron_all,
                                permute_subsystems, embed_operator, swap_operator, maxent_vector,
                                shannon_entropy, SX, SZ, I2)

seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)


def test_density_matrix_rejects_bad_input():
    """Non-Hermitian, non-unit-trace and negative matrices are refused."""
    with pytest.raises(ContractError):
        DensityMatrix([[0.5, 0.1], [0.2, 0.5]])
    with pytest.raises(ContractError):
        DensityMatrix(np.eye(2))
    with pytest.raises(ContractError):
        DensityMatrix([[1.5, 0], [0, -0.5]])
    with pytest.raises(ContractError):
        DensityMatrix(np.eye(4) / 4, dims=(2, 3))


def test_density_matrix_is_frozen():
    rho = DensityMatrix(np.eye(2) / 2)
    with pytest.raises(ValueError):
        rho.matrix[0, 0] = 1.


def test_pure_state_norm():
    with pytest.raises(ContractError):
        PureState([1, 1])
    psi = PureState(np.array([1, 1]) / np.sqrt(2))
    np.testing.assert_allclose(psi.density().matrix, np.full((2, 2), 0.5))


def test_size_limit():
    glib.settings.max_side = 8
    with pytest.raises(SizeError):
        DensityMatrix(np.eye(16) / 16)


def test_partition_spec_parse():
    split = PartitionSpec.parse('0|1,2')
    assert split.left == (0, )
    assert split.right == (1, 2)
    assert str(split) == '0|1,2'
    with pytest.raises(ArgumentError):
        PartitionSpec.parse('0|0,1')
    with pytest.raises(ArgumentError):
        PartitionSpec.parse('a|b')


def test_bipartitions_count():
    for n in [2, 3, 4]:
        assert len(PartitionSpec.bipartitions(n)) == 2 ** (n - 1) - 1


def test_partial_trace_bell():
    """Reduced states of phi+ are maximally mixed."""
    red = partial_trace(make_bell(3), [0])
    np.testing.assert_allclose(red.matrix, I2 / 2, atol=1e-12)
    assert red.dims == (2, )


def test_partial_trace_ghz_pair():
    red = partial_trace(make_ghz(3), [0, 2]).matrix
    expected = np.zeros((4, 4))
    expected[0, 0] = expected[3, 3] = 0.5
    np.testing.assert_allclose(red, expected, atol=1e-12)


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_partial_trace_pure_and_mixed_agree(seed):
    psi = random_pure((2, 3, 2), seed)
    for keep in [[0], [1, 2], [0, 2]]:
        np.testing.assert_allclose(partial_trace(psi, keep).matrix,
                                   partial_trace(psi.density(), keep).matrix, atol=1e-12)


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_partial_transpose_involution(seed):
    rho = random_density((2, 3), seed=seed)
    twice = partial_transpose(DensityMatrix(partial_transpose(rho, [1]), (2, 3), validate=False), [1])
    np.testing.assert_array_equal(twice, rho.matrix)


def test_partial_transpose_singlet_spectrum():
    w = hermitian_spectrum(partial_transpose(make_bell(0), [1]))[0]
    np.testing.assert_allclose(w, [0.5, 0.5, 0.5, -0.5], atol=1e-12)


def test_realign_product_state():
    """A product of pure states has realigned trace norm one."""
    psi = tensor_product(random_pure((3, ), 1), random_pure((2, ), 2))
    assert trace_norm(realign(psi)) == pytest.approx(1., abs=1e-10)


def test_realign_maxent():
    assert trace_norm(realign(make_bell(3))) == pytest.approx(2., abs=1e-10)


def test_permute_indices_identity():
    rho = random_density((2, 2), seed=3)
    np.testing.assert_array_equal(permute_indices(rho, [0, 1, 2, 3]), rho.matrix)
    with pytest.raises(ArgumentError):
        permute_indices(rho, [0, 1, 1, 3])


def test_hermitian_spectrum_order():
    w, v = hermitian_spectrum(np.diag([0.1, 0.7, 0.2]))
    np.testing.assert_allclose(w, [0.7, 0.2, 0.1])
    np.testing.assert_allclose(np.abs(v[:, 0]), [0, 1, 0])
    with pytest.raises(ContractError):
        hermitian_spectrum(np.array([[0, 1], [0, 0]]))


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_schmidt_reconstructs(seed):
    psi = random_pure((2, 3), seed)
    sd = schmidt(psi)
    assert np.all(np.diff(sd.coefficients) <= 1e-15)
    assert np.sum(sd.coefficients ** 2) == pytest.approx(1., abs=1e-12)
    recon = np.einsum('i,ia,ib->ab', sd.coefficients, sd.left_basis, sd.right_basis).reshape(-1)
    np.testing.assert_allclose(recon, psi.vector, atol=1e-10)


def test_schmidt_rank_ghz_cut():
    assert schmidt(make_ghz(3), PartitionSpec.parse('0,1|2')).rank == 2


def test_entropies():
    rho = DensityMatrix(np.diag([0.5, 0.25, 0.25]))
    assert von_neumann_entropy(rho) == pytest.approx(1.5)
    assert renyi_entropy(rho, 0) == pytest.approx(np.log2(3))
    assert renyi_entropy(rho, 2) == pytest.approx(-np.log2(0.375))
    assert renyi_entropy(rho, np.inf) == pytest.approx(1.)
    with pytest.raises(ArgumentError):
        renyi_entropy(rho, -1)
    assert shannon_entropy([1., 0.]) == 0.


def test_werner_entropy_of_flat_state():
    assert von_neumann_entropy(DensityMatrix(np.eye(4) / 4, (2, 2))) == pytest.approx(2.)


def test_kron_and_permute_subsystems():
    a, b, c = SX, SZ, I2
    big = kron_all([a, b, c])
    np.testing.assert_allclose(permute_subsystems(big, [2, 2, 2], [2, 0, 1]), kron_all([c, a, b]))
    np.testing.assert_allclose(embed_operator(SZ, [1], [2, 2, 2]), kron_all([I2, SZ, I2]))


def test_swap_operator():
    v = swap_operator(3)
    x, y = np.eye(3)[0], np.eye(3)[2]
    np.testing.assert_allclose(v @ np.kron(x, y), np.kron(y, x))


def test_maxent_vector_matches_bell():
    np.testing.assert_allclose(maxent_vector(2), make_bell(3).vector, atol=1e-15)


def test_werner_dims():
    assert make_werner(3, 0.2).dims == (3, 3)


@given(seeds, st.sampled_from([(2, 2), (2, 3), (3, 3)]))
@settings(max_examples=25, deadline=None)
def test_realign_norm_local_unitary_invariant(seed, dims):
    rng = glib.check_random_state(seed)
    rho = random_density(dims, seed=rng)
    u = np.kron(random_unitary(dims[0], rng), random_unitary(dims[1], rng))
    moved = DensityMatrix(u @ rho.matrix @ u.conj().T, dims)
    assert trace_norm(realign(moved)) == pytest.approx(trace_norm(realign(rho)), abs=1e-9)


@given(seeds, st.sampled_from([(2, ), (2, 2), (3, 2)]))
@settings(max_examples=25, deadline=None)
def test_renyi_entropy_nonincreasing_in_alpha(seed, dims):
    rho = random_density(dims, seed=seed)
    values = [renyi_entropy(rho, a) for a in [0, 0.25, 0.5, 1, 1.5, 2, 3, 10, np.inf]]
    assert all(b <= a + 1e-9 for a, b in zip(values, values[1:]))
