"""Closed-form entanglement measures, bounds and family-specific reference values."""
import logging
from collections import OrderedDict

import numpy as np

import entlab.entlab_lib as glib
from entlab.errors import ContractError, ArgumentError, NumericalError
from entlab.tensor_core import (SY, as_density, as_pure, group, partial_trace, hermitian_spectrum,
                                trace_norm, realign, psd_sqrt, schmidt, shannon_entropy,
                                binary_entropy, renyi_from_spectrum,
                                swap_operator, maxent_projector, permute_subsystems)
from entlab.states import make_werner, bell_vectors

logger = logging.getLogger('entlab.measures')

_YY = np.kron(SY, SY)


def _fail(msg, exc=ContractError):
    logger.error(msg)
    raise exc(msg)


class SloccClass(object):
    """
    Enumeration with the three-qubit SLOCC classes.
    """
    PRODUCT = 'PRODUCT'
    BISEP_A = 'BISEP_A'
    BISEP_B = 'BISEP_B'
    BISEP_C = 'BISEP_C'
    W_CLASS = 'W_CLASS'
    GHZ_CLASS = 'GHZ_CLASS'


class MeasureValue(object):
    """Value of one measure; ``exact`` is False for lower bounds."""

    def __init__(self, measure, value, exact=True):
        self.measure = measure
        self.value = value
        self.exact = exact

    def to_dict(self):
        out = OrderedDict()
        out['measure'] = self.measure
        if np.ndim(self.value):
            out['value'] = [float(v) for v in self.value]
        else:
            out['value'] = float(self.value)
        out['exact'] = self.exact
        return out

    def __repr__(self):
        return 'MeasureValue({}={}, exact={})'.format(self.measure, self.value, self.exact)


def _two_qubit(rho):
    rho = as_density(rho)
    if rho.dims != (2, 2):
        _fail('a two-qubit state is required, got dims {}'.format(rho.dims))
    return rho


def _local_spectra(psi, split):
    """Squared Schmidt coefficients padded to the smaller local dimension."""
    psi = as_pure(psi)
    _, dA, dB, split = group(psi, split)
    s = schmidt(psi, split).coefficients
    lam = np.zeros(min(dA, dB))
    lam[:s.size] = s ** 2
    return lam


"""
pure states
"""


def entropy_of_entanglement(psi, split=None):
    """Von Neumann entropy of either reduction of a pure state, in bits."""
    return shannon_entropy(_local_spectra(psi, split))


def concurrence_pure(psi, split=None):
    """C = sqrt(2 (1 - Tr rho_B^2)) for a pure state."""
    lam = _local_spectra(psi, split)
    return float(np.sqrt(max(0., 2. * (1. - np.sum(lam ** 2)))))


def vidal_monotones(psi, split=None):
    """E_k = sum_{i >= k} lambda_i for k = 1..d; E_1 = 1."""
    lam = _local_spectra(psi, split)
    return [float(v) for v in np.cumsum(lam[::-1])[::-1]]


def tau_measures(psi, p, split=None):
    """Elementary symmetric polynomial of degree p in the Schmidt weights.

    tau_1 is 1 and tau_p vanishes when the Schmidt rank is below p.
    """
    if isinstance(p, bool) or int(p) != p or p < 1:
        _fail('tau_p needs an integer p >= 1, got {!r}'.format(p), ArgumentError)
    lam = _local_spectra(psi, split)
    p = int(p)
    if p > lam.size:
        return 0.
    coeffs = np.poly(-lam)
    return float(max(0., np.real(coeffs[p])))


"""
two-qubit
"""


def concurrence_2q(rho):
    """Wootters concurrence max(0, l1 - l2 - l3 - l4).

    l_i are the singular values of sqrt(rho) sqrt(rho~) with
    rho~ = (Y x Y) rho* (Y x Y).

    Raises:
        ContractError -- Raised if the input is not a two-qubit state
    """
    rho = _two_qubit(rho)
    m = rho.matrix
    tilde = _YY @ m.conj() @ _YY
    sv = np.linalg.svd(psd_sqrt(m) @ psd_sqrt(tilde), compute_uv=False)
    return float(max(0., sv[0] - np.sum(sv[1:])))


def eof_2q(rho):
    """Entanglement of formation H((1 + sqrt(1 - C^2))/2)."""
    c = min(1., concurrence_2q(rho))
    return binary_entropy((1. + np.sqrt(1. - c * c)) / 2.)


"""
bipartite mixed
"""


def _pt_norm(rho, split):
    m, dA, dB, _ = group(as_density(rho), split)
    pt = m.reshape(dA, dB, dA, dB).transpose(0, 3, 2, 1).reshape(dA * dB, dA * dB)
    return trace_norm(pt)


def negativity(rho, split=None):
    """N = (||rho^Gamma||_1 - 1)/2."""
    return max(0., (_pt_norm(rho, split) - 1.) / 2.)


def log_negativity(rho, split=None):
    return max(0., float(np.log2(_pt_norm(rho, split))))


def _bipartite_square(rho, split):
    rho = as_density(rho)
    m, dA, dB, split = group(rho, split)
    if dA != dB:
        _fail('a d x d bipartition is required, got {:d}x{:d}'.format(dA, dB))
    return m, dA


def singlet_fraction(rho, split=None):
    """F = Tr(rho P+_d)."""
    m, d = _bipartite_square(rho, split)
    return float(np.real(np.trace(maxent_projector(d) @ m)))


def teleport_fidelity(rho, split=None):
    """Optimal standard-teleportation fidelity (d F + 1)/(d + 1)."""
    m, d = _bipartite_square(rho, split)
    F = float(np.real(np.trace(maxent_projector(d) @ m)))
    return (d * F + 1.) / (d + 1.)


def _two_copy_witness(dA, dB):
    pa_sym = (np.eye(dA * dA) + swap_operator(dA)) / 2.
    pa_asym = (np.eye(dA * dA) - swap_operator(dA)) / 2.
    pb_asym = (np.eye(dB * dB) - swap_operator(dB)) / 2.
    return 2. * np.kron(pa_sym, pb_asym) - 2. * np.kron(pa_asym, pb_asym)


def concurrence_lower_bounds(rho, split=None):
    """Lower bounds on the bipartite concurrence.

    Returns:
        OrderedDict -- ``norm_bound`` from max(||rho^Gamma||_1, ||R(rho)||_1) and
        ``two_copy_witness_bound`` from the collective witness on two copies, both clipped at 0
    """
    rho = as_density(rho)
    m, dA, dB, split = group(rho, split)
    k = min(dA, dB)
    norms = max(_pt_norm(rho, split), trace_norm(realign(rho, split)))
    norm_bound = np.sqrt(2. / (k * (k - 1.))) * (norms - 1.) if k > 1 else 0.
    # two copies ordered A B A' B' -> A A' B B'
    pair = permute_subsystems(np.kron(m, m), [dA, dB, dA, dB], [0, 2, 1, 3])
    two_copy = -float(np.real(np.trace(_two_copy_witness(dA, dB) @ pair)))
    out = OrderedDict()
    out['norm_bound'] = float(max(0., norm_bound))
    out['two_copy_witness_bound'] = max(0., two_copy)
    return out


def coherent_information(rho, split=None):
    """S(rho_B) - S(rho_AB); negative values are allowed."""
    rho = as_density(rho)
    m, dA, dB, _ = group(rho, split)
    rho_b = np.einsum('ijil->jl', m.reshape(dA, dB, dA, dB))
    s_ab = renyi_from_spectrum(hermitian_spectrum(m)[0], 1)
    s_b = renyi_from_spectrum(hermitian_spectrum(rho_b)[0], 1)
    return s_b - s_ab


"""
three qubits
"""


def _check_three_qubit(psi):
    psi = as_pure(psi)
    if psi.dims != (2, 2, 2):
        _fail('a three-qubit pure state is required, got dims {}'.format(psi.dims))
    return psi


def three_tangle(psi):
    """Residual tangle C^2(A:BC) - C^2(AB) - C^2(AC), via Cayley's hyperdeterminant.

    4|Det| cannot go negative, so the tolerance guard sits at the upper end.

    Raises:
        NumericalError -- Raised if the value exceeds 1 by more than 1e-6
    """
    psi = _check_three_qubit(psi)
    a = psi.vector.reshape(2, 2, 2)
    d1 = (a[0, 0, 0] ** 2 * a[1, 1, 1] ** 2 + a[0, 0, 1] ** 2 * a[1, 1, 0] ** 2
          + a[0, 1, 0] ** 2 * a[1, 0, 1] ** 2 + a[1, 0, 0] ** 2 * a[0, 1, 1] ** 2)
    d2 = (a[0, 0, 0] * a[1, 1, 1] * (a[0, 1, 1] * a[1, 0, 0] + a[1, 0, 1] * a[0, 1, 0] + a[1, 1, 0] * a[0, 0, 1])
          + a[0, 1, 1] * a[1, 0, 0] * (a[1, 0, 1] * a[0, 1, 0] + a[1, 1, 0] * a[0, 0, 1])
          + a[1, 0, 1] * a[0, 1, 0] * a[1, 1, 0] * a[0, 0, 1])
    d3 = (a[0, 0, 0] * a[1, 1, 0] * a[1, 0, 1] * a[0, 1, 1]
          + a[1, 1, 1] * a[0, 0, 1] * a[0, 1, 0] * a[1, 0, 0])
    tau = 4. * abs(d1 - 2. * d2 + 4. * d3)
    if tau > 1. + 1e-6:
        _fail('three-tangle {:.12g} exceeds 1'.format(tau), NumericalError)
    return float(min(1., tau))


def ckw_terms(psi):
    """Terms of the CKW monogamy relation C^2(AB) + C^2(AC) <= C^2(A:BC).

    Qubit states use the Wootters concurrence for the two-party reductions; three
    qutrits are supported when both reductions live on the antisymmetric subspace.

    Returns:
        OrderedDict -- c2_ab, c2_ac, c2_a_bc and slack = c2_a_bc - c2_ab - c2_ac
    """
    psi = as_pure(psi)
    if psi.n != 3:
        _fail('CKW terms need three parties, got {:d}'.format(psi.n))
    rho_ab = partial_trace(psi, [0, 1])
    rho_ac = partial_trace(psi, [0, 2])
    if psi.dims == (2, 2, 2):
        c_ab, c_ac = concurrence_2q(rho_ab), concurrence_2q(rho_ac)
    elif psi.dims == (3, 3, 3):
        c_ab, c_ac = concurrence_mixed_reference(rho_ab), concurrence_mixed_reference(rho_ac)
    else:
        _fail('CKW terms are available for three qubits or three qutrits, got {}'.format(psi.dims))
    out = OrderedDict()
    out['c2_ab'] = c_ab ** 2
    out['c2_ac'] = c_ac ** 2
    out['c2_a_bc'] = concurrence_pure(psi, [[0], [1, 2]]) ** 2
    out['slack'] = out['c2_a_bc'] - out['c2_ab'] - out['c2_ac']
    return out


def negativity_monogamy_terms(psi):
    """Terms of N^2(AB) + N^2(AC) <= N^2(A:BC) for three-qubit pure states.

    Uses N = ||rho^Gamma||_1 - 1, twice ``negativity``, so that N(A:BC) equals the
    concurrence C(A:BC) of a pure state.

    Returns:
        OrderedDict -- n2_ab, n2_ac, n2_a_bc and slack = n2_a_bc - n2_ab - n2_ac
    """
    psi = _check_three_qubit(psi)
    out = OrderedDict()
    out['n2_ab'] = (2. * negativity(partial_trace(psi, [0, 1]))) ** 2
    out['n2_ac'] = (2. * negativity(partial_trace(psi, [0, 2]))) ** 2
    out['n2_a_bc'] = (2. * negativity(psi, [[0], [1, 2]])) ** 2
    out['slack'] = out['n2_a_bc'] - out['n2_ab'] - out['n2_ac']
    return out


def sloc_class_3q(psi):
    """SLOCC class of a three-qubit pure state from reduction ranks and the three-tangle."""
    psi = _check_three_qubit(psi)
    tol = glib.settings.tol
    pure = [hermitian_spectrum(partial_trace(psi, [i]).matrix)[0][0] >= 1. - tol.rec for i in range(3)]
    if sum(pure) >= 2:
        return SloccClass.PRODUCT
    if sum(pure) == 1:
        return [SloccClass.BISEP_A, SloccClass.BISEP_B, SloccClass.BISEP_C][pure.index(True)]
    if three_tangle(psi) > tol.cls:
        return SloccClass.GHZ_CLASS
    return SloccClass.W_CLASS


"""
family references
"""


def werner_relent_reference(d, p):
    """Regularized relative entropy of entanglement of the Werner state W(p) on d x d.

    p is the antisymmetric weight. For d = 2 the middle branch covers the whole
    entangled range p in (1/2, 1].
    """
    if isinstance(d, bool) or int(d) != d or d < 2:
        _fail('d must be an integer >= 2, got {!r}'.format(d), ArgumentError)
    p = float(p)
    if not 0. <= p <= 1.:
        _fail('p must be in [0, 1], got {}'.format(p), ArgumentError)
    d = int(d)
    if p <= 0.5:
        return 0.
    if d == 2 or p <= 0.5 + 1. / d:
        return 1. - binary_entropy(p)
    return float(np.log2((d - 2.) / d) + p * np.log2((d + 2.) / (d - 2.)))


def relent_werner(rho):
    """werner_relent_reference for a state that is a Werner state.

    Raises:
        ArgumentError -- Raised if the state is not invariant under the U (x) U twirl
    """
    rho = as_density(rho)
    if rho.n != 2 or rho.dims[0] != rho.dims[1]:
        _fail('a d x d state is required, got dims {}'.format(rho.dims), ArgumentError)
    d = rho.dims[0]
    p = (1. - float(np.real(np.trace(swap_operator(d) @ rho.matrix)))) / 2.
    p = min(1., max(0., p))
    if np.max(np.abs(make_werner(d, p).matrix - rho.matrix)) > glib.settings.tol.tr:
        _fail('state is not a Werner state', ArgumentError)
    return werner_relent_reference(d, p)


def bell_diagonal_distillable_reference(rho):
    """Distillable entanglement 1 - S(rho) of a mixture of two Bell states.

    Raises:
        ArgumentError -- Raised if the state is not Bell-diagonal of rank at most two
    """
    rho = _two_qubit(rho)
    b = bell_vectors()
    weights = np.real(np.einsum('ka,ab,kb->k', b.conj(), rho.matrix, b))
    recon = np.einsum('k,ka,kb->ab', weights, b, b.conj())
    if np.max(np.abs(recon - rho.matrix)) > glib.settings.tol.tr:
        _fail('state is not Bell-diagonal', ArgumentError)
    if np.sum(weights > glib.settings.tol.rank) > 2:
        _fail('Bell-diagonal state has rank above two', ArgumentError)
    return 1. - shannon_entropy(weights)


def concurrence_mixed_reference(rho, split=None):
    """Concurrence 1 of any two-qutrit state supported on the antisymmetric subspace.

    Every pure state there has Schmidt weights (1/2, 1/2), so the convex roof is 1.

    Raises:
        ArgumentError -- Raised if the state has weight outside the antisymmetric subspace
    """
    rho = as_density(rho)
    m, dA, dB, _ = group(rho, split)
    if (dA, dB) != (3, 3):
        _fail('a 3 x 3 state is required, got {:d}x{:d}'.format(dA, dB), ArgumentError)
    weight = float(np.real(np.trace((np.eye(9) - swap_operator(3)) / 2. @ m)))
    if weight < 1. - glib.settings.tol.tr:
        _fail('state is not supported on the antisymmetric subspace (weight {:.12g})'.format(weight),
              ArgumentError)
    return 1.


"""
registry
"""


def _scalar_split(func):
    return lambda state, split, param: func(state, split)


def _tau(state, split, param):
    if param is None:
        _fail('tau needs a degree, e.g. tau:2', ArgumentError)
    try:
        p = int(param)
    except ValueError:
        _fail('tau degree must be an integer, got {!r}'.format(param), ArgumentError)
    return tau_measures(state, p, split)


def _concurrence(state, split, param):
    rho = as_density(state)
    if rho.dims == (2, 2):
        return concurrence_2q(rho)
    return concurrence_pure(state, split)


# token -> (function(state, split, param), exact)
MEASURES = OrderedDict([
    ('ee', (_scalar_split(entropy_of_entanglement), True)),
    ('conc', (_concurrence, True)),
    ('eof', (lambda state, split, param: eof_2q(state), True)),
    ('neg', (_scalar_split(negativity), True)),
    ('logneg', (_scalar_split(log_negativity), True)),
    ('fsing', (_scalar_split(singlet_fraction), True)),
    ('ftel', (_scalar_split(teleport_fidelity), True)),
    ('ek', (_scalar_split(vidal_monotones), True)),
    ('tau', (_tau, True)),
    ('tangle3', (lambda state, split, param: three_tangle(state), True)),
    ('coh', (_scalar_split(coherent_information), True)),
    ('relent-werner', (lambda state, split, param: relent_werner(state), True)),
    ('ed-rank2', (lambda state, split, param: bell_diagonal_distillable_reference(state), True)),
])


def measure(token, state, split=None):
    """Evaluate a measure by its token, e.g. 'neg' or 'tau:2'.

    Returns:
        MeasureValue -- value with its exactness flag
    """
    name, _, param = token.strip().partition(':')
    if name not in MEASURES:
        _fail('unknown measure {!r}, choose from {}'.format(token, ', '.join(MEASURES)), ArgumentError)
    func, exact = MEASURES[name]
    logger.debug('measure {} on {}'.format(token, state))
    return MeasureValue(token.strip(), func(state, split, param or None), exact)
