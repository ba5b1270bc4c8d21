"""Constructors for the named example states and seeded random-state generators.

Bell states are indexed in dense-coding order: k = 0..3 is psi-, phi-, psi+, phi+,
so that DENSE_CODING_OPS[k] (x) I maps psi- onto Bell state k.
"""
import logging
from collections import OrderedDict

import numpy as np
from scipy.stats import unitary_group

import entlab.entlab_lib as glib
from entlab.errors import ArgumentError
from entlab.tensor_core import (DensityMatrix, PureState, I2, SX, SZ, swap_operator,
                                maxent_vector, maxent_projector, basis_vector, hermitian_spectrum,
                                as_density, kron_all, check_side)

logger = logging.getLogger('entlab.states')

BELL_LABELS = ('psi-', 'phi-', 'psi+', 'phi+')
# sigma_0 = I, sigma_1 = X, sigma_2 = Z, sigma_3 = XZ = -i sigma_y
DENSE_CODING_OPS = (I2, SX, SZ, SX @ SZ)

_S2 = np.sqrt(0.5)
_BELL_VECTORS = np.array([[0, _S2, -_S2, 0],
                          [_S2, 0, 0, -_S2],
                          [0, _S2, _S2, 0],
                          [_S2, 0, 0, _S2]], dtype=complex)


def _fail(msg, exc=ArgumentError):
    logger.error(msg)
    raise exc(msg)


def _check_int(name, value, low, high=None):
    if isinstance(value, bool) or int(value) != value:
        _fail('{} must be an integer, got {!r}'.format(name, value))
    value = int(value)
    if value < low or (high is not None and value > high):
        rng = '[{}, {}]'.format(low, high) if high is not None else '>= {}'.format(low)
        _fail('{} must be in {}, got {}'.format(name, rng, value))
    return value


def _check_prob(name, value, low=0., high=1., closed=True):
    value = float(value)
    ok = (low <= value <= high) if closed else (low < value < high)
    if not ok:
        brackets = '[{}, {}]' if closed else '({}, {})'
        _fail('{} must be in {}, got {}'.format(name, brackets.format(low, high), value))
    return value


def _check_distribution(name, weights):
    w = np.asarray(weights, dtype=float).reshape(-1)
    if np.any(w < -glib.settings.tol.tr) or abs(w.sum() - 1.) > glib.settings.tol.tr:
        _fail('{} must be a probability vector, got {}'.format(name, w))
    return np.clip(w, 0., None)


"""
pure states
"""


def bell_vectors():
    """Rows are the Bell states in dense-coding order."""
    return _BELL_VECTORS.copy()


def make_bell(k):
    k = _check_int('k', k, 0, 3)
    return PureState(_BELL_VECTORS[k], (2, 2), validate=False)


def make_maxent(d):
    d = _check_int('d', d, 2)
    check_side(d * d)
    return PureState(maxent_vector(d), (d, d), validate=False)


def make_ghz(n, d=2):
    n = _check_int('n', n, 2)
    d = _check_int('d', d, 2)
    check_side(d ** n)
    v = np.zeros(d ** n, dtype=complex)
    step = sum(d ** i for i in range(n))
    v[np.arange(d) * step] = 1. / np.sqrt(d)
    return PureState(v, (d, ) * n, validate=False)


def make_w(n):
    n = _check_int('n', n, 2)
    check_side(2 ** n)
    v = np.zeros(2 ** n, dtype=complex)
    v[[2 ** i for i in range(n)]] = 1. / np.sqrt(n)
    return PureState(v, (2, ) * n, validate=False)


def make_aharonov():
    """Totally antisymmetric state of three qutrits."""
    v = np.zeros(27, dtype=complex)
    for (a, b, c), sign in [((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
                            ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1)]:
        v[9 * a + 3 * b + c] = sign / np.sqrt(6.)
    return PureState(v, (3, 3, 3), validate=False)


def make_avn_hyper():
    """Singlet in polarization times singlet in path for photons A and B.

    Factor order is (A polarization, A path, B polarization, B path).
    """
    s = _BELL_VECTORS[0].reshape(2, 2)
    v = np.einsum('ac,bd->abcd', s, s).reshape(-1)
    return PureState(v, (2, 2, 2, 2), validate=False)


"""
mixed families
"""


def make_werner(d, p):
    """U (x) U invariant state mixing the symmetric and antisymmetric projectors.

    W(p) = (1-p) 2/(d^2+d) P_sym + p 2/(d^2-d) P_asym, so Tr(W V) = 1 - 2p.
    """
    d = _check_int('d', d, 2)
    p = _check_prob('p', p)
    check_side(d * d)
    v = swap_operator(d)
    eye = np.eye(d * d)
    p_sym, p_asym = (eye + v) / 2., (eye - v) / 2.
    w = (1. - p) * 2. / (d * d + d) * p_sym + p * 2. / (d * d - d) * p_asym
    return DensityMatrix(w, (d, d), validate=False)


def make_werner_qubit(p):
    """Two-qubit noisy singlet p |psi-><psi-| + (1-p) I/4."""
    p = _check_prob('p', p)
    s = _BELL_VECTORS[0]
    return DensityMatrix(p * np.outer(s, s.conj()) + (1. - p) * np.eye(4) / 4., (2, 2), validate=False)


def make_isotropic(d, F):
    """U (x) U* invariant state with singlet fraction Tr(rho P+) = F."""
    d = _check_int('d', d, 2)
    F = _check_prob('F', F)
    check_side(d * d)
    d2 = float(d * d)
    rho = (1. - F) / (d2 - 1.) * np.eye(d * d) + (F * d2 - 1.) / (d2 - 1.) * maxent_projector(d)
    return DensityMatrix(rho, (d, d), validate=False)


def make_bell_diagonal(weights):
    w = _check_distribution('weights', weights)
    if w.size != 4:
        _fail('Bell-diagonal weights need 4 entries, got {:d}'.format(w.size))
    rho = np.einsum('k,ka,kb->ab', w, _BELL_VECTORS, _BELL_VECTORS.conj())
    return DensityMatrix(rho, (2, 2), validate=False)


def make_smolin():
    """Four-qubit state 1/4 sum_k |B_k><B_k|_AB (x) |B_k><B_k|_CD."""
    rho = np.zeros((16, 16), dtype=complex)
    for b in _BELL_VECTORS:
        proj = np.outer(b, b.conj())
        rho += np.kron(proj, proj) / 4.
    return DensityMatrix(rho, (2, 2, 2, 2), validate=False)


def make_chessboard(a):
    """3 (x) 3 PPT entangled state with parameter a in (0, 1)."""
    a = _check_prob('a', a, closed=False)
    rho = np.diag([a] * 9).astype(complex)
    rho[6, 6] = rho[8, 8] = (1. + a) / 2.
    for i, j in [(0, 4), (0, 8), (4, 8)]:
        rho[i, j] = rho[j, i] = a
    rho[6, 8] = rho[8, 6] = np.sqrt(1. - a * a) / 2.
    return DensityMatrix(rho / (8. * a + 1.), (3, 3), validate=False)


def make_upb_shift_state():
    """(I - P)/4 with P the projector on the three-qubit Shift product basis."""
    zero, one = basis_vector(0, 2), basis_vector(1, 2)
    plus, minus = (zero + one) * _S2, (zero - one) * _S2
    upb = [(zero, zero, zero), (plus, one, minus), (one, minus, plus), (minus, plus, one)]
    proj = np.zeros((8, 8), dtype=complex)
    for vecs in upb:
        v = kron_all(vecs)
        proj += np.outer(v, v.conj())
    return DensityMatrix((np.eye(8) - proj) / 4., (2, 2, 2), validate=False)


"""
GHZ-diagonal family with closed-form partition separability
"""


def _dur_cirac_vectors(m):
    half = 2 ** (m - 1)
    mask = half - 1
    plus, minus = [], []
    for k in range(half):
        i0 = k << 1
        i1 = ((~k & mask) << 1) | 1
        vp = np.zeros(2 ** m, dtype=complex)
        vm = np.zeros(2 ** m, dtype=complex)
        vp[i0], vp[i1] = _S2, _S2
        vm[i0], vm[i1] = _S2, -_S2
        plus.append(vp)
        minus.append(vm)
    return plus, minus


def make_dur_cirac(m, lam0_plus, lam0_minus, lams):
    """m-qubit GHZ-diagonal family.

    Arguments:
        m {int} -- number of qubits
        lam0_plus {float} -- weight of the GHZ state (|0..0> + |1..1>)/sqrt(2)
        lam0_minus {float} -- weight of (|0..0> - |1..1>)/sqrt(2)
        lams {sequence} -- lambda_k for k = 1 .. 2**(m-1)-1, k read with qubit 0 as the most significant bit

    Raises:
        ArgumentError -- Raised if weights are negative or do not satisfy lam0+ + lam0- + 2 sum lambda_k = 1

    Returns:
        DensityMatrix -- the m-qubit state
    """
    m = _check_int('m', m, 2)
    check_side(2 ** m)
    lam0_plus, lam0_minus = float(lam0_plus), float(lam0_minus)
    lams = np.asarray(lams, dtype=float).reshape(-1)
    if lams.size != 2 ** (m - 1) - 1:
        _fail('need {:d} lambda_k values for m={:d}, got {:d}'.format(2 ** (m - 1) - 1, m, lams.size))
    weights = np.concatenate([[lam0_plus, lam0_minus], lams])
    if np.any(weights < 0):
        _fail('Dur-Cirac weights must be nonnegative, got {}'.format(weights))
    total = lam0_plus + lam0_minus + 2. * lams.sum()
    if abs(total - 1.) > glib.settings.tol.tr:
        _fail('Dur-Cirac weights are not normalized (sum {:.12g})'.format(total))
    plus, minus = _dur_cirac_vectors(m)
    rho = lam0_plus * np.outer(plus[0], plus[0]) + lam0_minus * np.outer(minus[0], minus[0])
    for k, lam in enumerate(lams, start=1):
        rho = rho + lam * (np.outer(plus[k], plus[k]) + np.outer(minus[k], minus[k]))
    return DensityMatrix(rho, (2, ) * m, validate=False)


def dur_cirac_weights(state):
    """Recover (lam0_plus, lam0_minus, lams) of a family member, or None."""
    rho = as_density(state)
    m = rho.n
    if m < 2 or any(d != 2 for d in rho.dims):
        return None
    plus, minus = _dur_cirac_vectors(m)
    mat = rho.matrix
    lam0p = float(np.real(plus[0] @ mat @ plus[0]))
    lam0m = float(np.real(minus[0] @ mat @ minus[0]))
    lams = np.array([np.real(plus[k] @ mat @ plus[k] + minus[k] @ mat @ minus[k]) / 2.
                     for k in range(1, len(plus))])
    recon = lam0p * np.outer(plus[0], plus[0]) + lam0m * np.outer(minus[0], minus[0])
    for k, lam in enumerate(lams, start=1):
        recon = recon + lam * (np.outer(plus[k], plus[k]) + np.outer(minus[k], minus[k]))
    if np.max(np.abs(recon - mat)) > glib.settings.tol.tr:
        return None
    return lam0p, lam0m, lams


def dur_cirac_partition_index(m, split):
    """Index k of a bipartition: qubit i < m-1 has bit k_i = 0 iff it sits with qubit m-1."""
    side = split.left if (m - 1) in split.left else split.right
    k = 0
    for i in range(m - 1):
        k = (k << 1) | (0 if i in side else 1)
    return k


def dur_cirac_separable(m, lam0_plus, lam0_minus, lams, split):
    """Closed-form rule: separable across A(k)|B(k) iff lambda_k >= |lam0+ - lam0-|/2."""
    k = dur_cirac_partition_index(m, split)
    if k == 0:
        _fail('partition {} does not split the first m-1 qubits'.format(split))
    delta = abs(lam0_plus - lam0_minus)
    return bool(lams[k - 1] >= delta / 2. - glib.settings.tol.eig)


"""
random states
"""


def random_unitary(d, seed=None):
    """Haar-random d x d unitary."""
    rng = glib.check_random_state(seed)
    if d == 1:
        return np.ones((1, 1), dtype=complex)
    return unitary_group.rvs(d, random_state=rng)


def _gaussian(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_pure(dims, seed=None):
    """Haar-random pure state: a normalized standard complex Gaussian vector."""
    rng = glib.check_random_state(seed)
    dims = tuple(int(d) for d in dims)
    side = int(np.prod(dims))
    check_side(side)
    v = _gaussian(rng, side)
    return PureState(v / np.linalg.norm(v), dims, validate=False)


def random_density(dims, rank=None, seed=None):
    """Random mixed state: reduction of a Haar pure state with an ancilla of dimension rank."""
    rng = glib.check_random_state(seed)
    dims = tuple(int(d) for d in dims)
    side = int(np.prod(dims))
    check_side(side)
    rank = side if rank is None else _check_int('rank', rank, 1)
    g = _gaussian(rng, (side, rank))
    rho = g @ g.conj().T
    return DensityMatrix(rho / np.real(np.trace(rho)), dims, validate=False)


def random_product_pure(dims, seed=None):
    rng = glib.check_random_state(seed)
    factors = [random_pure((d, ), rng).vector for d in dims]
    return PureState(kron_all(factors), dims, validate=False)


def random_separable(dims, terms=None, seed=None):
    """Convex mixture of product pure states with Dirichlet weights."""
    rng = glib.check_random_state(seed)
    dims = tuple(int(d) for d in dims)
    side = int(np.prod(dims))
    check_side(side)
    terms = side if terms is None else _check_int('terms', terms, 1)
    weights = rng.dirichlet(np.ones(terms))
    rho = np.zeros((side, side), dtype=complex)
    for w in weights:
        v = random_product_pure(dims, rng).vector
        rho += w * np.outer(v, v.conj())
    return DensityMatrix(rho, dims)


def purify(state):
    """Purification sum_i sqrt(lambda_i) |v_i> (x) |i> on dims + (side, )."""
    rho = as_density(state)
    w, v = hermitian_spectrum(rho.matrix)
    w = np.clip(w, 0., None)
    check_side(rho.side * rho.side)
    psi = np.einsum('i,ai->ai', np.sqrt(w), v).reshape(-1)
    return PureState(psi / np.linalg.norm(psi), rho.dims + (rho.side, ), validate=False)


"""
recipes
"""


class StateRecipe(object):
    """Named constructor plus parameters, addressable from the command line."""

    _builders = OrderedDict([
        ('bell', (make_bell, ['k'])),
        ('maxent', (make_maxent, ['d'])),
        ('ghz', (make_ghz, ['n', 'd'])),
        ('w', (make_w, ['n'])),
        ('werner', (make_werner, ['d', 'p'])),
        ('werner-qubit', (make_werner_qubit, ['p'])),
        ('isotropic', (make_isotropic, ['d', 'F'])),
        ('bell-diagonal', (make_bell_diagonal, ['weights'])),
        ('smolin', (make_smolin, [])),
        ('chessboard', (make_chessboard, ['a'])),
        ('dur-cirac', (make_dur_cirac, ['m', 'lam0_plus', 'lam0_minus', 'lams'])),
        ('upb-shift', (make_upb_shift_state, [])),
        ('aharonov', (make_aharonov, [])),
        ('avn-hyper', (make_avn_hyper, [])),
        ('random-pure', (random_pure, ['dims', 'seed'])),
        ('random-density', (random_density, ['dims', 'rank', 'seed'])),
        ('random-separable', (random_separable, ['dims', 'terms', 'seed'])),
    ])

    def __init__(self, name, **params):
        if name not in self._builders:
            _fail('unknown recipe {!r}, choose from {}'.format(name, ', '.join(self._builders)))
        func, names = self._builders[name]
        unknown = set(params) - set(names)
        if unknown:
            _fail('recipe {} does not take {}'.format(name, ', '.join(sorted(unknown))))
        self.name = name
        self.params = OrderedDict((k, params[k]) for k in names if params.get(k) is not None)
        self._func = func

    @classmethod
    def names(cls):
        return list(cls._builders.keys())

    @classmethod
    def parameters(cls, name):
        return list(cls._builders[name][1])

    def build(self):
        logger.debug('building {}'.format(self))
        try:
            return self._func(**self.params)
        except TypeError as e:
            _fail('recipe {} is missing parameters: {}'.format(self.name, e))

    def __str__(self):
        args = ' '.join('{}={}'.format(k, v) for k, v in self.params.items())
        return '{} {}'.format(self.name, args).strip()

    def __repr__(self):
        return 'StateRecipe({})'.format(str(self))
