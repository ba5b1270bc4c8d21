"""Correlation tensors and Bell-type tests for qubit systems.

Settings are unit vectors in R^3; the observable for vector a is a . sigma.
"""
import logging
from collections import OrderedDict

import numpy as np
from scipy.linalg import hadamard

import entlab.entlab_lib as glib
from entlab.errors import ContractError, ArgumentError, SizeError
from entlab.tensor_core import PAULI, SX, SZ, as_density, partial_trace, embed_operator

logger = logging.getLogger('entlab.nonlocality')

TSIRELSON = 2. * np.sqrt(2.)
AVN_LHV_BOUND = 7.

_LETTERS = 'abcdefghijklmnopqrstuvwxyz'


def _fail(msg, exc=ContractError):
    logger.error(msg)
    raise exc(msg)


def _qubits(rho, n=None):
    rho = as_density(rho)
    if any(d != 2 for d in rho.dims) or (n is not None and rho.n != n):
        want = '{:d}-qubit'.format(n) if n is not None else 'qubit'
        _fail('a {} state is required, got dims {}'.format(want, rho.dims))
    return rho


class CorrelationTensor(object):
    """Pauli expectations t[i_1..i_n] = Tr(rho sigma_i1 x .. x sigma_in), index 0 = identity."""

    def __init__(self, tensor):
        tensor = np.asarray(tensor, dtype=float)
        if tensor.ndim < 1 or any(s != 4 for s in tensor.shape):
            _fail('correlation tensor must have shape (4, ..., 4), got {}'.format(tensor.shape))
        self.tensor = tensor

    @property
    def n(self):
        return self.tensor.ndim

    @property
    def spatial(self):
        """Components with every index in {x, y, z}."""
        return self.tensor[(slice(1, None), ) * self.n]

    @property
    def matrix(self):
        """3x3 block T_ij of a two-qubit tensor."""
        if self.n != 2:
            _fail('the T matrix is defined for two qubits only')
        return self.spatial

    def __repr__(self):
        return 'CorrelationTensor(n={:d})'.format(self.n)


def correlation_tensor(rho):
    rho = _qubits(rho)
    n = rho.n
    if n > len(_LETTERS) // 3:
        _fail('too many qubits for the correlation tensor: {:d}'.format(n), SizeError)
    ks, rs, cs = _LETTERS[:n], _LETTERS[n:2 * n], _LETTERS[2 * n:3 * n]
    terms = ['{}{}{}'.format(ks[j], cs[j], rs[j]) for j in range(n)]
    expr = '{},{}->{}'.format(','.join(terms), rs + cs, ks)
    t = np.einsum(expr, *([PAULI] * n), rho.matrix.reshape([2] * (2 * n)), optimize=True)
    return CorrelationTensor(np.real(t))


class BellSettings(object):
    """Two measurement directions per site, shape (sites, 2, 3).

    Arguments:
        vectors {array_like} -- settings[j][k] is the unit vector of site j, setting k

    Keyword Arguments:
        normalize {bool} -- rescale the vectors to unit length instead of checking (default: {False})

    Raises:
        ArgumentError -- Raised if a vector is zero or not of unit length
    """

    def __init__(self, vectors, normalize=False):
        v = np.array(vectors, dtype=float)
        if v.ndim != 3 or v.shape[1:] != (2, 3):
            _fail('settings must have shape (sites, 2, 3), got {}'.format(v.shape), ArgumentError)
        norms = np.linalg.norm(v, axis=2)
        if np.any(norms < 1e-12):
            _fail('measurement directions must be nonzero', ArgumentError)
        if normalize:
            v = v / norms[:, :, None]
        elif np.max(np.abs(norms - 1.)) > 1e-12:
            _fail('measurement directions must be unit vectors', ArgumentError)
        v.setflags(write=False)
        self.vectors = v

    @classmethod
    def chsh(cls, a1, a2, b1, b2, normalize=False):
        return cls([[a1, a2], [b1, b2]], normalize)

    @property
    def sites(self):
        return self.vectors.shape[0]

    def to_dict(self):
        out = OrderedDict()
        for j, pair in enumerate(self.vectors):
            out['site{:d}'.format(j)] = [[float(x) for x in vec] for vec in pair]
        return out

    def __repr__(self):
        return 'BellSettings(sites={:d})'.format(self.sites)


def _dot_sigma(a):
    return np.einsum('i,iab->ab', np.asarray(a, dtype=complex), PAULI[1:])


"""
CHSH
"""


def _t_eigen(T):
    """Eigenpairs of T^T T in nonincreasing order."""
    w, v = np.linalg.eigh(T.T @ T)
    order = np.argsort(-w, kind='stable')
    return np.clip(w[order], 0., None), v[:, order]


def chsh_M(rho):
    """Sum of the two largest eigenvalues of T^T T; CHSH is violable iff M > 1."""
    T = correlation_tensor(_qubits(rho, 2)).matrix
    w, _ = _t_eigen(T)
    return float(w[0] + w[1])


def chsh_B(rho):
    """Violation measure sqrt(max(0, sqrt(M) - 1))."""
    return float(np.sqrt(max(0., np.sqrt(chsh_M(rho)) - 1.)))


def chsh_operator(settings):
    """B = a1.s x (b1 + b2).s + a2.s x (b1 - b2).s."""
    if settings.sites != 2:
        _fail('CHSH settings need two sites, got {:d}'.format(settings.sites), ArgumentError)
    (a1, a2), (b1, b2) = settings.vectors
    return (np.kron(_dot_sigma(a1), _dot_sigma(b1 + b2))
            + np.kron(_dot_sigma(a2), _dot_sigma(b1 - b2)))


def bell_chsh_value(rho, settings):
    rho = _qubits(rho, 2)
    return float(np.real(np.trace(chsh_operator(settings) @ rho.matrix)))


def _unit_or(vec, fallback):
    nrm = np.linalg.norm(vec)
    return vec / nrm if nrm > 1e-15 else np.asarray(fallback, dtype=float)


def optimal_chsh_settings(rho):
    """Settings reaching 2 sqrt(M), built from the top eigenvectors u1, u2 of T^T T.

    b1,2 = cos(t) u1 +- sin(t) u2 with tan(t) = sqrt(mu2/mu1) and a_i = T u_i / |T u_i|.
    """
    T = correlation_tensor(_qubits(rho, 2)).matrix
    w, v = _t_eigen(T)
    u1, u2 = v[:, 0], v[:, 1]
    theta = np.arctan(np.sqrt(w[1] / w[0])) if w[0] > 0 else 0.
    b1 = np.cos(theta) * u1 + np.sin(theta) * u2
    b2 = np.cos(theta) * u1 - np.sin(theta) * u2
    a1 = _unit_or(T @ u1, u1)
    a2 = _unit_or(T @ u2, u2)
    return BellSettings.chsh(a1, a2, b1, b2, normalize=True)


"""
WWZB
"""


def correlation_table(rho, settings):
    """E(k) for every setting choice k in {0,1}^n, site 0 as the most significant bit."""
    rho = _qubits(rho)
    if settings.sites != rho.n:
        _fail('settings for {:d} sites do not match {:d} qubits'.format(settings.sites, rho.n), ArgumentError)
    t = correlation_tensor(rho).spatial
    for j in range(rho.n):
        # site j: spatial index -> setting index
        t = np.tensordot(settings.vectors[j], t, axes=([1], [j]))
        t = np.moveaxis(t, 0, j)
    return t.reshape(-1)


def mermin_settings(n):
    """Settings (x, y) on every site."""
    ex, ey = [1., 0., 0.], [0., 1., 0.]
    return BellSettings([[ex, ey]] * int(n))


def wwzb_check(E, n):
    """Single nonlinear WWZB inequality sum_s |sum_k (-1)^<k,s> E(k)| <= 2^n.

    Raises:
        SizeError -- Raised if n exceeds the configured maximum

    Returns:
        OrderedDict -- lhs, bound and pass flag
    """
    n = int(n)
    if n < 1:
        _fail('n must be positive, got {:d}'.format(n), ArgumentError)
    if n > glib.settings.wwzb_max_n:
        _fail('WWZB table for n={:d} exceeds the configured maximum {:d}'.format(
            n, glib.settings.wwzb_max_n), SizeError)
    E = np.asarray(E, dtype=float).reshape(-1)
    if E.size != 2 ** n:
        _fail('correlation table needs {:d} entries, got {:d}'.format(2 ** n, E.size), ArgumentError)
    lhs = float(np.sum(np.abs(hadamard(2 ** n) @ E)))
    out = OrderedDict()
    out['lhs'] = lhs
    out['bound'] = float(2 ** n)
    out['pass'] = bool(lhs <= 2 ** n + 1e-9)
    return out


def _frames(frames, n):
    if frames is None:
        return [np.eye(3)] * n
    frames = [np.asarray(f, dtype=float) for f in frames]
    if len(frames) != n:
        _fail('need {:d} local frames, got {:d}'.format(n, len(frames)), ArgumentError)
    for f in frames:
        if f.shape != (3, 3) or np.max(np.abs(f @ f.T - np.eye(3))) > 1e-10:
            _fail('local frames must be 3x3 orthogonal matrices', ArgumentError)
    return frames


def wwzb_tensor_value(T, frames=None, max_iter=500):
    """Maximum of sum c^1_i1 .. c^n_in |t_i1..in| over unit c_j in R^2.

    The tensor is rotated into the given local frames and restricted to the x, y
    components; the maximum over the c_j is found by alternating updates.
    """
    if not isinstance(T, CorrelationTensor):
        T = CorrelationTensor(T)
    n = T.n
    t = T.spatial
    for j, f in enumerate(_frames(frames, n)):
        t = np.moveaxis(np.tensordot(f, t, axes=([1], [j])), 0, j)
    m = np.abs(t[(slice(0, 2), ) * n])
    cs = [np.full(2, np.sqrt(0.5)) for _ in range(n)]
    value = 0.
    for _ in range(max_iter):
        for j in range(n):
            g = np.moveaxis(m, j, 0)
            for k in range(n):
                if k != j:
                    g = np.tensordot(g, cs[k], axes=([1], [0]))
            cs[j] = _unit_or(g, cs[j])
        new = _contract_all(m, cs)
        if abs(new - value) < 1e-14:
            value = new
            break
        value = new
    return float(value)


def _contract_all(m, cs):
    for c in cs:
        m = np.tensordot(c, m, axes=([0], [0]))
    return float(m)


def wwzb_tensor_check(T, frames=None):
    """True if the moduli condition admits a local model in these frames."""
    return wwzb_tensor_value(T, frames) <= 1. + 1e-9


"""
all-versus-nothing and monogamy
"""


def avn_operator():
    """Nine-term Bell-type operator for two photons entangled in polarization and path.

    Factor order is (A polarization, A path, B polarization, B path); z, x act on
    polarization and z', x' on path.
    """
    dims = (2, 2, 2, 2)

    def op(pauli, site):
        return embed_operator(pauli, [site], dims)

    zA, xA, zpA, xpA = op(SZ, 0), op(SX, 0), op(SZ, 1), op(SX, 1)
    zB, xB, zpB, xpB = op(SZ, 2), op(SX, 2), op(SZ, 3), op(SX, 3)
    return (-zA @ zB - zpA @ zpB - xA @ xB - xpA @ xpB
            + (zA @ zpA) @ zB @ zpB
            + (xA @ xpA) @ xB @ xpB
            + zA @ xpA @ (zB @ xpB)
            + xA @ zpA @ (xB @ zpB)
            - (zA @ zpA) @ (xA @ xpA) @ (zB @ xpB) @ (xB @ zpB))


def ghz_avn_value(state):
    """<O>; local hidden variables give at most 7."""
    rho = _qubits(state, 4)
    return float(np.real(np.trace(avn_operator() @ rho.matrix)))


def toner_monogamy(rho, settings_ab, settings_ac):
    """CHSH values on AB and AC of a three-qubit state; |v_AB| + |v_AC| <= 4.

    Returns:
        OrderedDict -- v_ab, v_ac, sum of moduli and pass flag
    """
    rho = _qubits(rho, 3)
    v_ab = bell_chsh_value(partial_trace(rho, [0, 1]), settings_ab)
    v_ac = bell_chsh_value(partial_trace(rho, [0, 2]), settings_ac)
    out = OrderedDict()
    out['v_ab'] = v_ab
    out['v_ac'] = v_ac
    out['sum'] = abs(v_ab) + abs(v_ac)
    out['pass'] = bool(out['sum'] <= 4. + 1e-9)
    return out
