"""Dense complex linear algebra over tensor-product spaces.

Matrices are plain complex numpy arrays. ``DensityMatrix`` and ``PureState`` pair
an array with the ordered subsystem dimensions; subsystem 0 is the leftmost
tensor factor and all logarithms are base 2.
"""
import logging
import string
from functools import reduce
from itertools import combinations

import numpy as np
from scipy.special import entr

import entlab.entlab_lib as glib
from entlab.errors import ContractError, ArgumentError, SizeError, NumericalError

logger = logging.getLogger('entlab.tensor_core')

# identity, sigma_x, sigma_y, sigma_z
PAULI = np.array([[[1, 0], [0, 1]],
                  [[0, 1], [1, 0]],
                  [[0, -1j], [1j, 0]],
                  [[1, 0], [0, -1]]], dtype=complex)
I2, SX, SY, SZ = PAULI

_LETTERS = string.ascii_letters


def _fail(msg, exc=ContractError):
    logger.error(msg)
    raise exc(msg)


def check_side(side):
    """Raise a SizeError if a matrix side exceeds the configured maximum."""
    if side > glib.settings.max_side:
        _fail('matrix side {:d} exceeds the configured maximum {:d}'.format(
            side, glib.settings.max_side), SizeError)


def _check_dims(dims, side):
    if dims is None:
        return (side, )
    try:
        dims = tuple(int(d) for d in dims)
    except (TypeError, ValueError):
        _fail('dims must be a sequence of integers, got {!r}'.format(dims))
    if len(dims) == 0 or min(dims) < 1:
        _fail('dims must be positive integers, got {}'.format(dims))
    if int(np.prod(dims)) != side:
        _fail('product of dims {} does not match side {:d}'.format(dims, side))
    return dims


def _dims_str(dims):
    return 'x'.join(str(d) for d in dims)


class DensityMatrix(object):
    """Hermitian, unit-trace, positive semidefinite matrix plus subsystem dimensions.

    The matrix is copied and frozen on construction.

    Arguments:
        matrix {array_like} -- square complex matrix

    Keyword Arguments:
        dims {sequence} -- subsystem dimensions with product equal to the side (default: {None})
        validate {bool} -- check hermiticity, trace and eigenvalues (default: {True})

    Raises:
        ContractError -- Raised if any invariant fails
        SizeError -- Raised if the side exceeds the configured maximum
    """

    def __init__(self, matrix, dims=None, validate=True):
        m = np.array(matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            _fail('density matrix must be square, got shape {}'.format(m.shape))
        check_side(m.shape[0])
        self.dims = _check_dims(dims, m.shape[0])
        if not np.all(np.isfinite(m)):
            _fail('density matrix has non-finite entries')
        if validate:
            _validate_density(m)
        m.setflags(write=False)
        self.matrix = m

    @property
    def n(self):
        return len(self.dims)

    @property
    def side(self):
        return self.matrix.shape[0]

    def expect(self, op):
        """Real part of Tr(op rho)."""
        return float(np.real(np.trace(np.asarray(op) @ self.matrix)))

    def __repr__(self):
        return 'DensityMatrix(dims={})'.format(_dims_str(self.dims))

    def __str__(self):
        return 'DensityMatrix(dims={})\n{}'.format(_dims_str(self.dims), self.matrix)


def _validate_density(m):
    tol = glib.settings.tol
    herm_err = np.max(np.abs(m - m.conj().T)) if m.size else 0.
    if herm_err > tol.herm:
        _fail('density matrix is not Hermitian (deviation {:.3e})'.format(herm_err))
    tr = np.trace(m)
    if abs(tr - 1.) > tol.tr:
        _fail('density matrix trace is {:.12g}, expected 1'.format(np.real(tr)))
    w = np.linalg.eigvalsh((m + m.conj().T) / 2.)
    if w[0] < -tol.eig:
        _fail('density matrix has negative eigenvalue {:.3e}'.format(w[0]))


class PureState(object):
    """Normalized complex amplitude vector plus subsystem dimensions."""

    def __init__(self, amplitudes, dims=None, validate=True):
        v = np.array(amplitudes, dtype=complex).reshape(-1)
        check_side(v.size)
        self.dims = _check_dims(dims, v.size)
        if not np.all(np.isfinite(v)):
            _fail('state vector has non-finite entries')
        if validate:
            nrm = np.linalg.norm(v)
            if abs(nrm - 1.) > glib.settings.tol.tr:
                _fail('state vector norm is {:.12g}, expected 1'.format(nrm))
        v.setflags(write=False)
        self.vector = v

    @property
    def n(self):
        return len(self.dims)

    @property
    def side(self):
        return self.vector.size

    def density(self):
        return DensityMatrix(np.outer(self.vector, self.vector.conj()), self.dims, validate=False)

    def __repr__(self):
        return 'PureState(dims={})'.format(_dims_str(self.dims))


class PartitionSpec(object):
    """Partition of subsystem indices into disjoint nonempty parts, e.g. ``0|1,2``."""

    def __init__(self, parts):
        parts = tuple(tuple(sorted(int(i) for i in p)) for p in parts)
        if len(parts) < 2 or any(len(p) == 0 for p in parts):
            _fail('a partition needs at least two nonempty parts, got {}'.format(parts), ArgumentError)
        flat = [i for p in parts for i in p]
        if len(set(flat)) != len(flat) or min(flat) < 0:
            _fail('partition parts must be disjoint nonnegative indices, got {}'.format(parts), ArgumentError)
        self.parts = parts

    @classmethod
    def parse(cls, text):
        try:
            return cls([[int(i) for i in p.split(',')] for p in text.strip().split('|')])
        except ValueError:
            _fail('cannot parse partition {!r}, use e.g. "0|1,2"'.format(text), ArgumentError)

    @classmethod
    def bipartitions(cls, n):
        """All 2**(n-1)-1 bipartitions of n subsystems, subsystem 0 on the left."""
        out = []
        rest = list(range(1, n))
        for size in range(0, n - 1):
            for extra in combinations(rest, size):
                left = (0, ) + extra
                out.append(cls([left, [i for i in range(n) if i not in left]]))
        return out

    @classmethod
    def default(cls, n):
        if n < 2:
            _fail('a single subsystem has no bipartition', ArgumentError)
        return cls([[0], range(1, n)])

    @property
    def is_bipartition(self):
        return len(self.parts) == 2

    @property
    def left(self):
        return self.parts[0]

    @property
    def right(self):
        return self.parts[1]

    def check(self, n):
        """Require the parts to cover range(n) exactly."""
        flat = sorted(i for p in self.parts for i in p)
        if flat != list(range(n)):
            _fail('partition {} does not cover subsystems 0..{:d}'.format(self, n - 1), ArgumentError)
        return self

    def key(self):
        return (len(self.parts[0]), self.parts)

    def __eq__(self, other):
        return isinstance(other, PartitionSpec) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __str__(self):
        return '|'.join(','.join(str(i) for i in p) for p in self.parts)

    def __repr__(self):
        return 'PartitionSpec({})'.format(str(self))


class SchmidtData(object):
    """Schmidt coefficients (nonincreasing) with the matching orthonormal bases.

    ``left_basis[i]`` and ``right_basis[i]`` are the vectors paired with
    ``coefficients[i]``; ``rank`` counts coefficients above the rank tolerance.
    """

    def __init__(self, coefficients, left_basis, right_basis, rank):
        self.coefficients = coefficients
        self.left_basis = left_basis
        self.right_basis = right_basis
        self.rank = rank

    def __repr__(self):
        return 'SchmidtData(rank={:d}, coefficients={})'.format(
            self.rank, np.array2string(self.coefficients, precision=6))


"""
conversions
"""


def as_density(state):
    if isinstance(state, DensityMatrix):
        return state
    if isinstance(state, PureState):
        return state.density()
    _fail('expected a DensityMatrix or PureState, got {}'.format(type(state).__name__))


def is_pure(state):
    if isinstance(state, PureState):
        return True
    w = hermitian_spectrum(as_density(state).matrix)[0]
    return w[0] >= 1. - glib.settings.tol.rec


def as_pure(state):
    """Return a PureState, extracting the top eigenvector of a pure density matrix."""
    if isinstance(state, PureState):
        return state
    rho = as_density(state)
    w, v = hermitian_spectrum(rho.matrix)
    if w[0] < 1. - glib.settings.tol.rec:
        _fail('state is not pure (largest eigenvalue {:.12g})'.format(w[0]))
    vec = v[:, 0]
    return PureState(vec / np.linalg.norm(vec), rho.dims, validate=False)


def _split_of(dims, split):
    n = len(dims)
    if split is None:
        split = PartitionSpec.default(n)
    elif not isinstance(split, PartitionSpec):
        split = PartitionSpec(split)
    split.check(n)
    if not split.is_bipartition:
        _fail('a bipartition is required, got {}'.format(split), ArgumentError)
    return split


def group(state, split=None):
    """Reorder subsystems as (left part, right part) of a bipartition.

    Returns:
        tuple -- (array, dA, dB, split); a matrix for density input, a vector for pure input
    """
    split = _split_of(state.dims, split)
    order = list(split.left) + list(split.right)
    dA = int(np.prod([state.dims[i] for i in split.left]))
    dB = int(np.prod([state.dims[i] for i in split.right]))
    if isinstance(state, PureState):
        arr = permute_subsystems(state.vector, state.dims, order)
    else:
        arr = permute_subsystems(state.matrix, state.dims, order)
    return arr, dA, dB, split


"""
tensor operations
"""


def tensor_product(a, b):
    """Kronecker product; subsystem dimensions concatenate.

    Arguments:
        a {DensityMatrix, PureState or array} -- left factor
        b {DensityMatrix, PureState or array} -- right factor

    Raises:
        SizeError -- Raised if the product side exceeds the configured maximum

    Returns:
        same kind as the inputs; a DensityMatrix if pure and mixed inputs are combined
    """
    typed = (DensityMatrix, PureState)
    if isinstance(a, typed) and isinstance(b, typed):
        check_side(a.side * b.side)
        if isinstance(a, PureState) and isinstance(b, PureState):
            return PureState(np.kron(a.vector, b.vector), a.dims + b.dims, validate=False)
        a, b = as_density(a), as_density(b)
        return DensityMatrix(np.kron(a.matrix, b.matrix), a.dims + b.dims, validate=False)
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    check_side(a.shape[0] * b.shape[0])
    return np.kron(a, b)


def kron_all(factors):
    return reduce(tensor_product, factors)


def permute_subsystems(m, dims, order):
    """Reorder tensor factors: subsystem j of the result is subsystem order[j] of m."""
    dims = list(dims)
    n = len(dims)
    order = list(order)
    if sorted(order) != list(range(n)):
        _fail('order {} is not a permutation of 0..{:d}'.format(order, n - 1), ArgumentError)
    m = np.asarray(m)
    if m.ndim == 1:
        return m.reshape(dims).transpose(order).reshape(-1)
    side = m.shape[0]
    t = m.reshape(dims + dims).transpose(order + [n + o for o in order])
    return t.reshape(side, side)


def embed_operator(op, sites, dims):
    """Lift an operator on the listed sites to the full space (identity elsewhere)."""
    sites = [int(s) for s in np.atleast_1d(sites)]
    rest = [i for i in range(len(dims)) if i not in sites]
    d_rest = int(np.prod([dims[i] for i in rest])) if rest else 1
    full = np.kron(np.asarray(op, dtype=complex), np.eye(d_rest))
    ordered_dims = [dims[i] for i in sites] + [dims[i] for i in rest]
    inv = list(np.argsort(sites + rest))
    return permute_subsystems(full, ordered_dims, inv)


def _check_indices(indices, n):
    indices = sorted(set(int(i) for i in indices))
    if indices and (indices[0] < 0 or indices[-1] >= n):
        _fail('subsystem indices {} out of range for {:d} subsystems'.format(indices, n), ArgumentError)
    return indices


def partial_trace(state, keep):
    """Trace out every subsystem not in keep; the kept subsystems stay in ascending order.

    Arguments:
        state {DensityMatrix or PureState} -- input state
        keep {iterable} -- subsystem indices to keep

    Raises:
        ArgumentError -- Raised if keep is empty or out of range

    Returns:
        DensityMatrix -- reduced state with dims restricted to keep
    """
    dims = list(state.dims)
    n = len(dims)
    keep = _check_indices(keep, n)
    if not keep:
        _fail('partial_trace needs a nonempty keep set', ArgumentError)
    dk = int(np.prod([dims[i] for i in keep]))
    new_dims = [dims[i] for i in keep]
    if isinstance(state, PureState):
        rest = [i for i in range(n) if i not in keep]
        mat = state.vector.reshape(dims).transpose(keep + rest).reshape(dk, -1)
        red = mat @ mat.conj().T
    else:
        rho = as_density(state)
        rows = [_LETTERS[i] for i in range(n)]
        cols = [_LETTERS[i] if i not in keep else _LETTERS[n + i] for i in range(n)]
        out = [_LETTERS[i] for i in keep] + [_LETTERS[n + i] for i in keep]
        expr = '{}->{}'.format(''.join(rows + cols), ''.join(out))
        red = np.einsum(expr, rho.matrix.reshape(dims + dims)).reshape(dk, dk)
    return DensityMatrix(red, new_dims, validate=False)


def partial_transpose(state, subsystems):
    """Transpose the listed subsystems; an exact involution on the entries."""
    rho = as_density(state)
    dims = list(rho.dims)
    n = len(dims)
    subsystems = _check_indices(subsystems, n)
    axes = list(range(2 * n))
    for k in subsystems:
        axes[k], axes[n + k] = n + k, k
    return rho.matrix.reshape(dims + dims).transpose(axes).reshape(rho.side, rho.side)


def realign(state, split=None):
    """Realigned matrix R[(i,k),(j,l)] = rho[(i,j),(k,l)] for a bipartition A|B.

    Rows run over the A (row, column) pair and columns over the B pair, so a
    product state maps to vec(rho_A) vec(rho_B)^T.
    """
    rho = as_density(state)
    m, dA, dB, _ = group(rho, split)
    check_side(max(dA * dA, dB * dB))
    return m.reshape(dA, dB, dA, dB).transpose(0, 2, 1, 3).reshape(dA * dA, dB * dB)


def permute_indices(state, pi):
    """Permute the 2n axes (r_1..r_n, c_1..c_n) of the reshaped density matrix.

    The first n permuted axes index the rows of the result.
    """
    rho = as_density(state)
    dims = list(rho.dims)
    n = len(dims)
    pi = [int(p) for p in pi]
    if sorted(pi) != list(range(2 * n)):
        _fail('{} is not a permutation of the {:d} matrix indices'.format(pi, 2 * n), ArgumentError)
    ax = dims + dims
    rows = int(np.prod([ax[p] for p in pi[:n]]))
    return rho.matrix.reshape(ax).transpose(pi).reshape(rows, -1)


"""
spectra and norms
"""


def hermitian_spectrum(m):
    """Eigenvalues (nonincreasing) and eigenvectors (columns) of a Hermitian matrix.

    The input is symmetrized before the solve; ties keep ascending original order.

    Raises:
        ContractError -- Raised if m deviates from hermiticity beyond the tolerance
    """
    if isinstance(m, DensityMatrix):
        m = m.matrix
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        _fail('hermitian_spectrum needs a square matrix, got shape {}'.format(m.shape))
    dev = np.max(np.abs(m - m.conj().T)) if m.size else 0.
    if dev > glib.settings.tol.herm:
        _fail('matrix is not Hermitian (deviation {:.3e})'.format(dev))
    w, v = np.linalg.eigh((m + m.conj().T) / 2.)
    order = np.lexsort((np.arange(w.size), -w))
    return w[order], v[:, order]


def eigenvalues(m):
    return hermitian_spectrum(m)[0]


def trace_norm(m):
    """Sum of singular values."""
    if isinstance(m, DensityMatrix):
        m = m.matrix
    return float(np.sum(np.linalg.svd(np.asarray(m), compute_uv=False)))


def psd_sqrt(m):
    """Square root of a positive semidefinite matrix, small negative eigenvalues clipped."""
    w, v = hermitian_spectrum(m)
    w = np.clip(w, 0., None)
    return (v * np.sqrt(w)) @ v.conj().T


def schmidt(psi, split=None):
    """Schmidt decomposition of a pure state across a bipartition.

    Raises:
        NumericalError -- Raised if the decomposition does not reconstruct the state
    """
    psi = as_pure(psi)
    vec, dA, dB, split = group(psi, split)
    mat = vec.reshape(dA, dB)
    u, s, vh = np.linalg.svd(mat, full_matrices=False)
    left = u.T.copy()
    right = vh.copy()
    recon = np.einsum('i,ia,ib->ab', s, left, right).reshape(-1)
    err = np.linalg.norm(recon - vec)
    if err > glib.settings.tol.rec:
        _fail('Schmidt reconstruction error {:.3e} across {}'.format(err, split), NumericalError)
    rank = int(np.sum(s > glib.settings.tol.rank))
    return SchmidtData(s, left, right, rank)


"""
entropies
"""


def shannon_entropy(p):
    """Shannon entropy in bits with 0 log 0 = 0."""
    p = np.clip(np.asarray(p, dtype=float), 0., None)
    return float(np.sum(entr(p)) / np.log(2.))


def binary_entropy(x):
    return shannon_entropy([x, 1. - x])


def _alpha(alpha):
    try:
        alpha = float(alpha)
    except (TypeError, ValueError):
        _fail('alpha must be a real number, got {!r}'.format(alpha), ArgumentError)
    if np.isnan(alpha) or alpha < 0:
        _fail('alpha must be >= 0, got {}'.format(alpha), ArgumentError)
    return alpha


def renyi_from_spectrum(lam, alpha):
    alpha = _alpha(alpha)
    lam = np.clip(np.asarray(lam, dtype=float), 0., None)
    if alpha == 0:
        return float(np.log2(np.sum(lam > glib.settings.tol.rank)))
    if alpha == 1:
        return shannon_entropy(lam)
    if np.isinf(alpha):
        return float(-np.log2(np.max(lam)))
    lam = lam[lam > 0]
    return float(np.log2(np.sum(lam ** alpha)) / (1. - alpha))


def renyi_entropy(state, alpha):
    """Renyi alpha-entropy in bits; alpha=1 is von Neumann, alpha=inf the min-entropy.

    Raises:
        ArgumentError -- Raised if alpha is negative
    """
    alpha = _alpha(alpha)
    return renyi_from_spectrum(hermitian_spectrum(as_density(state).matrix)[0], alpha)


def von_neumann_entropy(state):
    return renyi_entropy(state, 1)


"""
common vectors and operators
"""


def basis_vector(index, dim):
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.
    return v


def swap_operator(d):
    """Swap V|ij> = |ji> on C^d (x) C^d."""
    v = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            v[j * d + i, i * d + j] = 1.
    return v


def maxent_vector(d):
    return np.eye(d, dtype=complex).reshape(-1) / np.sqrt(d)


def maxent_projector(d):
    v = maxent_vector(d)
    return np.outer(v, v.conj())
