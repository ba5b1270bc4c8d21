"""Exact density-matrix simulation of LOCC primitives.

Covers twirling, local filtering, the recurrence and hashing distillation protocols,
pure-state conversion (majorization), teleportation, dense coding, entanglement
swapping and the channel-state duality.
"""
import logging
from collections import OrderedDict

import numpy as np

import entlab.entlab_lib as glib
from entlab.errors import ContractError, ArgumentError, NotDistillableError, FilterFailure
from entlab.tensor_core import (DensityMatrix, I2, SX, SZ, as_density, as_pure,
                                hermitian_spectrum, partial_trace, psd_sqrt, swap_operator,
                                maxent_projector, maxent_vector, shannon_entropy, embed_operator,
                                partial_transpose)
from entlab.states import (make_werner, make_isotropic, bell_vectors, BELL_LABELS,
                           DENSE_CODING_OPS, make_bell, random_pure)
from entlab.separability import check_reduction, Verdict
from entlab.measures import coherent_information

logger = logging.getLogger('entlab.locc')

_KRAUS_TOL = 1e-10


def _fail(msg, exc=ContractError):
    logger.error(msg)
    raise exc(msg)


def _square_bipartite(rho):
    rho = as_density(rho)
    if rho.n != 2 or rho.dims[0] != rho.dims[1]:
        _fail('a d x d state is required, got dims {}'.format(rho.dims))
    return rho


"""
twirls
"""


def twirl_werner(rho):
    """Projection onto the U (x) U invariant states, keeping Tr(rho V)."""
    rho = _square_bipartite(rho)
    d = rho.dims[0]
    p = (1. - float(np.real(np.trace(swap_operator(d) @ rho.matrix)))) / 2.
    return make_werner(d, min(1., max(0., p)))


def twirl_isotropic(rho):
    """Projection onto the U (x) U* invariant states, keeping Tr(rho P+)."""
    rho = _square_bipartite(rho)
    d = rho.dims[0]
    F = float(np.real(np.trace(maxent_projector(d) @ rho.matrix)))
    return make_isotropic(d, min(1., max(0., F)))


"""
local filters
"""


class LocalFilter(object):
    """Product filter A (x) B with A^dagger A <= I and B^dagger B <= I.

    Raises:
        ContractError -- Raised if either operator has norm above one
    """

    def __init__(self, A, B):
        A = np.array(A, dtype=complex)
        B = np.array(B, dtype=complex)
        for name, op in [('A', A), ('B', B)]:
            if op.ndim != 2 or op.shape[0] != op.shape[1]:
                _fail('filter {} must be square, got shape {}'.format(name, op.shape))
            nrm = np.linalg.norm(op, 2)
            if nrm ** 2 > 1. + _KRAUS_TOL:
                _fail('filter {} violates {}^dagger {} <= I (norm {:.12g})'.format(name, name, name, nrm))
        self.A = A
        self.B = B

    @classmethod
    def normalized(cls, A, B):
        """Rescale A and B to unit operator norm; the filtered state is unchanged."""
        A = np.asarray(A, dtype=complex)
        B = np.asarray(B, dtype=complex)
        na, nb = np.linalg.norm(A, 2), np.linalg.norm(B, 2)
        if na == 0 or nb == 0:
            _fail('a filter operator is zero', FilterFailure)
        return cls(A / na, B / nb)

    @property
    def operator(self):
        return np.kron(self.A, self.B)

    def complement(self):
        """sqrt(I - A^dagger A) and sqrt(I - B^dagger B)."""
        ca = psd_sqrt(np.eye(self.A.shape[0]) - self.A.conj().T @ self.A)
        cb = psd_sqrt(np.eye(self.B.shape[0]) - self.B.conj().T @ self.B)
        return ca, cb

    def __repr__(self):
        return 'LocalFilter({:d}x{:d})'.format(self.A.shape[0], self.B.shape[0])


def _apply_product(rho, A, B):
    rho = as_density(rho)
    if rho.n != 2 or rho.dims != (A.shape[0], B.shape[0]):
        _fail('filter of shape {}x{} does not fit dims {}'.format(A.shape[0], B.shape[0], rho.dims))
    K = np.kron(A, B)
    out = K @ rho.matrix @ K.conj().T
    return out, float(np.real(np.trace(out)))


def local_filter(rho, f):
    """Apply a local filter and renormalize.

    Raises:
        FilterFailure -- Raised if the success probability is below the configured threshold

    Returns:
        tuple -- (DensityMatrix, success probability)
    """
    rho = as_density(rho)
    out, p = _apply_product(rho, f.A, f.B)
    if p < glib.settings.tol.prob:
        _fail('filter succeeds with probability {:.3e}'.format(p), FilterFailure)
    return DensityMatrix(out / p, rho.dims, validate=False), p


def filter_branches(rho, f):
    """Outcomes of the filter completed to a four-outcome local measurement.

    Returns:
        list -- (probability, state or None) for the branches A B, A B', A' B, A' B'
    """
    rho = as_density(rho)
    ca, cb = f.complement()
    out = []
    for A, B in [(f.A, f.B), (f.A, cb), (ca, f.B), (ca, cb)]:
        m, p = _apply_product(rho, A, B)
        state = DensityMatrix(m / p, rho.dims, validate=False) if p >= glib.settings.tol.prob else None
        out.append((p, state))
    return out


def filter_from_ppt_violation(rho):
    """Filter A (x) I that lifts the singlet fraction of an entangled two-qubit state above 1/2.

    A = U M^dagger with M = sqrt(2) reshape(psi), psi the eigenvector of the most
    negative eigenvalue of rho^Gamma and U mapping the singlet onto phi+.

    Raises:
        ContractError -- Raised if rho^Gamma has no negative eigenvalue
    """
    rho = as_density(rho)
    if rho.dims != (2, 2):
        _fail('a two-qubit state is required, got dims {}'.format(rho.dims))
    w, v = hermitian_spectrum(partial_transpose(rho, [1]))
    if not w[-1] < -glib.settings.tol.eig:
        _fail('state has a positive partial transpose (min eigenvalue {:.3e})'.format(w[-1]))
    M = np.sqrt(2.) * v[:, -1].reshape(2, 2)
    U = np.array([[0., -1.], [1., 0.]], dtype=complex)
    return LocalFilter.normalized(U @ M.conj().T, np.eye(2))


"""
distillation
"""


def recurrence_map(F):
    """Output fidelity of one recurrence round on an isotropic two-qubit pair."""
    F = float(F)
    if not 0. <= F <= 1.:
        _fail('fidelity must be in [0, 1], got {}'.format(F), ArgumentError)
    return _recurrence_num(F) / _recurrence_den(F)


def _recurrence_num(F):
    return F * F + (1. - F) ** 2 / 9.


def _recurrence_den(F):
    return F * F + 2. / 3. * F * (1. - F) + 5. / 9. * (1. - F) ** 2


def _bilateral_cnot():
    """CNOT A->A' times CNOT B->B' on qubits ordered (A, B, A', B')."""
    p0, p1 = np.diag([1., 0.]), np.diag([0., 1.])
    dims = (2, 2, 2, 2)
    cnot_a = embed_operator(np.kron(p0, I2) + np.kron(p1, SX), [0, 2], dims)
    cnot_b = embed_operator(np.kron(p0, I2) + np.kron(p1, SX), [1, 3], dims)
    return cnot_b @ cnot_a


def recurrence_step_exact(rho):
    """One recurrence round simulated on two copies.

    The input is twirled to isotropic form, both pairs go through the bilateral
    CNOT, the target pair is measured in the computational basis and kept when
    both outcomes agree; the kept source pair is twirled again.

    Returns:
        tuple -- (DensityMatrix, success probability)
    """
    rho = twirl_isotropic(_square_bipartite(rho))
    if rho.dims != (2, 2):
        _fail('the recurrence protocol acts on qubit pairs')
    two = np.kron(rho.matrix, rho.matrix)
    C = _bilateral_cnot()
    two = C @ two @ C.conj().T
    keep = np.zeros(16)
    for i in range(16):
        a_t, b_t = (i >> 1) & 1, i & 1
        keep[i] = float(a_t == b_t)
    proj = np.diag(keep)
    kept = proj @ two @ proj
    p = float(np.real(np.trace(kept)))
    if p < glib.settings.tol.prob:
        _fail('recurrence round succeeds with probability {:.3e}'.format(p), FilterFailure)
    red = partial_trace(DensityMatrix(kept / p, (2, 2, 2, 2), validate=False), [0, 1])
    return twirl_isotropic(red), p


class DistillationTrace(object):
    """Rounds of a distillation run with fidelity, success probability and surviving fraction."""

    def __init__(self, f0, target):
        self.f0 = f0
        self.target = target
        self.rounds = []

    def add(self, F, p_success, surviving):
        rec = OrderedDict()
        rec['round'] = len(self.rounds) + 1
        rec['F'] = float(F)
        rec['p_success'] = float(p_success)
        rec['surviving_fraction'] = float(surviving)
        self.rounds.append(rec)

    @property
    def final_fidelity(self):
        return self.rounds[-1]['F'] if self.rounds else self.f0

    @property
    def final_yield_estimate(self):
        return self.rounds[-1]['surviving_fraction'] if self.rounds else 1.

    @property
    def reached(self):
        return self.final_fidelity >= self.target

    def to_dict(self):
        out = OrderedDict()
        out['f0'] = self.f0
        out['target'] = self.target
        out['rounds'] = list(self.rounds)
        out['final_fidelity'] = self.final_fidelity
        out['final_yield_estimate'] = self.final_yield_estimate
        out['reached'] = self.reached
        return out

    def __repr__(self):
        return 'DistillationTrace(rounds={:d}, F={:.6f})'.format(len(self.rounds), self.final_fidelity)


def distill_recurrence(f0, target=0.99, max_rounds=50, exact=False):
    """Iterate the recurrence protocol from fidelity f0 until target or max_rounds.

    Keyword Arguments:
        target {float} -- fidelity to reach (default: {0.99})
        max_rounds {int} -- round limit (default: {50})
        exact {bool} -- simulate each round on density matrices instead of the closed form (default: {False})

    Raises:
        NotDistillableError -- Raised if f0 <= 1/2
        ArgumentError -- Raised if f0 or target is outside [0, 1]

    Returns:
        DistillationTrace -- per-round records
    """
    f0, target = float(f0), float(target)
    if not (0. <= f0 <= 1. and 0. <= target <= 1.):
        _fail('fidelities must be in [0, 1], got f0={} target={}'.format(f0, target), ArgumentError)
    if f0 <= 0.5:
        _fail('recurrence needs F > 1/2, got {}'.format(f0), NotDistillableError)
    trace = DistillationTrace(f0, target)
    F, surviving = f0, 1.
    while F < target and len(trace.rounds) < int(max_rounds):
        if exact:
            state, p = recurrence_step_exact(make_isotropic(2, F))
            F = float(np.real(np.trace(maxent_projector(2) @ state.matrix)))
        else:
            p = _recurrence_den(F)
            F = recurrence_map(F)
        surviving *= p / 2.
        trace.add(F, p, surviving)
        logger.debug('round {:d}: F={:.12g} p={:.12g}'.format(len(trace.rounds), F, p))
    if not trace.reached:
        logger.warning('target fidelity {} not reached after {:d} rounds'.format(target, len(trace.rounds)))
    return trace


def hashing_rate(p):
    """One-way hashing yield max(0, 1 - H(p)/m) per pair for a Bell-diagonal distribution of length 4^m."""
    p = np.asarray(p, dtype=float).reshape(-1)
    m = int(round(np.log(p.size) / np.log(4.))) if p.size > 0 else 0
    if m < 1 or 4 ** m != p.size:
        _fail('hashing needs 4^m probabilities, got {:d}'.format(p.size), ArgumentError)
    if np.any(p < -glib.settings.tol.tr) or abs(p.sum() - 1.) > glib.settings.tol.tr:
        _fail('hashing input must be a probability vector', ArgumentError)
    return max(0., 1. - shannon_entropy(p) / m)


def reduction_distillable(rho, split=None):
    """True when the reduction criterion is violated, which makes the state distillable."""
    return check_reduction(rho, split).verdict == Verdict.ENTANGLED


"""
pure-state transformations
"""


def _schmidt_weights(lam, name):
    lam = np.asarray(lam, dtype=float).reshape(-1)
    if np.any(lam < -glib.settings.tol.tr) or abs(lam.sum() - 1.) > glib.settings.tol.tr:
        _fail('{} must be a probability vector'.format(name), ArgumentError)
    return np.sort(np.clip(lam, 0., None))[::-1]


def _pad(a, b):
    n = max(a.size, b.size)
    return np.pad(a, (0, n - a.size)), np.pad(b, (0, n - b.size))


def nielsen_can_transform(lam_psi, lam_phi):
    """True if psi -> phi by LOCC, i.e. lambda_psi is majorized by lambda_phi."""
    a, b = _pad(_schmidt_weights(lam_psi, 'lam_psi'), _schmidt_weights(lam_phi, 'lam_phi'))
    return bool(np.all(np.cumsum(a) <= np.cumsum(b) + glib.settings.tol.eig))


def vidal_probability(lam_psi, lam_phi):
    """Optimal conversion probability min_k E_k(psi)/E_k(phi)."""
    a, b = _pad(_schmidt_weights(lam_psi, 'lam_psi'), _schmidt_weights(lam_phi, 'lam_phi'))
    if np.all(np.cumsum(a) <= np.cumsum(b) + glib.settings.tol.eig):
        return 1.
    ea = np.cumsum(a[::-1])[::-1]
    eb = np.cumsum(b[::-1])[::-1]
    ok = eb > glib.settings.tol.eig
    return float(min(1., np.min(ea[ok] / eb[ok])))


def catalysis_holds(lam_psi, lam_phi, lam_cat):
    """Check whether a borrowed state makes psi -> phi possible.

    The catalyst is returned untouched: psi x cat -> phi x cat is decided with the
    same majorization test on the product Schmidt coefficients.

    Arguments:
        lam_psi {array_like} -- Schmidt coefficients of the source state
        lam_phi {array_like} -- Schmidt coefficients of the target state
        lam_cat {array_like} -- Schmidt coefficients of the catalyst

    Returns:
        OrderedDict -- direct, assisted and catalytic (assisted but not direct)
    """
    a = _schmidt_weights(lam_psi, 'lam_psi')
    b = _schmidt_weights(lam_phi, 'lam_phi')
    c = _schmidt_weights(lam_cat, 'lam_cat')
    out = OrderedDict()
    out['direct'] = nielsen_can_transform(a, b)
    out['assisted'] = nielsen_can_transform(np.outer(a, c).ravel(), np.outer(b, c).ravel())
    out['catalytic'] = out['assisted'] and not out['direct']
    logger.debug('catalysis {} -> {} with {}: {}'.format(a, b, c, dict(out)))
    return out


def find_catalyst(lam_psi, lam_phi, steps=1000):
    """Scan two-level catalysts (p, 1 - p), 1/2 < p < 1, for one that enables psi -> phi.

    A maximally entangled catalyst never helps, so p = 1/2 is skipped.

    Returns:
        ndarray -- the first catalyst on the grid, None if psi -> phi works directly or no grid point helps
    """
    if nielsen_can_transform(lam_psi, lam_phi):
        return None
    if steps < 2:
        _fail('steps must be at least 2, got {}'.format(steps), ArgumentError)
    for p in np.arange(1, steps) / (2. * steps) + 0.5:
        cat = np.array([p, 1. - p])
        if catalysis_holds(lam_psi, lam_phi, cat)['catalytic']:
            return cat
    return None


"""
teleportation, dense coding and swapping
"""

TELEPORT_MODES = ('twirl', 'axial', 'haar')


def _axial_states():
    s = np.sqrt(0.5)
    return [np.array(v, dtype=complex) for v in
            [[1, 0], [0, 1], [s, s], [s, -s], [s, 1j * s], [s, -1j * s]]]


def _teleport_channel(resource):
    """Kraus-like pieces of teleportation through the resource with corrections for its best Bell state."""
    bells = bell_vectors()
    overlaps = np.real(np.einsum('ka,ab,kb->k', bells.conj(), resource, bells))
    ref = int(np.argmax(overlaps))
    R = bells[ref].reshape(2, 2)
    corrections = [2. * (b.reshape(2, 2).conj() @ R).T for b in bells]

    def channel(sigma):
        big = np.kron(sigma, resource).reshape(4, 2, 4, 2)
        out = np.zeros((2, 2), dtype=complex)
        for b, K in zip(bells, corrections):
            # Bob's unnormalized state after the Bell outcome b on (input, Alice)
            bob = np.einsum('i,iajb,j->ab', b.conj(), big, b)
            out += K.conj().T @ bob @ K
        return out

    return channel, ref, float(overlaps[ref])


def simulate_teleportation(resource, input_state=None, mode='twirl', samples=None, seed=None):
    """Standard teleportation of one qubit through a two-qubit resource.

    Arguments:
        resource {DensityMatrix or PureState} -- shared two-qubit state

    Keyword Arguments:
        input_state {PureState} -- single input whose fidelity is reported as well (default: {None})
        mode {str} -- 'twirl' averages the isotropically twirled resource over the six axial
            inputs, 'axial' uses the raw resource, 'haar' samples Haar inputs (default: {'twirl'})
        samples {int} -- Haar samples, configured default if None (default: {None})
        seed {int} -- seed for Haar sampling (default: {None})

    Returns:
        OrderedDict -- average fidelity, the Bell reference, its overlap F and (2F+1)/3
    """
    rho = as_density(resource)
    if rho.dims != (2, 2):
        _fail('teleportation needs a two-qubit resource, got dims {}'.format(rho.dims))
    if mode not in TELEPORT_MODES:
        _fail('unknown teleportation mode {!r}'.format(mode), ArgumentError)
    res = rho.matrix
    channel, ref, F = _teleport_channel(res)
    if mode == 'twirl':
        b = bell_vectors()[ref]
        proj = np.outer(b, b.conj())
        res_t = F * proj + (1. - F) / 3. * (np.eye(4) - proj)
        channel = _teleport_channel(res_t)[0]
    if mode == 'haar':
        samples = glib.settings.samples if samples is None else int(samples)
        rng = glib.check_random_state(seed)
        inputs = [random_pure((2, ), rng).vector for _ in range(samples)]
    else:
        inputs = _axial_states()
    fids = [np.real(v.conj() @ channel(np.outer(v, v.conj())) @ v) for v in inputs]
    out = OrderedDict()
    out['mode'] = mode
    out['reference'] = BELL_LABELS[ref]
    out['bell_fidelity'] = F
    out['average_fidelity'] = float(np.mean(fids))
    out['predicted'] = (2. * F + 1.) / 3.
    if input_state is not None:
        v = as_pure(input_state).vector
        if v.size != 2:
            _fail('teleportation input must be a qubit')
        out['input_fidelity'] = float(np.real(v.conj() @ channel(np.outer(v, v.conj())) @ v))
    logger.debug('teleportation {}: {:.12g}'.format(mode, out['average_fidelity']))
    return out


def simulate_dense_coding():
    """Encode two bits on psi- by local Paulis on Alice's qubit and decode by a Bell measurement.

    Returns:
        OrderedDict -- largest overlap between distinct codewords, decoding probabilities and bits sent
    """
    psi = make_bell(0).vector
    words = np.array([np.kron(op, I2) @ psi for op in DENSE_CODING_OPS])
    gram = np.abs(words.conj() @ words.T)
    decode = np.abs(words.conj() @ bell_vectors().T) ** 2
    # mutual information for uniform messages
    joint = decode / 4.
    p_out = joint.sum(axis=0)
    bits = shannon_entropy(p_out) - float(np.sum([shannon_entropy(row) for row in decode]) / 4.)
    out = OrderedDict()
    out['max_overlap'] = float(np.max(gram - np.eye(4)))
    out['decode_probabilities'] = [float(decode[k, k]) for k in range(4)]
    out['bits'] = bits
    return out


def simulate_swapping():
    """Bell measurement on B, C of phi+_AB (x) phi+_CD.

    Returns:
        OrderedDict -- per outcome: probability, Bell fidelity of AD and phi+ fidelity after David's correction
    """
    phi = make_bell(3).vector
    v = np.kron(phi, phi).reshape(2, 2, 2, 2)
    outcomes = []
    for k, b in enumerate(bell_vectors()):
        M = np.einsum('bc,abcd->ad', b.reshape(2, 2).conj(), v)
        p = float(np.real(np.vdot(M, M)))
        ad = M.reshape(-1) / np.sqrt(p)
        bell_fid = float(np.max(np.abs(bell_vectors().conj() @ ad) ** 2))
        fids = [np.abs(np.vdot(phi, np.kron(I2, op) @ ad)) ** 2 for op in DENSE_CODING_OPS]
        rec = OrderedDict()
        rec['outcome'] = BELL_LABELS[k]
        rec['probability'] = p
        rec['bell_fidelity'] = bell_fid
        rec['correction'] = int(np.argmax(fids))
        rec['corrected_fidelity'] = float(np.max(fids))
        outcomes.append(rec)
    out = OrderedDict()
    out['outcomes'] = outcomes
    out['total_probability'] = float(sum(r['probability'] for r in outcomes))
    return out


"""
channels
"""


class KrausChannel(object):
    """Trace-preserving channel sum_i V_i rho V_i^dagger.

    Arguments:
        kraus {list} -- Kraus operators of shape (dout, din)

    Raises:
        ContractError -- Raised if the operators have mixed shapes or sum V^dagger V != I
    """

    def __init__(self, kraus):
        ops = [np.array(k, dtype=complex) for k in kraus]
        if not ops:
            _fail('a channel needs at least one Kraus operator')
        shape = ops[0].shape
        if len(shape) != 2 or any(k.shape != shape for k in ops):
            _fail('Kraus operators must share one matrix shape')
        total = sum(k.conj().T @ k for k in ops)
        err = np.max(np.abs(total - np.eye(shape[1])))
        if err > _KRAUS_TOL:
            _fail('Kraus operators are not trace preserving (deviation {:.3e})'.format(err))
        self.kraus = ops
        self.dout, self.din = shape

    def apply(self, rho):
        rho = as_density(rho)
        if rho.side != self.din:
            _fail('channel input dimension {:d} does not match state side {:d}'.format(self.din, rho.side))
        out = sum(k @ rho.matrix @ k.conj().T for k in self.kraus)
        return DensityMatrix(out, (self.dout, ), validate=False)

    def __len__(self):
        return len(self.kraus)

    def __repr__(self):
        return 'KrausChannel({:d} ops, {:d}->{:d})'.format(len(self.kraus), self.din, self.dout)


def identity_channel(d):
    return KrausChannel([np.eye(int(d))])


def phase_channel(p):
    """Qubit channel with Kraus operators sqrt(p) I and sqrt(1-p) Z."""
    p = float(p)
    if not 0. <= p <= 1.:
        _fail('p must be in [0, 1], got {}'.format(p), ArgumentError)
    return KrausChannel([np.sqrt(p) * I2, np.sqrt(1. - p) * SZ])


def depolarizing_channel(d, p=1.):
    """rho -> (1-p) rho + p I/d, built from the generalized Pauli operators X^a Z^b."""
    d, p = int(d), float(p)
    if d < 2 or not 0. <= p <= 1.:
        _fail('need d >= 2 and p in [0, 1], got d={} p={}'.format(d, p), ArgumentError)
    shift = np.roll(np.eye(d), 1, axis=0)
    clock = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
    ops = [np.sqrt(1. - p) * np.eye(d)] if p < 1. else []
    for a in range(d):
        for b in range(d):
            ops.append(np.sqrt(p) / d * np.linalg.matrix_power(shift, a) @ np.linalg.matrix_power(clock, b))
    return KrausChannel(ops)


def channel_to_state(ch):
    """Choi state (I (x) Lambda)(P+) on din x dout; its left reduction is I/din."""
    d = ch.din
    phi = maxent_vector(d).reshape(d, d)
    out = np.zeros((d * ch.dout, d * ch.dout), dtype=complex)
    for k in ch.kraus:
        v = (phi @ k.T).reshape(-1)
        out += np.outer(v, v.conj())
    state = DensityMatrix(out, (d, ch.dout), validate=False)
    left = partial_trace(state, [0]).matrix
    err = np.max(np.abs(left - np.eye(d) / d))
    if err > _KRAUS_TOL:
        _fail('Choi state left reduction deviates from I/d by {:.3e}'.format(err))
    return state


def state_coherent_info(rho):
    return coherent_information(rho)
