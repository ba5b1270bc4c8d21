"""Separability criteria and the battery that combines them.

Every check returns a CriterionReport. A passing necessary criterion gives
INCONCLUSIVE; SEPARABLE is only reported where a sufficiency rule applies:
PPT on 2x2 and 2x3, Schmidt rank one for pure states and the closed form for the
GHZ-diagonal (Dur-Cirac) family.
"""
import logging
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
from itertools import permutations

import numpy as np

import entlab.entlab_lib as glib
from entlab.errors import ContractError, ArgumentError
from entlab.tensor_core import (PartitionSpec, as_density, as_pure, is_pure, group, hermitian_spectrum,
                                trace_norm, realign, permute_indices, renyi_from_spectrum, schmidt,
                                swap_operator, maxent_projector, partial_trace)
from entlab.states import make_bell, dur_cirac_weights, dur_cirac_partition_index

logger = logging.getLogger('entlab.separability')


class Verdict(object):
    """
    Enumeration with criterion verdicts.
    """
    ENTANGLED = 'ENTANGLED'
    SEPARABLE = 'SEPARABLE'
    INCONCLUSIVE = 'INCONCLUSIVE'


class Criterion(object):
    """
    Enumeration with criterion tokens, in report order.
    """
    PPT = 'ppt'
    REDUCTION = 'reduction'
    CHOI = 'choi'
    BREUER = 'breuer'
    REALIGN = 'realign'
    PERMUTE = 'permute'
    MAJORIZATION = 'majorization'
    ENTROPIC = 'entropic'
    DET2Q = 'det2q'
    WITNESS = 'witness'
    SCHMIDT = 'schmidt'
    DUR_CIRAC = 'durcirac'

    ORDER = [PPT, REDUCTION, CHOI, BREUER, REALIGN, PERMUTE, MAJORIZATION, ENTROPIC, DET2Q,
             WITNESS, SCHMIDT, DUR_CIRAC]


DEFAULT_CRITERIA = ['ppt', 'reduction', 'choi', 'breuer', 'realign', 'permute', 'majorization',
                    'entropic:1', 'entropic:2', 'entropic:inf', 'det2q', 'witness:swap',
                    'witness:fidelity', 'durcirac']

WITNESS_KINDS = ('swap', 'fidelity', 'chsh', 'custom')


def _fail(msg, exc=ContractError):
    logger.error(msg)
    raise exc(msg)


class CriterionReport(object):
    """Verdict of one criterion on one partition, with its numeric evidence.

    ``threshold`` is the decision boundary the evidence was compared against,
    tolerance included.
    """

    def __init__(self, criterion, partition, verdict, evidence, threshold, param=None,
                 witness_data=None, note=None):
        self.criterion = criterion
        self.partition = partition
        self.verdict = verdict
        self.evidence = float(evidence)
        self.threshold = float(threshold)
        self.param = param
        self.witness_data = witness_data
        self.note = note

    @property
    def name(self):
        return self.criterion if self.param is None else '{}:{}'.format(self.criterion, self.param)

    @property
    def entangled(self):
        return self.verdict == Verdict.ENTANGLED

    def sort_key(self):
        part = self.partition.key() if self.partition is not None else (0, ())
        return (Criterion.ORDER.index(self.criterion), str(self.param), part)

    def to_dict(self):
        out = OrderedDict()
        out['criterion'] = self.name
        out['partition'] = str(self.partition) if self.partition is not None else None
        out['verdict'] = self.verdict
        out['evidence'] = self.evidence
        out['threshold'] = self.threshold
        if self.note:
            out['note'] = self.note
        return out

    def __repr__(self):
        return 'CriterionReport({}, {}, {}, evidence={:.6g})'.format(
            self.name, self.partition, self.verdict, self.evidence)


def _verdict(violated, sufficient=False):
    if violated:
        return Verdict.ENTANGLED
    return Verdict.SEPARABLE if sufficient else Verdict.INCONCLUSIVE


def _grouped(state, split):
    rho = as_density(state)
    m, dA, dB, split = group(rho, split)
    return m, dA, dB, split


def _pt_right(m, dA, dB):
    return m.reshape(dA, dB, dA, dB).transpose(0, 3, 2, 1).reshape(dA * dB, dA * dB)


def _reductions(m, dA, dB):
    t = m.reshape(dA, dB, dA, dB)
    return np.einsum('ijkj->ik', t), np.einsum('ijil->jl', t)


"""
criteria
"""


def check_ppt(state, split=None):
    """Positive partial transpose criterion.

    Evidence is the smallest eigenvalue of the state partially transposed on the right
    part; the corresponding eigenvector is kept as witness data.
    """
    m, dA, dB, split = _grouped(state, split)
    w, v = hermitian_spectrum(_pt_right(m, dA, dB))
    tol = glib.settings.tol.eig
    sufficient = sorted((dA, dB)) in ([2, 2], [2, 3])
    return CriterionReport(Criterion.PPT, split, _verdict(w[-1] < -tol, sufficient), w[-1], -tol,
                           witness_data=v[:, -1])


def check_reduction(state, split=None):
    """Reduction criterion: rho_A (x) I - rho >= 0 and I (x) rho_B - rho >= 0."""
    m, dA, dB, split = _grouped(state, split)
    rho_a, rho_b = _reductions(m, dA, dB)
    ev_a = hermitian_spectrum(np.kron(rho_a, np.eye(dB)) - m)[0][-1]
    ev_b = hermitian_spectrum(np.kron(np.eye(dA), rho_b) - m)[0][-1]
    ev = min(ev_a, ev_b)
    tol = glib.settings.tol.eig
    return CriterionReport(Criterion.REDUCTION, split, _verdict(ev < -tol), ev, -tol)


def choi_map(x):
    """Choi's nondecomposable positive map on 3x3 matrices (acts on the last two axes)."""
    out = -np.array(x, dtype=complex)
    out[..., 0, 0] = x[..., 0, 0] + x[..., 2, 2]
    out[..., 1, 1] = x[..., 1, 1] + x[..., 0, 0]
    out[..., 2, 2] = x[..., 2, 2] + x[..., 1, 1]
    return out


def default_breuer_unitary(d):
    """Antisymmetric unitary antidiag(1, -1, 1, -1, ...) for even d."""
    u = np.zeros((d, d), dtype=complex)
    for i in range(d):
        u[i, d - 1 - i] = (-1) ** i
    return u


def breuer_hall_map(x, u):
    """Lambda(X) = Tr(X) I - X - U X^T U^dagger (acts on the last two axes)."""
    d = x.shape[-1]
    tr = np.trace(x, axis1=-2, axis2=-1)[..., None, None]
    xt = np.swapaxes(x, -1, -2)
    return tr * np.eye(d) - x - u @ xt @ u.conj().T


def _check_breuer_unitary(u, d):
    u = np.asarray(u, dtype=complex)
    if u.shape != (d, d):
        _fail('Breuer-Hall unitary must be {0}x{0}, got {1}'.format(d, u.shape), ArgumentError)
    if np.max(np.abs(u + u.T)) > 1e-10:
        _fail('Breuer-Hall unitary must be antisymmetric (U^T = -U)', ArgumentError)
    if np.max(np.abs(u.conj().T @ u - np.eye(d))) > 1e-10:
        _fail('Breuer-Hall matrix must be unitary', ArgumentError)
    return u


def check_map(state, map='choi', split=None, unitary=None):
    """Positive-map criterion with the map applied to the right part.

    Keyword Arguments:
        map {str} -- 'choi' (right part of dimension 3) or 'breuer' (even dimension) (default: {'choi'})
        split {PartitionSpec} -- bipartition (default: {None})
        unitary {array} -- antisymmetric unitary for the Breuer-Hall map (default: {None})

    Raises:
        ContractError -- Raised if the right dimension does not fit the map
        ArgumentError -- Raised if the Breuer-Hall matrix is not an antisymmetric unitary
    """
    m, dA, dB, split = _grouped(state, split)
    blocks = m.reshape(dA, dB, dA, dB).transpose(0, 2, 1, 3)
    if map == Criterion.CHOI:
        if dB != 3:
            _fail('the Choi map needs a right factor of dimension 3, got {:d}'.format(dB))
        out = choi_map(blocks)
    elif map == Criterion.BREUER:
        if dB % 2:
            _fail('the Breuer-Hall map needs an even right dimension, got {:d}'.format(dB))
        u = default_breuer_unitary(dB) if unitary is None else _check_breuer_unitary(unitary, dB)
        out = breuer_hall_map(blocks, u)
    else:
        _fail('unknown positive map {!r}'.format(map), ArgumentError)
    out = out.transpose(0, 2, 1, 3).reshape(dA * dB, dA * dB)
    ev = hermitian_spectrum(out)[0][-1]
    tol = glib.settings.tol.eig
    return CriterionReport(map, split, _verdict(ev < -tol), ev, -tol)


def check_realignment(state, split=None):
    """Realignment criterion: ||R(rho)||_1 <= 1 for separable states."""
    rho = as_density(state)
    split = group(rho, split)[3]
    ev = trace_norm(realign(rho, split)) - 1.
    tol = glib.settings.tol.eig
    return CriterionReport(Criterion.REALIGN, split, _verdict(ev > tol), ev, tol)


def permutation_set(n):
    """Index permutations giving inequivalent permutation criteria for n <= 3.

    Two permutations are equivalent when they put the same axes in the row half
    (up to swapping halves or exchanging every row index with its column index);
    the class of the identity is dropped.
    """
    if not 2 <= n <= 3:
        _fail('permutation criteria are enumerated for 2 or 3 subsystems, got {:d}'.format(n), ArgumentError)
    axes = frozenset(range(2 * n))

    def canon(rows):
        cols = axes - rows
        conj = [frozenset((a + n) % (2 * n) for a in s) for s in (rows, cols)]
        return min(tuple(sorted(s)) for s in [rows, cols] + conj)

    trivial = canon(frozenset(range(n)))
    seen = OrderedDict()
    for pi in permutations(range(2 * n)):
        key = canon(frozenset(pi[:n]))
        if key != trivial and key not in seen:
            seen[key] = pi
    return list(seen.values())


def check_permutation(state, pi):
    rho = as_density(state)
    ev = trace_norm(permute_indices(rho, pi)) - 1.
    tol = glib.settings.tol.eig
    param = ''.join(str(p) for p in pi)
    return CriterionReport(Criterion.PERMUTE, None, _verdict(ev > tol), ev, tol, param=param)


def _majorization_gap(lam, lam_local):
    lam = np.sort(np.clip(lam, 0., None))[::-1]
    local = np.zeros(lam.size)
    loc = np.sort(np.clip(lam_local, 0., None))[::-1]
    local[:loc.size] = loc
    return float(np.max(np.cumsum(lam) - np.cumsum(local)))


def check_majorization(state, split=None):
    """Global spectrum must be majorized by both local spectra."""
    m, dA, dB, split = _grouped(state, split)
    rho_a, rho_b = _reductions(m, dA, dB)
    lam = hermitian_spectrum(m)[0]
    ev = max(_majorization_gap(lam, hermitian_spectrum(rho_a)[0]),
             _majorization_gap(lam, hermitian_spectrum(rho_b)[0]))
    tol = glib.settings.tol.eig
    return CriterionReport(Criterion.MAJORIZATION, split, _verdict(ev > tol), ev, tol)


def check_entropic(state, split=None, alpha=2):
    """Renyi alpha-entropy inequality S(rho_X) <= S(rho) for X = A, B."""
    m, dA, dB, split = _grouped(state, split)
    rho_a, rho_b = _reductions(m, dA, dB)
    s_ab = renyi_from_spectrum(hermitian_spectrum(m)[0], alpha)
    s_a = renyi_from_spectrum(hermitian_spectrum(rho_a)[0], alpha)
    s_b = renyi_from_spectrum(hermitian_spectrum(rho_b)[0], alpha)
    ev = max(s_a, s_b) - s_ab
    tol = glib.settings.tol.ent
    return CriterionReport(Criterion.ENTROPIC, split, _verdict(ev > tol), ev, tol, param=_alpha_str(alpha))


def _alpha_str(alpha):
    alpha = float(alpha)
    if np.isinf(alpha):
        return 'inf'
    return '{:g}'.format(alpha)


def check_two_qubit_det(state):
    """Two-qubit state is separable iff det(rho^Gamma) >= 0."""
    rho = as_density(state)
    if rho.dims != (2, 2):
        _fail('det2q needs a two-qubit state, got dims {}'.format(rho.dims))
    ev = float(np.real(np.linalg.det(_pt_right(rho.matrix, 2, 2))))
    tol = glib.settings.tol.det
    return CriterionReport(Criterion.DET2Q, PartitionSpec([[0], [1]]), _verdict(ev < -tol, True), ev, -tol)


def schmidt_rank(psi, split=None):
    return schmidt(psi, split).rank


def check_schmidt(state, split=None):
    """Pure states are separable across a cut iff their Schmidt rank is one."""
    psi = as_pure(state)
    split = group(psi, split)[3]
    rank = schmidt_rank(psi, split)
    return CriterionReport(Criterion.SCHMIDT, split, _verdict(rank > 1, True), rank, 1)


def check_dur_cirac(state, split=None):
    """Closed-form partition rule for the GHZ-diagonal family lambda_k >= |Delta|/2."""
    rho = as_density(state)
    split = group(rho, split)[3]
    tol = glib.settings.tol.eig
    weights = dur_cirac_weights(rho)
    if weights is None:
        return CriterionReport(Criterion.DUR_CIRAC, split, Verdict.INCONCLUSIVE, 0., -tol,
                               note='not a member of the GHZ-diagonal family')
    lam0p, lam0m, lams = weights
    k = dur_cirac_partition_index(rho.n, split)
    ev = lams[k - 1] - abs(lam0p - lam0m) / 2.
    return CriterionReport(Criterion.DUR_CIRAC, split, _verdict(ev < -tol, True), ev, -tol)


"""
witnesses
"""


class WitnessOperator(object):
    """Hermitian operator with a negative eigenvalue, meant to be nonnegative on product states.

    Arguments:
        matrix {array} -- Hermitian matrix
        kind {str} -- one of 'swap', 'fidelity', 'chsh', 'custom'

    Keyword Arguments:
        dims {tuple} -- subsystem dimensions (default: {None})

    Raises:
        ContractError -- Raised if the matrix is not Hermitian or has no negative eigenvalue
    """

    def __init__(self, matrix, kind, dims=None):
        matrix = np.array(matrix, dtype=complex)
        if kind not in WITNESS_KINDS:
            _fail('unknown witness kind {!r}'.format(kind), ArgumentError)
        w = hermitian_spectrum(matrix)[0]
        if not w[-1] < -glib.settings.tol.eig:
            _fail('a witness needs a negative eigenvalue, smallest is {:.3e}'.format(w[-1]))
        if dims is None:
            d = int(round(np.sqrt(matrix.shape[0])))
            dims = (d, d)
        if int(np.prod(dims)) != matrix.shape[0]:
            _fail('witness dims {} do not match side {:d}'.format(dims, matrix.shape[0]))
        matrix.setflags(write=False)
        self.matrix = matrix
        self.kind = kind
        self.dims = tuple(dims)

    def product_minimum(self, samples=10000, seed=None):
        """Smallest expectation over sampled Haar product states and a basis grid."""
        dA, dB = self.dims[0], int(np.prod(self.dims[1:]))
        rng = glib.check_random_state(seed)
        a = rng.standard_normal((samples, dA)) + 1j * rng.standard_normal((samples, dA))
        b = rng.standard_normal((samples, dB)) + 1j * rng.standard_normal((samples, dB))
        grid_a, grid_b = _basis_grid(dA), _basis_grid(dB)
        a = np.vstack([a, np.repeat(grid_a, len(grid_b), axis=0)])
        b = np.vstack([b, np.tile(grid_b, (len(grid_a), 1))])
        a /= np.linalg.norm(a, axis=1)[:, None]
        b /= np.linalg.norm(b, axis=1)[:, None]
        v = np.einsum('sa,sb->sab', a, b).reshape(a.shape[0], -1)
        vals = np.real(np.einsum('si,ij,sj->s', v.conj(), self.matrix, v))
        return float(np.min(vals))

    def __repr__(self):
        return 'WitnessOperator(kind={}, dims={})'.format(self.kind, self.dims)


def _basis_grid(d):
    """Computational and Fourier basis vectors of C^d."""
    f = np.exp(2j * np.pi * np.outer(np.arange(d), np.arange(d)) / d) / np.sqrt(d)
    return np.vstack([np.eye(d, dtype=complex), f])


def make_witness(kind, d=2, settings=None, matrix=None, dims=None):
    """Build a witness operator.

    Arguments:
        kind {str} -- 'swap' (V on d x d), 'fidelity' (I/d - P+), 'chsh' (2 I - B) or 'custom'

    Keyword Arguments:
        d {int} -- local dimension for swap and fidelity witnesses (default: {2})
        settings {BellSettings} -- CHSH settings, optimal settings of the singlet if None (default: {None})
        matrix {array} -- matrix for a custom witness (default: {None})
        dims {tuple} -- dims for a custom witness (default: {None})
    """
    if kind == 'swap':
        return WitnessOperator(swap_operator(d), kind, (d, d))
    if kind == 'fidelity':
        return WitnessOperator(np.eye(d * d) / d - maxent_projector(d), kind, (d, d))
    if kind == 'chsh':
        from entlab.nonlocality import chsh_operator, optimal_chsh_settings
        if settings is None:
            settings = optimal_chsh_settings(make_bell(0))
        return WitnessOperator(2. * np.eye(4) - chsh_operator(settings), kind, (2, 2))
    if kind == 'custom':
        if matrix is None:
            _fail('a custom witness needs a matrix', ArgumentError)
        return WitnessOperator(matrix, kind, dims)
    _fail('unknown witness kind {!r}'.format(kind), ArgumentError)


def evaluate_witness(witness, state):
    """Tr(W rho); negative values beyond the tolerance flag entanglement."""
    rho = as_density(state)
    if rho.side != witness.matrix.shape[0]:
        _fail('witness side {:d} does not match state side {:d}'.format(witness.matrix.shape[0], rho.side))
    return float(np.real(np.trace(witness.matrix @ rho.matrix)))


def check_witness(state, witness, split=None):
    rho = as_density(state)
    m, dA, dB, split = group(rho, split)
    if dA * dB != witness.matrix.shape[0]:
        _fail('witness side {:d} does not match state side {:d}'.format(witness.matrix.shape[0], dA * dB))
    ev = float(np.real(np.trace(witness.matrix @ m)))
    tol = glib.settings.tol.eig
    return CriterionReport(Criterion.WITNESS, split, _verdict(ev < -tol), ev, -tol, param=witness.kind)


"""
battery
"""


def parse_criteria(tokens):
    """Parse tokens such as 'ppt', 'entropic:2', 'witness:swap' into (name, param) pairs."""
    out = []
    for token in tokens:
        name, _, param = token.strip().partition(':')
        if name not in Criterion.ORDER:
            _fail('unknown criterion {!r}'.format(token), ArgumentError)
        if name == Criterion.ENTROPIC:
            param = param or '2'
            try:
                alpha = float(param)
            except ValueError:
                _fail('entropic criterion needs a numeric alpha, got {!r}'.format(param), ArgumentError)
            if np.isnan(alpha) or alpha < 0:
                _fail('alpha must be >= 0, got {}'.format(param), ArgumentError)
            param = alpha
        elif name == Criterion.WITNESS:
            param = param or 'swap'
            if param not in ('swap', 'fidelity'):
                _fail('battery witnesses are swap and fidelity, got {!r}'.format(param), ArgumentError)
        elif param:
            _fail('criterion {} takes no parameter'.format(name), ArgumentError)
        else:
            param = None
        out.append((name, param))
    return out


class BatteryResult(object):
    """Reports of a battery run, the combined verdict and explanatory notes."""

    def __init__(self, reports, verdict, notes):
        self.reports = reports
        self.verdict = verdict
        self.notes = notes

    def fired(self):
        return [r for r in self.reports if r.entangled]

    def to_dict(self):
        out = OrderedDict()
        out['verdict'] = self.verdict
        out['reports'] = [r.to_dict() for r in self.reports]
        out['notes'] = list(self.notes)
        return out

    def __repr__(self):
        return 'BatteryResult({}, {:d} reports)'.format(self.verdict, len(self.reports))


def _partition_reports(rho, split, criteria, pure):
    m, dA, dB, split = group(rho, split)
    reports = []
    all_qubits = all(d == 2 for d in rho.dims)
    for name, param in criteria:
        if name == Criterion.PPT:
            reports.append(check_ppt(rho, split))
        elif name == Criterion.REDUCTION:
            reports.append(check_reduction(rho, split))
        elif name == Criterion.CHOI and dB == 3:
            reports.append(check_map(rho, Criterion.CHOI, split))
        elif name == Criterion.BREUER and dB % 2 == 0 and dB >= 4:
            reports.append(check_map(rho, Criterion.BREUER, split))
        elif name == Criterion.REALIGN:
            reports.append(check_realignment(rho, split))
        elif name == Criterion.MAJORIZATION:
            reports.append(check_majorization(rho, split))
        elif name == Criterion.ENTROPIC:
            reports.append(check_entropic(rho, split, param))
        elif name == Criterion.DET2Q and rho.dims == (2, 2):
            reports.append(check_two_qubit_det(rho))
        elif name == Criterion.WITNESS and dA == dB:
            reports.append(check_witness(rho, make_witness(param, dA), split))
        elif name == Criterion.DUR_CIRAC and all_qubits and rho.n >= 2:
            reports.append(check_dur_cirac(rho, split))
        else:
            logger.debug('{} skipped on {} ({:d}x{:d})'.format(name, split, dA, dB))
    if pure:
        reports.append(check_schmidt(rho, split))
    return reports


def battery(state, partitions=None, criteria=None, workers=None):
    """Run the criteria on every partition and combine the verdicts.

    Arguments:
        state {DensityMatrix or PureState} -- input state with at least two subsystems

    Keyword Arguments:
        partitions {list} -- bipartitions to test, all bipartitions if None (default: {None})
        criteria {list} -- criterion tokens, DEFAULT_CRITERIA if None (default: {None})
        workers {int} -- threads used across partitions, configured default if None (default: {None})

    Returns:
        BatteryResult -- sorted reports, combined verdict and notes
    """
    rho = as_density(state)
    n = rho.n
    if n < 2:
        _fail('the battery needs at least two subsystems', ArgumentError)
    if partitions is None:
        partitions = PartitionSpec.bipartitions(n)
    partitions = [p if isinstance(p, PartitionSpec) else PartitionSpec.parse(p) for p in partitions]
    for p in partitions:
        p.check(n)
    criteria = parse_criteria(DEFAULT_CRITERIA if criteria is None else criteria)
    workers = glib.settings.workers if workers is None else int(workers)
    pure = is_pure(rho)
    logger.debug('battery on {} with {:d} partitions, pure={}'.format(rho, len(partitions), pure))

    def job(split):
        return _partition_reports(rho, split, criteria, pure)

    if workers > 1 and len(partitions) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_partition = list(pool.map(job, partitions))
    else:
        per_partition = [job(p) for p in partitions]
    reports = [r for rs in per_partition for r in rs]
    if any(name == Criterion.PERMUTE for name, _ in criteria) and n == 3:
        reports.extend(check_permutation(rho, pi) for pi in permutation_set(n))
    reports.sort(key=CriterionReport.sort_key)

    notes = []
    if any(r.entangled for r in reports):
        verdict = Verdict.ENTANGLED
    elif pure and all(_site_factorizes(rho, i) for i in range(n)):
        verdict = Verdict.SEPARABLE
    elif n == 2 and any(r.verdict == Verdict.SEPARABLE for r in reports):
        verdict = Verdict.SEPARABLE
    else:
        verdict = Verdict.INCONCLUSIVE
        if n > 2:
            notes.append('no criterion fires on any tested bipartition; states separable under '
                         'every cut can still be entangled, which these criteria cannot decide')
        else:
            notes.append('every criterion passes; none of them is sufficient for these dimensions')
    logger.debug('battery verdict {} ({:d} reports)'.format(verdict, len(reports)))
    return BatteryResult(reports, verdict, notes)


def _site_factorizes(state, site):
    """True if a pure state factorizes as (site) x (rest)."""
    red = partial_trace(as_pure(state), [site])
    return hermitian_spectrum(red.matrix)[0][0] >= 1. - glib.settings.tol.rec
