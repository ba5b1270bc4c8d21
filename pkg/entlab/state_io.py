"""Text formats for states and Kraus channels, and the JSON report document.

State file::

    QSTATE 1
    kind pure|density
    dims 2 2
    <re> <im>          one line per entry, row-major

Kraus file::

    QKRAUS 1
    dims <din> <dout>
    count <N>
    <re> <im>          N blocks of dout x din entries, row-major

Blank lines and lines starting with '#' are ignored.
"""
import codecs
import hashlib
import json
import logging
from collections import OrderedDict

import numpy as np

import entlab.entlab_lib as glib
from entlab.errors import ParseError, ContractError
from entlab.tensor_core import DensityMatrix, PureState
from entlab.locc import KrausChannel

logger = logging.getLogger('entlab.state_io')

STATE_MAGIC = 'QSTATE 1'
KRAUS_MAGIC = 'QKRAUS 1'
_FMT = '{:.17g} {:.17g}'


def _parse_error(msg, lineno=None, source=None):
    err = ParseError(msg, lineno, source)
    logger.error(str(err))
    raise err


def _lines(text):
    """(lineno, stripped line) pairs without blanks and comments."""
    for i, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if line and not line.startswith('#'):
            yield i, line


class _Reader(object):

    def __init__(self, text, source):
        self.items = list(_lines(text))
        self.pos = 0
        self.source = source

    @property
    def lineno(self):
        if self.pos < len(self.items):
            return self.items[self.pos][0]
        return self.items[-1][0] if self.items else 1

    def next(self, what):
        if self.pos >= len(self.items):
            _parse_error('unexpected end of input, expected {}'.format(what), self.lineno, self.source)
        item = self.items[self.pos]
        self.pos += 1
        return item

    def keyword(self, key):
        lineno, line = self.next(key)
        parts = line.split()
        if parts[0] != key or len(parts) < 2:
            _parse_error('expected "{} ...", got {!r}'.format(key, line), lineno, self.source)
        return lineno, parts[1:]

    def ints(self, key, count=None):
        lineno, parts = self.keyword(key)
        try:
            vals = [int(p) for p in parts]
        except ValueError:
            _parse_error('{} must be integers, got {!r}'.format(key, ' '.join(parts)), lineno, self.source)
        if count is not None and len(vals) != count:
            _parse_error('{} needs {:d} values, got {:d}'.format(key, count, len(vals)), lineno, self.source)
        if any(v < 1 for v in vals):
            _parse_error('{} must be positive'.format(key), lineno, self.source)
        return lineno, vals

    def complex_entries(self, count):
        out = np.empty(count, dtype=complex)
        for k in range(count):
            lineno, line = self.next('{:d} entries'.format(count))
            parts = line.split()
            if len(parts) != 2:
                _parse_error('expected "re im", got {!r}'.format(line), lineno, self.source)
            try:
                out[k] = complex(float(parts[0]), float(parts[1]))
            except ValueError:
                _parse_error('cannot parse number in {!r}'.format(line), lineno, self.source)
            if not np.isfinite(out[k]):
                _parse_error('non-finite entry {!r}'.format(line), lineno, self.source)
        return out

    def expect_end(self):
        if self.pos < len(self.items):
            lineno, line = self.items[self.pos]
            _parse_error('unexpected trailing content {!r}'.format(line), lineno, self.source)


def parse_state(text, source=None):
    """Parse a state document.

    Arguments:
        text {str} -- document text

    Keyword Arguments:
        source {str} -- name used in error messages (default: {None})

    Raises:
        ParseError -- Raised on a bad header, wrong entry count or a payload that is not a state

    Returns:
        PureState or DensityMatrix
    """
    rd = _Reader(text, source)
    lineno, line = rd.next('header')
    if line != STATE_MAGIC:
        _parse_error('bad magic {!r}, expected {!r}'.format(line, STATE_MAGIC), lineno, source)
    lineno, kind = rd.keyword('kind')
    kind = kind[0]
    if kind not in ('pure', 'density'):
        _parse_error('kind must be pure or density, got {!r}'.format(kind), lineno, source)
    dims_line, dims = rd.ints('dims')
    side = int(np.prod(dims))
    if side > glib.settings.max_side:
        _parse_error('side {:d} exceeds the configured maximum {:d}'.format(side, glib.settings.max_side),
                     dims_line, source)
    count = side if kind == 'pure' else side * side
    entries = rd.complex_entries(count)
    last = rd.lineno
    rd.expect_end()
    try:
        if kind == 'pure':
            return PureState(entries, dims)
        return DensityMatrix(entries.reshape(side, side), dims)
    except ContractError as e:
        _parse_error('payload is not a valid {} state: {}'.format(kind, e), last, source)


def read_state(fn):
    """Read a state file; returns (state, raw bytes)."""
    with open(fn, 'rb') as fp:
        data = fp.read()
    try:
        text = data.decode('utf-8')
    except UnicodeDecodeError:
        _parse_error('file is not utf-8 text', 1, fn)
    return parse_state(text, source=fn), data


def format_state(state):
    """Serialize with 17 significant digits so that parsing returns identical values."""
    if isinstance(state, PureState):
        kind, entries = 'pure', state.vector
    else:
        kind, entries = 'density', state.matrix.reshape(-1)
    lines = [STATE_MAGIC, 'kind {}'.format(kind), 'dims {}'.format(' '.join(str(d) for d in state.dims))]
    lines.extend(_FMT.format(z.real, z.imag) for z in entries)
    return '\n'.join(lines) + '\n'


def write_state(state, fn):
    with codecs.open(fn, 'w', encoding='utf-8') as fp:
        fp.write(format_state(state))


def parse_kraus(text, source=None):
    """Parse a Kraus document into a KrausChannel.

    Raises:
        ParseError -- Raised on a malformed document
        ContractError -- Raised if the operators are not trace preserving
    """
    rd = _Reader(text, source)
    lineno, line = rd.next('header')
    if line != KRAUS_MAGIC:
        _parse_error('bad magic {!r}, expected {!r}'.format(line, KRAUS_MAGIC), lineno, source)
    _, (din, dout) = rd.ints('dims', 2)
    _, (count, ) = rd.ints('count', 1)
    ops = [rd.complex_entries(din * dout).reshape(dout, din) for _ in range(count)]
    rd.expect_end()
    return KrausChannel(ops)


def read_kraus(fn):
    with open(fn, 'rb') as fp:
        data = fp.read()
    try:
        text = data.decode('utf-8')
    except UnicodeDecodeError:
        _parse_error('file is not utf-8 text', 1, fn)
    return parse_kraus(text, source=fn), data


def format_kraus(channel):
    lines = [KRAUS_MAGIC, 'dims {:d} {:d}'.format(channel.din, channel.dout),
             'count {:d}'.format(len(channel.kraus))]
    for op in channel.kraus:
        lines.extend(_FMT.format(z.real, z.imag) for z in op.reshape(-1))
    return '\n'.join(lines) + '\n'


def write_kraus(channel, fn):
    with codecs.open(fn, 'w', encoding='utf-8') as fp:
        fp.write(format_kraus(channel))


"""
reports
"""


def digest(data):
    """sha256 hex digest of bytes or text."""
    if not isinstance(data, bytes):
        data = str(data).encode('utf-8')
    return hashlib.sha256(data).hexdigest()


def _plain(obj):
    """Convert to JSON types; floats rounded to 12 significant digits."""
    if hasattr(obj, 'to_dict'):
        return _plain(obj.to_dict())
    if isinstance(obj, dict):
        return OrderedDict((str(k), _plain(v)) for k, v in obj.items())
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plain(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float('{:.12g}'.format(float(obj)))
    if isinstance(obj, (complex, np.complexfloating)):
        return [_plain(obj.real), _plain(obj.imag)]
    return obj


class ReportDocument(object):
    """Deterministic JSON report: tool, version, command, input digest, then result items.

    Arguments:
        command {str} -- command name

    Keyword Arguments:
        input_digest {str} -- sha256 of the input bytes or recipe text (default: {None})
    """

    def __init__(self, command, input_digest=None):
        from entlab import __version__
        self.header = OrderedDict([('tool', 'entlab'), ('version', __version__), ('command', command),
                                   ('input_digest', input_digest)])
        self.items = OrderedDict()

    def add(self, key, value):
        self.items[key] = value
        return self

    def to_dict(self):
        out = OrderedDict(self.header)
        out.update(self.items)
        return _plain(out)

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + '\n'

    def write(self, fn):
        with codecs.open(fn, 'w', encoding='utf-8') as fp:
            fp.write(self.to_json())
