"""Tests for the state and Kraus text formats and the JSON report."""
import json

import numpy as np
import pytest

import entlab.entlab_lib as glib
from entlab import __version__
from entlab.errors import ParseError, ContractError
from entlab.locc import phase_channel
from entlab.state_io import (parse_state, format_state, read_state, write_state, parse_kraus, format_kraus,
                             read_kraus, write_kraus, digest, ReportDocument)
from entlab.states import make_bell, random_density, random_pure
from entlab.tensor_core import DensityMatrix, PureState

BELL_TEXT = """QSTATE 1
# singlet
kind pure
dims 2 2

0 0
0.70710678118654757 0
-0.70710678118654757 0
0 0
"""


def test_parse_pure_state():
    psi = parse_state(BELL_TEXT)
    assert isinstance(psi, PureState)
    assert psi.dims == (2, 2)
    np.testing.assert_allclose(psi.vector, make_bell(0).vector, atol=1e-15)


def test_format_parse_identity():
    rho = random_density((2, 3), seed=11)
    back = parse_state(format_state(rho))
    assert isinstance(back, DensityMatrix)
    assert back.dims == (2, 3)
    assert np.array_equal(back.matrix, rho.matrix)
    psi = random_pure((3, 2), seed=12)
    assert np.array_equal(parse_state(format_state(psi)).vector, psi.vector)


@pytest.mark.parametrize('text, lineno', [
    ('QSTATE 2\nkind pure\ndims 2\n1 0\n0 0\n', 1),
    ('QSTATE 1\nkind mixed\ndims 2\n1 0\n0 0\n', 2),
    ('QSTATE 1\nkind pure\ndims 2 x\n1 0\n0 0\n', 3),
    ('QSTATE 1\nkind pure\ndims 2 0\n1 0\n0 0\n', 3),
    ('QSTATE 1\nkind pure\ndims 2\n1 0\n0\n', 5),
    ('QSTATE 1\nkind pure\ndims 2\n1 0\nnan 0\n', 5),
    ('QSTATE 1\nkind pure\ndims 2\n1 0\n0 0\n0 0\n', 6),
    ('QSTATE 1\nkind pure\ndims 2\n1 0\n1 0\n', 5),
])
def test_parse_state_errors(text, lineno):
    with pytest.raises(ParseError) as excinfo:
        parse_state(text, source='bad.qs')
    assert excinfo.value.lineno == lineno
    assert 'bad.qs: line {:d}'.format(lineno) in str(excinfo.value)


def test_parse_state_truncated():
    with pytest.raises(ParseError, match='unexpected end of input'):
        parse_state('QSTATE 1\nkind density\ndims 2\n1 0\n0 0\n')


def test_parse_state_size_limit():
    glib.settings.max_side = 4
    with pytest.raises(ParseError, match='exceeds'):
        parse_state('QSTATE 1\nkind pure\ndims 2 3\n')


def test_read_write_state(tmpdir):
    fn = str(tmpdir.join('bell.qs'))
    write_state(make_bell(3), fn)
    psi, data = read_state(fn)
    assert np.array_equal(psi.vector, make_bell(3).vector)
    assert data.decode('utf-8') == format_state(make_bell(3))
    bad = tmpdir.join('bad.qs')
    bad.write_binary(b'\xff\xfe')
    with pytest.raises(ParseError):
        read_state(str(bad))


def test_kraus_round_trip(tmpdir):
    ch = phase_channel(0.3)
    text = format_kraus(ch)
    assert text.splitlines()[:3] == ['QKRAUS 1', 'dims 2 2', 'count 2']
    back = parse_kraus(text)
    assert len(back) == 2
    for a, b in zip(back.kraus, ch.kraus):
        assert np.array_equal(a, b)
    fn = str(tmpdir.join('phase.qk'))
    write_kraus(ch, fn)
    assert len(read_kraus(fn)[0]) == 2


def test_kraus_not_trace_preserving():
    text = 'QKRAUS 1\ndims 1 1\ncount 2\n1 0\n1 0\n'
    with pytest.raises(ContractError):
        parse_kraus(text)
    with pytest.raises(ParseError):
        parse_kraus('QKRAUS 1\ndims 2\ncount 1\n1 0\n')


def test_read_kraus_not_utf8(tmpdir):
    bad = tmpdir.join('bad.qk')
    bad.write_binary(b'QKRAUS 1\n\xff\xfe\n')
    with pytest.raises(ParseError) as err:
        read_kraus(str(bad))
    assert err.value.lineno == 1


def test_digest():
    assert digest('abc') == 'ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad'
    assert digest(b'abc') == digest('abc')


def test_report_document():
    doc = ReportDocument('measure', input_digest='0' * 64)
    doc.add('value', np.float64(1. / 3.)).add('array', np.arange(2)).add('z', 1 + 2j).add('flag', np.bool_(True))
    out = doc.to_dict()
    assert list(out.keys()) == ['tool', 'version', 'command', 'input_digest', 'value', 'array', 'z', 'flag']
    assert out['tool'] == 'entlab'
    assert out['version'] == __version__
    assert out['value'] == 0.333333333333
    assert out['array'] == [0, 1]
    assert out['z'] == [1., 2.]
    assert out['flag'] is True
    assert json.loads(doc.to_json()) == json.loads(json.dumps(out))
    assert doc.to_json() == doc.to_json()


def test_report_write(tmpdir):
    fn = str(tmpdir.join('out.json'))
    ReportDocument('gen').add('recipe', 'bell k=3').write(fn)
    with open(fn) as fp:
        data = json.load(fp)
    assert data['command'] == 'gen'
    assert data['input_digest'] is None
