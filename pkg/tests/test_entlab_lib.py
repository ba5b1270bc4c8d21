"""Tests for settings, config helpers and random generators."""
from configparser import ConfigParser

import numpy as np
import pytest

import entlab.entlab_lib as glib
from entlab.errors import ArgumentError


def write_ini(tmpdir, text, name='entlab.ini'):
    ini = tmpdir.join(name)
    ini.write(text)
    return str(ini)


def test_defaults():
    s = glib.settings
    assert s.seed == 7
    assert s.samples == 10000
    assert s.wwzb_max_n == 6
    assert s.tol.cls == 1e-8
    assert s.loglevel == 'INFO'
    assert s.logfile is None
    assert '%(message)s' in s.logformat
    assert list(s.to_dict().keys()) == ['tolerances', 'limits', 'runtime', 'logging']


def test_ini_overrides_defaults(tmpdir):
    fn = write_ini(tmpdir, '[runtime]\nseed = 11  # comment\n\n[logging]\nlevel = debug\nlogfile = run.log\n'
                           'format = %(levelname)s %(message)s\n')
    s = glib.load_settings(fn, environ={})
    assert glib.settings is s
    assert s.seed == 11
    assert s.samples == 10000
    assert s.loglevel == 'DEBUG'
    assert s.logfile == 'run.log'
    assert s.logformat == '%(levelname)s %(message)s'
    assert s.to_dict()['runtime']['seed'] == '11'


def test_config_from_environment(tmpdir):
    fn = write_ini(tmpdir, '[limits]\nmax_side = 64\n')
    assert glib.load_settings(environ={'ENTLAB_CONFIG': fn}).max_side == 64


def test_tolerance_override():
    s = glib.load_settings(environ={'ENTLAB_TOL': '1e-6'})
    assert s.tol.herm == s.tol.tr == s.tol.eig == s.tol.rank == 1e-6
    assert s.tol.rec == 1e-8
    assert float(s.to_dict()['tolerances']['eig']) == 1e-6


@pytest.mark.parametrize('environ', [{'ENTLAB_TOL': 'abc'}, {'ENTLAB_TOL': '-1'}, {'ENTLAB_TOL': '0'}])
def test_bad_tolerance_override(environ):
    with pytest.raises(ArgumentError):
        glib.load_settings(environ=environ)


@pytest.mark.parametrize('text', ['[runtime]\nseed = seven\n', '[tolerances]\nherm = x\n',
                                  '[logging]\nlevel = LOUD\n'])
def test_bad_ini_values(tmpdir, text):
    with pytest.raises(ArgumentError):
        glib.load_settings(write_ini(tmpdir, text), environ={})


def test_missing_ini(tmpdir):
    with pytest.raises(ArgumentError):
        glib.load_settings(str(tmpdir.join('nope.ini')), environ={})


def test_configget_configset():
    cf = ConfigParser(interpolation=None)
    glib.configset(cf, 'runtime:seed', 3)
    assert glib.configget(cf, 'runtime:seed') == '3'
    assert glib.configget(cf, 'runtime:samples', fallback='10') == '10'
    assert glib.config2dict(cf) == {'runtime': {'seed': '3'}}
    with pytest.raises(ValueError):
        glib.configget(cf, 'seed')
    with pytest.raises(ValueError):
        glib.configset(cf, 'a:b:c', 1)


def test_configread_keeps_option_case(tmpdir):
    cf = glib.configread(write_ini(tmpdir, '[limits]\nMax_Side = 8\n'))
    assert cf.options('limits') == ['Max_Side']
    assert glib.Settings(cf).max_side == 8


def test_check_random_state():
    a = glib.check_random_state(3).standard_normal(4)
    b = glib.check_random_state(3).standard_normal(4)
    assert np.array_equal(a, b)
    rng = glib.check_random_state(5)
    assert glib.check_random_state(rng) is rng
    assert np.array_equal(glib.check_random_state().random(2), glib.check_random_state(7).random(2))
    for bad in [-1, 1.5, True]:
        with pytest.raises(ArgumentError):
            glib.check_random_state(bad)
