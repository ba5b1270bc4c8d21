"""Tests for the logging set-up."""
import logging

import pytest

import entlab.entlab_lib as glib
from entlab.errors import ArgumentError
from entlab.utils import setlogger, closelogger


@pytest.fixture
def configured(tmpdir):
    log = tmpdir.join('run.log')
    ini = tmpdir.join('entlab.ini')
    ini.write('[logging]\nlevel = WARNING\nlogfile = {}\nformat = %(levelname)s:%(name)s:%(message)s\n'.format(log))
    return glib.load_settings(str(ini), environ={}), log


def test_setlogger_from_settings(configured):
    settings, log = configured
    root = setlogger(settings, show_in_console=False)
    try:
        assert root.name == 'entlab'
        assert root.level == logging.WARNING
        logging.getLogger('entlab.measures').info('hidden')
        logging.getLogger('entlab.measures').warning('shown')
    finally:
        closelogger(root)
    assert log.read() == 'WARNING:entlab.measures:shown\n'


def test_setlogger_arguments_override_settings(configured, tmpdir):
    settings, log = configured
    other = tmpdir.join('other.log')
    root = setlogger(settings, level='debug', logfilename=str(other), show_in_console=False)
    try:
        assert root.level == logging.DEBUG
        assert len(root.handlers) == 1
    finally:
        closelogger(root)
    assert 'File logging to' in other.read()
    assert not log.check()


def test_setlogger_uses_global_settings():
    root = setlogger()
    try:
        assert root.level == logging.INFO
        assert [type(h) for h in root.handlers] == [logging.StreamHandler]
        assert not root.propagate
    finally:
        closelogger(root)
    assert root.handlers == []
    assert root.propagate


def test_setlogger_errors(tmpdir):
    with pytest.raises(ArgumentError):
        setlogger(level='LOUD')
    with pytest.raises(ArgumentError):
        setlogger(logfilename=str(tmpdir.join('missing', 'run.log')), show_in_console=False)
    closelogger(logging.getLogger('entlab'))
