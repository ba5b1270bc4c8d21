import pytest

import entlab.entlab_lib as glib


@pytest.fixture(autouse=True)
def default_settings():
    """Each test starts from the built-in settings, independent of the environment."""
    glib.load_settings(environ={})
    yield
    glib.load_settings(environ={})
