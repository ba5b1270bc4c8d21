import codecs
import os
import logging
from configparser import ConfigParser
from collections import OrderedDict

import numpy as np

from entlab.errors import ArgumentError

logger = logging.getLogger('entlab.lib')

ENV_CONFIG = 'ENTLAB_CONFIG'
ENV_TOL = 'ENTLAB_TOL'

"""
config functions
"""


def configread(config_fn, encoding='utf-8', cf=None):
    """read configuration from file"""
    if cf is None:
        cf = ConfigParser(inline_comment_prefixes=('#', ), interpolation=None)
    cf.optionxform = str  # preserve capital letter
    with codecs.open(config_fn, 'r', encoding=encoding) as fp:
        cf.read_file(fp)
    return cf


def configget(config, attribute_name, fallback=None):
    """get value from config attribute_name (name:option)"""
    attrpath = attribute_name.split(":")
    if len(attrpath) == 2:
        return config.get(attrpath[0], attrpath[1], fallback=fallback)
    else:
        msg = "Attributes should follow the name:option convention"
        raise ValueError(msg)


def configset(config, attribute_name, attribute_value):
    """set attribute_value in config attribute_name (name:option)"""
    attrpath = attribute_name.split(":")
    if len(attrpath) == 2:
        if not config.has_section(attrpath[0]):
            config.add_section(attrpath[0])
        return config.set(attrpath[0], attrpath[1], str(attribute_value))
    else:
        msg = "Attributes should follow the name:option convention"
        raise ValueError(msg)


def config2dict(cf):
    """parse config to dict"""
    out_dict = OrderedDict((sec, OrderedDict((opt, cf.get(sec, opt))
                                             for opt in cf.options(sec)))
                           for sec in cf.sections())
    return out_dict


"""
settings
"""

_DEFAULTS = OrderedDict([
    ('tolerances', OrderedDict([
        ('herm', '1e-9'),   # hermiticity
        ('tr', '1e-9'),     # trace and vector norm
        ('eig', '1e-9'),    # eigenvalue sign decisions
        ('rank', '1e-9'),   # Schmidt and spectral rank
        ('rec', '1e-8'),    # Schmidt reconstruction
        ('ent', '1e-8'),    # entropic inequalities
        ('det', '1e-12'),   # two-qubit determinant
        ('class', '1e-8'),  # three-qubit SLOCC class
        ('prob', '1e-12'),  # filter success probability
    ])),
    ('limits', OrderedDict([
        ('max_side', '4096'),
        ('wwzb_max_n', '6'),
    ])),
    ('runtime', OrderedDict([
        ('workers', '1'),
        ('seed', '7'),
        ('samples', '10000'),
    ])),
    ('logging', OrderedDict([
        ('level', 'INFO'),
        ('logfile', ''),
        ('format', '%(asctime)s - %(name)s - %(levelname)s - %(message)s'),
    ])),
])

LOGLEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')


class Tolerances(object):
    """Numerical thresholds shared by all modules."""

    def __init__(self, herm, tr, eig, rank, rec, ent, det, cls, prob):
        self.herm = herm
        self.tr = tr
        self.eig = eig
        self.rank = rank
        self.rec = rec
        self.ent = ent
        self.det = det
        self.cls = cls
        self.prob = prob

    def __repr__(self):
        return 'Tolerances(herm={:g}, tr={:g}, eig={:g}, rank={:g}, rec={:g}, ent={:g}, det={:g}, class={:g}, prob={:g})'.format(
            self.herm, self.tr, self.eig, self.rank, self.rec, self.ent, self.det, self.cls, self.prob)


class Settings(object):
    """Process-wide settings: tolerances, limits and runtime defaults.

    Built from the defaults, an optional ini file and the ENTLAB_TOL environment
    variable, in that order. Treat as read-only once loaded.
    """

    def __init__(self, config=None, config_fn=None):
        self.config_fn = config_fn
        cf = ConfigParser(inline_comment_prefixes=('#', ), interpolation=None)
        cf.read_dict(_DEFAULTS)
        if config is not None:
            for sect in config.sections():
                if not cf.has_section(sect):
                    cf.add_section(sect)
                for opt in config.options(sect):
                    cf.set(sect, opt, config.get(sect, opt))
        self._config = cf
        try:
            self.tol = Tolerances(*[float(configget(cf, 'tolerances:' + opt)) for opt in _DEFAULTS['tolerances']])
            self.max_side = int(configget(cf, 'limits:max_side'))
            self.wwzb_max_n = int(configget(cf, 'limits:wwzb_max_n'))
            self.workers = int(configget(cf, 'runtime:workers'))
            self.seed = int(configget(cf, 'runtime:seed'))
            self.samples = int(configget(cf, 'runtime:samples'))
        except ValueError as e:
            msg = 'invalid value in configuration: {}'.format(e)
            logger.error(msg)
            raise ArgumentError(msg)
        self.loglevel = configget(cf, 'logging:level').strip().upper()
        if self.loglevel not in LOGLEVELS:
            msg = 'logging:level must be one of {}, got {!r}'.format(', '.join(LOGLEVELS), self.loglevel)
            logger.error(msg)
            raise ArgumentError(msg)
        self.logfile = configget(cf, 'logging:logfile').strip() or None
        self.logformat = configget(cf, 'logging:format')

    def override_tolerance(self, value):
        """Override the global herm/tr/eig/rank tolerance."""
        value = float(value)
        if not value > 0:
            msg = 'tolerance override must be positive, got {}'.format(value)
            logger.error(msg)
            raise ArgumentError(msg)
        for name in ['herm', 'tr', 'eig', 'rank']:
            setattr(self.tol, name, value)
            configset(self._config, 'tolerances:{}'.format(name), value)

    def to_dict(self):
        return config2dict(self._config)

    def __repr__(self):
        return 'Settings(config_fn={}, {})'.format(self.config_fn, self.tol)


def load_settings(config_fn=None, environ=None):
    """Build the global settings object.

    Keyword Arguments:
        config_fn {str} -- path to an entlab ini file; falls back to $ENTLAB_CONFIG (default: {None})
        environ {dict} -- environment mapping, os.environ if not given (default: {None})

    Raises:
        ArgumentError -- Raised if the ini file or the tolerance override is invalid

    Returns:
        Settings -- the new global settings
    """
    global settings
    environ = os.environ if environ is None else environ
    if config_fn is None:
        config_fn = environ.get(ENV_CONFIG) or None
    config = None
    if config_fn is not None:
        config_fn = os.path.abspath(config_fn)
        if not os.path.isfile(config_fn):
            msg = 'config file not found: {}'.format(config_fn)
            logger.error(msg)
            raise ArgumentError(msg)
        logger.info('Reading ini file {}'.format(config_fn))
        config = configread(config_fn)
    new = Settings(config=config, config_fn=config_fn)
    if environ.get(ENV_TOL):
        try:
            new.override_tolerance(environ[ENV_TOL])
        except ValueError:
            msg = '{} must be a float, got {}'.format(ENV_TOL, environ[ENV_TOL])
            logger.error(msg)
            raise ArgumentError(msg)
        logger.info('tolerance override from {}: {}'.format(ENV_TOL, environ[ENV_TOL]))
    settings = new
    return settings


settings = Settings()

"""
random numbers
"""


def check_random_state(seed=None):
    """Return a numpy Generator backed by the counter-based Philox bit generator.

    None uses the configured seed, an int seeds a fresh generator and an existing
    Generator is passed through so callers can thread one stream through a run.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None:
        seed = settings.seed
    if isinstance(seed, (bool, float)) or int(seed) != seed or seed < 0:
        msg = 'seed must be a nonnegative integer, got {!r}'.format(seed)
        logger.error(msg)
        raise ArgumentError(msg)
    return np.random.Generator(np.random.Philox(int(seed)))
