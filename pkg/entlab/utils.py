"""Logging set-up for the entlab library and command line tool.

Library modules log through child loggers of ``entlab``; only the command line
tool attaches handlers, using the ``[logging]`` section of the settings.
"""
import sys
import logging

import entlab.entlab_lib as glib
from entlab.errors import ArgumentError

LOGGER_NAME = 'entlab'
LOGLEVELS = glib.LOGLEVELS


def _handlers_off(logger):
    while logger.handlers:
        i = logger.handlers[0]
        logger.removeHandler(i)
        i.flush()
        i.close()


def setlogger(settings=None, level=None, logfilename=None, show_in_console=True):
    """Configure the entlab logger.

    Console output goes to stderr so reports on stdout stay clean; the file
    handler, if any, receives the same records.

    Keyword Arguments:
        settings {Settings} -- source of level, logfile and format, the global settings if None (default: {None})
        level {str} -- level name overriding logging:level (default: {None})
        logfilename {str} -- log file overriding logging:logfile (default: {None})
        show_in_console {bool} -- attach a stderr handler (default: {True})

    Raises:
        ArgumentError -- Raised on an unknown level or a log file that cannot be opened

    Returns:
        logging.Logger -- the configured ``entlab`` logger
    """
    settings = glib.settings if settings is None else settings
    level = (level or settings.loglevel).upper()
    if level not in LOGLEVELS:
        raise ArgumentError('unknown log level {!r}, choose from {}'.format(level, ', '.join(LOGLEVELS)))
    logfilename = logfilename or settings.logfile
    formatter = logging.Formatter(settings.logformat)

    logger = logging.getLogger(LOGGER_NAME)
    _handlers_off(logger)
    logger.setLevel(getattr(logging, level))
    logger.propagate = False
    if show_in_console:
        console = logging.StreamHandler(sys.stderr)
        console.setLevel(logger.level)
        console.setFormatter(formatter)
        logger.addHandler(console)
    if logfilename is not None:
        add_file_handler(logger, logfilename, formatter)
    return logger


def add_file_handler(logger, logfilename, formatter):
    try:
        ch = logging.FileHandler(logfilename, mode='w', encoding='utf-8')
    except IOError as e:
        msg = 'cannot open log file {}: {}'.format(logfilename, e)
        logger.error(msg)
        raise ArgumentError(msg)
    ch.setFormatter(formatter)
    ch.setLevel(logger.level)
    logger.addHandler(ch)
    logger.debug("File logging to {}".format(logfilename))


def closelogger(logger):
    _handlers_off(logger)
    logger.propagate = True
    return logger
