#!python3

"""
Settings of a run: the INI file read with configparser and the logging
setup it selects.

2026-03-15 Version   padelab
  - sections precision, geometry, lab and logging
"""

# from the standard library
import configparser
import logging
import os

# Definitions aka constants
DEFAULT_CONFIG_FILE_PATH = "config.ini"
SECTIONS = ('precision', 'geometry', 'lab', 'logging')

_MISSING_FILE_ERROR_MSG = "Configuration file %s does not exist"


def read_settings(path = None):
    '''
    ConfigParser with every known section present

    @param (str) path - INI file; the default file is optional, an explicit
        path must exist
    '''
    settings = configparser.ConfigParser()
    if path is not None:
        if not os.path.isfile(path):
            raise ValueError(_MISSING_FILE_ERROR_MSG % path)
        settings.read(path)
    elif os.path.isfile(DEFAULT_CONFIG_FILE_PATH):
        settings.read(DEFAULT_CONFIG_FILE_PATH)
    for name in SECTIONS:
        if not settings.has_section(name):
            settings.add_section(name)
    return settings


def logging_level(settings):
    '''Level named by [logging] level, default ERROR'''
    if settings.has_option('logging', 'level'):
        if 'critical' == settings['logging']['level']:
            return logging.CRITICAL
        elif 'warning' == settings['logging']['level']:
            return logging.WARNING
        elif 'info' == settings['logging']['level']:
            return logging.INFO
        elif 'debug' == settings['logging']['level']:
            return logging.DEBUG
    return logging.ERROR


def configure_logging(settings):
    logging.basicConfig(level=logging_level(settings))
