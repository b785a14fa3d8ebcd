'''
INI settings and the logging level they select
'''

# from the standard library
import logging

# third party libraries
import pytest

# our code
from padelab.config import SECTIONS, logging_level, read_settings


def test_default_file_is_optional(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    settings = read_settings()
    for name in SECTIONS:
        assert settings.has_section(name)
    assert logging.ERROR == logging_level(settings)


def test_explicit_file_must_exist(tmp_path):
    with pytest.raises(ValueError):
        read_settings(str(tmp_path / 'missing.ini'))


def test_sections_are_read(tmp_path):
    path = tmp_path / 'padelab.ini'
    path.write_text("[precision]\nbits = 256\n\n[logging]\nlevel = debug\n")
    settings = read_settings(str(path))
    assert '256' == settings['precision']['bits']
    assert settings.has_section('geometry')
    assert logging.DEBUG == logging_level(settings)


@pytest.mark.parametrize('name, level', [
    ('critical', logging.CRITICAL),
    ('warning', logging.WARNING),
    ('info', logging.INFO),
    ('verbose', logging.ERROR),
])
def test_logging_levels(tmp_path, name, level):
    path = tmp_path / 'padelab.ini'
    path.write_text("[logging]\nlevel = %s\n" % name)
    assert level == logging_level(read_settings(str(path)))
