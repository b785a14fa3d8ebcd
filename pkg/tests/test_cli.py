'''
Command line parsing and the cheap commands
'''

# from the standard library
import json

# third party libraries
import pytest

# our code
from padelab.__main__ import _overrides, build_parser, main


def test_subcommands_and_flags():
    parser = build_parser()
    args = parser.parse_args(['--workers', '4', 'verify', '--suite', 'real-w2',
            '--a', '0.5', '--nmax', '20', '--precision-bits', '256',
            '--report', 'out.json'])
    assert ('verify', 4, 256, 20) == (args.command, args.workers, args.bits,
            args.nmax)
    args = parser.parse_args(['approx', '--a', '2', '--n', '5', '--type', '4,7',
            '--out', 'p.json'])
    assert (4, 7) == args.pade_type
    with pytest.raises(SystemExit):
        parser.parse_args(['approx', '--a', '2', '--n', '5', '--type', '4',
                '--out', 'p.json'])
    with pytest.raises(SystemExit):
        parser.parse_args(['verify', '--suite', 'imaginary', '--a', '1',
                '--nmax', '3', '--report', 'r.json'])


def test_n_overrides_nmax(tmp_path):
    grid = tmp_path / 'grid.json'
    grid.write_text(json.dumps(['3,0', '0.1,0.1']))
    args = build_parser().parse_args(['model', '--a', '0.5', '--class', 'w2',
            '--n', '7', '--grid', str(grid), '--out', 'm.csv'])
    overrides = _overrides(args)
    assert 7 == overrides['nmax']
    assert 'w2' == overrides['class']
    assert ['3,0', '0.1,0.1'] == overrides['grid']
    assert overrides['eps'] is None


def test_compact_command_writes_csv(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    out = tmp_path / 'F.csv'
    assert 0 == main(['compact', '--a', '0.5', '--precision-bits', '128',
            '--out', str(out)])
    assert out.read_text().startswith('arc,idx,re,im')


def test_errors_give_exit_status(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert 1 == main(['compact', '--a', '1', '--precision-bits', '128',
            '--out', str(tmp_path / 'F.csv')])
    with pytest.raises(ValueError):
        main(['--config', str(tmp_path / 'missing.ini'), 'compact',
                '--a', '0.5', '--out', str(tmp_path / 'F.csv')])


def test_approx_command(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    out = tmp_path / 'approx.json'
    zeros = tmp_path / 'zeros.csv'
    assert 0 == main(['approx', '--pair', 'log', '--a', '2', '--n', '4',
            '--precision-bits', '128', '--out', str(out), '--zeros', str(zeros)])
    data = json.loads(out.read_text())
    assert 4 == data['n']
    assert data['a_n'] is None
    assert not data['degenerate']
    assert 5 == len(zeros.read_text().splitlines())


def test_nthroot_without_a_weight_gives_exit_status(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    out = tmp_path / 'rates.csv'
    assert 1 == main(['nthroot', '--pair', 'log', '--a', '2', '--nmax', '6',
            '--precision-bits', '128', '--out', str(out)])
    assert not out.exists()
