'''
Experiment settings, rate fits, reports and small experiments
'''

# from the standard library
import configparser
import json
from types import SimpleNamespace

# third party libraries
import mpmath
import pytest

# our code
from padelab.elliptic import SurfacePoint
from padelab.elliptic.sheets import chordal
from padelab.germs import CLASS_ONE
from padelab.lab import (GEOMETRIC, POWER, ConvergenceReport, Experiment,
        ExperimentConfig, ZeroReport, _check_rates, default_grid,
        experiment_settings, fit_rate, read_grid, run_approx, run_compare,
        run_model, run_nth_root, run_verify, run_zero_alignment, sample_points,
        verdict)
from padelab.precision import PrecisionContext


def test_config_defaults():
    config = ExperimentConfig()
    assert ('0.5', 'markov', 'w2') == (config.a, config.pair, config.weight_class)
    assert (10, 30) == (config.nmin, config.nmax)
    assert 0.05 == config.eps
    assert {} == config.outputs


def test_config_pair_follows_class_and_parameter():
    assert 'log' == ExperimentConfig({'a': '0.8,0.3', 'class': 'W1'}).pair
    assert 'markov' == ExperimentConfig({'a': '0.5', 'class': 'w1'}).pair
    assert 'weight:w.json' == ExperimentConfig({'pair': 'weight:w.json'}).pair


@pytest.mark.parametrize('settings', [
    {'pair': 'gauss'},
    {'class': 'w3'},
    {'nmax': 0},
    {'nmin': 'ten'},
    {'eps': '-1'},
    {'workers': 0},
])
def test_config_rejects_bad_settings(settings):
    with pytest.raises(ValueError):
        ExperimentConfig(settings)


def test_config_clamps_nmin():
    config = ExperimentConfig({'nmin': 40, 'nmax': 30})
    assert 30 == config.nmin


def test_config_json_file(tmp_path):
    config = ExperimentConfig({'a': '0.8,0.3', 'class': 'w1', 'nmax': 12,
            'bits': 256, 'grid': ['3,0']})
    path = tmp_path / 'experiment.json'
    path.write_text(json.dumps(config.to_json()))
    copy = ExperimentConfig.from_json(str(path))
    assert ('log', 12, ['3,0']) == (copy.pair, copy.nmax, copy.grid)
    assert {'bits': '256'} == copy.precision


def test_settings_precedence(tmp_path):
    ini = configparser.ConfigParser()
    ini.read_dict({'lab': {'eps': '0.1', 'nmax': '20'},
            'precision': {'bits': '256'}})
    path = tmp_path / 'experiment.json'
    path.write_text(json.dumps({'eps': 0.2, 'outputs': {'zeros': 'z.csv'}}))
    settings = experiment_settings(ini, str(path), {'eps': None, 'nmax': 12,
            'outputs': {'csv': 'c.csv', 'overlay': None}})
    assert 0.2 == settings['eps']
    assert 12 == settings['nmax']
    assert '256' == settings['bits']
    assert {'zeros': 'z.csv', 'csv': 'c.csv'} == settings['outputs']


def test_read_grid_and_sampling(tmp_path):
    path = tmp_path / 'grid.json'
    path.write_text(json.dumps({'grid': ['1,2', [3, 4]]}))
    assert ['1,2', [3, 4]] == read_grid(str(path))
    assert [0, 2, 5, 7] == sample_points(list(range(10)), 4)
    assert [1, 2] == sample_points([1, 2], 4)


def test_geometric_rate():
    fit = fit_rate([(n, 0.5 ** n) for n in range(10, 31)])
    assert GEOMETRIC == fit.model
    assert abs(fit.parameter - 0.5) < 1e-6
    assert fit.r2 > 0.999
    assert not fit.truncated


def test_power_rate():
    fit = fit_rate([(n, 3.0 / n) for n in range(10, 41)])
    assert POWER == fit.model
    assert abs(fit.parameter + 1) < 1e-3


def test_rate_fit_stops_at_the_noise_floor():
    series = [(n, mpmath.mpf('0.8') ** n + mpmath.mpf('1e-35'))
            for n in range(1, 501)]
    fit = fit_rate(series, mpmath.mpf('1e-34'))
    assert GEOMETRIC == fit.model
    assert abs(fit.parameter - 0.8) < 1e-3
    assert fit.truncated
    assert 500 > fit.used[-1]


def test_rate_fit_needs_points():
    with pytest.raises(ValueError):
        fit_rate([(n, 0.5 ** n) for n in range(1, 5)])


def test_verdicts():
    assert verdict({'value': '1e-40', 'threshold': '1e-30', 'relation': '<'})
    assert not verdict({'value': '0.5', 'threshold': '1', 'relation': '>'})
    assert verdict({'value': '-1', 'threshold': ['-1.5', '-0.6'],
            'relation': 'between'})
    assert verdict({'value': 'geometric', 'threshold': 'geometric',
            'relation': 'equals'})
    assert verdict({'value': True, 'threshold': None, 'relation': 'true'})
    assert verdict({'value': None, 'threshold': '1', 'relation': '<'}) is None
    with pytest.raises(ValueError):
        verdict({'value': '1', 'threshold': '1', 'relation': '~'})


def test_report_keeps_values_and_recomputes_verdicts(tmp_path):
    report = ConvergenceReport('compare')
    report.add_record({'n': 3, 'sup_err_Q': mpmath.mpf('1e-5'), 'rows': [[1]]})
    report.add_check('small', mpmath.mpf('1e-40'), mpmath.mpf('1e-30'))
    report.add_check('missing', None, mpmath.mpf('1e-30'))
    assert report.passed()
    report.add_check('count', 3, 4, 'equals')
    assert not report.passed()
    assert 'rows' not in report.records[0]
    assert [(3, mpmath.mpf('1e-5'))] == report.series('sup_err_Q')

    path = tmp_path / 'report.json'
    report.write(str(path))
    data = json.loads(path.read_text())
    assert {'small': True, 'missing': None, 'count': False} == data['verdicts']
    copy = ConvergenceReport.from_json(data)
    assert report.verdicts() == copy.verdicts()


def test_zero_report_outliers():
    zeros = ZeroReport(3, [mpmath.mpc(1), mpmath.mpc(2), mpmath.mpc(5)],
            [0.01, 0.02, 0.5], ['F_a', 'F_a', 'F_1'], [], 0.05)
    assert 1 == len(zeros.outliers)
    assert {'F_a': 2} == zeros.counts
    assert not zeros.outliers_near_point(0.1)
    data = zeros.to_json()
    assert 2 == data['outliers'][0]['index']
    assert data['outliers'][0]['distance_zn'] is None


def test_zero_report_distance_to_z_n_is_chordal():
    point = SurfacePoint(mpmath.mpc(3), 1)
    zeros = ZeroReport(4, [mpmath.mpc(1), mpmath.mpc(5)], [0.01, 2], ['F_a', 'F_1'],
            [], 0.05, point)
    k, z, distance, near = zeros.outliers[0]
    assert 2 == distance
    assert abs(near - chordal(5, 3)) < 1e-15
    assert abs(near - 4 / mpmath.sqrt(260)) < 1e-15
    assert zeros.outliers_near_point(0.3)
    assert not zeros.outliers_near_point(0.2)


def test_default_grid_stays_off_the_compact(real_compact, low):
    with low:
        grid = default_grid(real_compact)
        assert 40 == len(grid)
        assert all(real_compact.distance(z) > 0.05 for z in grid)


def test_grid_points_on_F_are_rejected():
    config = ExperimentConfig({'a': '2', 'pair': 'log', 'nmax': 4, 'bits': 128,
            'grid': ['1.5']})
    with pytest.raises(ValueError):
        Experiment(config)


def test_precision_must_cover_the_pade_system():
    with pytest.raises(ValueError):
        Experiment(ExperimentConfig({'a': '2', 'pair': 'log', 'nmax': 60,
                'bits': 128}))


def test_suite_parameter_must_match():
    with pytest.raises(ValueError):
        run_verify(ExperimentConfig({'a': '0.5'}), 'complex-w1')
    with pytest.raises(ValueError):
        run_verify(ExperimentConfig({'a': '0.5'}), 'real-w3')


def test_real_log_pair_zeros(tmp_path):
    overlay = tmp_path / 'overlay.csv'
    config = ExperimentConfig({'a': '2', 'pair': 'log', 'nmax': 10,
            'bits': 128, 'outputs': {'overlay': str(overlay)}})
    experiment = Experiment(config)
    assert experiment.spec is None
    with pytest.raises(ValueError):
        experiment.model
    report = run_zero_alignment(config, experiment = experiment)
    assert 10 == len(report.roots)
    assert 10 == sum(report.counts.values()) + len(report.outliers)
    lines = overlay.read_text().splitlines()
    assert 'arc,idx,re,im' == lines[0]
    assert lines[-1].startswith('zeros,9,')


def test_approximant_of_the_log_pair():
    config = ExperimentConfig({'a': '2', 'pair': 'log', 'nmax': 8, 'bits': 128})
    approximant, a_n, residual, roots = run_approx(config, 6)
    assert a_n is None
    assert residual < 1e-15
    assert 6 == len(roots)


@pytest.mark.slow
def test_markov_errors_decay_geometrically(tmp_path):
    path = tmp_path / 'compare.csv'
    config = ExperimentConfig({'a': '0.5', 'class': 'w2', 'nmin': 4,
            'nmax': 12, 'bits': 128, 'outputs': {'csv': str(path)}})
    report = run_compare(config)
    errors = report.series('sup_err_Q')
    assert 9 == len(errors)
    assert errors[-1][1] < errors[0][1]
    header = path.read_text().splitlines()[0]
    assert 'n,z_re,z_im,abs_err_Q,abs_err_R' == header


def test_nth_root_needs_a_weight():
    config = ExperimentConfig({'a': '2', 'pair': 'log', 'nmax': 6, 'bits': 128})
    with pytest.raises(ValueError):
        run_nth_root(config)


def test_class_one_rates_are_checked_for_a_non_real_parameter():
    experiment = SimpleNamespace(spec = SimpleNamespace(weight_class = CLASS_ONE),
            real = False, ctx = PrecisionContext({'bits': 128}))
    records = [{'n': n, 'sup_err_Q': mpmath.mpf(3) / n,
            'sup_err_R': mpmath.mpf(2) / n, 'rows': []} for n in range(10, 41)]
    report = ConvergenceReport('complex-w1')
    _check_rates(experiment, report, records)
    verdicts = report.verdicts()
    for name in ('sup_err_Q', 'sup_err_R'):
        assert verdicts[name + '_model']
        assert verdicts[name + '_exponent']
    assert 31 == len(report.records)
    assert 'rows' not in report.records[0]


@pytest.mark.slow
def test_nth_root_rates_of_a_markov_weight():
    config = ExperimentConfig({'a': '0.5', 'class': 'w2', 'nmax': 16,
            'bits': 160})
    experiment = Experiment(config)
    points = sample_points(experiment.grid, 8)
    n, rows = run_nth_root(config, points = points, experiment = experiment)
    assert 16 == n
    assert rows
    for row in rows:
        assert 4 == len(row)
        z, measured, predicted, defect = row
        assert z in points
        assert measured > 0
        assert defect < 0.3


@pytest.mark.slow
def test_model_rows_of_one_index(tmp_path):
    path = tmp_path / 'model.csv'
    config = ExperimentConfig({'a': '0.5', 'class': 'w2', 'nmax': 8,
            'bits': 128, 'outputs': {'csv': str(path)}})
    experiment = Experiment(config)
    record = run_model(config, 8, experiment = experiment)
    assert 8 == record['n']
    assert not record['degenerate']
    rows = record['rows']
    assert len(experiment.grid) == len(rows) + record['excluded']
    for row in rows:
        assert 5 == len(row)
        assert 8 == row[0]
    worst = max(mpmath.mpf(row[3]) for row in rows)
    assert abs(worst - record['sup_err_Q']) < 1e-15 * max(1, worst)
    lines = path.read_text().splitlines()
    assert 'n,z_re,z_im,abs_err_Q,abs_err_R' == lines[0]
    assert len(rows) + 1 == len(lines)


@pytest.mark.slow
def test_real_markov_suite():
    config = ExperimentConfig({'a': '0.5', 'nmin': 4, 'nmax': 12, 'bits': 160})
    report = run_verify(config, 'real-w2')
    for name in ('interpolation', 'orthogonality', 'equilibrium',
            'determinant', 'jump', 'nth_root'):
        assert name in report.checks
    verdicts = report.verdicts()
    assert verdicts['jump']
    assert 12 == report.info['nth_root_n']
    assert 9 == len(report.records)
