#!python3

"""
Experiments on the approximants: comparison with the asymptotic models,
rate fits, zero alignment, n-th root rates and the verification suites,
with the CSV and JSON files they produce.

Per n work runs in a multiprocessing pool; reports are assembled in the
parent in the order of n so that reruns reproduce every file.

2026-03-16 Version   padelab
  - verification suites for both real and non-real parameters
  - report verdicts recomputed from the stored values

2026-03-18 Version   padelab
  - n-th root rates refuse pairs without a weight
  - 1/n rate checks for class W1 weights of non-real parameters
"""

# from the standard library
import csv
import json
import logging
import math
import multiprocessing

# third party libraries
import mpmath
import numpy as np

# our code
from padelab.elliptic import SurfaceModel, SurfacePoint
from padelab.elliptic.sheets import chordal
from padelab.elliptic.theta import half_period, quasi_periodicity_defect, theta
from padelab.geometry import TrajectoryConfig, build_compact, g_function
from padelab.germs import (CLASS_ONE, CLASS_TWO, JACOBI, LOG_PAIR, MARKOV,
        WeightSpec, germ_from_weight, germ_log_pair, weight_from_file)
from padelab.pade import (LinearizedError, a_n_compute, interpolation_residuals,
        orthogonality_check, pade_solve, pade_star, zeros_csv_rows)
from padelab.precision import (PrecisionContext, complex_pair, parse_complex,
        poly_roots, to_decimal)
from padelab.szego_real import RealModel

# Definitions aka constants
DEFAULT_A = '0.5'
DEFAULT_NMIN = 10
DEFAULT_NMAX = 30
DEFAULT_EPS = 0.05
DEFAULT_DELTA = 0.05
DEFAULT_OUTLIER = 0.05
DEFAULT_WORKERS = 1
GERM_MARGIN = 2

LOG = 'log'
MARKOV_PAIR = 'markov'
WEIGHT_PREFIX = 'weight:'
CLASSES = {'w1': CLASS_ONE, 'w2': CLASS_TWO}
SUITES = ('real-w2', 'real-w1', 'complex-w2', 'complex-w1')
GEOMETRIC = 'geometric'
POWER = 'power'

GRID_CLEARANCE = 0.05
CIRCLE_GRID_POINTS = 12
MIDWAY_GRID_POINTS = 8
GRID_RADII = (0.3, 3.0)
MIDWAY_RADII = (0.65, 2.0)
MINIMUM_FIT_POINTS = 6
FLOOR_FACTOR = 10
NTH_ROOT_POINTS = 8
JUMP_INDICES = (5, 20)
ZERO_CHECK_INDICES = (40, 60)

# thresholds of the verification suites
INTERPOLATION_LIMIT = mpmath.mpf('1e-30')
ORTHOGONALITY_LIMIT = mpmath.mpf('1e-20')
EQUILIBRIUM_LIMIT = mpmath.mpf('1e-30')
DETERMINANT_LIMIT = mpmath.mpf('1e-30')
PRODUCT_LIMIT = mpmath.mpf('1e-25')
THETA_PERIOD_LIMIT = mpmath.mpf('1e-30')
THETA_ZERO_LIMIT = mpmath.mpf('1e-25')
RIEMANN_LIMIT = mpmath.mpf('1e-20')
REALNESS_LIMIT = mpmath.mpf('1e-20')
TRANSLATION_LIMIT = mpmath.mpf('1e-15')
SUM_CONDITION_LIMIT = mpmath.mpf('1e-20')
JUMP_LIMIT = mpmath.mpf('1e-4')
NTH_ROOT_LIMIT = mpmath.mpf('0.05')
FIT_R2 = 0.98
POWER_EXPONENT_RANGE = ('-1.5', '-0.6')

_BAD_PAIR_ERROR_MSG = "Pair is expected to be log, markov or weight:PATH, got %s"
_BAD_CLASS_ERROR_MSG = "Weight class is expected to be w1 or w2, got %s"
_BAD_RANGE_ERROR_MSG = "n range is expected to satisfy 1 <= nmin <= nmax"
_BAD_POSITIVE_ERROR_MSG = "%s is expected to be a positive real number"
_BAD_WORKERS_ERROR_MSG = "workers is expected to be a positive integer"
_BAD_SUITE_ERROR_MSG = "Suite is expected to be one of %s, got %s"
_SUITE_PARAMETER_ERROR_MSG = "Suite %s needs a %s parameter a"
_GRID_ON_F_ERROR_MSG = "Grid point %s lies within %s of F"
_NO_MODEL_ERROR_MSG = "The %s pair has no weight on a real compact, model comparisons need one"
_SHORT_SERIES_ERROR_MSG = "Rate fits need at least %d points above the noise floor, got %d"
_PRECISION_ERROR_MSG = ("nmax = %d needs about %d bits for the Pade system, "
                    "the run has %d")

# the experiment shared with pool workers
_experiment = None


def read_grid(path):
    '''Points of a JSON grid file: a list, or {"grid": [...]}, of "RE,IM" or [re, im]'''
    with open(path) as stream:
        data = json.load(stream)
    if isinstance(data, dict):
        data = data['grid']
    return list(data)


def sample_points(points, count):
    '''count points spread evenly over the list'''
    if len(points) <= count:
        return list(points)
    stride = len(points) / count
    return [points[int(k * stride)] for k in range(count)]


class ExperimentConfig:
    '''
    One experiment: parameter, pair, weight class, n range, tolerances,
    grid and output paths

    Caller passes a flat dict merged from the INI sections, the JSON
    experiment file and the command line (see experiment_settings).
    '''

    def __init__(self, settings = {}):
        self.a = str(settings['a']) if 'a' in settings else DEFAULT_A
        real = 0 == parse_complex(self.a).imag

        self.weight_class = 'w2'
        if 'class' in settings and settings['class']:
            self.weight_class = str(settings['class']).lower()
        if self.weight_class not in CLASSES:
            raise ValueError(_BAD_CLASS_ERROR_MSG % self.weight_class)

        if 'pair' in settings and settings['pair']:
            self.pair = str(settings['pair'])
        elif 'w1' == self.weight_class and not real:
            self.pair = LOG
        else:
            self.pair = MARKOV_PAIR
        if self.pair not in (LOG, MARKOV_PAIR) and \
                not self.pair.startswith(WEIGHT_PREFIX):
            raise ValueError(_BAD_PAIR_ERROR_MSG % self.pair)

        try:
            self.nmin = int(settings['nmin']) if 'nmin' in settings else DEFAULT_NMIN
            self.nmax = int(settings['nmax']) if 'nmax' in settings else DEFAULT_NMAX
        except (TypeError, ValueError):
            raise ValueError(_BAD_RANGE_ERROR_MSG)
        if self.nmin > self.nmax:
            self.nmin = self.nmax
        if 1 > self.nmin:
            raise ValueError(_BAD_RANGE_ERROR_MSG)

        self.eps = self._positive(settings, 'eps', DEFAULT_EPS)
        self.delta = self._positive(settings, 'delta', DEFAULT_DELTA)
        self.outlier = self._positive(settings, 'outlier', DEFAULT_OUTLIER)

        try:
            self.workers = int(settings['workers']) if 'workers' in settings \
                    else DEFAULT_WORKERS
        except (TypeError, ValueError):
            raise ValueError(_BAD_WORKERS_ERROR_MSG)
        if 1 > self.workers:
            raise ValueError(_BAD_WORKERS_ERROR_MSG)

        self.precision = {key: settings[key] for key in ('bits', 'tol')
                if key in settings and settings[key] not in (None, '')}
        self.geometry = {key: settings[key] for key in ('step', 'maxlen',
                'matchtol', 'model_vertices') if key in settings}
        self.resolution = settings['resolution'] if 'resolution' in settings \
                else None
        self.grid = None
        if 'grid' in settings and settings['grid'] is not None:
            self.grid = list(settings['grid'])
        self.outputs = dict(settings['outputs']) if 'outputs' in settings else {}


    def _positive(self, settings, key, default):
        if key not in settings or settings[key] in (None, ''):
            return default
        try:
            value = float(settings[key])
        except (TypeError, ValueError):
            raise ValueError(_BAD_POSITIVE_ERROR_MSG % key)
        if not 0 < value:
            raise ValueError(_BAD_POSITIVE_ERROR_MSG % key)
        return value


    def __repr__(self):
        return "ExperimentConfig(a={}, pair={}, class={}, n={}..{})".format(
                self.a, self.pair, self.weight_class, self.nmin, self.nmax)


    def inversion_settings(self):
        settings = {'eps': self.eps}
        if self.resolution is not None:
            settings['resolution'] = self.resolution
        return settings


    def to_json(self):
        out = {'a': self.a, 'pair': self.pair, 'class': self.weight_class,
                'nmin': self.nmin, 'nmax': self.nmax, 'eps': self.eps,
                'delta': self.delta, 'outlier': self.outlier,
                'workers': self.workers, 'outputs': self.outputs}
        out.update({key: str(value) for key, value in self.precision.items()})
        out.update({key: str(value) for key, value in self.geometry.items()})
        if self.resolution is not None:
            out['resolution'] = self.resolution
        if self.grid is not None:
            out['grid'] = self.grid
        return out


    @classmethod
    def from_json(cls, path, defaults = {}):
        '''Config from a JSON experiment file on top of defaults'''
        with open(path) as stream:
            data = json.load(stream)
        settings = dict(defaults)
        settings.update(data)
        return cls(settings)


def experiment_settings(ini, experiment = None, overrides = {}):
    '''
    Flat settings: INI sections precision, geometry and lab, then the JSON
    experiment file, then the non-empty overrides

    @param ini - ConfigParser from config.read_settings
    @param (str) experiment - path of a JSON experiment file or None
    @param (dict) overrides - command line values, None for absent flags
    '''
    settings = {}
    for section in ('precision', 'geometry', 'lab'):
        if ini.has_section(section):
            settings.update(dict(ini[section]))
    if experiment is not None:
        with open(experiment) as stream:
            settings.update(json.load(stream))
    for key, value in overrides.items():
        if value is None:
            continue
        if 'outputs' == key:
            outputs = dict(settings.get('outputs', {}))
            outputs.update({k: v for k, v in value.items() if v is not None})
            settings['outputs'] = outputs
        else:
            settings[key] = value
    return settings


class RateFit:
    '''
    Least squares fit of an error series to c^n (geometric) or n^p (power)

    @param (str) model - GEOMETRIC or POWER
    @param (float) parameter - c or p
    @param (float) r2 - coefficient of determination of the chosen model
    '''

    def __init__(self, model, parameter, r2, used, truncated):
        self.model = model
        self.parameter = parameter
        self.r2 = r2
        self.used = used
        self.truncated = truncated


    def __repr__(self):
        return "RateFit({}, {:.6g}, R2={:.6f})".format(self.model,
                self.parameter, self.r2)


    def to_json(self):
        return {'model': self.model, 'parameter': repr(self.parameter),
                'r2': repr(self.r2), 'used': self.used,
                'truncated': self.truncated}


def _r_squared(x, y):
    slope, intercept = np.polyfit(x, y, 1)
    residual = y - (slope * x + intercept)
    total = float(np.sum((y - y.mean()) ** 2))
    if 0 == total:
        return slope, 1.0
    return slope, 1 - float(np.sum(residual ** 2)) / total


def fit_rate(series, floor = 0):
    '''
    Geometric or power law model of (n, error) pairs, whichever has the
    larger R^2; the series is cut at the first error below floor

    @param series - iterable of (n, error)
    @param floor - noise floor, 10 tol in the experiments
    '''
    points = sorted(series)
    kept = []
    for n, e in points:
        if e is None or not e > floor:
            break
        kept.append((n, e))
    if len(kept) < MINIMUM_FIT_POINTS:
        raise ValueError(_SHORT_SERIES_ERROR_MSG % (MINIMUM_FIT_POINTS, len(kept)))
    truncated = len(kept) < len(points)
    if truncated:
        logging.info("Rate fit cut at n = %d by the noise floor", kept[-1][0])
    n = np.array([float(k) for k, e in kept])
    y = np.array([float(mpmath.log(e)) for k, e in kept])
    slope, r2_geometric = _r_squared(n, y)
    exponent, r2_power = _r_squared(np.log(n), y)
    used = [k for k, e in kept]
    if r2_geometric >= r2_power:
        return RateFit(GEOMETRIC, math.exp(slope), r2_geometric, used, truncated)
    return RateFit(POWER, float(exponent), r2_power, used, truncated)


def verdict(check):
    '''
    Outcome of one stored check; None when the value was not computed

    Relations: '<', '>', 'between' (threshold [low, high]), 'true' and
    'equals'.
    '''
    value = check['value']
    relation = check['relation']
    if value is None:
        return None
    if 'true' == relation:
        return bool(value)
    if 'equals' == relation:
        return value == check['threshold']
    value = mpmath.mpf(value)
    if 'between' == relation:
        low, high = [mpmath.mpf(x) for x in check['threshold']]
        return bool(low <= value <= high)
    threshold = mpmath.mpf(check['threshold'])
    if '<' == relation:
        return bool(value < threshold)
    if '>' == relation:
        return bool(value > threshold)
    raise ValueError("unknown relation %s" % relation)


def _stored(value):
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, float):
        return repr(value)
    return to_decimal(value)


class ConvergenceReport:
    '''
    Raw per n values, fits and checks of one experiment

    Values are kept as 40 digit decimal strings; verdicts are recomputed
    from them whenever the report is read or written.
    '''

    def __init__(self, kind, config = None):
        self.kind = kind
        self.config = {} if config is None else config.to_json()
        self.records = []
        self.fits = {}
        self.zeros = {}
        self.info = {}
        self.checks = {}


    def __repr__(self):
        return "ConvergenceReport({}, {} records, {} checks)".format(self.kind,
                len(self.records), len(self.checks))


    def add_record(self, record):
        self.records.append({key: _stored(value) for key, value in
                record.items() if 'rows' != key})


    def add_fit(self, name, fit):
        self.fits[name] = fit.to_json()


    def add_check(self, name, value, threshold = None, relation = '<'):
        if isinstance(threshold, (list, tuple)):
            threshold = [_stored(x) for x in threshold]
        else:
            threshold = _stored(threshold)
        self.checks[name] = {'value': _stored(value), 'threshold': threshold,
                'relation': relation}
        logging.info("Check %s: %s (%s %s)", name, self.checks[name]['value'],
                relation, threshold)


    def series(self, key):
        '''(n, value) pairs of a record field, skipping missing values'''
        return [(r['n'], mpmath.mpf(r[key])) for r in self.records
                if r.get(key) is not None]


    def verdicts(self):
        return {name: verdict(check) for name, check in self.checks.items()}


    def passed(self):
        return all(False is not v for v in self.verdicts().values())


    def to_json(self):
        return {'kind': self.kind, 'config': self.config,
                'records': self.records, 'fits': self.fits,
                'zeros': self.zeros, 'info': self.info,
                'checks': self.checks,
                'verdicts': self.verdicts(), 'passed': self.passed()}


    def write(self, path):
        with open(path, 'w') as stream:
            json.dump(self.to_json(), stream, indent = 2, sort_keys = True)


    @classmethod
    def from_json(cls, data):
        report = cls(data['kind'])
        report.config = data.get('config', {})
        report.records = data.get('records', [])
        report.fits = data.get('fits', {})
        report.zeros = data.get('zeros', {})
        report.info = data.get('info', {})
        report.checks = data.get('checks', {})
        return report


class ZeroReport:
    '''
    Zeros of Q_n with their distances to F and, for non-real parameters,
    the distances of the outliers to the projection of z_n

    Distances to F are Euclidean, to the fine polylines; the distances to
    z_n are chordal.
    '''

    def __init__(self, n, roots, distances, arcs, flagged, threshold, point = None):
        self.n = n
        self.roots = roots
        self.distances = distances
        self.arcs = arcs
        self.flagged = flagged
        self.threshold = threshold
        self.point = point
        self.outliers = []
        for k, (z, distance) in enumerate(zip(roots, distances)):
            if distance > threshold:
                near = None if point is None else chordal(z, point.z)
                self.outliers.append((k, z, distance, near))
        self.counts = {}
        for k, label in enumerate(arcs):
            if distances[k] <= threshold:
                self.counts[label] = self.counts.get(label, 0) + 1


    def __repr__(self):
        return "ZeroReport(n={}, {} zeros, {} outliers)".format(self.n,
                len(self.roots), len(self.outliers))


    def outliers_near_point(self, delta):
        '''Every outlier lies within delta of the projection of z_n'''
        return all(near is not None and near < delta
                for k, z, distance, near in self.outliers)


    def to_json(self):
        return {'n': self.n, 'count': len(self.roots),
                'outliers': [{'index': k, 'z': complex_pair(z),
                        'distance_F': repr(distance),
                        'distance_zn': None if near is None else to_decimal(near)}
                        for k, z, distance, near in self.outliers],
                'counts': self.counts, 'flagged': self.flagged,
                'z_n': None if self.point is None else self.point.to_list()}


    def write_overlay(self, compact, path):
        '''F polylines followed by the zeros as arc "zeros"'''
        with open(path, 'w', newline = '') as stream:
            compact.to_csv(stream)
            writer = csv.writer(stream)
            for k, z in enumerate(self.roots):
                writer.writerow(['zeros', k, mpmath.nstr(z.real, 17),
                        mpmath.nstr(z.imag, 17)])


class Experiment:
    '''
    Compact, weight, germs and model of one ExperimentConfig

    Every method expects to run inside the experiment's precision context.
    '''

    def __init__(self, config):
        self.config = config
        self.ctx = PrecisionContext(config.precision)
        with self.ctx:
            self.raw_a = parse_complex(config.a)
            self.compact = build_compact(self.raw_a,
                    TrajectoryConfig(config.geometry), self.ctx)
            self.real = self.compact.real
            self.spec = self._weight()
            self.pair = self._germs()
            self.grid = self._grid()
        self._check_precision()
        self._model = None
        self._approximants = {}


    def __repr__(self):
        return "Experiment({})".format(self.config)


    def _weight(self):
        config = self.config
        compact = self.compact
        if config.pair.startswith(WEIGHT_PREFIX):
            spec = weight_from_file(compact, config.pair[len(WEIGHT_PREFIX):])
        elif LOG == config.pair:
            if self.real:
                return None
            spec = WeightSpec(compact, LOG_PAIR, {'raw_a': self.raw_a})
        elif 'w1' == config.weight_class:
            spec = WeightSpec(compact, JACOBI, {'alpha': 0})
        else:
            spec = WeightSpec(compact, MARKOV)
        if spec.weight_class != CLASSES[config.weight_class]:
            logging.warning("Weight %s is of class %s, the experiment asks for %s",
                    spec, spec.weight_class, config.weight_class)
        return spec


    def _germs(self):
        N = self.config.nmax + GERM_MARGIN
        if LOG == self.config.pair:
            return germ_log_pair(self.raw_a, N)
        return germ_from_weight(self.spec, self.compact, N, self.ctx)


    def _grid(self):
        if self.config.grid is None:
            return default_grid(self.compact)
        points = [parse_complex(z) for z in self.config.grid]
        for z in points:
            if self.compact.distance(z) <= GRID_CLEARANCE:
                raise ValueError(_GRID_ON_F_ERROR_MSG % (z, GRID_CLEARANCE))
        return points


    def _check_precision(self):
        '''Condition of the Pade system grows like (max|F| / min|F|)^(2n)'''
        low, high = self.compact.extent()
        needed = int(2 * self.config.nmax * math.log2(high / low)) + 64
        if needed > self.ctx.bits:
            raise ValueError(_PRECISION_ERROR_MSG % (self.config.nmax, needed,
                    self.ctx.bits))
        logging.debug("Pade systems need about %d of %d bits", needed,
                self.ctx.bits)


    @property
    def model(self):
        '''RealModel or SurfaceModel of the weight, built on first use'''
        if self._model is None:
            if self.spec is None:
                raise ValueError(_NO_MODEL_ERROR_MSG % self.config.pair)
            if self.real:
                self._model = RealModel(self.spec, self.ctx)
            else:
                self._model = SurfaceModel(self.spec, self.ctx,
                        self.config.inversion_settings())
        return self._model


    def w(self, z):
        '''w on the sheet where it matches the normalization of R_n'''
        if self.real:
            return self.model.eval_w(z)
        return self.compact.w(z)


    # -- per n stages -------------------------------------------------------

    def approximant(self, n):
        if n not in self._approximants:
            self._approximants[n] = pade_solve(self.pair, n, n + 1, self.ctx)
        return self._approximants[n]


    def jip_point(self, n):
        '''z_n, or None for a real parameter'''
        if self.real:
            return None
        return self.model.jip.solve(n).point


    def in_N_eps(self, n):
        return self.real or self.model.jip.solve(n).in_N_eps


    def indices(self, nmin = None, nmax = None):
        '''n in [nmin, nmax], restricted to N_eps for a non-real parameter'''
        nmin = self.config.nmin if nmin is None else nmin
        nmax = self.config.nmax if nmax is None else nmax
        out = [n for n in range(nmin, nmax + 1) if self.in_N_eps(n)]
        if len(out) < nmax - nmin + 1:
            logging.info("Indices outside N_eps skipped: %s", sorted(set(range(
                    nmin, nmax + 1)) - set(out)))
        return out


    def _excluded(self, z, point):
        return point is not None and chordal(z, point.z) < self.config.delta


    def compare(self, n):
        '''
        Record of sup |Q_n / (gamma_n model Q_n) - 1| and sup |w R_n /
        (gamma_n model R_n) - 1| over the grid, with the comparison rows
        '''
        record = {'n': n, 'degenerate': False, 'excluded': 0,
                'sup_err_Q': None, 'sup_err_R': None, 'rows': []}
        approximant = self.approximant(n)
        if approximant.degenerate:
            logging.warning("Q_%d is degenerate, comparison skipped", n)
            record['degenerate'] = True
            return record
        model = self.model
        error = LinearizedError(approximant, self.spec)
        gamma = model.normalize_gammas(n)[0]
        point = self.jip_point(n)
        worst_Q = mpmath.mpf(0)
        worst_R = mpmath.mpf(0)
        for z in self.grid:
            if self._excluded(z, point):
                record['excluded'] += 1
                continue
            model_Q = model.model_Q(n, z)
            model_R = model.model_R(n, z)
            err_Q = abs(approximant.Q(z) / (gamma * model_Q) - 1)
            err_R = abs(self.w(z) * error(z) / (gamma * model_R) - 1)
            worst_Q = max(worst_Q, err_Q)
            worst_R = max(worst_R, err_R)
            record['rows'].append([n, mpmath.nstr(z.real, 17),
                    mpmath.nstr(z.imag, 17), mpmath.nstr(err_Q, 17),
                    mpmath.nstr(err_R, 17)])
        record['sup_err_Q'] = worst_Q
        record['sup_err_R'] = worst_R
        logging.info("n = %d: sup errors %s, %s", n, mpmath.nstr(worst_Q, 5),
                mpmath.nstr(worst_R, 5))
        return record


    def zero_alignment(self, n):
        approximant = self.approximant(n)
        if approximant.Q.degree < 1:
            return ZeroReport(n, [], [], [], [], self.config.outlier,
                    self.jip_point(n) if self.spec is not None else None)
        found = poly_roots(approximant.Q, self.ctx, report = True)
        distances = []
        arcs = []
        for z in found.roots:
            label, distance = self.compact.nearest_arc(z)
            arcs.append(label)
            distances.append(distance)
        point = None if self.spec is None else self.jip_point(n)
        report = ZeroReport(n, found.roots, distances, arcs, found.flagged,
                self.config.outlier, point)
        logging.info("%s", report)
        return report


    def nth_root(self, n, points):
        '''
        Rows (z, measured |f - P_n/Q_n|^(1/n), exp(-(2g - log|z|)), relative
        defect); points near the projection of z_n or at the noise floor
        are left out
        '''
        if self.spec is None:
            raise ValueError(_NO_MODEL_ERROR_MSG % self.config.pair)
        approximant = self.approximant(n)
        error = LinearizedError(approximant, self.spec)
        point = self.jip_point(n)
        rows = []
        for z in points:
            if self._excluded(z, point):
                continue
            f = error.f_rho(z)
            difference = abs(f - approximant(z))
            if difference < FLOOR_FACTOR * self.ctx.tol * max(1, abs(f)):
                logging.info("n-th root rate at %s is at the noise floor",
                        mpmath.nstr(z, 8))
                continue
            measured = difference ** (mpmath.mpf(1) / n)
            predicted = mpmath.exp(-(2 * g_function(z, self.model) -
                    mpmath.log(abs(z))))
            rows.append((z, measured, predicted, abs(measured / predicted - 1)))
        return rows


    # -- parallel map -------------------------------------------------------

    def map(self, task, items):
        '''task over items in a fork pool of config.workers processes'''
        global _experiment
        _experiment = self
        workers = min(self.config.workers, len(items))
        if 1 >= workers:
            return [task(item) for item in items]
        with multiprocessing.get_context('fork').Pool(workers) as pool:
            return pool.map(task, items)


def _compare_task(n):
    with _experiment.ctx:
        return _experiment.compare(n)


def _zeros_task(n):
    with _experiment.ctx:
        return _experiment.zero_alignment(n)


def _residual_task(n):
    with _experiment.ctx:
        approximant = _experiment.approximant(n)
        residual = interpolation_residuals(approximant, _experiment.pair)
        orthogonality = None
        if _experiment.spec is not None and not approximant.degenerate:
            orthogonality = orthogonality_check(approximant.Q, n,
                    _experiment.compact, _experiment.spec, _experiment.ctx)
        return n, residual, orthogonality


def default_grid(compact):
    '''
    Two circles of CIRCLE_GRID_POINTS points, inside and outside F, at half
    step angles, and MIDWAY_GRID_POINTS points midway toward F on each side,
    all farther than GRID_CLEARANCE from F
    '''
    low, high = compact.extent()
    points = []
    for factor, radius in zip(GRID_RADII, (low, high)):
        for k in range(CIRCLE_GRID_POINTS):
            angle = 2 * math.pi * (k + 0.5) / CIRCLE_GRID_POINTS
            points.append(factor * radius * mpmath.expj(angle))
    for factor, radius in zip(MIDWAY_RADII, (low, high)):
        for k in range(MIDWAY_GRID_POINTS):
            angle = 2 * math.pi * (k + 0.25) / MIDWAY_GRID_POINTS
            points.append(factor * radius * mpmath.expj(angle))
    return [mpmath.mpc(z) for z in points if compact.distance(z) > GRID_CLEARANCE]


def write_comparison_csv(records, path):
    with open(path, 'w', newline = '') as stream:
        writer = csv.writer(stream)
        writer.writerow(['n', 'z_re', 'z_im', 'abs_err_Q', 'abs_err_R'])
        for record in records:
            writer.writerows(record['rows'])


def _fit_errors(report, floor, names = ('sup_err_Q', 'sup_err_R')):
    fits = {}
    for name in names:
        try:
            fit = fit_rate(report.series(name), floor)
        except ValueError as e:
            logging.warning("No rate fit for %s: %s", name, e)
            continue
        report.add_fit(name, fit)
        fits[name] = fit
    return fits


def run_compare(config, experiment = None):
    '''ConvergenceReport of the approximants against the model over the grid'''
    experiment = Experiment(config) if experiment is None else experiment
    with experiment.ctx:
        experiment.model
        indices = experiment.indices()
    records = experiment.map(_compare_task, indices)
    report = ConvergenceReport('compare', config)
    for record in records:
        report.add_record(record)
    with experiment.ctx:
        _fit_errors(report, FLOOR_FACTOR * experiment.ctx.tol)
    if 'csv' in config.outputs:
        write_comparison_csv(records, config.outputs['csv'])
    return report


def run_model(config, n, experiment = None):
    '''Comparison rows of a single n written to the csv output'''
    experiment = Experiment(config) if experiment is None else experiment
    with experiment.ctx:
        experiment.model
        if not experiment.in_N_eps(n):
            logging.warning("n = %d is not in N_eps, the model is not defined", n)
            return None
        record = experiment.compare(n)
    if 'csv' in config.outputs:
        write_comparison_csv([record], config.outputs['csv'])
    return record


def run_zero_alignment(config, n = None, experiment = None):
    '''ZeroReport of Q_n, n defaulting to nmax; writes overlay and zeros CSV'''
    experiment = Experiment(config) if experiment is None else experiment
    n = config.nmax if n is None else n
    with experiment.ctx:
        report = experiment.zero_alignment(n)
    if 'overlay' in config.outputs:
        report.write_overlay(experiment.compact, config.outputs['overlay'])
    if 'zeros' in config.outputs:
        write_zeros_csv(n, report.roots, config.outputs['zeros'])
    return report


def write_zeros_csv(n, roots, path):
    with open(path, 'w', newline = '') as stream:
        writer = csv.writer(stream)
        writer.writerow(['n', 're', 'im'])
        writer.writerows(zeros_csv_rows(n, roots))


def largest_index(experiment, nmax):
    '''Largest n <= nmax in N_eps'''
    for n in range(nmax, 0, -1):
        if experiment.in_N_eps(n):
            return n
    return None


def run_nth_root(config, n = None, points = None, experiment = None):
    '''
    Rows of measured against predicted n-th root rates at the largest
    admissible n <= nmax
    '''
    experiment = Experiment(config) if experiment is None else experiment
    with experiment.ctx:
        if n is None:
            n = largest_index(experiment, config.nmax)
        points = experiment.grid if points is None else points
        rows = experiment.nth_root(n, points)
    return n, rows


def run_compact(config):
    '''Traced compact of config.a, written to the compact output as CSV'''
    ctx = PrecisionContext(config.precision)
    with ctx:
        compact = build_compact(parse_complex(config.a),
                TrajectoryConfig(config.geometry), ctx)
    logging.info("Trajectory defect %s, inversion defect %s",
            compact.trajectory_defect(), compact.inversion_defect())
    if 'compact' in config.outputs:
        with open(config.outputs['compact'], 'w', newline = '') as stream:
            compact.to_csv(stream)
    return compact


def run_approx(config, n, n1 = None, n2 = None):
    '''
    (approximant, a_n, interpolation residual, zeros) for one type, a_n when
    a weight is known and the type is the default (n, n + 1)
    '''
    n1 = n if n1 is None else n1
    n2 = n + 1 if n2 is None else n2
    experiment = Experiment(config)
    with experiment.ctx:
        approximant = pade_solve(experiment.pair, n1, n2, experiment.ctx)
        residual = interpolation_residuals(approximant, experiment.pair)
        a_n = None
        if experiment.spec is not None and (n, n + 1) == (n1, n2) and 1 < n:
            star = pade_star(experiment.pair, n, experiment.ctx)
            a_n = a_n_compute(star, experiment.compact, experiment.spec,
                    experiment.ctx)
        roots = []
        if approximant.Q.degree >= 1:
            roots = poly_roots(approximant.Q, experiment.ctx)
    logging.info("%s: interpolation residual %s", approximant,
            mpmath.nstr(residual, 5))
    return approximant, a_n, residual, roots


# -- verification suites ------------------------------------------------------

def _suite_config(config, suite):
    if suite not in SUITES:
        raise ValueError(_BAD_SUITE_ERROR_MSG % (', '.join(SUITES), suite))
    real = suite.startswith('real')
    if real != (0 == parse_complex(config.a).imag):
        raise ValueError(_SUITE_PARAMETER_ERROR_MSG % (suite,
                'real' if real else 'non-real'))
    config.weight_class = suite.split('-')[1]
    return real


def _check_residuals(experiment, report):
    n_all = list(range(1, experiment.config.nmax + 1))
    results = experiment.map(_residual_task, n_all)
    report.add_check('interpolation', max(r for n, r, o in results),
            INTERPOLATION_LIMIT)
    orthogonality = [o for n, r, o in results
            if o is not None and experiment.config.nmin <= n]
    if orthogonality:
        report.add_check('orthogonality', max(orthogonality), ORTHOGONALITY_LIMIT)


def _check_rates(experiment, report, records):
    for record in records:
        report.add_record(record)
    with experiment.ctx:
        fits = _fit_errors(report, FLOOR_FACTOR * experiment.ctx.tol)
    for name, fit in fits.items():
        if CLASS_TWO == experiment.spec.weight_class:
            report.add_check(name + '_model', fit.model, GEOMETRIC, 'equals')
            report.add_check(name + '_c', fit.parameter, 1, '<')
            report.add_check(name + '_r2', fit.r2, FIT_R2, '>')
        elif CLASS_ONE == experiment.spec.weight_class:
            # 1/n for both real and non-real parameters, over N_eps for the latter
            report.add_check(name + '_model', fit.model, POWER, 'equals')
            report.add_check(name + '_exponent', fit.parameter,
                    POWER_EXPONENT_RANGE, 'between')


def _check_nth_root(experiment, report):
    with experiment.ctx:
        n = largest_index(experiment, min(experiment.config.nmax, ZERO_CHECK_INDICES[0]))
        points = sample_points(experiment.grid, NTH_ROOT_POINTS)
        rows = [] if n is None else experiment.nth_root(n, points)
    worst = max((row[3] for row in rows), default = None)
    report.add_check('nth_root', worst, NTH_ROOT_LIMIT)
    report.info['nth_root_n'] = n


def _check_real_model(experiment, report):
    model = experiment.model
    report.add_check('equilibrium', model.equilibrium_defect(), EQUILIBRIUM_LIMIT)
    points = sample_points(experiment.grid, NTH_ROOT_POINTS)
    report.add_check('determinant', model.det_check(experiment.config.nmax,
            points), DETERMINANT_LIMIT)
    report.info['determinant_value'] = to_decimal(model.determinant())
    worst = mpmath.mpf(0)
    for n in JUMP_INDICES:
        if n <= experiment.config.nmax:
            worst = max(worst, model.jump_defect(n), model.jump_defect(n, True))
    report.add_check('jump', worst, JUMP_LIMIT)


def _check_surface_model(experiment, report):
    model = experiment.model
    periods = model.periods
    config = experiment.config
    report.add_check('period_realness', periods.realness_defect(), REALNESS_LIMIT)
    report.add_check('period_orientation', periods.B.imag, 0, '>')
    report.add_check('riemann', periods.riemann_defect(), RIEMANN_LIMIT)
    points = [SurfacePoint(z, 0) for z in sample_points(experiment.grid,
            NTH_ROOT_POINTS)]
    report.add_check('product_identities', max(periods.product_defect(points),
            model.szego.product_defect(points)), PRODUCT_LIMIT)
    B = periods.B
    samples = [periods.abel(p) for p in points]
    report.add_check('theta_quasi_periodicity', quasi_periodicity_defect(B,
            samples), THETA_PERIOD_LIMIT)
    report.add_check('theta_zero', abs(theta(half_period(B), B)), THETA_ZERO_LIMIT)
    if CLASS_ONE == experiment.spec.weight_class:
        report.add_check('sum_condition', experiment.spec.sum_condition_defect(),
                SUM_CONDITION_LIMIT)

    translation = max((model.jip.translation_defect(n)
            for n in range(2, config.nmax + 1)), default = mpmath.mpf(0))
    report.add_check('jip_translation', translation, TRANSLATION_LIMIT)
    selected = all(experiment.in_N_eps(n) or experiment.in_N_eps(n - 1)
            for n in range(1, config.nmax + 1))
    report.add_check('index_selection', selected, None, 'true')
    report.info['N_eps'] = [n for n in range(config.nmax + 1)
            if experiment.in_N_eps(n)]

    worst = mpmath.mpf(0)
    for n in JUMP_INDICES:
        if n <= config.nmax and experiment.in_N_eps(n):
            worst = max(worst, model.jump_defect(n))
    report.add_check('psi_jump', worst, JUMP_LIMIT)


def _check_zeros(experiment, report, real):
    config = experiment.config
    with experiment.ctx:
        if real:
            indices = [config.nmax]
        else:
            indices = experiment.indices(1, config.nmax)
    found = {z.n: z for z in experiment.map(_zeros_task, indices)}
    for n, zeros in found.items():
        report.zeros[str(n)] = zeros.to_json()
    if real:
        if LOG == config.pair and config.nmax in found:
            report.add_check('zeros_on_F', len(found[config.nmax].outliers), 1, '<')
        return
    report.add_check('outliers_at_most_one', all(len(z.outliers) <= 1
            for z in found.values()), None, 'true')
    if LOG != config.pair:
        return
    first, second = ZERO_CHECK_INDICES
    if first in found:
        zeros = found[first]
        report.add_check('outlier_count_%d' % first, len(zeros.outliers), 1,
                'equals')
        report.add_check('outlier_near_z_%d' % first,
                zeros.outliers_near_point(config.delta), None, 'true')
    if second in found:
        report.add_check('outlier_count_%d' % second, len(found[second].outliers),
                0, 'equals')


def run_verify(config, suite):
    '''ConvergenceReport with the checks of one suite'''
    real = _suite_config(config, suite)
    experiment = Experiment(config)
    report = ConvergenceReport(suite, config)
    _check_residuals(experiment, report)
    _check_zeros(experiment, report, real)
    if experiment.spec is None:
        logging.warning("No weight for the %s pair, model checks skipped",
                config.pair)
        return report
    with experiment.ctx:
        if real:
            _check_real_model(experiment, report)
        else:
            _check_surface_model(experiment, report)
        indices = experiment.indices()
    records = experiment.map(_compare_task, indices)
    _check_rates(experiment, report, records)
    _check_nth_root(experiment, report)
    if 'csv' in config.outputs:
        write_comparison_csv(records, config.outputs['csv'])
    logging.info("Suite %s: %s", suite, 'passed' if report.passed() else 'failed')
    return report
