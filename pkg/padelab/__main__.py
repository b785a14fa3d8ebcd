#!python3

"""
Command line entry point: python -m padelab COMMAND [options]

Commands compact, approx, model and verify, plus compare, zeros and nthroot
for the individual experiments. Settings come from the INI file (--config),
then a JSON experiment file (--experiment), then the flags.

2026-03-16 Version   padelab
  - experiment JSON files and per command output flags
"""

# from the standard library
import argparse
import csv
import json
import logging
import sys

# third party libraries
import mpmath

# our code
from padelab.config import DEFAULT_CONFIG_FILE_PATH, configure_logging, read_settings
from padelab.errors import PadeLabError
from padelab.lab import (SUITES, ExperimentConfig, experiment_settings,
        read_grid, run_approx, run_compact, run_compare, run_model,
        run_nth_root, run_verify, run_zero_alignment, write_zeros_csv)

# Definitions aka constants
_BAD_TYPE_ERROR_MSG = "--type is expected as N1,N2"


def _type(text):
    try:
        n1, n2 = [int(part) for part in text.split(',')]
    except ValueError:
        raise argparse.ArgumentTypeError(_BAD_TYPE_ERROR_MSG)
    return n1, n2


def build_parser():
    parser = argparse.ArgumentParser(prog = 'padelab',
            description = "Two-point Pade approximants and their strong "
            "asymptotics for the compact of {a, 1/a, b, 1/b}")
    parser.add_argument('--config', default = None,
            help = "INI settings file (default %s when present)"
            % DEFAULT_CONFIG_FILE_PATH)
    parser.add_argument('--experiment', default = None,
            help = "JSON experiment file mirroring the experiment settings")
    parser.add_argument('--workers', type = int)
    commands = parser.add_subparsers(dest = 'command', required = True)

    compact = commands.add_parser('compact', help = "trace F and export it")
    compact.add_argument('--precision-bits', dest = 'bits', type = int)
    compact.add_argument('--a', required = True, help = "RE[,IM]")
    compact.add_argument('--resolution', dest = 'step', type = float,
            help = "trajectory step")
    compact.add_argument('--out', required = True, help = "PATH.csv")

    approx = commands.add_parser('approx', help = "solve one approximant")
    approx.add_argument('--pair', default = None, help = "log|markov|weight:PATH")
    approx.add_argument('--a', required = True)
    approx.add_argument('--n', type = int, required = True)
    approx.add_argument('--type', dest = 'pade_type', type = _type)
    approx.add_argument('--precision-bits', dest = 'bits', type = int)
    approx.add_argument('--out', required = True, help = "PATH.json")
    approx.add_argument('--zeros', help = "PATH.csv")

    model = commands.add_parser('model', help = "compare with the model at one n")
    model.add_argument('--precision-bits', dest = 'bits', type = int)
    model.add_argument('--a', required = True)
    model.add_argument('--class', dest = 'weight_class', choices = ('w1', 'w2'))
    model.add_argument('--pair', default = None)
    model.add_argument('--n', type = int, required = True)
    model.add_argument('--grid', help = "PATH.json")
    model.add_argument('--out', required = True, help = "PATH.csv")

    verify = commands.add_parser('verify', help = "run a verification suite")
    verify.add_argument('--suite', required = True, choices = SUITES)
    verify.add_argument('--a', required = True)
    verify.add_argument('--nmax', type = int, required = True)
    verify.add_argument('--eps', type = float)
    verify.add_argument('--precision-bits', dest = 'bits', type = int)
    verify.add_argument('--report', required = True, help = "PATH.json")
    verify.add_argument('--csv', help = "comparison PATH.csv")

    compare = commands.add_parser('compare', help = "convergence over an n range")
    compare.add_argument('--precision-bits', dest = 'bits', type = int)
    compare.add_argument('--a')
    compare.add_argument('--pair', default = None)
    compare.add_argument('--class', dest = 'weight_class', choices = ('w1', 'w2'))
    compare.add_argument('--nmin', type = int)
    compare.add_argument('--nmax', type = int)
    compare.add_argument('--grid', help = "PATH.json")
    compare.add_argument('--report', required = True, help = "PATH.json")
    compare.add_argument('--csv', help = "comparison PATH.csv")

    zeros = commands.add_parser('zeros', help = "zeros of Q_n against F")
    zeros.add_argument('--precision-bits', dest = 'bits', type = int)
    zeros.add_argument('--a')
    zeros.add_argument('--pair', default = None)
    zeros.add_argument('--class', dest = 'weight_class', choices = ('w1', 'w2'))
    zeros.add_argument('--n', type = int, required = True)
    zeros.add_argument('--out', required = True, help = "report PATH.json")
    zeros.add_argument('--overlay', help = "F and zeros PATH.csv")

    rate = commands.add_parser('nthroot', help = "n-th root rates on the grid")
    rate.add_argument('--precision-bits', dest = 'bits', type = int)
    rate.add_argument('--a')
    rate.add_argument('--pair', default = None)
    rate.add_argument('--class', dest = 'weight_class', choices = ('w1', 'w2'))
    rate.add_argument('--nmax', type = int)
    rate.add_argument('--grid', help = "PATH.json")
    rate.add_argument('--out', required = True, help = "PATH.csv")
    return parser


def _overrides(args):
    '''Flags that override the INI and JSON settings'''
    values = vars(args)
    out = {key: values.get(key) for key in ('a', 'pair', 'nmin', 'nmax', 'eps',
            'bits', 'workers', 'step')}
    out['class'] = values.get('weight_class')
    if values.get('grid'):
        out['grid'] = read_grid(values['grid'])
    if 'n' in values and values['n'] is not None:
        out['nmax'] = values['n']
    return out


def _config(args, ini, outputs = {}):
    overrides = _overrides(args)
    overrides['outputs'] = outputs
    return ExperimentConfig(experiment_settings(ini, args.experiment, overrides))


def command_compact(args, ini):
    run_compact(_config(args, ini, {'compact': args.out}))
    return 0


def command_approx(args, ini):
    config = _config(args, ini)
    n1, n2 = args.pade_type if args.pade_type else (args.n, args.n + 1)
    approximant, a_n, residual, roots = run_approx(config, args.n, n1, n2)
    data = json.loads(approximant.to_json(a_n))
    data['residual'] = mpmath.nstr(residual, 5)
    data['degenerate'] = approximant.degenerate
    with open(args.out, 'w') as stream:
        json.dump(data, stream, indent = 2)
    if args.zeros:
        write_zeros_csv(args.n, roots, args.zeros)
    return 0


def command_model(args, ini):
    record = run_model(_config(args, ini, {'csv': args.out}), args.n)
    return 0 if record is not None else 1


def command_verify(args, ini):
    config = _config(args, ini, {'csv': args.csv})
    report = run_verify(config, args.suite)
    report.write(args.report)
    return 0 if report.passed() else 1


def command_compare(args, ini):
    report = run_compare(_config(args, ini, {'csv': args.csv}))
    report.write(args.report)
    return 0


def command_zeros(args, ini):
    config = _config(args, ini, {'overlay': args.overlay})
    report = run_zero_alignment(config, args.n)
    with open(args.out, 'w') as stream:
        json.dump(report.to_json(), stream, indent = 2)
    return 0


def command_nthroot(args, ini):
    n, rows = run_nth_root(_config(args, ini))
    with open(args.out, 'w', newline = '') as stream:
        writer = csv.writer(stream)
        writer.writerow(['n', 'z_re', 'z_im', 'measured', 'predicted', 'defect'])
        for z, measured, predicted, defect in rows:
            writer.writerow([n] + [mpmath.nstr(x, 17) for x in (z.real, z.imag,
                    measured, predicted, defect)])
    return 0


COMMANDS = {'compact': command_compact, 'approx': command_approx,
        'model': command_model, 'verify': command_verify,
        'compare': command_compare, 'zeros': command_zeros,
        'nthroot': command_nthroot}


def main(argv = None):
    args = build_parser().parse_args(argv)

    # Read our Configuration, setup logging, default level is ERROR
    ini = read_settings(args.config)
    configure_logging(ini)

    try:
        status = COMMANDS[args.command](args, ini)
    except (PadeLabError, ValueError) as e:
        logging.error("%s", e)
        status = 1

    logging.debug("Shutting down logger")
    logging.shutdown()
    return status


# Here is the main entry point.
if __name__ == "__main__":
    sys.exit(main())
