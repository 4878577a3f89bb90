# Copyright (c) Opendatalab. All rights reserved.
import sys

import click
from loguru import logger
from pydantic import ValidationError

from hypershift.utils.cli_parser import FloatList
from hypershift.utils.config_reader import (get_burn, get_jobs, get_log_level, get_refine_config, get_sweep_config,
                                            get_tolerance_config)
from hypershift.utils.enum_class import Defaults, ExitCode, OutputFormat
from hypershift.utils.exceptions import (DegenerateParameter, DiscrepancyError, DomainError, HypershiftError,
                                         InsufficientPoints, InvalidParams, InvalidState, PreconditionViolation,
                                         SingularTransform)
from hypershift.utils.schemas import RunConfig
from ..version import __version__
from .common import (do_curve, do_fixed_points, do_normal_form, do_simulate, do_spectrum, do_sweep, do_verify,
                     emit_report)

CONFIG_ERRORS = (ValidationError, InvalidParams, InvalidState, InsufficientPoints, DomainError, PreconditionViolation)
DEGENERATE_ERRORS = (DegenerateParameter, SingularTransform)


def _setup_logging(verbose: bool):
    logger.remove()
    logger.add(sys.stderr, level='DEBUG' if verbose else get_log_level())


def _state_tol(tol):
    if tol is not None:
        return tol
    return (get_tolerance_config() or {}).get('state')


def _run(action, subcommand: str, **options):
    """Build the RunConfig, run ``action`` and exit with its code."""
    try:
        cfg = RunConfig(subcommand=subcommand, **{k: v for k, v in options.items() if v is not None})
        report = action(cfg)
        emit_report(report, cfg)
    except CONFIG_ERRORS as e:
        click.echo(f'{subcommand}: {e}', err=True)
        sys.exit(ExitCode.CONFIG_ERROR)
    except DEGENERATE_ERRORS as e:
        click.echo(f'{subcommand}: {e}', err=True)
        sys.exit(ExitCode.DEGENERATE)
    except DiscrepancyError as e:
        click.echo(f'{subcommand}: {e}', err=True)
        sys.exit(ExitCode.DISCREPANCY)
    except HypershiftError as e:
        logger.exception(e)
        sys.exit(1)
    sys.exit(report.exit_code)


def k_option(default=None):
    return click.option('--k', 'k', type=FloatList(4), default=default,
                        help='rate coefficients k1,k2,k3,k4, e.g. 1,2,4,4 or -1/10,1,1,1')


def format_option(default=OutputFormat.JSON):
    return click.option('--format', 'format', type=click.Choice([OutputFormat.CSV, OutputFormat.JSON]),
                        default=default, show_default=True, help='output format')


out_option = click.option('--out', 'out', type=click.Path(), default=None,
                          help='output file (sweep: directory); stdout when omitted')
seed_option = click.option('--seed', 'seed', type=int, default=None, help='seed for random initial phases')
tol_option = click.option('--tol', 'tol', type=float, default=None, help='state validity tolerance')


@click.group(context_settings=dict(help_option_names=['-h', '--help']))
@click.version_option(__version__,
                      '--version',
                      '-v',
                      help='display the version and exit')
@click.option('--verbose', is_flag=True, default=False, help='debug logging on stderr')
def main(verbose):
    """Analysis of the discrete four-species hypercycle near its functional shift."""
    _setup_logging(verbose)


@main.command('fixed-points')
@k_option(default=(1.0, 1.0, 1.0, 1.0))
@click.option('--x0', 'x0', type=FloatList(4), default=None, help='point tested for fixedness and segment membership')
@tol_option
@format_option()
@out_option
def fixed_points(k, x0, tol, format, out):
    """Interior fixed point P, vertices and boundary segments of fixed points."""
    _run(do_fixed_points, 'fixed-points', k=k, x0=x0, tol=_state_tol(tol), format=format, out=out)


@main.command('spectrum')
@k_option(default=(1.0, 1.0, 1.0, 1.0))
@format_option()
@out_option
def spectrum(k, format, out):
    """Closed-form and Jacobian spectra at P, and vertex spectra."""
    _run(do_spectrum, 'spectrum', k=k, format=format, out=out)


@main.command('simulate')
@k_option(default=(0.05, 1.0, 1.0, 1.0))
@click.option('--x0', 'x0', type=FloatList(4), default=None, help='initial point, default (1/4,1/4,1/4,1/4)')
@click.option('--iters', 'iters', type=int, default=1000, show_default=True, help='recorded iterations')
@click.option('--burn', 'burn', type=int, default=0, show_default=True, help='discarded iterations')
@tol_option
@format_option()
@out_option
def simulate(k, x0, iters, burn, tol, format, out):
    """Iterate the map in the simplex and record the orbit."""
    _run(do_simulate, 'simulate', k=k, x0=x0, iters=iters, burn=get_burn(burn), tol=_state_tol(tol), format=format,
         out=out)


@main.command('normal-form')
@click.option('--show-steps', 'show_steps', is_flag=True, default=False, help='print the full derivation')
@format_option()
@out_option
def normal_form(show_steps, format, out):
    """Exact normal form at P: quadratic kill table, α1 and the weak-stability verdict."""
    _run(do_normal_form, 'normal-form', show_steps=show_steps, format=format, out=out)


@main.command('curve')
@k_option(default=(0.05, 1.0, 1.0, 1.0))
@click.option('--z0', 'z0', type=FloatList(3), default=None, help='initial reduced state z1,z3,z4')
@click.option('--iters', 'iters', type=int, default=Defaults.ITERS, show_default=True, help='recorded iterations')
@click.option('--burn', 'burn', type=int, default=None,
              help='discarded iterations; by default the orbit settles onto the curve')
@click.option('--modes', 'modes', type=int, default=None, help='Fourier modes of the refined curve')
@click.option('--tol', 'q_tol', type=float, default=None, help='distance to Q counted as converged (k1 <= 0)')
@seed_option
@format_option()
@out_option
def curve(k, z0, iters, burn, modes, q_tol, seed, format, out):
    """Attracting invariant curve at one k1: radius, rotation and its Fourier refinement."""
    refine = get_refine_config() or {}
    _run(do_curve, 'curve', k=k, z0=z0, iters=iters, burn=get_burn(burn), modes=modes or refine.get('modes'),
         q_tol=q_tol, seed=seed, format=format, out=out)


@main.command('sweep')
@k_option(default=(0.05, 1.0, 1.0, 1.0))
@click.option('--k1', 'k1', type=float, default=None, help='k1 of a single point, with --only')
@click.option('--only', 'only', is_flag=True, default=False, help='estimate the single point --k1 only')
@click.option('--grid', 'grid', type=FloatList(), default=None, help='comma-separated k1 values')
@click.option('--iters', 'iters', type=int, default=None, help='recorded iterations per point')
@click.option('--burn', 'burn', type=int, default=None,
              help='discarded iterations per point; by default each orbit settles')
@click.option('--jobs', 'jobs', type=int, default=1, show_default=True, help='worker processes')
@click.option('--gate', 'gate', is_flag=True, default=False, help='exit 5 unless the slope is in [0.4, 0.6]')
@seed_option
@format_option(OutputFormat.CSV)
@out_option
def sweep(k, k1, only, grid, iters, burn, jobs, gate, seed, format, out):
    """Radius of the invariant curve across k1 and the fitted exponent of δ."""
    settings = get_sweep_config() or {}
    if k1 is not None:
        k = (k1,) + tuple(k[1:])
    _run(do_sweep, 'sweep', k=k, only=only, grid=grid or settings.get('grid'),
         iters=iters or settings.get('iters'), burn=get_burn(burn if burn is not None else settings.get('burn')),
         jobs=get_jobs(jobs), gate=gate, seed=seed, format=format, out=out)


@main.command('verify')
@click.option('--full', 'full', is_flag=True, default=False, help='include the sweep and curve refinement')
@format_option()
@out_option
def verify(full, format, out):
    """Acceptance checks; exit 5 if any fails."""
    _run(do_verify, 'verify', full=full, format=format, out=out)


if __name__ == '__main__':
    main()
