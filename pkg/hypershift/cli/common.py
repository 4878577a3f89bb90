import math
import os
import sys
from dataclasses import dataclass, field

from loguru import logger

from hypershift.coords.reduced import ReducedState, remainder_ratio
from hypershift.curve.estimate import CSV_COLUMNS, estimate_curve, estimate_point
from hypershift.curve.orbit import attract_orbit, converge_to_Q
from hypershift.curve.refine import invariance_defect, refine_curve
from hypershift.curve.scaling import check_grid, fit_scaling, sweep_estimates, sweep_scaling
from hypershift.data.artifact_writer import FileArtifactWriter, StreamArtifactWriter, format_csv, format_json
from hypershift.model.fixed_points import (boundary_fixed_segments, interior_fixed_point, is_fixed_point,
                                           vertices)
from hypershift.model.hypercycle import N_SPECIES, Params, SimplexPoint, iterate
from hypershift.model.spectrum import (closed_form_spectrum, jacobian_spectrum, match_eigenvalues,
                                       transversal_multiplier, vertex_spectrum)
from hypershift.normalform.homological import KILL_ORDER, kill_name, run_pipeline
from hypershift.normalform.reference import ALPHA1, cross_check
from hypershift.normalform.transcript import render_transcript
from hypershift.utils.enum_class import Classification, Defaults, ExitCode, OutputFormat, SchemaVersion
from hypershift.utils.exceptions import DegenerateParameter, HypershiftError, NoConvergence, OutsideSimplex
from hypershift.utils.hash_utils import config_fingerprint
from hypershift.utils.schemas import RunConfig

SLOPE_GATE = (0.4, 0.6)
COLLAPSE_K1 = (0.0, -0.05, -0.1)
RATE_RANGE = (-1.2, -0.8)


@dataclass
class Report:
    """What a subcommand produced: a JSON-able payload, an optional table and the exit code."""
    name: str
    data: dict
    columns: tuple = ()
    rows: list = field(default_factory=list)
    exit_code: int = ExitCode.OK
    text: str = ''


def _complex_json(value: complex) -> dict:
    return {'re': value.real, 'im': value.imag}


def _spectrum_json(report) -> dict:
    return {
        'eigenvalues': [_complex_json(v) for v in report.eigenvalues],
        'moduli': list(report.moduli),
        'transversal_index': report.transversal_index,
        'stability': report.stability,
    }


def _header(cfg: RunConfig) -> dict:
    return {'schema': SchemaVersion.CSV, 'seed': cfg.seed, 'config': config_fingerprint(cfg)}


def do_fixed_points(cfg: RunConfig) -> Report:
    p = cfg.params
    data = {'k': list(p.k), 'M1': p.M1, 'M2': p.M2, 'k1_star': p.k1_star, 'delta': p.delta}
    exit_code = ExitCode.OK
    try:
        fixed = interior_fixed_point(p)
        certificate = is_fixed_point(fixed, p, cfg.tol)
        data['P'] = list(fixed.x)
        data['P_fixed'] = certificate.fixed
        data['P_defect'] = certificate.direct_defect
    except DegenerateParameter as e:
        data['P'] = None
        data['error'] = str(e)
        data['note'] = 'k1 = 0 adds the segment of fixed points (a, 0, 0, 1-a) joining P and Q'
        exit_code = ExitCode.DEGENERATE
    except OutsideSimplex as e:
        data['P'] = None
        data['P_outside_simplex'] = list(e.payload)
    data['vertices'] = [list(v.x) for v in vertices()]
    segments = []
    for segment in boundary_fixed_segments(p):
        entry = {'label': segment.label, 'support': [i + 1 for i in segment.support],
                 'midpoint_fixed': is_fixed_point(segment.point(0.5), p, cfg.tol).fixed}
        if cfg.x0 is not None:
            x0 = SimplexPoint(cfg.x0, cfg.tol)
            entry['x0_on_segment'] = segment.contains(x0, cfg.tol)
        segments.append(entry)
    data['segments'] = segments
    if cfg.x0 is not None:
        data['x0_fixed'] = is_fixed_point(SimplexPoint(cfg.x0, cfg.tol), p, cfg.tol).fixed
    rows = []
    if data['P'] is not None:
        rows.append(['P'] + data['P'])
    rows.extend([f'q{m + 1}'] + v for m, v in enumerate(data['vertices']))
    return Report('fixed_points', data, ('name', 'x1', 'x2', 'x3', 'x4'), rows, exit_code)


def do_spectrum(cfg: RunConfig) -> Report:
    p = cfg.params
    data = {'k': list(p.k)}
    try:
        fixed = interior_fixed_point(p)
        data['closed_form'] = _spectrum_json(closed_form_spectrum(p))
        data['jacobian'] = _spectrum_json(jacobian_spectrum(fixed, p))
        data['transversal_multiplier'] = transversal_multiplier(p)
    except (DegenerateParameter, OutsideSimplex) as e:
        data['P'] = None
        data['error'] = str(e)
    data['vertices'] = {f'q{m}': _spectrum_json(vertex_spectrum(m, p)) for m in range(1, N_SPECIES + 1)}
    rows = []
    for source in ('closed_form', 'jacobian'):
        if source in data:
            rows.extend([source, i, v['re'], v['im'], data[source]['moduli'][i]]
                        for i, v in enumerate(data[source]['eigenvalues']))
    for name, spectrum in data['vertices'].items():
        rows.extend([name, i, v['re'], v['im'], spectrum['moduli'][i]] for i, v in enumerate(spectrum['eigenvalues']))
    return Report('spectrum', data, ('source', 'index', 're', 'im', 'modulus'), rows)


def do_simulate(cfg: RunConfig) -> Report:
    p = cfg.params
    if cfg.x0 is not None:
        x0 = SimplexPoint(cfg.x0, cfg.tol)
    else:
        x0 = SimplexPoint((0.25, 0.25, 0.25, 0.25), cfg.tol)
    burn = cfg.burn or 0
    orbit = iterate(x0, p, cfg.iters, burn)
    rows = [[burn + n + 1] + list(x.x) for n, x in enumerate(orbit)]
    data = {'k': list(p.k), 'x0': list(x0.x), 'burn': burn, 'iters': cfg.iters,
            'last': list(orbit[-1].x) if orbit else list(x0.x)}
    if p.k[0] < 0:
        record = converge_to_Q(p, x0, tol=cfg.q_tol)
        data['convergence'] = record.to_json()
    return Report('simulate', data, ('iteration', 'x1', 'x2', 'x3', 'x4'), rows)


def do_normal_form(cfg: RunConfig) -> Report:
    report = run_pipeline()
    discrepancies = cross_check(report)
    result = report.result
    data = {
        'alpha1': result.alpha1.to_json(),
        'nu': result.nu_resonant.to_json(),
        'omega': result.omega.to_json(),
        'stable_eigenvalue': result.stable_eigenvalue.to_json(),
        'spectrum': [v.to_json() for v in report.eigen.spectrum],
        'kill': report.kill.to_json(),
        'verdict': report.verdict.to_json(),
        'discrepancies': [d.to_json() for d in discrepancies],
    }
    rows = [[kill_name(j, m), str(report.kill[kill_name(j, m)].re), str(report.kill[kill_name(j, m)].im)]
            for j in range(3) for m in KILL_ORDER]
    rows.append(['alpha1', str(result.alpha1.re), str(result.alpha1.im)])
    rows.append(['nu', str(result.nu_resonant.re), str(result.nu_resonant.im)])
    exit_code = ExitCode.DISCREPANCY if discrepancies else ExitCode.OK
    text = render_transcript(report) if cfg.show_steps else ''
    return Report('normal_form', data, ('name', 're', 'im'), rows, exit_code, text)


def do_curve(cfg: RunConfig) -> Report:
    p = cfg.params
    if p.k[0] < 0:
        record = converge_to_Q(p, tol=cfg.q_tol)
        data = {'k': list(p.k), 'classification': Classification.FIXED_POINT, 'convergence': record.to_json()}
        return Report('curve', data, ('k1', 'converged', 'iterations', 'distance'),
                      [[p.k[0], record.converged, record.iterations, record.distance]])
    z0 = ReducedState(cfg.z0) if cfg.z0 is not None else None
    orbit = attract_orbit(p, z0, burn=cfg.burn, n=cfg.iters, seed=cfg.seed)
    estimate = estimate_curve(orbit)
    data = {'estimate': estimate.model_dump()}
    rows = []
    if estimate.classification == Classification.CLOSED_CURVE:
        try:
            curve = refine_curve(p, orbit, cfg.modes)
            data['curve'] = curve.to_json()
            data['curve']['radius'] = curve.radius()
            data['curve']['invariance_defect'] = invariance_defect(curve, p)
            rows = [[label, k, v[1], v[2]] for label, modes in data['curve']['modes'].items() for k, v in
                    enumerate(modes)]
        except NoConvergence as e:
            logger.warning(str(e))
            data['curve'] = None
            data['refine_error'] = str(e)
    return Report('curve', data, ('coordinate', 'index', 're', 'im'), rows)


def do_sweep(cfg: RunConfig) -> Report:
    p = cfg.params
    values = [p.k[0]] if cfg.only else check_grid(cfg.grid)
    estimates = sweep_estimates(p, values, burn=cfg.burn, n=cfg.iters, seed=cfg.seed,
                                jobs=cfg.jobs, progress=cfg.out is not None)
    rows = [e.to_row() for e in estimates]
    data = {'estimates': [e.model_dump() for e in estimates]}
    exit_code = ExitCode.OK
    if not cfg.only:
        fit = fit_scaling(estimates)
        data['fit'] = fit.model_dump(exclude={'estimates', 'excluded'})
        data['excluded'] = [e.k1 for e in fit.excluded]
        data['gate'] = {'slope_range': list(SLOPE_GATE), 'passed': SLOPE_GATE[0] <= fit.slope <= SLOPE_GATE[1]}
        if cfg.gate and not data['gate']['passed']:
            exit_code = ExitCode.GATE_FAILURE
    return Report('sweep', data, CSV_COLUMNS, rows, exit_code)


def _with_header(data: dict, header: dict) -> dict:
    return dict(data, config=header['config'], schema=header['schema'], seed=header['seed'])


def emit_report(report: Report, cfg: RunConfig) -> None:
    """Write a report as CSV or JSON to ``cfg.out``, or to stdout."""
    header = _header(cfg)
    if report.name == 'sweep' and cfg.out is not None:
        writer = FileArtifactWriter(cfg.out)
        writer.write_csv('sweep.csv', report.columns, report.rows, header)
        writer.write_json('summary.json', _with_header(report.data, header))
        logger.info(f'sweep written to {os.path.abspath(cfg.out)}')
        return
    if cfg.format == OutputFormat.CSV and report.columns:
        body = format_csv(report.columns, report.rows, header)
    else:
        body = format_json(_with_header(report.data, header))
    if cfg.out is None:
        if report.text:
            # stdout carries only the machine-readable body
            StreamArtifactWriter(sys.stderr).write_string('transcript', report.text + '\n')
        StreamArtifactWriter().write_string(report.name, body)
    else:
        writer = FileArtifactWriter()
        writer.write_string(cfg.out, body)
        if report.text:
            writer.write_string(os.path.splitext(cfg.out)[0] + '.steps.txt', report.text + '\n')
        logger.info(f'{report.name} written to {os.path.abspath(cfg.out)}')


def _check_fixed_point():
    p = Params.of(1.0, 2.0, 4.0, 4.0)
    fixed = interior_fixed_point(p)
    error = fixed.distance((0.25, 0.125, 0.125, 0.5))
    return error <= 1e-12 and is_fixed_point(fixed, p).fixed, f'|P - (1/4,1/8,1/8,1/2)| = {error:.3g}'


def _check_spectrum():
    p = Params.of(1.0, 2.0, 3.0, 4.0)
    expected = closed_form_spectrum(p).eigenvalues[1:] + (transversal_multiplier(p),)
    error = match_eigenvalues(expected, jacobian_spectrum(interior_fixed_point(p), p).eigenvalues)
    return error <= 1e-10, f'max eigenvalue mismatch {error:.3g}'


def _check_normal_form():
    report = run_pipeline()
    discrepancies = cross_check(report)
    ok = report.result.alpha1 == ALPHA1 and not discrepancies and report.verdict.verdict
    return ok, f'alpha1 = {report.result.alpha1}, {len(discrepancies)} discrepancies'


def _check_remainder():
    ratio = remainder_ratio(ReducedState((0.03, -0.02, 0.04)), Params.of(0.05))
    return 3.5 <= ratio <= 4.5, f'remainder ratio {ratio:.4f}'


def _check_curve():
    p = Params.of(0.05)
    estimate = estimate_point(p)
    ok = (estimate.classification == Classification.CLOSED_CURVE
          and math.sqrt(p.delta) / 3 <= estimate.radius_mean <= 3 * math.sqrt(p.delta))
    return ok, f'{estimate.classification}, radius {estimate.radius_mean:.6g}, rotation {estimate.rotation:.6g}'


def _check_collapse():
    records = [converge_to_Q(Params.of(k1)) for k1 in COLLAPSE_K1]
    ok = all(r.converged and r.rate_exponent is not None and RATE_RANGE[0] <= r.rate_exponent <= RATE_RANGE[1]
             for r in records)
    detail = ', '.join(f'k1={k1}: {r.iterations} iterations, exponent {r.rate_exponent:.3f}'
                       if r.rate_exponent is not None else f'k1={k1}: no decay fit'
                       for k1, r in zip(COLLAPSE_K1, records))
    return ok, detail


def _check_sweep():
    fit = sweep_scaling(Params.of(0.05), list(Defaults.SWEEP_GRID))
    ok = SLOPE_GATE[0] <= fit.slope <= SLOPE_GATE[1] and fit.r_squared >= 0.98
    return ok, f'slope {fit.slope:.4f}, r² {fit.r_squared:.5f}, {fit.points} points'


def _check_refine():
    p = Params.of(0.05)
    curve = refine_curve(p, attract_orbit(p))
    defect = invariance_defect(curve, p)
    return curve.residual < 1e-10 and defect < 1e-9, f'residual {curve.residual:.3g}, invariance defect {defect:.3g}'


QUICK_CHECKS = (
    ('fixed_point', _check_fixed_point),
    ('spectrum', _check_spectrum),
    ('normal_form', _check_normal_form),
    ('remainder_order', _check_remainder),
    ('closed_curve', _check_curve),
    ('collapse_to_Q', _check_collapse),
)
FULL_CHECKS = (
    ('radius_scaling', _check_sweep),
    ('invariant_curve', _check_refine),
)


def do_verify(cfg: RunConfig) -> Report:
    checks = QUICK_CHECKS + (FULL_CHECKS if cfg.full else ())
    rows = []
    for name, check in checks:
        try:
            passed, detail = check()
        except HypershiftError as e:
            passed, detail = False, str(e)
        logger.info(f'{name}: {"pass" if passed else "FAIL"} ({detail})')
        rows.append([name, bool(passed), detail])
    failed = [row[0] for row in rows if not row[1]]
    data = {'checks': [{'name': n, 'passed': ok, 'detail': d} for n, ok, d in rows], 'failed': failed}
    text = '\n'.join(f'{"PASS" if ok else "FAIL"}  {n:<18} {d}' for n, ok, d in rows)
    exit_code = ExitCode.GATE_FAILURE if failed else ExitCode.OK
    return Report('verify', data, ('check', 'passed', 'detail'), rows, exit_code, text)
