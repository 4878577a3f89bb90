from hypershift.jets.linear import LinearMap3
from hypershift.normalform.homological import (KILL_ORDER, RESONANT_ETA, RESONANT_XI, RESONANT_XIBAR,
                                               NormalFormReport, kill_name)

RULE = '-' * 72


def _section(title: str, body: str) -> str:
    return f'{RULE}\n{title}\n{RULE}\n{body}\n'


def _components(m, degrees=(1, 2, 3)) -> str:
    lines = []
    for i, component in enumerate(m):
        for d in degrees:
            lines.append(f'  [{i + 1}] degree {d}: {component.homogeneous(d)}')
    return '\n'.join(lines)


def render_transcript(report: NormalFormReport) -> str:
    """Plain-text walk through every intermediate of the normal-form derivation."""
    parts = [
        _section('g(z), z = (z1, z3, z4)', _components(report.gjet)),
        _section('Dg(0)', str(LinearMap3.linear_part(report.gjet))),
        _section('C', str(report.eigen.C)),
        _section('C^-1', str(report.eigen.Cinv)),
        _section('g1(ζ) = C^-1 g(Cζ), ζ = (xi, xibar, eta)', _components(report.g1)),
    ]
    rows = []
    for j in range(3):
        rows.append('  ' + '   '.join(f'{kill_name(j, m)} = {report.kill[kill_name(j, m)]}' for m in KILL_ORDER))
    parts.append(_section('h(x) = x + h~(x), quadratic coefficients', '\n'.join(rows)))
    g2 = report.result.transformed
    resonant = '\n'.join([
        f'  [1] xi^2·xibar:      {g2[0].coeff(RESONANT_XI)}',
        f'  [2] xi·xibar^2:      {g2[1].coeff(RESONANT_XIBAR)}',
        f'  [3] xi·xibar·eta:    {g2[2].coeff(RESONANT_ETA)}',
        f'  quadratic terms:     {"none" if all(c.is_zero() for c in g2.homogeneous(2)) else "present"}',
    ])
    parts.append(_section('g2 = Dh^-1 g1(h), resonant cubic terms', resonant))
    verdict = report.verdict
    summary = '\n'.join([
        f'  alpha1 = {report.result.alpha1}',
        f'  nu     = {report.result.nu_resonant}',
        f'  weakly stable of order {verdict.order}: {verdict.verdict}',
        f'  curve radius ~ delta^{verdict.radius_exponent}' if verdict.radius_exponent is not None else '  no curve',
    ])
    parts.append(_section('verdict', summary))
    return '\n'.join(parts)
