"""Hand-derived displays of the normal-form computation, kept as exact jets.

Nothing here feeds the pipeline. ``cross_check`` compares each display with
what the pipeline computes from the map itself and reports every mismatch.
"""
from dataclasses import dataclass

from loguru import logger

from hypershift.coords.reduced import REDUCED_LABELS
from hypershift.jets.exact import I, ExactComplex
from hypershift.jets.jet import DEFAULT_DEGREE, Jet3, JetMap3
from hypershift.normalform.eigen import ZETA_LABELS
from hypershift.normalform.homological import KILL_ORDER, NormalFormReport, kill_name, run_pipeline
from hypershift.utils.exceptions import DiscrepancyError

ALPHA1 = ExactComplex('-16/5', '-48/5')
NU_RESONANT = ExactComplex('64/5')


@dataclass(frozen=True)
class Discrepancy:
    name: str
    expected: str
    actual: str

    def to_json(self) -> dict:
        return {'name': self.name, 'expected': self.expected, 'actual': self.actual}


def reference_p_terms() -> dict:
    """P_ij: the degree-j part of the i-th reduced field component."""
    z1, z3, z4 = (Jet3.variable(i, DEFAULT_DEGREE, REDUCED_LABELS) for i in range(3))
    s = z1 + z3
    return {
        'P12': -4 * z4 * z4 + 4 * z4 * z1 + s * s,
        'P13': 4 * (z1 - z4) * (s + 2 * z4) * (s - 2 * z4),
        'P22': 4 * z4 * (s + z4) - 4 * z3 * (s + z4) + s * s,
        'P23': 4 * (z3 - z4) * (s + 2 * z4) * (s + 2 * z4),
        'P32': s * s,
        'P33': Jet3({}, DEFAULT_DEGREE, REDUCED_LABELS),
    }


def mirror(p: Jet3) -> Jet3:
    """Swap the ξ and ξ̄ exponents and conjugate every coefficient."""
    return Jet3({(b, a, c): v.conjugate() for (a, b, c), v in p.items()}, p.degree, p.labels)


def reference_g1() -> JetMap3:
    """g⁽¹⁾ up to degree 3; the second component is the mirror of the first."""
    x, y, e = (Jet3.variable(i, DEFAULT_DEGREE, ZETA_LABELS) for i in range(3))
    one_plus_i = 1 + I
    one_minus_i = 1 - I
    first = (
        I * x
        + 4 * x * x - 4 * x * y + 4 * I * x * e - 4 * one_plus_i * y * e
        - 16 * I * x * x * x + 32 * I * x * x * y - 16 * I * x * y * y + 32 * x * x * e
        + 16 * (I - 3) * x * y * e + 16 * one_minus_i * y * y * e
        + 16 * one_plus_i * x * e * e - 16 * one_plus_i * y * e * e
    )
    third = (
        -e
        + 4 * I * x * x - 4 * I * y * y + 4 * I * x * e - 4 * I * y * e - 4 * e * e
        + 16 * x * x * x - 16 * x * x * y - 16 * x * y * y + 16 * y * y * y
        + 16 * one_plus_i * x * x * e - 32 * x * y * e + 16 * one_minus_i * y * y * e
        + 32 * I * x * e * e - 32 * I * y * e * e
    )
    return JetMap3((first, mirror(first), third))


def reference_kill() -> dict:
    four_fifths = ExactComplex('4/5')
    return {
        'a200': -4 * I, 'a020': 0, 'a002': 0, 'a110': -4 * I, 'a101': -4 * I, 'a011': four_fifths * (3 - I),
        'b200': 0, 'b020': 4 * I, 'b002': 0, 'b110': 4 * I, 'b101': four_fifths * (3 + I), 'b011': 4 * I,
        'c200': four_fifths * (2 + I), 'c020': four_fifths * (2 - I), 'c002': 4, 'c110': 0, 'c101': 4, 'c011': 4,
    }


def _compare(found: list, name: str, expected, actual):
    if expected != actual:
        found.append(Discrepancy(name, str(expected), str(actual)))


def cross_check(report: NormalFormReport = None) -> list:
    if report is None:
        report = run_pipeline()
    found = []
    p_terms = reference_p_terms()
    for i in range(3):
        for d in (2, 3):
            _compare(found, f'P{i + 1}{d}', p_terms[f'P{i + 1}{d}'], report.gjet[i].homogeneous(d))
    g1 = reference_g1()
    for i in range(3):
        for d in (1, 2, 3):
            _compare(found, f'g1[{i + 1}] degree {d}', g1[i].homogeneous(d), report.g1[i].homogeneous(d))
    table = reference_kill()
    for j in range(3):
        for m in KILL_ORDER:
            name = kill_name(j, m)
            _compare(found, name, ExactComplex.coerce(table[name]), report.kill[name])
    _compare(found, 'alpha1', ALPHA1, report.result.alpha1)
    _compare(found, 'alpha1 mirror', ALPHA1.conjugate(), report.result.alpha1_mirror)
    _compare(found, 'nu', NU_RESONANT, report.result.nu_resonant)
    for d in found:
        logger.warning(f'reference mismatch {d.name}: expected {d.expected}, got {d.actual}')
    return found


def require_agreement(report: NormalFormReport = None) -> NormalFormReport:
    if report is None:
        report = run_pipeline()
    found = cross_check(report)
    if found:
        raise DiscrepancyError(f'{len(found)} reference displays disagree with the pipeline', found)
    return report
