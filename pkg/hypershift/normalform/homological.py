"""Quadratic elimination and the resonant cubic coefficient of g in ζ = (ξ, ξ̄, η).

The change h(x) = x + h̃(x) with h̃ homogeneous of degree 2 is chosen so the
transformed field Dh(x)⁻¹ g⁽¹⁾(h(x)) has no quadratic terms. Cubic terms are
not eliminated; only the resonant ones are read off.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from loguru import logger

from hypershift.coords.reduced import g_jet
from hypershift.jets.exact import ZERO, ExactComplex
from hypershift.jets.jet import DEFAULT_DEGREE, Jet3, JetMap3, jet_matvec, monomials, truncated_inverse_jacobian
from hypershift.jets.linear import LinearMap3, linear_conjugate
from hypershift.normalform.eigen import ZETA_LABELS, EigenStructure, build_eigenstructure
from hypershift.utils.exceptions import (DiscrepancyError, IndeterminateOrder, PreconditionViolation,
                                         ResonantDivisor)

COMPONENT_NAMES = ('a', 'b', 'c')
KILL_ORDER = ((2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1))
RESONANT_XI = (2, 1, 0)
RESONANT_XIBAR = (1, 2, 0)
RESONANT_ETA = (1, 1, 1)


def kill_name(component: int, triple) -> str:
    return COMPONENT_NAMES[component] + ''.join(str(e) for e in triple)


def conjugated_jet(gjet: JetMap3, es: EigenStructure) -> JetMap3:
    """g⁽¹⁾(ζ) = C⁻¹ g(Cζ)."""
    return linear_conjugate(gjet, es.C, es.Cinv, labels=ZETA_LABELS)


@dataclass(frozen=True)
class QuadraticKill:
    """Coefficients of h̃, keyed a200..a011, b200..b011, c200..c011."""
    coefficients: dict
    degree: int = DEFAULT_DEGREE
    labels: tuple = ZETA_LABELS

    def __getitem__(self, name: str) -> ExactComplex:
        return self.coefficients[name]

    def __getattr__(self, name):
        # a200, b011, ... as attributes
        try:
            return self.__dict__['coefficients'][name]
        except KeyError:
            raise AttributeError(name) from None

    def names(self) -> list:
        return [kill_name(j, m) for j in range(3) for m in KILL_ORDER]

    def h_tilde(self) -> JetMap3:
        return JetMap3(
            Jet3({m: self.coefficients[kill_name(j, m)] for m in KILL_ORDER}, self.degree, self.labels)
            for j in range(3))

    def as_jet_map(self) -> JetMap3:
        """h = Id + h̃."""
        return JetMap3.identity(self.degree, self.labels) + self.h_tilde()

    def to_json(self) -> dict:
        return {name: self.coefficients[name].to_json() for name in self.names()}


@dataclass(frozen=True)
class NormalFormResult:
    omega: ExactComplex
    stable_eigenvalue: ExactComplex
    alpha1: ExactComplex
    alpha1_mirror: ExactComplex
    nu_resonant: ExactComplex
    weak_stability_order: Optional[int]
    verdict: bool
    transformed: JetMap3

    def to_json(self) -> dict:
        return {
            'omega': self.omega.to_json(),
            'stable_eigenvalue': self.stable_eigenvalue.to_json(),
            'alpha1': self.alpha1.to_json(),
            'alpha1_mirror': self.alpha1_mirror.to_json(),
            'nu_resonant': self.nu_resonant.to_json(),
            'weak_stability_order': self.weak_stability_order,
            'verdict': self.verdict,
        }


@dataclass(frozen=True)
class WeakStabilityVerdict:
    order: Optional[int]
    verdict: bool
    spectrum_hypothesis: bool
    weak_stability_hypothesis: bool
    radius_exponent: Optional[Fraction]
    epsilon: str = 'delta'

    @property
    def curve_predicted(self) -> bool:
        return self.spectrum_hypothesis and self.weak_stability_hypothesis

    def to_json(self) -> dict:
        return {
            'order': self.order,
            'verdict': self.verdict,
            'spectrum_hypothesis': self.spectrum_hypothesis,
            'weak_stability_hypothesis': self.weak_stability_hypothesis,
            'curve_predicted': self.curve_predicted,
            'radius_exponent': None if self.radius_exponent is None else str(self.radius_exponent),
            'epsilon': self.epsilon,
        }


def _diagonal(g1: JetMap3) -> tuple:
    linear = LinearMap3.linear_part(g1)
    spectrum = tuple(linear[i, i] for i in range(3))
    if linear != LinearMap3.diag(*spectrum):
        raise PreconditionViolation(f'linear part of g⁽¹⁾ is not diagonal:\n{linear}')
    return spectrum


def solve_quadratic_kill(g1: JetMap3, es: EigenStructure) -> QuadraticKill:
    """Solve (⟨m, λ⟩ - λ_j) h_{j,m} = Q_{j,m} for every quadratic monomial m."""
    spectrum = _diagonal(g1)
    if spectrum != es.spectrum:
        raise PreconditionViolation(
            f'linear part diag({", ".join(map(str, spectrum))}) differs from the eigenstructure spectrum')
    coefficients = {}
    for j in range(3):
        for m in KILL_ORDER:
            divisor = sum((spectrum[k] * m[k] for k in range(3)), ZERO) - spectrum[j]
            if divisor.is_zero():
                raise ResonantDivisor(f'monomial {m} in component {j + 1} is resonant')
            coefficients[kill_name(j, m)] = g1[j].coeff(m) / divisor
    kill = QuadraticKill(coefficients, g1.degree, g1.labels)
    residue = transformed_field(g1, kill).homogeneous(2)
    if any(not c.is_zero() for c in residue):
        raise DiscrepancyError(f'quadratic terms survive the change:\n{residue}')
    return kill


def transformed_field(g1: JetMap3, kill: QuadraticKill) -> JetMap3:
    """g⁽²⁾(x) = Dh(x)⁻¹ g⁽¹⁾(h(x)), truncated at the jet degree."""
    h_tilde = kill.h_tilde()
    composed = g1.substitute(kill.as_jet_map())
    return jet_matvec(truncated_inverse_jacobian(h_tilde), composed)


def cubic_normal_form(g1: JetMap3, kill: QuadraticKill) -> NormalFormResult:
    g2 = transformed_field(g1, kill)
    if any(not c.is_zero() for c in g2.homogeneous(2)):
        raise DiscrepancyError('the quadratic change leaves quadratic terms in g⁽²⁾')
    if LinearMap3.linear_part(g2) != LinearMap3.linear_part(g1):
        raise DiscrepancyError('the quadratic change altered the linear part')
    spectrum = _diagonal(g2)
    alpha1 = g2[0].coeff(RESONANT_XI)
    mirror = g2[1].coeff(RESONANT_XIBAR)
    if mirror != alpha1.conjugate():
        raise DiscrepancyError(f'mirror coefficient {mirror} is not the conjugate of α1 = {alpha1}')
    nu = g2[2].coeff(RESONANT_ETA)
    stable = alpha1.re < 0
    logger.debug(f'α1 = {alpha1}, ν = {nu}')
    return NormalFormResult(
        omega=ExactComplex(spectrum[0].im),
        stable_eigenvalue=spectrum[2],
        alpha1=alpha1,
        alpha1_mirror=mirror,
        nu_resonant=nu,
        weak_stability_order=1 if stable else None,
        verdict=stable,
        transformed=g2,
    )


def weak_stability_verdict(nf: NormalFormResult) -> WeakStabilityVerdict:
    if nf.alpha1.re == 0:
        raise IndeterminateOrder(f'Re(α1) = 0 for α1 = {nf.alpha1}; orders above 1 need a higher jet degree')
    spectrum_ok = not nf.omega.is_zero() and nf.stable_eigenvalue.re < 0
    return WeakStabilityVerdict(
        order=nf.weak_stability_order,
        verdict=nf.verdict,
        spectrum_hypothesis=spectrum_ok,
        weak_stability_hypothesis=nf.verdict,
        radius_exponent=Fraction(1, 2 * nf.weak_stability_order) if nf.verdict else None,
    )


def predicted_radius(alpha1, delta: float) -> float:
    """sqrt(-δ / (2 Re α1)), the radius of the invariant curve in the ξ-plane."""
    re = float(alpha1.re) if isinstance(alpha1, ExactComplex) else complex(alpha1).real
    if re >= 0:
        raise PreconditionViolation(f'no attracting curve for Re(α1) = {re!r}')
    if delta <= 0:
        raise PreconditionViolation(f'no curve for δ = {delta!r}')
    return math.sqrt(-delta / (2.0 * re))


@dataclass(frozen=True)
class NormalFormReport:
    gjet: JetMap3
    eigen: EigenStructure
    g1: JetMap3
    kill: QuadraticKill
    result: NormalFormResult
    verdict: WeakStabilityVerdict


def run_pipeline(degree: int = DEFAULT_DEGREE) -> NormalFormReport:
    """g jet → eigenstructure → g⁽¹⁾ → quadratic kill → resonant cubic terms → verdict."""
    gjet = g_jet(degree)
    es = build_eigenstructure(LinearMap3.linear_part(gjet))
    g1 = conjugated_jet(gjet, es)
    kill = solve_quadratic_kill(g1, es)
    result = cubic_normal_form(g1, kill)
    verdict = weak_stability_verdict(result)
    logger.info(f'normal form: α1 = {result.alpha1}, order {verdict.order}, verdict {verdict.verdict}')
    return NormalFormReport(gjet, es, g1, kill, result, verdict)
