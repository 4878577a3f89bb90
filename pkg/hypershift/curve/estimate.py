import math
from typing import Optional

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict

from hypershift.curve.orbit import OrbitSample, attract_orbit, resonant_alpha1
from hypershift.model.hypercycle import Params
from hypershift.normalform.homological import predicted_radius
from hypershift.utils.enum_class import Classification, Defaults
from hypershift.utils.exceptions import (DegenerateDenominator, DivergedOrbit, DomainError, PreconditionViolation,
                                         UnresolvedAttractor)

CSV_COLUMNS = ('k1', 'delta', 'radius_mean', 'radius_std', 'rotation', 'classification')


class CurveEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    k1: float
    delta: float
    radius_mean: float
    radius_std: float
    rotation: float
    classification: str
    rms_distance: float = 0.0
    dispersion: Optional[float] = None
    predicted_radius: Optional[float] = None
    settle_gap: Optional[float] = None
    burn: int = 0
    n: int = 0
    seed: Optional[int] = None
    note: str = ''

    def to_row(self) -> list:
        return [getattr(self, c) for c in CSV_COLUMNS]

    @classmethod
    def failed(cls, p: Params, note: str, burn: int = 0, n: int = 0, seed: Optional[int] = None) -> 'CurveEstimate':
        return cls(k1=p.k[0], delta=p.delta, radius_mean=math.nan, radius_std=math.nan, rotation=math.nan,
                   classification=Classification.UNRESOLVED, burn=burn, n=n, seed=seed, note=note)


def classify(radius_mean: float, radius_std: float, threshold: float = Defaults.FIXED_POINT_THRESHOLD,
             dispersion_limit: float = Defaults.DISPERSION_LIMIT) -> tuple:
    """(classification, note) for the radius statistics of an orbit."""
    if radius_mean < threshold:
        return Classification.FIXED_POINT, ''
    if radius_mean <= 10.0 * threshold:
        return Classification.UNRESOLVED, f'radius {radius_mean:.3g} between threshold and 10× threshold'
    if radius_std / radius_mean >= dispersion_limit:
        return Classification.UNRESOLVED, f'dispersion {radius_std / radius_mean:.3g} >= {dispersion_limit}'
    return Classification.CLOSED_CURVE, ''


def estimate_curve(o: OrbitSample, threshold: float = Defaults.FIXED_POINT_THRESHOLD,
                   dispersion_limit: float = Defaults.DISPERSION_LIMIT,
                   raise_on_unresolved: bool = False) -> CurveEstimate:
    """Radius and rotation of the ξ-projection of an orbit, and its classification."""
    if o.n < Defaults.MIN_ORBIT:
        raise PreconditionViolation(f'orbit has {o.n} states, need at least {Defaults.MIN_ORBIT}')
    p = o.params
    xi = o.xi()
    radii = np.abs(xi)
    radius_mean = float(radii.mean())
    radius_std = float(radii.std())
    rms = float(np.sqrt((o.points ** 2).sum(axis=1).mean()))
    classification, note = classify(radius_mean, radius_std, threshold, dispersion_limit)
    if radius_mean > threshold and np.all(radii > 0):
        rotation = float(np.angle(xi[1:] / xi[:-1]).mean())
    else:
        rotation = 0.0
    try:
        predicted = predicted_radius(resonant_alpha1(), p.delta)
    except PreconditionViolation:
        predicted = None
    estimate = CurveEstimate(
        k1=p.k[0], delta=p.delta, radius_mean=radius_mean, radius_std=radius_std, rotation=rotation,
        classification=classification, rms_distance=rms,
        dispersion=radius_std / radius_mean if radius_mean > 0 else None,
        predicted_radius=predicted, settle_gap=o.settle_gap, burn=o.burn, n=o.n, seed=o.seed, note=note,
    )
    if classification == Classification.UNRESOLVED:
        logger.warning(f'k1={p.k[0]}: unresolved attractor ({note})')
        if raise_on_unresolved:
            raise UnresolvedAttractor(note)
    return estimate


def estimate_point(p: Params, burn: Optional[int] = None, n: int = Defaults.ITERS,
                   seed: Optional[int] = None) -> CurveEstimate:
    """attract_orbit + estimate_curve, with orbit failures folded into an unresolved estimate.

    Points whose orbits never settle onto a common curve come back unresolved
    and so drop out of a radius fit.
    """
    try:
        return estimate_curve(attract_orbit(p, burn=burn, n=n, seed=seed))
    except (DivergedOrbit, DomainError, DegenerateDenominator, UnresolvedAttractor) as e:
        logger.warning(f'k1={p.k[0]}: {e}')
        return CurveEstimate.failed(p, str(e), burn or 0, n, seed)
