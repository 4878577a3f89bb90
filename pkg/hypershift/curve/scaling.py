import math
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict
from scipy.stats import linregress
from tqdm import tqdm

from hypershift.curve.estimate import CurveEstimate, estimate_point
from hypershift.model.hypercycle import Params
from hypershift.utils.enum_class import Classification, Defaults
from hypershift.utils.exceptions import InsufficientPoints, InvalidParams

MIN_POINTS = 4


class ScalingFit(BaseModel):
    """Least-squares fit of log(radius_mean) against log(delta)."""
    model_config = ConfigDict(frozen=True)

    slope: float
    intercept: float
    r_squared: float
    points: int
    estimates: list[CurveEstimate] = []
    excluded: list[CurveEstimate] = []

    @property
    def prefactor(self) -> float:
        return math.exp(self.intercept)


def _usable(e: CurveEstimate) -> bool:
    return e.classification == Classification.CLOSED_CURVE and e.radius_mean > 0 and e.delta > 0


def fit_scaling(estimates: list) -> ScalingFit:
    usable = [e for e in estimates if _usable(e)]
    excluded = [e for e in estimates if not _usable(e)]
    if len(usable) < MIN_POINTS:
        raise InsufficientPoints(f'{len(usable)} usable points, need at least {MIN_POINTS}')
    log_delta = np.log([e.delta for e in usable])
    log_radius = np.log([e.radius_mean for e in usable])
    result = linregress(log_delta, log_radius)
    return ScalingFit(slope=float(result.slope), intercept=float(result.intercept),
                      r_squared=float(min(1.0, max(0.0, result.rvalue ** 2))), points=len(usable),
                      estimates=list(estimates), excluded=excluded)


def check_grid(k1_values) -> list:
    values = [float(v) for v in k1_values]
    if len(values) < MIN_POINTS:
        raise InsufficientPoints(f'{len(values)} k1 values, need at least {MIN_POINTS}')
    if min(values) <= 0:
        raise InvalidParams(f'sweep values must be positive, got {values}')
    if max(values) / min(values) < 10.0:
        raise InvalidParams(f'sweep values {values} span less than one decade')
    return values


def _run_point(args) -> CurveEstimate:
    p, burn, n, seed = args
    return estimate_point(p, burn=burn, n=n, seed=seed)


def sweep_estimates(base: Params, k1_values, burn: Optional[int] = None, n: int = Defaults.ITERS,
                    seed: Optional[int] = None, jobs: int = 1, progress: bool = False) -> list:
    """One CurveEstimate per k1 value, in the order given."""
    tasks = [(base.with_k1(v), burn, n, seed) for v in k1_values]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as executor:
            estimates = list(tqdm(executor.map(_run_point, tasks), total=len(tasks), desc='sweep',
                                  disable=not progress))
    else:
        estimates = [_run_point(t) for t in tqdm(tasks, desc='sweep', disable=not progress)]
    for e in estimates:
        logger.debug(f'k1={e.k1} δ={e.delta} radius={e.radius_mean} class={e.classification}')
    return estimates


def sweep_scaling(base: Params, k1_values, burn: Optional[int] = None, n: int = Defaults.ITERS,
                  seed: Optional[int] = None, jobs: int = 1, progress: bool = False) -> ScalingFit:
    values = check_grid(k1_values)
    fit = fit_scaling(sweep_estimates(base, values, burn, n, seed, jobs, progress))
    logger.info(f'radius ~ δ^{fit.slope:.4f}, r²={fit.r_squared:.4f} over {fit.points} points')
    return fit
