import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np
from loguru import logger
from tqdm import tqdm

from hypershift.coords.reduced import ReducedState, closed_form_step
from hypershift.model.fixed_points import CORNER_Q
from hypershift.model.hypercycle import Params, SimplexPoint, map_step
from hypershift.normalform.eigen import build_eigenstructure
from hypershift.normalform.homological import predicted_radius, run_pipeline
from hypershift.utils.enum_class import Defaults
from hypershift.utils.exceptions import (DivergedOrbit, DomainError, NotConverged, PreconditionViolation,
                                         SingularTransform, UnresolvedAttractor)


@lru_cache(maxsize=1)
def xi_row() -> np.ndarray:
    """First row of C⁻¹ as complex floats."""
    return build_eigenstructure().Cinv.to_numpy()[0]


@lru_cache(maxsize=1)
def resonant_alpha1() -> complex:
    return complex(run_pipeline().result.alpha1)


def xi_projection(zr) -> complex:
    """ξ, the centre-eigenplane coordinate of a reduced state."""
    z = zr.z if isinstance(zr, ReducedState) else zr
    return complex(np.dot(xi_row(), np.asarray(z, dtype=float)))


def xi_projection_array(points: np.ndarray) -> np.ndarray:
    return np.asarray(points, dtype=float) @ xi_row()


def default_seed(p: Params) -> ReducedState:
    """(0.5√δ, 0, 0): inside the predicted curve, at a distance of the order of its radius."""
    return ReducedState((0.5 * math.sqrt(p.delta), 0.0, 0.0))


def curve_seed(p: Params, seed: Optional[int] = None) -> ReducedState:
    """A point on the predicted curve: z = C(ξ0, ξ̄0, 0) with |ξ0| = predicted radius.

    The phase is 0 without a seed and uniform in [0, 2π) otherwise.
    """
    r0 = predicted_radius(resonant_alpha1(), p.delta)
    phase = 0.0 if seed is None else float(np.random.default_rng(seed).uniform(0.0, 2.0 * math.pi))
    c, s = math.cos(phase), math.sin(phase)
    return ReducedState((2.0 * r0 * c, -2.0 * r0 * c, -2.0 * r0 * s))


def settle_cap(delta: float) -> int:
    """Step budget for settling: the radial relaxation rate is δ², so the budget scales with 1/δ²."""
    if delta <= 0:
        return Defaults.BURN
    return max(Defaults.BURN, math.ceil(Defaults.SETTLE_FACTOR / (delta * delta)))


@dataclass(frozen=True, eq=False)
class OrbitSample:
    points: np.ndarray
    params: Params
    burn: int
    n: int
    seed: Optional[int] = None
    settle_gap: Optional[float] = None

    @property
    def states(self) -> tuple:
        return tuple(ReducedState(tuple(row)) for row in self.points)

    def xi(self) -> np.ndarray:
        return xi_projection_array(self.points)


@dataclass(frozen=True)
class SettleRecord:
    state: ReducedState
    partner: ReducedState
    burn: int
    gap: float
    radii: tuple


def _require_curve_regime(p: Params):
    if p.k[0] == 0:
        raise SingularTransform('the reduced coordinates are undefined at k1 = 0')
    if p.k[0] < 0:
        raise PreconditionViolation(f'k1={p.k[0]} < 0: no curve, use converge_to_Q')


def settle(p: Params, z0: ReducedState = None, seed: Optional[int] = None, tol: float = Defaults.SETTLE_TOL,
           max_burn: Optional[int] = None, escape_radius: float = Defaults.ESCAPE_RADIUS,
           progress: bool = False) -> SettleRecord:
    """Iterate z0 together with a partner on the other side of the predicted curve until both sit on one curve.

    z0 defaults to default_seed(p), which lies inside. A start inside the predicted
    radius is paired with curve_seed(p, seed) scaled by Defaults.OUTER_SEED_FACTOR, a
    start outside it with default_seed(p). After every turn (⌈2π/δ⌉ steps) the mean
    |ξ| of the two orbits over that turn are compared; settling ends when they differ
    by at most ``tol`` relative. UnresolvedAttractor when that never happens within
    ``max_burn`` steps, settle_cap(δ) by default.
    """
    _require_curve_regime(p)
    step = closed_form_step(p)
    if z0 is None:
        z0 = default_seed(p)
    if abs(xi_projection(z0)) <= predicted_radius(resonant_alpha1(), p.delta):
        partner = curve_seed(p, seed).scaled(Defaults.OUTER_SEED_FACTOR)
    else:
        partner = default_seed(p)
    cap = settle_cap(p.delta) if max_burn is None else max_burn
    window = max(1, math.ceil(2.0 * math.pi / p.delta))
    row = [complex(v) for v in xi_row()]
    limit = escape_radius * escape_radius

    a, b = z0.z, partner.z
    sum_a = sum_b = 0.0
    gap, radii = math.inf, (math.nan, math.nan)
    it = 0
    with tqdm(total=cap, desc=f'settle k1={p.k[0]:g}', disable=not progress) as bar:
        while it < cap:
            try:
                a = step(*a)
                b = step(*b)
            except ZeroDivisionError as e:
                raise DomainError('W(z) vanished', iteration=it + 1) from e
            it += 1
            if a[0] * a[0] + a[1] * a[1] + a[2] * a[2] > limit or b[0] * b[0] + b[1] * b[1] + b[2] * b[2] > limit:
                raise DivergedOrbit(f'‖z‖ exceeded {escape_radius} while settling', iteration=it)
            sum_a += abs(row[0] * a[0] + row[1] * a[1] + row[2] * a[2])
            sum_b += abs(row[0] * b[0] + row[1] * b[1] + row[2] * b[2])
            if it % window == 0:
                radii = (sum_a / window, sum_b / window)
                scale = max(radii)
                gap = abs(radii[0] - radii[1]) / scale if scale > Defaults.FIXED_POINT_THRESHOLD else 0.0
                sum_a = sum_b = 0.0
                bar.update(window)
                if gap <= tol:
                    break
    if gap > tol:
        raise UnresolvedAttractor(f'k1={p.k[0]}: mean radii {radii[0]:.6g} and {radii[1]:.6g} still differ by '
                                  f'{gap:.3g} after {it} steps')
    logger.debug(f'settled k1={p.k[0]} after {it} steps, radii {radii}, gap {gap:.3g}')
    return SettleRecord(state=ReducedState(a), partner=ReducedState(b), burn=it, gap=gap, radii=radii)


def attract_orbit(p: Params, z0: ReducedState = None, burn: Optional[int] = None, n: int = Defaults.ITERS,
                  seed: Optional[int] = None, escape_radius: float = Defaults.ESCAPE_RADIUS,
                  progress: bool = False) -> OrbitSample:
    """Record ``n`` states of the reduced map after a burn-in.

    With ``burn=None`` the burn-in is settle(): it lasts until the orbit from z0 and
    an orbit from outside the curve agree. An explicit ``burn`` discards that many
    images of z0 instead.
    """
    _require_curve_regime(p)
    if (burn is not None and burn < 0) or n < 0:
        raise PreconditionViolation(f'burn and n must be non-negative, got burn={burn}, n={n}')
    if z0 is None:
        z0 = default_seed(p)
    gap = None
    if burn is None:
        record = settle(p, z0, seed=seed, escape_radius=escape_radius, progress=progress)
        z0, burn, gap = record.state, 0, record.gap
        settled = record.burn
    else:
        settled = 0
    step = closed_form_step(p)
    state = z0.z
    points = np.empty((n, 3), dtype=float)
    limit = escape_radius * escape_radius
    for it in tqdm(range(burn + n), desc=f'orbit k1={p.k[0]:g}', disable=not progress):
        try:
            state = step(*state)
        except ZeroDivisionError as e:
            raise DomainError('W(z) vanished', iteration=settled + it + 1) from e
        z1, z3, z4 = state
        if z1 * z1 + z3 * z3 + z4 * z4 > limit:
            raise DivergedOrbit(f'‖z‖ exceeded {escape_radius} at {state}', iteration=settled + it + 1)
        if it >= burn:
            points[it - burn] = state
    logger.debug(f'orbit k={p.k} burn={settled + burn} n={n} last={state}')
    return OrbitSample(points=points, params=p, burn=settled + burn, n=n, seed=seed, settle_gap=gap)


@dataclass(frozen=True)
class ConvergenceRecord:
    converged: bool
    iterations: int
    distance: float
    tol: float
    rate_exponent: Optional[float] = None

    def to_json(self) -> dict:
        return {
            'converged': self.converged,
            'iterations': self.iterations,
            'distance': self.distance,
            'tol': self.tol,
            'rate_exponent': self.rate_exponent,
        }


def _rate_exponent(history: list) -> Optional[float]:
    """Log-log slope of the distance over the last decade of iterations."""
    if not history:
        return None
    last = history[-1][0]
    tail = [(n, d) for n, d in history if n >= last / 10.0 and d > 0]
    if len(tail) < 2 or tail[0][0] == tail[-1][0]:
        return None
    log_n = np.log([n for n, _ in tail])
    log_d = np.log([d for _, d in tail])
    return float(np.polyfit(log_n, log_d, 1)[0])


def converge_to_Q(p: Params, x0: SimplexPoint = None, tol: float = Defaults.Q_TOL,
                  max_iter: int = Defaults.Q_MAX_ITER, raise_on_failure: bool = False,
                  progress: bool = False) -> ConvergenceRecord:
    """Iterate the map until ‖x - Q‖∞ ≤ tol, Q = (0, 0, 0, 1).

    The approach to Q is algebraic, distance ~ 1/n, so the record also
    carries the fitted exponent of that decay.
    """
    if p.k[0] > 0:
        raise PreconditionViolation(f'k1={p.k[0]} > 0: orbits approach the invariant curve, not Q')
    if x0 is None:
        x0 = SimplexPoint((0.25, 0.25, 0.25, 0.25))
    if not x0.is_interior():
        raise PreconditionViolation(f'x0={x0.x} must be interior')
    x = x0
    distance = x.distance(CORNER_Q)
    history = []
    checkpoint = 1.0
    it = 0
    with tqdm(total=max_iter, desc='converge to Q', disable=not progress) as bar:
        while it < max_iter and distance > tol:
            x = map_step(x, p)
            it += 1
            distance = x.distance(CORNER_Q)
            if it >= checkpoint:
                history.append((it, distance))
                checkpoint *= 1.2
            if it % 10_000 == 0:
                bar.update(10_000)
    history.append((it, distance))
    record = ConvergenceRecord(converged=distance <= tol, iterations=it, distance=distance, tol=tol,
                               rate_exponent=_rate_exponent(history))
    if record.converged:
        logger.debug(f'reached Q within {tol} after {it} iterations')
    else:
        logger.warning(f'not within {tol} of Q after {it} iterations, distance {distance}')
        if raise_on_failure:
            raise NotConverged(f'distance {distance!r} > {tol!r} after {it} iterations', distance=distance)
    return record
