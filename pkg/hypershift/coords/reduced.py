"""Centred, reduced coordinates z = (z1, z3, z4) and the reduced field g.

z_i = y_i - 1/4 in barycentric coordinates; z2 = -z1 - z3 - z4 is implicit.
In these coordinates the map reads G(z) = z + δ g(z) + O(δ²)O(|z|²).
"""
import math
from dataclasses import dataclass

import numpy as np

from hypershift.coords.barycentric import BarycentricPoint, from_barycentric, to_barycentric
from hypershift.jets.jet import DEFAULT_DEGREE, Jet3, JetMap3, jet_reciprocal
from hypershift.model.hypercycle import Params, map_step
from hypershift.utils.exceptions import InvalidState, PoleError, SingularTransform

REDUCED_LABELS = ('z1', 'z3', 'z4')
POLE_FLOOR = 1e-15


@dataclass(frozen=True, slots=True)
class ReducedState:
    z: tuple

    def __post_init__(self):
        z = tuple(float(v) for v in self.z)
        if len(z) != 3:
            raise InvalidState(f'a reduced state has 3 coordinates, got {len(z)}')
        object.__setattr__(self, 'z', z)

    def __getitem__(self, i):
        return self.z[i]

    def __iter__(self):
        return iter(self.z)

    def norm(self) -> float:
        return math.sqrt(sum(v * v for v in self.z))

    def scaled(self, factor: float) -> 'ReducedState':
        return ReducedState(tuple(factor * v for v in self.z))


def center_and_reduce(y: BarycentricPoint) -> ReducedState:
    return ReducedState((y[0] - 0.25, y[2] - 0.25, y[3] - 0.25))


def embed(zr: ReducedState) -> tuple:
    """Centred 4-vector (z1, z2, z3, z4) with z2 = -z1 - z3 - z4."""
    z1, z3, z4 = zr.z
    return (z1, -z1 - z3 - z4, z3, z4)


def uncenter(centered) -> BarycentricPoint:
    return BarycentricPoint(tuple(c + 0.25 for c in centered))


def reduced_map(zr: ReducedState, p: Params) -> ReducedState:
    """The hypercycle map conjugated into reduced coordinates."""
    x = from_barycentric(uncenter(embed(zr)), p)
    return center_and_reduce(to_barycentric(map_step(x, p), p))


def _closed_form_terms(c1, c2, c3, c4, p: Params):
    k1, k2, k3, k4 = p.k
    n_z = c1 / k2 + c2 / k3 + c3 / k4 + c4 / k1 + p.M1 / 4.0
    s = c4 * c1 + c1 * c2 + c2 * c3 + c3 * c4
    w = n_z + 0.25 + s
    return s, w


def reduced_map_closed_form(zr: ReducedState, p: Params) -> ReducedState:
    """G_i = z_i + (z_{i-1} - Σ z_{j-1} z_j)(z_i + 1/4) / W(z)."""
    if p.k[0] == 0:
        raise SingularTransform('the reduced map is undefined at k1 = 0')
    c1, c2, c3, c4 = embed(zr)
    s, w = _closed_form_terms(c1, c2, c3, c4, p)
    return ReducedState((
        c1 + (c4 - s) * (c1 + 0.25) / w,
        c3 + (c2 - s) * (c3 + 0.25) / w,
        c4 + (c3 - s) * (c4 + 0.25) / w,
    ))


def closed_form_step(p: Params):
    """The closed-form G on bare floats, (z1, z3, z4) -> (z1', z3', z4'), with the constants of p bound.

    Long orbits call this millions of times; a zero W(z) surfaces as ZeroDivisionError.
    """
    if p.k[0] == 0:
        raise SingularTransform('the reduced map is undefined at k1 = 0')
    k1, k2, k3, k4 = p.k
    r1, r2, r3, r4 = 1.0 / k1, 1.0 / k2, 1.0 / k3, 1.0 / k4
    base = p.M1 / 4.0 + 0.25

    def step(z1: float, z3: float, z4: float) -> tuple:
        z2 = -z1 - z3 - z4
        s = z4 * z1 + z1 * z2 + z2 * z3 + z3 * z4
        w = z1 * r2 + z2 * r3 + z3 * r4 + z4 * r1 + base + s
        return (z1 + (z4 - s) * (z1 + 0.25) / w,
                z3 + (z2 - s) * (z3 + 0.25) / w,
                z4 + (z3 - s) * (z4 + 0.25) / w)

    return step


def reduced_map_array(states: np.ndarray, p: Params) -> np.ndarray:
    """Closed-form G applied row-wise to an (m, 3) array of reduced states."""
    if p.k[0] == 0:
        raise SingularTransform('the reduced map is undefined at k1 = 0')
    states = np.asarray(states, dtype=float)
    c1, c3, c4 = states[..., 0], states[..., 1], states[..., 2]
    c2 = -c1 - c3 - c4
    s, w = _closed_form_terms(c1, c2, c3, c4, p)
    return np.stack([
        c1 + (c4 - s) * (c1 + 0.25) / w,
        c3 + (c2 - s) * (c3 + 0.25) / w,
        c4 + (c3 - s) * (c4 + 0.25) / w,
    ], axis=-1)


def g_exact(zr: ReducedState) -> tuple:
    """Reduced field g in closed rational form; components follow z1, z3, z4."""
    z1, z3, z4 = zr.z
    pole = 1.0 + 4.0 * z4
    if abs(pole) <= POLE_FLOOR:
        raise PoleError(f'g has a pole at z4 = -1/4, got z4={z4!r}')
    s2 = (z1 + z3) ** 2
    return (
        (1.0 + 4.0 * z1) * (z4 + s2) / pole,
        (1.0 + 4.0 * z3) * (-z1 - z3 - z4 + s2) / pole,
        z3 + s2,
    )


def g_jet(degree: int = DEFAULT_DEGREE) -> JetMap3:
    """Exact Taylor jet of g at the origin."""
    z1, z3, z4 = (Jet3.variable(i, degree, REDUCED_LABELS) for i in range(3))
    s2 = (z1 + z3) * (z1 + z3)
    inverse_pole = jet_reciprocal(1 + z4 * 4)
    return JetMap3((
        (1 + z1 * 4) * (z4 + s2) * inverse_pole,
        (1 + z3 * 4) * (-z1 - z3 - z4 + s2) * inverse_pole,
        z3 + s2,
    ))


def map_remainder(zr: ReducedState, p: Params) -> float:
    """‖G(z) - z - δ g(z)‖, the part of the map beyond the Euler step of g."""
    image = reduced_map(zr, p)
    g = g_exact(zr)
    return math.sqrt(sum((image[i] - zr[i] - p.delta * g[i]) ** 2 for i in range(3)))


def remainder_ratio(zr: ReducedState, p: Params) -> float:
    """Remainder at p over the remainder at the parameter with half the δ; ≈ 4."""
    half = Params.from_delta(p.delta / 2.0, *p.k[1:])
    return map_remainder(zr, p) / map_remainder(zr, half)
