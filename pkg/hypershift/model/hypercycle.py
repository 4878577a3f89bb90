import math
from dataclasses import dataclass, field
from typing import Optional

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator
from tqdm import tqdm

from hypershift.utils.enum_class import Defaults
from hypershift.utils.exceptions import DomainError, InvalidParams, InvalidState

N_SPECIES = 4


class Params(BaseModel):
    """Rate coefficients of the four-species hypercycle.

    k[0] is k₁, the coefficient that undergoes the functional shift; k₂..k₄
    must stay positive and k₁ must exceed k1_star = -1/M2.
    """
    model_config = ConfigDict(frozen=True)

    k: tuple[float, float, float, float] = Field(description='rate coefficients k1..k4')

    @model_validator(mode='after')
    def check_admissible(self):
        if not all(math.isfinite(v) for v in self.k):
            raise InvalidParams(f'k must be finite, got {self.k}')
        if min(self.k[1:]) <= 0:
            raise InvalidParams(f'k2, k3, k4 must be positive, got {self.k}')
        if self.k[0] <= self.k1_star:
            raise InvalidParams(f'k1={self.k[0]} must exceed k1*={self.k1_star}')
        return self

    @classmethod
    def of(cls, k1: float, k2: float = 1.0, k3: float = 1.0, k4: float = 1.0) -> 'Params':
        return cls(k=(k1, k2, k3, k4))

    def with_k1(self, k1: float) -> 'Params':
        return Params(k=(k1,) + tuple(self.k[1:]))

    @computed_field
    @property
    def M1(self) -> Optional[float]:
        if self.k[0] == 0:
            return None
        return sum(1.0 / v for v in self.k)

    @computed_field
    @property
    def M2(self) -> float:
        return 1.0 / self.k[1] + 1.0 / self.k[2] + 1.0 / self.k[3]

    @computed_field
    @property
    def k1_star(self) -> float:
        return -1.0 / self.M2

    @computed_field
    @property
    def delta(self) -> float:
        k1 = self.k[0]
        return k1 / (1.0 + k1 * (1.0 + self.M2))

    @property
    def epsilon(self) -> float:
        return self.k[0]

    def k_next(self, i: int) -> float:
        """k_{i+1} for a 0-based species index i, cyclic."""
        return self.k[(i + 1) % N_SPECIES]

    @classmethod
    def from_delta(cls, delta: float, k2: float = 1.0, k3: float = 1.0, k4: float = 1.0) -> 'Params':
        """Inverse of the delta map at fixed k2..k4."""
        m2 = 1.0 / k2 + 1.0 / k3 + 1.0 / k4
        return cls(k=(delta / (1.0 - delta * (1.0 + m2)), k2, k3, k4))


@dataclass(frozen=True, slots=True)
class SimplexPoint:
    x: tuple
    tol: float = field(default=Defaults.STATE_TOL, compare=False, repr=False)

    def __post_init__(self):
        x = tuple(float(v) for v in self.x)
        if len(x) != N_SPECIES:
            raise InvalidState(f'expected {N_SPECIES} coordinates, got {len(x)}')
        if min(x) < -self.tol:
            raise InvalidState(f'negative coordinate in {x}')
        if abs(sum(x) - 1.0) > self.tol:
            raise InvalidState(f'coordinates of {x} sum to {sum(x)!r}, not 1')
        object.__setattr__(self, 'x', x)

    def __getitem__(self, i):
        return self.x[i]

    def __iter__(self):
        return iter(self.x)

    def is_interior(self, tol: float = Defaults.STATE_TOL) -> bool:
        return min(self.x) > tol

    def distance(self, other) -> float:
        other = other.x if isinstance(other, SimplexPoint) else other
        return max(abs(a - b) for a, b in zip(self.x, other))


def flux(x: SimplexPoint, p: Params) -> float:
    """φ(x) = Σ k_i x_i x_{i-1}, cyclic with x_0 = x_4."""
    k = p.k
    return sum(k[i] * x[i] * x[i - 1] for i in range(N_SPECIES))


def check_domain(x: SimplexPoint, p: Params, phi: float):
    k = p.k
    for i in range(N_SPECIES):
        if 1.0 + k[i] * x[i - 1] <= 0:
            raise DomainError(f'1 + k{i + 1}·x{(i - 1) % N_SPECIES + 1} <= 0 at {x.x}')
    if 1.0 + phi <= 0:
        raise DomainError(f'1 + φ(x) = {1.0 + phi!r} <= 0 at {x.x}')


def map_step(x: SimplexPoint, p: Params) -> SimplexPoint:
    k = p.k
    phi = flux(x, p)
    check_domain(x, p, phi)
    denominator = 1.0 + phi
    return SimplexPoint(tuple((1.0 + k[i] * x[i - 1]) * x[i] / denominator for i in range(N_SPECIES)), x.tol)


def vector_field(x: SimplexPoint, p: Params) -> tuple:
    """Right-hand side of the continuous hypercycle ẋ_i = x_i(k_i x_{i-1} - φ)."""
    k = p.k
    phi = flux(x, p)
    return tuple(x[i] * (k[i] * x[i - 1] - phi) for i in range(N_SPECIES))


def euler_defect(x: SimplexPoint, p: Params) -> float:
    """Largest residual of (F_i(x) - x_i)(1 + φ(x)) = ẋ_i over i."""
    phi = flux(x, p)
    fx = map_step(x, p)
    xdot = vector_field(x, p)
    return max(abs((fx[i] - x[i]) * (1.0 + phi) - xdot[i]) for i in range(N_SPECIES))


def iterate(x0: SimplexPoint, p: Params, n: int, burn: int = 0, progress: bool = False) -> list:
    """Discard ``burn`` images of x0 and return the next ``n`` iterates."""
    if n < 0 or burn < 0:
        raise ValueError(f'n and burn must be non-negative, got n={n}, burn={burn}')
    x = x0
    orbit = []
    for it in tqdm(range(burn + n), desc='iterate', disable=not progress):
        try:
            x = map_step(x, p)
        except DomainError as e:
            raise DomainError(e.msg, iteration=it + 1) from e
        if it >= burn:
            orbit.append(x)
    logger.debug(f'iterate: k={p.k}, burn={burn}, n={n}, last={x.x}')
    return orbit
