from dataclasses import dataclass, field

from hypershift.model.hypercycle import N_SPECIES, Params, SimplexPoint
from hypershift.utils.enum_class import Defaults
from hypershift.utils.exceptions import DegenerateDenominator, InvalidState, SingularTransform

DENOMINATOR_FLOOR = 1e-14


@dataclass(frozen=True, slots=True)
class BarycentricPoint:
    """Weighted coordinates y_i ∝ k_{i+1} x_i; P sits at (1/4, 1/4, 1/4, 1/4)."""
    y: tuple
    tol: float = field(default=Defaults.STATE_TOL, compare=False, repr=False)

    def __post_init__(self):
        y = tuple(float(v) for v in self.y)
        if len(y) != N_SPECIES:
            raise InvalidState(f'expected {N_SPECIES} coordinates, got {len(y)}')
        if abs(sum(y) - 1.0) > self.tol:
            raise InvalidState(f'barycentric coordinates {y} sum to {sum(y)!r}, not 1')
        object.__setattr__(self, 'y', y)

    def __getitem__(self, i):
        return self.y[i]

    def __iter__(self):
        return iter(self.y)


def _require_regular(p: Params):
    if p.k[0] == 0:
        raise SingularTransform('the barycentric change is singular at k1 = 0')


def barycentric_weight_sum(y: BarycentricPoint, p: Params) -> float:
    """N(y) = Σ y_j / k_{j+1}."""
    _require_regular(p)
    return sum(y[j] / p.k_next(j) for j in range(N_SPECIES))


def to_barycentric(x: SimplexPoint, p: Params) -> BarycentricPoint:
    _require_regular(p)
    weights = [p.k_next(i) * x[i] for i in range(N_SPECIES)]
    total = sum(weights)
    if abs(total) < DENOMINATOR_FLOOR:
        raise DegenerateDenominator(f'Σ k_(i+1) x_i = {total!r} at x={x.x}')
    return BarycentricPoint(tuple(w / total for w in weights))


def from_barycentric(y: BarycentricPoint, p: Params) -> SimplexPoint:
    n_y = barycentric_weight_sum(y, p)
    if abs(n_y) < DENOMINATOR_FLOOR:
        raise DegenerateDenominator(f'N(y) = {n_y!r} at y={y.y}')
    return SimplexPoint(tuple(y[i] / (n_y * p.k_next(i)) for i in range(N_SPECIES)))
