from dataclasses import dataclass

from hypershift.model.hypercycle import N_SPECIES, Params, SimplexPoint, flux, map_step
from hypershift.utils.enum_class import Defaults, FixedPointClause
from hypershift.utils.exceptions import DegenerateParameter, OutsideSimplex

CORNER_Q = (0.0, 0.0, 0.0, 1.0)


def interior_fixed_point(p: Params) -> SimplexPoint:
    """The coexistence equilibrium P with p_i = 1/(k_{i+1} M1).

    Raises DegenerateParameter at k1 = 0, where P merges with the corner Q,
    and OutsideSimplex for k1* < k1 < 0, where the formula leaves S4 (the
    coordinates are attached as ``payload``).
    """
    k1 = p.k[0]
    if k1 == 0:
        raise DegenerateParameter('k1 = 0: P collides with Q = (0,0,0,1) on the line of fixed points (a,0,0,1-a)')
    m1 = p.M1
    coords = tuple(1.0 / (p.k_next(i) * m1) for i in range(N_SPECIES))
    if k1 < 0:
        raise OutsideSimplex(f'k1={k1} < 0: P = {coords} has negative coordinates', payload=coords)
    return SimplexPoint(coords)


def vertices() -> list:
    return [SimplexPoint(tuple(1.0 if j == m else 0.0 for j in range(N_SPECIES))) for m in range(N_SPECIES)]


@dataclass(frozen=True)
class FixedSegment:
    """Boundary segment {x : x_j = 0 for j outside ``support``} of fixed points."""
    label: str
    support: tuple

    def point(self, alpha: float) -> SimplexPoint:
        x = [0.0] * N_SPECIES
        x[self.support[0]] = alpha
        x[self.support[1]] = 1.0 - alpha
        return SimplexPoint(tuple(x))

    def contains(self, x: SimplexPoint, tol: float = Defaults.STATE_TOL) -> bool:
        return all(abs(x[j]) <= tol for j in range(N_SPECIES) if j not in self.support)


def boundary_fixed_segments(p: Params) -> list:
    segments = [
        FixedSegment('(a,0,1-a,0)', (0, 2)),
        FixedSegment('(0,a,0,1-a)', (1, 3)),
    ]
    if p.k[0] == 0:
        segments.append(FixedSegment('(a,0,0,1-a)', (0, 3)))
    return segments


@dataclass(frozen=True)
class FixedPointCertificate:
    fixed: bool
    algebraic_ok: bool
    direct_ok: bool
    on_boundary: bool
    failed_clause: str
    algebraic_defect: float
    direct_defect: float

    def __bool__(self):
        return self.fixed


def is_fixed_point(x: SimplexPoint, p: Params, tol: float = Defaults.STATE_TOL) -> FixedPointCertificate:
    """Decide F(x) = x by the algebraic characterisation and by direct evaluation.

    On the boundary of S4 the algebraic clause is k_i x_i x_{i-1} = 0 for
    every i; in the interior it is k_i x_{i-1} = φ(x) for every i.
    """
    k = p.k
    on_boundary = min(x.x) <= tol
    if on_boundary:
        algebraic_defect = max(abs(k[i] * x[i] * x[i - 1]) for i in range(N_SPECIES))
        algebraic_clause = FixedPointClause.BOUNDARY_PRODUCTS
    else:
        phi = flux(x, p)
        algebraic_defect = max(abs(k[i] * x[i - 1] - phi) for i in range(N_SPECIES))
        algebraic_clause = FixedPointClause.INTERIOR_BALANCE
    direct_defect = x.distance(map_step(x, p))

    algebraic_ok = algebraic_defect <= tol
    direct_ok = direct_defect <= tol
    if not algebraic_ok:
        failed = algebraic_clause
    elif not direct_ok:
        failed = FixedPointClause.DIRECT_IMAGE
    else:
        failed = FixedPointClause.NONE
    return FixedPointCertificate(
        fixed=algebraic_ok and direct_ok,
        algebraic_ok=algebraic_ok,
        direct_ok=direct_ok,
        on_boundary=on_boundary,
        failed_clause=failed,
        algebraic_defect=algebraic_defect,
        direct_defect=direct_defect,
    )
