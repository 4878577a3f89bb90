import numpy as np

from hypershift.jets.exact import ONE, ZERO, ExactComplex
from hypershift.jets.jet import DEFAULT_DEGREE, DEFAULT_LABELS, UNIT_TRIPLES, Jet3, JetMap3
from hypershift.utils.exceptions import BadJetShape, NotInverse


class LinearMap3:
    """3×3 matrix over ExactComplex."""

    __slots__ = ('rows',)

    def __init__(self, rows):
        rows = tuple(tuple(ExactComplex.coerce(v) for v in row) for row in rows)
        if len(rows) != 3 or any(len(row) != 3 for row in rows):
            raise BadJetShape('a LinearMap3 is a 3×3 array')
        self.rows = rows

    @classmethod
    def identity(cls) -> 'LinearMap3':
        return cls([[ONE if i == j else ZERO for j in range(3)] for i in range(3)])

    @classmethod
    def diag(cls, a, b, c) -> 'LinearMap3':
        entries = (a, b, c)
        return cls([[entries[i] if i == j else ZERO for j in range(3)] for i in range(3)])

    @classmethod
    def from_columns(cls, *columns) -> 'LinearMap3':
        return cls([[columns[j][i] for j in range(3)] for i in range(3)])

    @classmethod
    def linear_part(cls, m: JetMap3) -> 'LinearMap3':
        """Matrix of the degree-1 terms of a jet map."""
        return cls([[m[i].coeff(UNIT_TRIPLES[j]) for j in range(3)] for i in range(3)])

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(self.rows[i][j] for i in range(3))

    def row(self, i: int) -> tuple:
        return self.rows[i]

    def scale(self, factor) -> 'LinearMap3':
        factor = ExactComplex.coerce(factor)
        return LinearMap3([[v * factor for v in row] for row in self.rows])

    def __matmul__(self, other):
        if isinstance(other, LinearMap3):
            return LinearMap3([[sum((self.rows[i][k] * other.rows[k][j] for k in range(3)), ZERO)
                                for j in range(3)] for i in range(3)])
        if isinstance(other, JetMap3):
            return JetMap3(sum((other[k] * self.rows[i][k] for k in range(3)),
                               Jet3({}, other.degree, other.labels)) for i in range(3))
        if isinstance(other, (tuple, list)) and len(other) == 3:
            vector = [ExactComplex.coerce(v) for v in other]
            return tuple(sum((self.rows[i][k] * vector[k] for k in range(3)), ZERO) for i in range(3))
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, LinearMap3):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def as_jet_map(self, degree: int = DEFAULT_DEGREE, labels=DEFAULT_LABELS) -> JetMap3:
        """The linear jet map v ↦ A v in the variables ``labels``."""
        return JetMap3(Jet3({UNIT_TRIPLES[j]: self.rows[i][j] for j in range(3)}, degree, labels) for i in range(3))

    def to_numpy(self) -> np.ndarray:
        return np.array([[complex(v) for v in row] for row in self.rows], dtype=complex)

    def to_json(self) -> list:
        return [[v.to_json() for v in row] for row in self.rows]

    def __str__(self):
        cells = [[str(v) for v in row] for row in self.rows]
        width = max(len(c) for row in cells for c in row)
        return '\n'.join('[ ' + '  '.join(c.rjust(width) for c in row) + ' ]' for row in cells)


def linear_conjugate(m: JetMap3, C: LinearMap3, Cinv: LinearMap3, labels=None) -> JetMap3:
    """C⁻¹ ∘ m ∘ C, truncated at the degree bound of m."""
    if Cinv @ C != LinearMap3.identity():
        raise NotInverse('Cinv·C is not the identity')
    inner = C.as_jet_map(m.degree, labels or m.labels)
    return Cinv @ m.substitute(inner)
