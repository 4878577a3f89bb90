"""Truncated polynomials in three variables with exact complex-rational coefficients.

A ``Jet3`` of degree bound D stores the Taylor coefficients of a function of
three variables up to total degree D, keyed by exponent triples. Absent keys
are zero and zero coefficients are never stored, so two jets are equal iff
their coefficient tables are equal.
"""
from itertools import product

from hypershift.jets.exact import ONE, ZERO, ExactComplex
from hypershift.utils.exceptions import BadJetShape, DegreeMismatch, NonzeroConstantTerm, OutOfDegree

DEFAULT_DEGREE = 3
DEFAULT_LABELS = ('x', 'y', 'z')
CONSTANT = (0, 0, 0)
UNIT_TRIPLES = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def monomials(degree: int, exact: bool = False) -> list:
    """Exponent triples of total degree ``degree`` (or ≤ degree), graded then descending."""
    degrees = [degree] if exact else range(degree + 1)
    triples = []
    for d in degrees:
        for a in range(d, -1, -1):
            for b in range(d - a, -1, -1):
                triples.append((a, b, d - a - b))
    return triples


class Jet3:
    __slots__ = ('degree', 'labels', '_coeffs')

    def __init__(self, coeffs=None, degree: int = DEFAULT_DEGREE, labels=DEFAULT_LABELS):
        self.degree = degree
        self.labels = tuple(labels)
        table = {}
        for triple, value in (coeffs or {}).items():
            triple = tuple(int(e) for e in triple)
            if len(triple) != 3 or min(triple) < 0:
                raise BadJetShape(f'invalid exponent triple {triple}')
            if sum(triple) > degree:
                raise OutOfDegree(f'monomial {triple} exceeds degree bound {degree}')
            value = ExactComplex.coerce(value)
            if not value.is_zero():
                table[triple] = value
        self._coeffs = table

    # constructors

    @classmethod
    def constant(cls, value, degree: int = DEFAULT_DEGREE, labels=DEFAULT_LABELS) -> 'Jet3':
        return cls({CONSTANT: value}, degree, labels)

    @classmethod
    def variable(cls, index: int, degree: int = DEFAULT_DEGREE, labels=DEFAULT_LABELS) -> 'Jet3':
        return cls({UNIT_TRIPLES[index]: ONE}, degree, labels)

    @classmethod
    def monomial(cls, triple, value=1, degree: int = DEFAULT_DEGREE, labels=DEFAULT_LABELS) -> 'Jet3':
        return cls({tuple(triple): value}, degree, labels)

    def _same_shape(self, coeffs) -> 'Jet3':
        return Jet3(coeffs, self.degree, self.labels)

    # queries

    def coeff(self, triple) -> ExactComplex:
        triple = tuple(triple)
        if sum(triple) > self.degree:
            raise OutOfDegree(f'monomial {triple} exceeds degree bound {self.degree}')
        return self._coeffs.get(triple, ZERO)

    def items(self):
        order = {t: n for n, t in enumerate(monomials(self.degree))}
        return sorted(self._coeffs.items(), key=lambda kv: order[kv[0]])

    def support(self) -> set:
        return set(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def constant_term(self) -> ExactComplex:
        return self._coeffs.get(CONSTANT, ZERO)

    def min_degree(self):
        if not self._coeffs:
            return None
        return min(sum(t) for t in self._coeffs)

    def homogeneous(self, d: int) -> 'Jet3':
        return self._same_shape({t: v for t, v in self._coeffs.items() if sum(t) == d})

    def truncate(self, d: int) -> 'Jet3':
        """Drop every term of degree above d, keeping the degree bound."""
        return self._same_shape({t: v for t, v in self._coeffs.items() if sum(t) <= d})

    def with_degree(self, degree: int) -> 'Jet3':
        return Jet3({t: v for t, v in self._coeffs.items() if sum(t) <= degree}, degree, self.labels)

    def relabel(self, labels) -> 'Jet3':
        return Jet3(self._coeffs, self.degree, labels)

    def derivative(self, var: int) -> 'Jet3':
        out = {}
        for triple, value in self._coeffs.items():
            e = triple[var]
            if e == 0:
                continue
            lowered = list(triple)
            lowered[var] -= 1
            out[tuple(lowered)] = value * e
        return self._same_shape(out)

    def conjugate_coefficients(self) -> 'Jet3':
        return self._same_shape({t: v.conjugate() for t, v in self._coeffs.items()})

    def evaluate(self, point) -> complex:
        """Floating-point value at ``point``; for diagnostics only."""
        total = 0j
        for (a, b, c), value in self._coeffs.items():
            total += complex(value) * point[0] ** a * point[1] ** b * point[2] ** c
        return total

    # arithmetic

    def _check_degree(self, other: 'Jet3'):
        if self.degree != other.degree:
            raise DegreeMismatch(f'degree bounds {self.degree} and {other.degree} differ')

    def _as_jet(self, other) -> 'Jet3':
        if isinstance(other, Jet3):
            self._check_degree(other)
            return other
        return Jet3.constant(other, self.degree, self.labels)

    def __add__(self, other):
        other = self._as_jet(other)
        out = dict(self._coeffs)
        for t, v in other._coeffs.items():
            out[t] = out.get(t, ZERO) + v
        return self._same_shape(out)

    __radd__ = __add__

    def __neg__(self):
        return self._same_shape({t: -v for t, v in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-self._as_jet(other))

    def __rsub__(self, other):
        return self._as_jet(other) - self

    def __mul__(self, other):
        if isinstance(other, Jet3):
            return jet_mul(self, other)
        scalar = ExactComplex.coerce(other)
        return self._same_shape({t: v * scalar for t, v in self._coeffs.items()})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = Jet3.constant(ONE, self.degree, self.labels)
        for _ in range(n):
            result = jet_mul(result, self)
        return result

    def __eq__(self, other):
        if isinstance(other, Jet3):
            return self.degree == other.degree and self._coeffs == other._coeffs
        try:
            return self == Jet3.constant(other, self.degree, self.labels)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.degree, frozenset(self._coeffs.items())))

    def __repr__(self):
        return f'Jet3({self}, degree={self.degree})'

    def __str__(self):
        return format_jet(self)


def jet_mul(a: Jet3, b: Jet3) -> Jet3:
    """Product truncated at the shared degree bound."""
    a._check_degree(b)
    out = {}
    for (ta, va), (tb, vb) in product(a._coeffs.items(), b._coeffs.items()):
        t = (ta[0] + tb[0], ta[1] + tb[1], ta[2] + tb[2])
        if sum(t) > a.degree:
            continue
        out[t] = out.get(t, ZERO) + va * vb
    return a._same_shape(out)


def jet_reciprocal(a: Jet3) -> Jet3:
    """1/a by the Neumann series around the constant term."""
    c0 = a.constant_term()
    if c0.is_zero():
        raise BadJetShape('reciprocal of a jet with zero constant term')
    u = a * (ONE / c0) - ONE
    term = Jet3.constant(ONE, a.degree, a.labels)
    total = term
    for _ in range(a.degree):
        term = jet_mul(term, -u)
        total = total + term
    return total * (ONE / c0)


def coeff(p: Jet3, triple) -> ExactComplex:
    return p.coeff(triple)


class JetMap3:
    """Three Jet3 components sharing one degree bound."""

    __slots__ = ('components',)

    def __init__(self, components):
        components = tuple(components)
        if len(components) != 3:
            raise BadJetShape(f'a JetMap3 has 3 components, got {len(components)}')
        degrees = {c.degree for c in components}
        if len(degrees) != 1:
            raise DegreeMismatch(f'component degree bounds differ: {sorted(degrees)}')
        self.components = components

    @classmethod
    def identity(cls, degree: int = DEFAULT_DEGREE, labels=DEFAULT_LABELS) -> 'JetMap3':
        return cls(Jet3.variable(i, degree, labels) for i in range(3))

    @classmethod
    def zero(cls, degree: int = DEFAULT_DEGREE, labels=DEFAULT_LABELS) -> 'JetMap3':
        return cls(Jet3({}, degree, labels) for _ in range(3))

    @property
    def degree(self) -> int:
        return self.components[0].degree

    @property
    def labels(self) -> tuple:
        return self.components[0].labels

    def __getitem__(self, i) -> Jet3:
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __eq__(self, other):
        if not isinstance(other, JetMap3):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __add__(self, other: 'JetMap3') -> 'JetMap3':
        return JetMap3(a + b for a, b in zip(self, other))

    def __sub__(self, other: 'JetMap3') -> 'JetMap3':
        return JetMap3(a - b for a, b in zip(self, other))

    def homogeneous(self, d: int) -> 'JetMap3':
        return JetMap3(c.homogeneous(d) for c in self)

    def truncate(self, d: int) -> 'JetMap3':
        return JetMap3(c.truncate(d) for c in self)

    def relabel(self, labels) -> 'JetMap3':
        return JetMap3(c.relabel(labels) for c in self)

    def substitute(self, inner: 'JetMap3') -> 'JetMap3':
        """self ∘ inner, componentwise."""
        return JetMap3(jet_substitute(c, inner) for c in self)

    def __str__(self):
        return '\n'.join(f'[{i + 1}] {c}' for i, c in enumerate(self))


def jet_substitute(p: Jet3, m: JetMap3) -> Jet3:
    """p ∘ m truncated at the degree bound; m must vanish at the origin."""
    if p.degree != m.degree:
        raise DegreeMismatch(f'degree bounds {p.degree} and {m.degree} differ')
    for i, component in enumerate(m):
        if not component.constant_term().is_zero():
            raise NonzeroConstantTerm(
                f'component {i + 1} of the inner map has constant term {component.constant_term()}')
    degree, labels = m.degree, m.labels
    one = Jet3.constant(ONE, degree, labels)
    powers = []
    for component in m:
        row = [one]
        for _ in range(degree):
            row.append(jet_mul(row[-1], component))
        powers.append(row)
    total = Jet3({}, degree, labels)
    for (a, b, c), value in p._coeffs.items():
        term = jet_mul(jet_mul(powers[0][a], powers[1][b]), powers[2][c])
        total = total + term * value
    return total


def jacobian_matrix(m: JetMap3) -> list:
    """3×3 array of partial derivatives ∂m_i/∂x_j as jets."""
    return [[m[i].derivative(j) for j in range(3)] for i in range(3)]


def jet_matmul(a: list, b: list, truncate_at: int = None) -> list:
    out = []
    for i in range(3):
        row = []
        for j in range(3):
            entry = jet_mul(a[i][0], b[0][j]) + jet_mul(a[i][1], b[1][j]) + jet_mul(a[i][2], b[2][j])
            row.append(entry if truncate_at is None else entry.truncate(truncate_at))
        out.append(row)
    return out


def jet_matvec(a: list, v: JetMap3) -> JetMap3:
    return JetMap3(jet_mul(a[i][0], v[0]) + jet_mul(a[i][1], v[1]) + jet_mul(a[i][2], v[2]) for i in range(3))


def identity_array(degree: int = DEFAULT_DEGREE, labels=DEFAULT_LABELS) -> list:
    return [[Jet3.constant(ONE if i == j else ZERO, degree, labels) for j in range(3)] for i in range(3)]


def truncated_inverse_jacobian(h_tilde: JetMap3) -> list:
    """Id - Dh̃ + (Dh̃)², truncated at degree D-1.

    For h = Id + h̃ with h̃ starting at degree 2 this inverts Dh up to the
    order that matters for a degree-D transformed field.
    """
    for i, component in enumerate(h_tilde):
        low = component.min_degree()
        if low is not None and low < 2:
            raise BadJetShape(f'component {i + 1} of h̃ has terms of degree {low}; expected degree ≥ 2 only')
    degree, labels = h_tilde.degree, h_tilde.labels
    a = jacobian_matrix(h_tilde)
    a_squared = jet_matmul(a, a)
    identity = identity_array(degree, labels)
    return [[(identity[i][j] - a[i][j] + a_squared[i][j]).truncate(degree - 1) for j in range(3)] for i in range(3)]


def format_coefficient(value: ExactComplex) -> tuple:
    """Sign and magnitude text of a coefficient as it appears inside a sum."""
    if value.im == 0:
        return ('-' if value.re < 0 else '+'), str(abs(value.re))
    if value.re == 0:
        magnitude = ExactComplex(0, abs(value.im))
        return ('-' if value.im < 0 else '+'), str(magnitude)
    if value.re < 0:
        return '-', f'({-value})'
    return '+', f'({value})'


def format_monomial(triple, labels) -> str:
    parts = []
    for label, e in zip(labels, triple):
        if e == 1:
            parts.append(label)
        elif e > 1:
            parts.append(f'{label}^{e}')
    return '·'.join(parts)


def format_jet(p: Jet3) -> str:
    terms = []
    for triple, value in p.items():
        sign, magnitude = format_coefficient(value)
        mono = format_monomial(triple, p.labels)
        if not mono:
            body = magnitude
        elif magnitude == '1':
            body = mono
        elif magnitude == 'i':
            body = f'i·{mono}'
        else:
            body = f'{magnitude}·{mono}'
        terms.append((sign, body))
    if not terms:
        return '0'
    first_sign, first_body = terms[0]
    text = ('-' if first_sign == '-' else '') + first_body
    for sign, body in terms[1:]:
        text += f' {sign} {body}'
    return text
