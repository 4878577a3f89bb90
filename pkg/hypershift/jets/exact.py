from fractions import Fraction
from numbers import Rational


class ExactComplex:
    """Complex number with arbitrary-precision rational parts."""

    __slots__ = ('re', 'im')

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, value) -> 'ExactComplex':
        if isinstance(value, ExactComplex):
            return value
        if isinstance(value, (Rational, str)):
            return cls(Fraction(value), 0)
        raise TypeError(f'cannot represent {value!r} exactly as ExactComplex')

    @classmethod
    def from_json(cls, data: dict) -> 'ExactComplex':
        """Inverse of ``to_json``."""
        return cls(Fraction(data['re']), Fraction(data['im']))

    def __add__(self, other):
        try:
            other = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return ExactComplex(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return ExactComplex(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return ExactComplex.coerce(other) - self

    def __mul__(self, other):
        try:
            other = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return ExactComplex(self.re * other.re - self.im * other.im,
                            self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError('division by exact zero')
        return self * ExactComplex(other.re / norm, -other.im / norm)

    def __rtruediv__(self, other):
        return ExactComplex.coerce(other) / self

    def __neg__(self):
        return ExactComplex(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = ONE
        for _ in range(n):
            result = result * self
        return result

    def conjugate(self) -> 'ExactComplex':
        return ExactComplex(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        try:
            other = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f'ExactComplex({self.re!s}, {self.im!s})'

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        im = _imag_str(self.im)
        if self.re == 0:
            return im
        sign = '' if im.startswith('-') else '+'
        return f'{self.re}{sign}{im}'

    def to_json(self) -> dict:
        return {'re': str(self.re), 'im': str(self.im)}


def _imag_str(im: Fraction) -> str:
    if im == 1:
        return 'i'
    if im == -1:
        return '-i'
    return f'{im}i'


ZERO = ExactComplex(0, 0)
ONE = ExactComplex(1, 0)
I = ExactComplex(0, 1)
