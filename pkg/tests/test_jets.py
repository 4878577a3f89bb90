from fractions import Fraction

import pytest

from hypershift.jets import (I, ONE, ZERO, ExactComplex, Jet3, JetMap3, LinearMap3, coeff, identity_array,
                             jacobian_matrix, jet_matmul, jet_mul, jet_reciprocal, jet_substitute, linear_conjugate,
                             monomials, truncated_inverse_jacobian)
from hypershift.normalform.eigen import ZETA_LABELS, build_eigenstructure
from hypershift.normalform.homological import run_pipeline
from hypershift.normalform.reference import reference_p_terms
from hypershift.utils.exceptions import BadJetShape, DegreeMismatch, NonzeroConstantTerm, NotInverse, OutOfDegree


def variables(degree=3, labels=('x', 'y', 'z')):
    return tuple(Jet3.variable(i, degree, labels) for i in range(3))


class TestExactComplex:
    def test_lowest_terms(self):
        value = ExactComplex(Fraction(4, 8), Fraction(-6, 4))
        assert value.re == Fraction(1, 2)
        assert value.im.denominator == 2

    def test_arithmetic(self):
        a = ExactComplex('-16/5', '-48/5')
        assert a * ExactComplex(0, 1) == ExactComplex('48/5', '-16/5')
        assert (a / a) == ONE
        assert a + a.conjugate() == ExactComplex('-32/5')
        assert I ** 2 == -1
        assert 1 - I == ExactComplex(1, -1)

    def test_text_and_json(self):
        a = ExactComplex('-16/5', '-48/5')
        assert str(a) == '-16/5-48/5i'
        assert a.to_json() == {'re': '-16/5', 'im': '-48/5'}
        assert ExactComplex.from_json(a.to_json()) == a
        assert str(-4 * I) == '-4i'
        assert str(ExactComplex(3, 1)) == '3+i'

    def test_rejects_floats(self):
        with pytest.raises(TypeError):
            ExactComplex.coerce(0.5)

    def test_hash_matches_rationals(self):
        assert hash(ExactComplex(3)) == hash(Fraction(3))
        assert ZERO == 0


class TestJetMul:
    def test_square(self):
        x, _, _ = variables(2)
        assert (1 + x) * (1 + x) == 1 + 2 * x + x * x
        assert coeff((1 + x) * (1 + x), (1, 0, 0)) == 2

    def test_truncated_away(self):
        x, y, _ = variables(2)
        assert jet_mul(x + y, x * y).is_zero()

    def test_neumann_series(self):
        u = Jet3.variable(0, 2, ('u', 'v', 'w'))
        assert jet_reciprocal(1 + 4 * u) == 1 - 4 * u + 16 * u * u

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            jet_mul(Jet3.variable(0, 2), Jet3.variable(0, 3))

    def test_reciprocal_needs_constant(self):
        with pytest.raises(BadJetShape):
            jet_reciprocal(Jet3.variable(0, 3))

    def test_out_of_degree(self):
        x, _, _ = variables(2)
        with pytest.raises(OutOfDegree):
            coeff(x, (2, 1, 0))
        with pytest.raises(OutOfDegree):
            Jet3({(3, 0, 0): 1}, 2)

    def test_canonical(self):
        x, _, _ = variables()
        assert (x - x).support() == set()
        assert (x - x) == 0

    def test_ring_axioms(self):
        x, y, z = variables()
        a = 1 + 2 * x - I * y * z
        b = x * y + ExactComplex('1/3', 2) * z - 5
        c = y - 4 * x * x + I
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a

    def test_monomials(self):
        assert len(monomials(3)) == 20
        assert monomials(2, exact=True)[0] == (2, 0, 0)


class TestSubstitute:
    def test_square_of_sum(self):
        x, y, z = variables()
        assert jet_substitute(x * x, JetMap3((x + y, y, z))) == x * x + 2 * x * y + y * y

    def test_linear_map(self):
        es = build_eigenstructure()
        inner = es.C.as_jet_map(3, ZETA_LABELS)
        assert jet_substitute(Jet3.variable(0), inner) == inner[0]
        assert [inner[i].coeff((1, 0, 0)) for i in range(3)] == [1, -1, I]

    def test_quadratic_part_of_conjugated_field(self):
        es = build_eigenstructure()
        p12 = reference_p_terms()['P12']
        image = jet_substitute(p12, es.C.as_jet_map(3, ZETA_LABELS))
        assert image.coeff((2, 0, 0)) == ExactComplex(4, 4)

    def test_constant_term_rejected(self):
        x, y, z = variables()
        with pytest.raises(NonzeroConstantTerm):
            jet_substitute(x, JetMap3((x + 1, y, z)))

    def test_functorial(self):
        x, y, z = variables()
        a = 2 + x - I * y * y + z
        b = x * z - ExactComplex('1/2') * y + 3
        m = JetMap3((x + I * y * z, y - x * x, 2 * z + x * y))
        assert jet_substitute(a * b, m) == jet_substitute(a, m) * jet_substitute(b, m)


class TestLinearConjugate:
    def test_identity(self):
        identity = JetMap3.identity(3, ZETA_LABELS)
        es = build_eigenstructure()
        assert linear_conjugate(identity, es.C, es.Cinv) == identity

    def test_diagonalises(self):
        g1 = run_pipeline().g1
        assert LinearMap3.linear_part(g1) == LinearMap3.diag(I, -I, -1)
        assert g1[2].coeff((0, 0, 2)) == -4

    def test_not_inverse(self):
        identity = LinearMap3.identity()
        with pytest.raises(NotInverse):
            linear_conjugate(JetMap3.identity(), identity, identity.scale(2))


class TestTruncatedInverseJacobian:
    def test_zero(self):
        assert truncated_inverse_jacobian(JetMap3.zero()) == identity_array()

    def test_scalar_series(self):
        x, _, _ = variables()
        zero = Jet3({}, 3)
        array = truncated_inverse_jacobian(JetMap3((x * x, zero, zero)))
        assert array[0][0] == 1 - 2 * x + 4 * x * x
        assert array[0][1] == 0 and array[0][2] == 0
        assert array[1] == identity_array()[1]
        assert array[2] == identity_array()[2]

    def test_rejects_linear_terms(self):
        x, y, z = variables()
        with pytest.raises(BadJetShape):
            truncated_inverse_jacobian(JetMap3((x, y * y, z * z)))

    def test_multiply_back(self):
        h_tilde = run_pipeline().kill.h_tilde()
        inverse = truncated_inverse_jacobian(h_tilde)
        dh = jacobian_matrix(JetMap3.identity(3, h_tilde.labels) + h_tilde)
        identity = identity_array(3, h_tilde.labels)
        assert jet_matmul(inverse, dh, truncate_at=2) == identity
        full = jet_matmul(inverse, dh)
        for i in range(3):
            for j in range(3):
                low = (full[i][j] - identity[i][j]).min_degree()
                assert low is None or low >= 3


class TestPrinting:
    def test_format(self):
        g1 = run_pipeline().g1
        assert str(g1[0].homogeneous(2)) == '4·xi^2 - 4·xi·xibar + 4i·xi·eta - (4+4i)·xibar·eta'
        assert str(Jet3({}, 3)) == '0'
        x, _, _ = variables()
        assert str(1 - x) == '1 - x'
