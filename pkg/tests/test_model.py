import math

import numpy as np
import pytest

from hypershift.model import (CORNER_Q, Params, SimplexPoint, boundary_fixed_segments, closed_form_spectrum,
                              euler_defect, flux, interior_fixed_point, is_fixed_point, iterate, jacobian,
                              jacobian_spectrum, map_step, match_eigenvalues, transversal_multiplier, vector_field,
                              vertex_spectrum, vertices)
from hypershift.utils.enum_class import FixedPointClause, Stability
from hypershift.utils.exceptions import DegenerateParameter, InvalidParams, InvalidState, OutsideSimplex

UNIFORM = SimplexPoint((0.25, 0.25, 0.25, 0.25))
SAMPLES = 10_000


def random_interior(rng, count):
    return [SimplexPoint(tuple(v)) for v in rng.dirichlet(np.ones(4), size=count)]


def raw_map(x, k):
    phi = sum(k[i] * x[i] * x[i - 1] for i in range(4))
    return np.array([(1 + k[i] * x[i - 1]) * x[i] / (1 + phi) for i in range(4)])


class TestParams:
    def test_derived_constants(self):
        p = Params.of(1.0, 2.0, 4.0, 4.0)
        assert p.M1 == pytest.approx(2.0)
        assert p.M2 == pytest.approx(1.0)
        assert p.k1_star == pytest.approx(-1.0)
        assert p.delta == pytest.approx(1.0 / 3.0)
        assert p.epsilon == 1.0

    def test_delta_sign_follows_k1(self):
        assert Params.of(-0.1).delta < 0
        assert Params.of(0.0).delta == 0
        assert Params.of(0.0).M1 is None
        assert Params.of(0.05).delta > 0

    def test_from_delta_inverts_delta(self):
        p = Params.of(0.05, 1.0, 2.0, 3.0)
        assert Params.from_delta(p.delta, 1.0, 2.0, 3.0).k[0] == pytest.approx(0.05, rel=1e-12)

    @pytest.mark.parametrize('k', [(0.1, 0.0, 1.0, 1.0), (0.1, 1.0, -1.0, 1.0), (-0.5, 1.0, 1.0, 1.0),
                                   (math.nan, 1.0, 1.0, 1.0)])
    def test_inadmissible(self, k):
        with pytest.raises(InvalidParams):
            Params(k=k)

    def test_frozen(self):
        p = Params.of(0.05)
        with pytest.raises(Exception):
            p.k = (1.0, 1.0, 1.0, 1.0)


class TestSimplexPoint:
    def test_rejects_bad_sum(self):
        with pytest.raises(InvalidState):
            SimplexPoint((0.5, 0.5, 0.5, 0.0))

    def test_rejects_negative(self):
        with pytest.raises(InvalidState):
            SimplexPoint((1.1, -0.1, 0.0, 0.0))

    def test_tolerance_relaxed(self):
        x = SimplexPoint((1.0 + 5e-13, -5e-13, 0.0, 0.0))
        assert not x.is_interior()


class TestFlux:
    def test_vertex(self):
        assert flux(SimplexPoint((1.0, 0.0, 0.0, 0.0)), Params.of(1.0, 2.0, 3.0, 4.0)) == 0

    def test_uniform(self):
        assert flux(UNIFORM, Params.of(1.0, 2.0, 3.0, 4.0)) == pytest.approx(5.0 / 8.0)

    def test_single_term(self):
        assert flux(SimplexPoint((0.5, 0.5, 0.0, 0.0)), Params.of(1.0)) == pytest.approx(0.25)


class TestMapStep:
    def test_vertex_fixed(self):
        assert map_step(SimplexPoint((0.0, 0.0, 0.0, 1.0)), Params.of(0.3, 1.0, 2.0, 3.0)).x == (0.0, 0.0, 0.0, 1.0)

    def test_uniform_fixed(self):
        assert map_step(UNIFORM, Params.of(1.0)).distance(UNIFORM) <= 1e-15

    def test_hand_step(self):
        y = map_step(SimplexPoint((0.5, 0.5, 0.0, 0.0)), Params.of(1.0))
        assert y.distance((0.4, 0.6, 0.0, 0.0)) <= 1e-15

    def test_preserves_simplex(self):
        rng = np.random.default_rng(1)
        p = Params.of(0.7, 1.5, 2.0, 0.5)
        for x in random_interior(rng, SAMPLES):
            y = map_step(x, p)
            assert abs(sum(y.x) - 1.0) <= 1e-14
            assert min(y.x) >= 0


class TestVectorField:
    def test_equilibrium(self):
        assert max(abs(v) for v in vector_field(UNIFORM, Params.of(1.0))) <= 1e-16

    def test_hand_value(self):
        assert vector_field(SimplexPoint((0.5, 0.5, 0.0, 0.0)), Params.of(1.0)) == pytest.approx((-0.125, 0.125, 0, 0))

    def test_conservation_and_euler_identity(self):
        rng = np.random.default_rng(2)
        p = Params.of(1.0, 2.0, 3.0, 4.0)
        for x in random_interior(rng, SAMPLES):
            assert abs(sum(vector_field(x, p))) <= 1e-15
            assert euler_defect(x, p) <= 1e-14


class TestIterate:
    def test_empty(self):
        assert iterate(UNIFORM, Params.of(1.0), 0, 0) == []

    def test_two_steps(self):
        orbit = iterate(SimplexPoint((0.5, 0.5, 0.0, 0.0)), Params.of(1.0), 2, 0)
        assert orbit[0].distance((0.4, 0.6, 0.0, 0.0)) <= 1e-15
        assert orbit[1].distance((0.4 / 1.24, 0.84 / 1.24, 0.0, 0.0)) <= 1e-15

    def test_burn_discards(self):
        p = Params.of(1.0)
        x0 = SimplexPoint((0.5, 0.5, 0.0, 0.0))
        assert iterate(x0, p, 1, 1)[0] == iterate(x0, p, 2, 0)[1]

    @pytest.mark.slow
    def test_long_run_reaches_Q(self):
        # algebraic approach: the distance to Q decays like 1/n
        orbit = iterate(UNIFORM, Params.of(-0.1), 1, 10 ** 6)
        assert orbit[0].distance(CORNER_Q) <= 1e-5


class TestFixedPoints:
    def test_uniform_rates(self):
        assert interior_fixed_point(Params.of(1.0)).distance(UNIFORM) <= 1e-15

    def test_closed_form(self):
        p = Params.of(1.0, 2.0, 4.0, 4.0)
        fixed = interior_fixed_point(p)
        assert fixed.distance((0.25, 0.125, 0.125, 0.5)) <= 1e-15
        assert map_step(fixed, p).distance(fixed) <= 1e-12

    def test_degenerate_at_zero(self):
        with pytest.raises(DegenerateParameter, match='a,0,0,1-a'):
            interior_fixed_point(Params.of(0.0))

    def test_outside_simplex_payload(self):
        with pytest.raises(OutsideSimplex) as info:
            interior_fixed_point(Params.of(-0.1))
        assert min(info.value.payload) < 0
        assert sum(info.value.payload) == pytest.approx(1.0)

    @pytest.mark.parametrize('k1', [0.1, 0.01, 0.001])
    def test_transcritical_collision(self, k1):
        p = Params.of(k1)
        assert interior_fixed_point(p).distance(CORNER_Q) <= 2 * k1 * p.M2

    def test_vertices_are_fixed(self):
        p = Params.of(0.3, 1.0, 2.0, 3.0)
        assert all(is_fixed_point(v, p).fixed for v in vertices())

    def test_boundary_segment(self):
        certificate = is_fixed_point(SimplexPoint((0.3, 0.0, 0.7, 0.0)), Params.of(1.0, 2.0, 3.0, 4.0))
        assert certificate.fixed
        assert certificate.on_boundary

    def test_extra_segment_only_at_zero(self):
        x = SimplexPoint((0.3, 0.0, 0.0, 0.7))
        assert is_fixed_point(x, Params.of(0.0)).fixed
        certificate = is_fixed_point(x, Params.of(0.1))
        assert not certificate.fixed
        assert certificate.failed_clause == FixedPointClause.BOUNDARY_PRODUCTS
        assert len(boundary_fixed_segments(Params.of(0.0))) == 3
        assert len(boundary_fixed_segments(Params.of(0.1))) == 2

    def test_interior_fixed_point_certificate(self):
        p = Params.of(1.0, 2.0, 4.0, 4.0)
        assert is_fixed_point(interior_fixed_point(p), p).fixed

    def test_clauses_agree_on_random_points(self):
        rng = np.random.default_rng(3)
        p = Params.of(0.4, 1.0, 2.0, 3.0)
        points = random_interior(rng, SAMPLES)
        for x in list(points):
            boundary = list(x.x)
            boundary[rng.integers(4)] = 0.0
            total = sum(boundary)
            points.append(SimplexPoint(tuple(v / total for v in boundary)))
        for x in points:
            certificate = is_fixed_point(x, p, 1e-9)
            assert certificate.algebraic_ok == certificate.direct_ok


class TestSpectrum:
    def test_closed_form_uniform(self):
        report = closed_form_spectrum(Params.of(1.0))
        expected = (1.2, 1 + 0.2j, 0.8, 1 - 0.2j)
        assert all(abs(a - b) <= 1e-15 for a, b in zip(report.eigenvalues, expected))
        assert report.moduli[1] ** 2 == pytest.approx(26 / 25)
        assert report.stability == Stability.UNSTABLE

    @pytest.mark.parametrize('k', [(0.05, 1, 1, 1), (1, 2, 3, 4), (0.9, 0.3, 5, 2)])
    def test_moduli_straddle_one(self, k):
        report = closed_form_spectrum(Params(k=k))
        assert report.moduli[2] < 1 < report.moduli[1]

    def test_degenerate(self):
        with pytest.raises(DegenerateParameter):
            closed_form_spectrum(Params.of(0.0))

    def test_jacobian_matches_finite_differences(self):
        rng = np.random.default_rng(4)
        k = (1.0, 2.0, 3.0, 4.0)
        p = Params(k=k)
        for x in random_interior(rng, 20):
            analytic = jacobian(x, p)
            numeric = np.empty((4, 4))
            for j in range(4):
                e = np.zeros(4)
                e[j] = 1e-6
                numeric[:, j] = (raw_map(np.array(x.x) + e, k) - raw_map(np.array(x.x) - e, k)) / 2e-6
            assert np.abs(analytic - numeric).max() <= 1e-6

    def test_jacobian_spectrum_at_P(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            p = Params(k=(rng.uniform(0.01, 1.0), *rng.uniform(0.2, 5.0, size=3)))
            expected = closed_form_spectrum(p).eigenvalues[1:] + (transversal_multiplier(p),)
            computed = jacobian_spectrum(interior_fixed_point(p), p).eigenvalues
            assert match_eigenvalues(expected, computed) <= 1e-8
            assert match_eigenvalues(computed, expected) <= 1e-8

    def test_vertex(self):
        p = Params.of(0.1)
        computed = jacobian_spectrum(SimplexPoint((0.0, 0.0, 0.0, 1.0)), p)
        assert computed.multiplicity(1.0, 1e-10) >= 2
        assert computed.contains(1.1, 1e-10)
        listed = vertex_spectrum(4, p)
        assert match_eigenvalues(listed.eigenvalues, computed.eigenvalues) <= 1e-10
