"""Curve evaluation, dual-route checks, length and shape diagnostics."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from curvecraft.auxiliary import cubic, quintic, trig
from curvecraft.basis import build
from curvecraft.blending import bernstein, lambda_mu, p_bezier, yan_cubic
from curvecraft.curves import (
    ControlPolygon,
    ParametricCurve,
    convex_combination_residual,
    curve_length,
    evaluate_curve,
    hodograph,
    monotone_combination_min_slope,
    point_path,
    polygon_length,
    sample_curve,
    sigma_path_residual,
    tangent_cone_slack,
)
from curvecraft.errors import DomainError, InvalidParameterError

UNIT = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)

SQUARE = ControlPolygon(np.array([[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]]))
ARCH = ControlPolygon(np.array([[0.0, 0.0], [1.0, 2.0], [3.0, 2.5], [4.0, 0.0]]))


def finite_point_strategy(count):
    coord = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False)
    return st.lists(st.tuples(coord, coord), min_size=count, max_size=count)


class TestControlPolygon:
    def test_count_and_dim(self):
        assert SQUARE.count == 4
        assert SQUARE.dim == 2

    def test_points_are_immutable_copies(self):
        src = np.zeros((3, 2))
        poly = ControlPolygon(src)
        src[0, 0] = 99.0
        assert poly.points[0, 0] == 0.0
        with pytest.raises(ValueError):
            poly.points[0, 0] = 1.0

    @pytest.mark.parametrize(
        "pts",
        [np.zeros((1, 2)), np.zeros((3, 1)), np.array([[0.0, np.nan], [1.0, 1.0]])],
    )
    def test_rejects_bad_points(self, pts):
        with pytest.raises(InvalidParameterError):
            ControlPolygon(pts)

    def test_count_mismatch_with_basis(self):
        basis = build(bernstein(3), cubic(), 0.5)
        with pytest.raises(InvalidParameterError):
            ParametricCurve(basis, ControlPolygon(np.zeros((3, 2))))


class TestEvaluation:
    def test_unit_square_midpoint(self):
        # T(1/2) = (0.3125, 0.1875, 0.1875, 0.3125) against the square's corners
        curve = ParametricCurve(build(bernstein(3), cubic(), 0.5), SQUARE)
        pt = evaluate_curve(curve, 0.5)
        assert np.allclose(pt, [0.5, 0.375], atol=1e-15)

    def test_endpoints_interpolated(self):
        curve = ParametricCurve(build(lambda_mu(3.0, 1.0), quintic(), 0.4), ARCH)
        assert np.allclose(evaluate_curve(curve, 0.0), ARCH.points[0], atol=1e-12)
        assert np.allclose(evaluate_curve(curve, 1.0), ARCH.points[-1], atol=1e-12)

    def test_sample_curve_shape_and_ends(self):
        curve = ParametricCurve(build(bernstein(3), cubic(), 0.5), ARCH)
        ts, pts = sample_curve(curve, 33)
        assert ts.shape == (33,)
        assert pts.shape == (33, 2)
        assert np.allclose(pts[0], ARCH.points[0], atol=1e-14)
        assert np.allclose(pts[-1], ARCH.points[-1], atol=1e-14)

    def test_hat_system_reproduces_the_polygon(self):
        curve = ParametricCurve(build(p_bezier(0.0), cubic(), 1.0), ARCH)
        for i in range(4):
            assert np.allclose(evaluate_curve(curve, i / 3.0), ARCH.points[i], atol=1e-12)
        mid = evaluate_curve(curve, 0.5)
        assert np.allclose(mid, 0.5 * (ARCH.points[1] + ARCH.points[2]), atol=1e-12)

    def test_domain_error(self):
        curve = ParametricCurve(build(bernstein(3), cubic(), 0.5), ARCH)
        with pytest.raises(DomainError):
            evaluate_curve(curve, 1.2)

    def test_three_dimensional_polygon(self):
        poly = ControlPolygon(np.array([[0.0, 0.0, 0.0], [1.0, 1.0, 2.0], [2.0, 0.0, 1.0], [3.0, 1.0, 0.0]]))
        curve = ParametricCurve(build(bernstein(3), cubic(), 0.8), poly)
        assert evaluate_curve(curve, 0.3).shape == (3,)


class TestHodograph:
    def test_matches_finite_differences(self):
        curve = ParametricCurve(build(yan_cubic(0.5), trig(1), 0.7), ARCH)
        for t in (0.2, 0.5, 0.8):
            h = 1e-6
            fd = (evaluate_curve(curve, t + h) - evaluate_curve(curve, t - h)) / (2 * h)
            assert np.allclose(hodograph(curve, t), fd, atol=1e-5)

    def test_endpoint_tangent_direction(self):
        # C'(0) = sigma * m0 * (P1 - P0)
        sigma, system = 0.6, bernstein(3)
        curve = ParametricCurve(build(system, cubic(), sigma), ARCH)
        expected = sigma * system.tangency[0] * (ARCH.points[1] - ARCH.points[0])
        assert np.allclose(hodograph(curve, 0.0), expected, atol=1e-9)

    def test_second_order(self):
        curve = ParametricCurve(build(bernstein(3), cubic(), 0.5), ARCH)
        h = 1e-4
        fd = (
            evaluate_curve(curve, 0.5 + h)
            - 2 * evaluate_curve(curve, 0.5)
            + evaluate_curve(curve, 0.5 - h)
        ) / h**2
        assert np.allclose(hodograph(curve, 0.5, order=2), fd, atol=1e-4)


class TestDualRoute:
    @given(pts=finite_point_strategy(4), sigma=UNIT, t=UNIT)
    def test_residual_is_rounding_level(self, pts, sigma, t):
        poly = ControlPolygon(np.asarray(pts))
        res = convex_combination_residual(bernstein(3), cubic(), poly, sigma, t)
        assert res < 1e-12

    @given(pts=finite_point_strategy(4), t=UNIT)
    def test_sigma_path_is_linear(self, pts, t):
        poly = ControlPolygon(np.asarray(pts))
        res = sigma_path_residual(bernstein(3), quintic(), poly, t, np.linspace(0, 1, 11))
        assert res < 1e-12

    def test_point_path_shape(self):
        path = point_path(bernstein(3), cubic(), ARCH, 0.3, [0.0, 0.5, 1.0])
        assert path.shape == (3, 2)
        assert np.allclose(path[1], 0.5 * (path[0] + path[2]), atol=1e-13)


class TestLengths:
    def test_polygon_length(self):
        assert polygon_length(SQUARE) == pytest.approx(3.0, abs=1e-15)

    def test_straight_polygon_curve_length_is_chord(self):
        poly = ControlPolygon(np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [3.0, 0.0]]))
        for sigma in (0.0, 0.5, 1.0):
            curve = ParametricCurve(build(bernstein(3), cubic(), sigma), poly)
            assert curve_length(curve) == pytest.approx(3.0, abs=1e-10)

    @pytest.mark.parametrize("sigma", [0.0, 0.3, 0.7, 1.0])
    def test_curve_is_shorter_than_polygon(self, sigma):
        curve = ParametricCurve(build(bernstein(3), cubic(), sigma), ARCH)
        assert curve_length(curve) <= polygon_length(ARCH) + 1e-9

    def test_quadrature_converges(self):
        curve = ParametricCurve(build(bernstein(3), cubic(), 1.0), ARCH)
        coarse = curve_length(curve, panels=4, nodes=4)
        fine = curve_length(curve, panels=32, nodes=10)
        assert coarse == pytest.approx(fine, rel=1e-6)


class TestMonotoneCombination:
    @given(
        steps=st.lists(st.floats(min_value=0.0, max_value=3.0, allow_nan=False), min_size=3, max_size=3),
        sigma=UNIT,
    )
    def test_nondecreasing_coefficients_give_nonnegative_slope(self, steps, sigma):
        betas = np.concatenate([[0.0], np.cumsum(steps)])
        basis = build(bernstein(3), cubic(), sigma)
        assert monotone_combination_min_slope(basis, betas, grid_size=301) >= -1e-10

    def test_rejects_decreasing_coefficients(self):
        basis = build(bernstein(3), cubic(), 0.5)
        with pytest.raises(InvalidParameterError):
            monotone_combination_min_slope(basis, [0.0, 1.0, 0.5, 2.0])

    def test_rejects_non_preserving_system(self):
        basis = build(p_bezier(0.5), cubic(), 0.5)
        with pytest.raises(InvalidParameterError):
            monotone_combination_min_slope(basis, [0.0, 1.0, 2.0, 3.0])

    def test_rejects_non_increasing_aux(self):
        basis = build(bernstein(3), trig(3), 0.5)
        with pytest.raises(InvalidParameterError):
            monotone_combination_min_slope(basis, [0.0, 1.0, 2.0, 3.0])


class TestTangentCone:
    @pytest.mark.parametrize("sigma", [0.1, 0.5, 1.0])
    def test_convex_arch_tangents_stay_in_side_cone(self, sigma):
        curve = ParametricCurve(build(bernstein(3), cubic(), sigma), ARCH)
        assert tangent_cone_slack(curve) >= -1e-10

    def test_rejects_improper_cone(self):
        # sides turn through more than pi: no proper cone contains them
        poly = ControlPolygon(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0], [0.0, 0.1]]))
        curve = ParametricCurve(build(bernstein(4), cubic(), 0.5), poly)
        with pytest.raises(InvalidParameterError):
            tangent_cone_slack(curve)

    def test_rejects_three_dimensional_polygon(self):
        poly = ControlPolygon(np.zeros((4, 3)) + np.arange(4)[:, None])
        curve = ParametricCurve(build(bernstein(3), cubic(), 0.5), poly)
        with pytest.raises(InvalidParameterError):
            tangent_cone_slack(curve)
