"""Quadrature, interval maps, and the complex error function.

The Gauss-Legendre rule is checked against closed-form node/weight values,
its defining polynomial-exactness property, and an independently computed
reference rule; the complex error function is checked against its Maclaurin
series and against direct quadrature of the defining path integral along
the quarter-diagonal rays where the package evaluates it.
"""

import math

import numpy as np
import pytest

from frft_iprm.numerics import (
    AffineMap,
    QuadratureRule,
    complex_erf,
    gauss_legendre,
    map_from_unit,
    map_to_unit,
)

# erf(1) summed from the Maclaurin series 2/sqrt(pi) * sum (-1)^n / (n! (2n+1))
ERF_AT_ONE = 0.8427007929497149


def maclaurin_erf(z: complex, terms: int = 60) -> complex:
    """Reference erf via its everywhere-convergent Maclaurin series."""
    total = 0.0 + 0.0j
    term = z
    n = 0
    while n < terms:
        total += term / (2 * n + 1)
        n += 1
        term *= -z * z / n
    return 2.0 / math.sqrt(math.pi) * total


def path_integral_erf(z: complex, order: int = 4000) -> complex:
    """Reference erf as the straight-path integral (2/sqrt(pi)) z int_0^1 e^{-(tz)^2} dt."""
    rule = gauss_legendre(order)
    t = 0.5 * (rule.nodes + 1.0)  # map [-1,1] -> [0,1]
    values = np.exp(-((t * z) ** 2))
    return 2.0 / math.sqrt(math.pi) * z * 0.5 * (values @ rule.weights)


class TestQuadratureRule:
    def test_rejects_mismatched_lengths(self):
        with pytest.raises(ValueError):
            QuadratureRule(np.array([-0.5, 0.5]), np.array([2.0]), 2)

    def test_rejects_unsorted_nodes(self):
        with pytest.raises(ValueError):
            QuadratureRule(np.array([0.5, -0.5]), np.array([1.0, 1.0]), 2)

    def test_rejects_nodes_outside_open_interval(self):
        with pytest.raises(ValueError):
            QuadratureRule(np.array([-1.0, 0.5]), np.array([1.0, 1.0]), 2)

    def test_rejects_nonpositive_weights(self):
        with pytest.raises(ValueError):
            QuadratureRule(np.array([-0.5, 0.5]), np.array([1.0, -1.0]), 2)

    def test_nodes_are_immutable(self):
        rule = gauss_legendre(7)
        with pytest.raises(ValueError):
            rule.nodes[0] = 0.0


class TestGaussLegendre:
    def test_order_one_is_midpoint_rule(self):
        rule = gauss_legendre(1)
        np.testing.assert_array_equal(rule.nodes, [0.0])
        np.testing.assert_array_equal(rule.weights, [2.0])

    def test_order_five_central_node_and_weight(self):
        rule = gauss_legendre(5)
        assert rule.nodes[2] == 0.0
        np.testing.assert_allclose(rule.weights[2], 128.0 / 225.0, rtol=1e-15)

    @pytest.mark.parametrize("order", [2, 3, 5, 17, 64, 400])
    def test_weights_sum_to_interval_length(self, order):
        rule = gauss_legendre(order)
        np.testing.assert_allclose(rule.weights.sum(), 2.0, rtol=1e-14)

    @pytest.mark.parametrize("order", [2, 3, 5, 17, 64, 401])
    def test_nodes_symmetric_to_machine_precision(self, order):
        rule = gauss_legendre(order)
        np.testing.assert_array_equal(rule.nodes, -rule.nodes[::-1])
        np.testing.assert_array_equal(rule.weights, rule.weights[::-1])
        if order % 2 == 1:
            assert rule.nodes[order // 2] == 0.0

    @pytest.mark.parametrize("order", [2, 5, 17, 64])
    def test_polynomial_exactness_up_to_degree_2n_minus_1(self, order):
        rule = gauss_legendre(order)
        for degree in range(2 * order):
            computed = (rule.nodes**degree) @ rule.weights
            exact = 2.0 / (degree + 1) if degree % 2 == 0 else 0.0
            np.testing.assert_allclose(
                computed, exact, rtol=1e-13, atol=1e-14,
                err_msg=f"degree {degree} monomial, order {order} rule",
            )

    def test_degree_2n_monomial_is_not_exact(self):
        # Gaussian rules stop exactly at degree 2n-1; the next monomial must miss.
        rule = gauss_legendre(4)
        computed = (rule.nodes**8) @ rule.weights
        assert abs(computed - 2.0 / 9.0) > 1e-6

    @pytest.mark.parametrize("order", [10, 40, 160])
    def test_matches_reference_implementation(self, order):
        rule = gauss_legendre(order)
        ref_nodes, ref_weights = np.polynomial.legendre.leggauss(order)
        np.testing.assert_allclose(rule.nodes, ref_nodes, atol=5e-15)
        # Edge weights are ~1e-4 at order 160; both implementations carry
        # O(eps) absolute roundoff there, so compare absolutely.
        np.testing.assert_allclose(rule.weights, ref_weights, atol=2e-14)

    def test_integrates_smooth_transcendental(self):
        rule = gauss_legendre(30)
        computed = np.exp(rule.nodes) @ rule.weights
        np.testing.assert_allclose(computed, math.e - 1.0 / math.e, rtol=1e-15)

    def test_rejects_nonpositive_order(self):
        with pytest.raises(ValueError):
            gauss_legendre(0)
        with pytest.raises(TypeError):
            gauss_legendre(2.5)


class TestAffineMap:
    def test_rejects_degenerate_interval(self):
        with pytest.raises(ValueError):
            AffineMap(1.0, 1.0)
        with pytest.raises(ValueError):
            AffineMap(2.0, -1.0)

    def test_endpoint_images(self):
        m = AffineMap(-0.3, 0.7)
        assert map_to_unit(m, -0.3) == -1.0
        assert map_to_unit(m, 0.7) == 1.0
        assert map_from_unit(m, -1.0) == -0.3
        assert map_from_unit(m, 1.0) == 0.7

    def test_roundtrip_on_random_intervals(self):
        rng = np.random.default_rng(42)
        for _ in range(50):
            a = rng.uniform(-5, 4)
            b = a + rng.uniform(1e-3, 10)
            m = AffineMap(a, b)
            x = rng.uniform(a, b, size=17)
            np.testing.assert_allclose(
                map_from_unit(m, map_to_unit(m, x)), x, rtol=1e-14, atol=1e-14
            )
            t = rng.uniform(-1, 1, size=17)
            np.testing.assert_allclose(
                map_to_unit(m, map_from_unit(m, t)), t, rtol=1e-14, atol=1e-14
            )

    def test_half_length_is_quadrature_jacobian(self):
        m = AffineMap(0.25, 1.0)
        rule = gauss_legendre(20)
        x = map_from_unit(m, rule.nodes)
        integral = m.half_length * ((x**2) @ rule.weights)
        np.testing.assert_allclose(integral, (1.0**3 - 0.25**3) / 3.0, rtol=1e-14)


class TestComplexErf:
    def test_real_unit_value_matches_series(self):
        np.testing.assert_allclose(complex_erf(1.0).real, ERF_AT_ONE, rtol=1e-15)
        assert complex_erf(1.0).imag == 0.0

    def test_matches_maclaurin_series_near_origin(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            z = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
            np.testing.assert_allclose(
                complex_erf(z), maclaurin_erf(z), rtol=1e-13, atol=1e-15
            )

    def test_odd_and_conjugate_symmetry(self):
        rng = np.random.default_rng(11)
        z = rng.uniform(-8, 8, size=1000) + 1j * rng.uniform(-8, 8, size=1000)
        w = complex_erf(z)
        np.testing.assert_allclose(complex_erf(-z), -w, rtol=1e-13, atol=1e-300)
        np.testing.assert_allclose(
            complex_erf(np.conj(z)), np.conj(w), rtol=1e-13, atol=1e-300
        )

    @pytest.mark.parametrize("radius", [0.5, 2.0, 10.0, 50.0])
    @pytest.mark.parametrize("sign", [1.0, -1.0])
    def test_accurate_on_quarter_diagonal_rays(self, radius, sign):
        # the chirp moment formulas evaluate erf on arg z = +/- pi/4 only
        z = radius * np.exp(sign * 1j * math.pi / 4)
        reference = path_integral_erf(z)
        np.testing.assert_allclose(complex_erf(z), reference, rtol=1e-11)

    def test_vectorized_input_returns_array(self):
        z = np.array([0.0, 1.0, 1j])
        out = complex_erf(z)
        assert isinstance(out, np.ndarray)
        assert out.shape == (3,)
        assert out[0] == 0.0

    def test_rejects_nonfinite_arguments(self):
        with pytest.raises(ValueError):
            complex_erf(complex(math.inf, 0.0))
        with pytest.raises(ValueError):
            complex_erf(np.array([1.0, math.nan]))
