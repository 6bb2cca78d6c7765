"""Tests for the scikit-learn estimator facade over the reconstruction routes.

Covers the estimator protocol (parameter handling, cloning, fitted-state
markers) and that the facade dispatches to the same computations as the
functional interface.
"""

import math

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from frft_iprm import (
    FractionalReconstructor,
    PiecewiseFunction,
    iprm_reconstruct,
)

STEP = PiecewiseFunction(
    breakpoints=(0.0,),
    pieces=(lambda x: -np.ones_like(x), lambda x: np.ones_like(x)),
    jump_sizes=(2.0,),
)


def runge(x):
    return 1.0 / (1.0 + 25.0 * x * x)


class TestEstimatorProtocol:
    def test_get_params_returns_constructor_arguments(self):
        est = FractionalReconstructor(method="direct", degree=6, lam=1.0)
        params = est.get_params()
        assert params["method"] == "direct"
        assert params["degree"] == 6
        assert params["lam"] == 1.0
        assert params["n_ratio"] == 10
        assert params["big_n"] is None

    def test_set_params_roundtrip(self):
        est = FractionalReconstructor()
        est.set_params(degree=4, alpha=math.pi / 8)
        assert est.degree == 4
        assert est.alpha == math.pi / 8

    def test_clone_preserves_parameters(self):
        est = FractionalReconstructor(method="frfs", degree=5, quad_order=500)
        cloned = clone(est)
        assert cloned is not est
        assert cloned.get_params() == est.get_params()

    def test_unfitted_predict_raises(self):
        with pytest.raises(NotFittedError):
            FractionalReconstructor().predict(np.zeros(3))

    def test_unfitted_score_raises(self):
        with pytest.raises(NotFittedError):
            FractionalReconstructor().score()

    def test_fit_returns_self(self):
        est = FractionalReconstructor(degree=4)
        assert est.fit(STEP) is est

    def test_invalid_method_rejected_at_fit_time(self):
        est = FractionalReconstructor(method="fourier")
        with pytest.raises(ValueError, match="method"):
            est.fit(STEP)

    def test_parameters_not_mutated_by_fit(self):
        est = FractionalReconstructor(degree=4)
        before = est.get_params()
        est.fit(STEP)
        assert est.get_params() == before


class TestEstimatorBehavior:
    def test_fitted_state(self):
        est = FractionalReconstructor(degree=4).fit(STEP)
        assert est.n_pieces_ == 2
        assert len(est.coefficients_) == 2
        assert est.report_.method == "iprm"
        assert est.function_ is STEP

    def test_matches_functional_interface(self):
        est = FractionalReconstructor(
            method="iprm", alpha=math.pi / 4, lam=0.75, degree=4
        ).fit(STEP)
        report = iprm_reconstruct(STEP, math.pi / 4, 0.75, 4, 40)
        assert est.report_.abs_linf == pytest.approx(report.abs_linf, rel=1e-12)
        np.testing.assert_allclose(
            est.coefficients_[0], report.per_piece_coeffs[0], rtol=1e-12
        )

    def test_predict_uses_report_evaluator(self):
        est = FractionalReconstructor(degree=4).fit(STEP)
        x = np.linspace(-0.9, 0.9, 7)
        np.testing.assert_array_equal(est.predict(x), est.report_.evaluate(x))

    def test_transform_is_predict(self):
        est = FractionalReconstructor(degree=4).fit(STEP)
        x = np.linspace(-0.5, 0.5, 5)
        np.testing.assert_array_equal(est.transform(x), est.predict(x))

    def test_predict_recovers_step_values(self):
        est = FractionalReconstructor(degree=4).fit(STEP)
        values = est.predict(np.array([-0.5, 0.5]))
        np.testing.assert_allclose(values, [-1.0, 1.0], atol=1e-8)

    def test_score_is_negative_sup_error(self):
        est = FractionalReconstructor(degree=4).fit(STEP)
        assert est.score() == -est.report_.abs_linf

    def test_plain_callable_is_wrapped_as_single_piece(self):
        est = FractionalReconstructor(degree=8).fit(runge)
        assert est.n_pieces_ == 1
        assert est.function_.breakpoints == ()

    def test_frfs_alias(self):
        est = FractionalReconstructor(method="frfs", degree=4).fit(STEP)
        assert est.report_.method == "frfs-partial-sum"
        assert est.coefficients_ == ()

    def test_direct_method_dispatch(self):
        est = FractionalReconstructor(method="direct", degree=4).fit(STEP)
        assert est.report_.method == "direct"
        assert est.report_.condition == ()

    def test_explicit_big_n_overrides_ratio(self):
        est = FractionalReconstructor(degree=4, big_n=30).fit(STEP)
        assert est.report_.params.big_n == 30

    def test_default_big_n_is_ratio_times_degree(self):
        est = FractionalReconstructor(degree=4, n_ratio=5).fit(STEP)
        assert est.report_.params.big_n == 20

    def test_clone_and_refit_reproduces(self):
        est = FractionalReconstructor(degree=4).fit(STEP)
        refit = clone(est).fit(STEP)
        assert refit.report_.abs_linf == pytest.approx(
            est.report_.abs_linf, rel=1e-14
        )
