import math

import pytest

import stopwise


def test_classical_threshold():
    model = stopwise.Model.parse("classical:n=10000")
    result = stopwise.threshold(model)
    assert result.c_star == 3680
    assert result.v_star == pytest.approx(0.367911047556, abs=1e-11)
    assert result.satisfies_theorem_bound
    assert stopwise.classical_threshold(10000) == 3680


def test_small_curve_values():
    model = stopwise.Model.classical_indicator(4)
    curve = stopwise.curve(model)
    assert curve.n == 4
    assert curve.values == pytest.approx([0.25, 11 / 24, 5 / 12, 0.25], abs=1e-15)
    assert stopwise.argmax_first(curve.values) == 2


def test_mu_closed_forms():
    uniform = stopwise.Model.uniform()
    assert uniform.mu_max(4) == pytest.approx(4 / 5, abs=1e-14)
    expo = stopwise.Model.exponential()
    assert expo.mu_max(3) == pytest.approx(1 + 1 / 2 + 1 / 3, abs=1e-14)
    assert expo.quantile(0.5) == pytest.approx(math.log(2.0), abs=1e-14)


def test_bernoulli_rate():
    b = stopwise.bernoulli_beta(0.0)
    assert b.beta == pytest.approx(math.exp(-1.0), abs=1e-9)
    assert b.g_alpha == 1.0


def test_permutation_threshold():
    assert stopwise.permutation_threshold(10) == 3
    model = stopwise.Model.permutation(10)
    assert stopwise.threshold(model).c_star == 3


def test_exact_enumeration_tie_pool():
    assert stopwise.exact_enumeration([0.0, 0.0, 1.0], 2) == 0.5


def test_simulate_determinism():
    model = stopwise.Model.uniform()
    a = stopwise.simulate(model, n=10, c=3, trials=20000, seed=11, workers=2)
    b = stopwise.simulate(model, n=10, c=3, trials=20000, seed=11, workers=2)
    assert a.estimate == b.estimate
    assert a.std_error == b.std_error
    mu = model.mu_sequence(10)
    target = stopwise.value_at(mu, mu[0], 10, 3)
    assert abs(a.estimate - target) <= 5 * a.std_error


def test_rational_identity():
    num, den = stopwise.prop3_identity_residual_exact([0, 0, 1, 3, 5], 2, 1)
    assert (num, den) == (0, 1)


def test_errors_surface_as_exceptions():
    with pytest.raises(ValueError):
        stopwise.Model.parse("nosuch")
    with pytest.raises(ValueError):
        stopwise.threshold(stopwise.Model.uniform())
