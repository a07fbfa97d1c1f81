"""Smoke tests for the Python bindings: one happy path per exposed surface."""

import math

import pytest

import dualdiv


def small_sample():
    return dualdiv.CensoredSample([0.5, 1.0, 1.5, 2.0, 0.8, 2.5], [1, 1, 0, 1, 1, 1])


def test_version_and_names():
    assert dualdiv.__version__
    assert dualdiv.divergence_name(0.5) == "Hellinger"
    assert dualdiv.divergence_name(0.123) is None


def test_phi_family():
    assert dualdiv.phi(0.5, 1.0) == 0.0
    assert dualdiv.phi(2.0, 3.0) == pytest.approx(2.0)
    assert dualdiv.phi_prime(1.0, math.e) == pytest.approx(1.0)
    assert dualdiv.phi_second(0.5, 1.0) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        dualdiv.phi(0.5, -1.0)


def test_km_fit():
    fit = dualdiv.km_fit(small_sample())
    assert len(fit) == 6
    assert fit.weight_sum == pytest.approx(1.0)
    assert fit.survival(0.0) == 1.0
    assert fit.survival(10.0) == 0.0
    pt = fit.survival_with_ci(1.0, level=0.95)
    assert 0.0 <= pt.lower <= pt.estimate <= pt.upper <= 1.0


def test_estimators_agree():
    s = small_sample()
    mle = dualdiv.fit_mle(s)
    amle = dualdiv.fit_amle(s)
    assert mle.converged and amle.converged
    assert mle.estimate == pytest.approx(dualdiv.mle_value(s))

    # gamma=0 dual fit is the AMLE, for any escort
    for escort in (None, 0.7, 2.0):
        r = dualdiv.fit_dphide(s, gamma=0.0, escort=escort)
        assert r.estimate == pytest.approx(amle.estimate, abs=1e-10)

    r = dualdiv.fit_dphide(s, gamma=0.5)
    assert r.converged
    assert r.gradient_norm <= 1e-8

    m = dualdiv.fit_mdpde(s, beta=0.5)
    assert m.converged and m.estimate > 0


def test_dual_criterion_zero_at_theta():
    s = small_sample()
    assert dualdiv.dual_criterion(s, 0.5, 1.3, 1.3) == pytest.approx(0.0, abs=1e-12)


def test_sandwich_variance():
    scheme = dualdiv.CensoringScheme(theta0=1.0, c=0.0)
    sv = dualdiv.sandwich_variance(scheme, 0.5, 1.0)
    assert sv.sandwich == pytest.approx(1.0, abs=1e-6)
    censored = dualdiv.CensoringScheme(theta0=1.0, c=1.0 / 9.0)
    assert censored.censoring_probability() == pytest.approx(0.1)
    sv = dualdiv.sandwich_variance(censored, 0.0, 1.0)
    assert sv.sandwich == pytest.approx(1.125, abs=1e-6)


def test_population_criterion_peak():
    values = [
        dualdiv.population_criterion(1.0, 0.5, 2.0, a)
        for a in (0.8, 1.0, 1.2)
    ]
    assert values[1] > values[0] and values[1] > values[2]


def test_simulation_roundtrip():
    sc = dualdiv.preset("table1")
    assert sc.censoring_rate == pytest.approx(1.0 / 9.0)
    sc.n_values = [25]
    sc.replications = 3
    sc.gammas = [0.5]
    sc.betas = []
    sc.base_seed = 99

    sample = dualdiv.generate_sample(sc, 0, 0)
    assert len(sample) == 25

    table = dualdiv.run_scenario(sc)
    assert table.row_labels == ["MLE", "gamma=0.5"]
    assert all(m >= 0 for row in table.mse for m in row)
    again = dualdiv.run_scenario(sc)
    assert again.mse == table.mse
