"""Dual divergence estimators for parametric survival models under right censoring."""

from dualdiv._core import (
    CensoredSample,
    CensoringScheme,
    FitResult,
    KaplanMeierFit,
    MseTable,
    SandwichVariance,
    SimulationScenario,
    SurvivalPoint,
    amle_value,
    criterion_derivative,
    divergence_name,
    dual_criterion,
    fit_amle,
    fit_dphide,
    fit_mdpde,
    fit_mle,
    generate_sample,
    km_fit,
    mle_value,
    phi,
    phi_prime,
    phi_second,
    population_criterion,
    preset,
    run_scenario,
    sandwich_variance,
)

__all__ = [
    "CensoredSample",
    "CensoringScheme",
    "FitResult",
    "KaplanMeierFit",
    "MseTable",
    "SandwichVariance",
    "SimulationScenario",
    "SurvivalPoint",
    "amle_value",
    "criterion_derivative",
    "divergence_name",
    "dual_criterion",
    "fit_amle",
    "fit_dphide",
    "fit_mdpde",
    "fit_mle",
    "generate_sample",
    "km_fit",
    "mle_value",
    "phi",
    "phi_prime",
    "phi_second",
    "population_criterion",
    "preset",
    "run_scenario",
    "sandwich_variance",
]

__version__ = "1.0.0"
