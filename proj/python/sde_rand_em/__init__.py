"""Randomised Euler-Maruyama laboratory for additive SDEs with Hölder drift."""

from ._core import (  # noqa: F401
    BrownianPath,
    DriftFamily,
    DriftSpec,
    ObservableKind,
    RandomOffsets,
    RngStream,
    Scheme,
    __version__,
    coarsen_path,
    compare_schemes,
    emit_csv,
    eval_drift,
    eval_observable,
    fit_power_law,
    integral_oracle,
    kappa,
    kappa_tau,
    leftpoint_quadrature,
    martingale_diagnostic,
    measure_I1,
    measure_I2,
    power_integrand,
    weierstrass_integrand,
    affine_integrand,
    constant_integrand,
    probe_holder_seminorms,
    quadrature_order_experiment,
    randomised_quadrature,
    run_ladder,
    sample_brownian,
    sample_offsets,
    simulate_randomised_em,
    simulate_reference,
    simulate_standard_em,
    strong_error_estimate,
)
