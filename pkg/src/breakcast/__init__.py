"""Frequency-domain one-step-ahead predictors for ultra-short AR(1) series
with a single structural break, and the Monte Carlo study comparing them."""

from breakcast.experiment import RmseReport, ScenarioConfig, run_panel, run_scenario
from breakcast.kernel import ImpulseResponse, impulse_response_fft, impulse_response_quadrature, kernel_taps
from breakcast.predictors import ForecastSet, OlsOptions, estimate_ar1, forecast_all, predict_ideal, predict_kernel
from breakcast.simulate import BreakModel, InnovationKind, Path, draw_innovations, draw_model, simulate_path
from breakcast.transfer import (
    KernelSpec,
    PredictorParams,
    SmootherParams,
    Variant,
    eval_F,
    eval_G,
    eval_gamma_ap,
    eval_H,
    eval_K,
    eval_xi,
)

__version__ = "0.1.0"
