"""Frequency-domain one-step-ahead predictors for ultra-short AR(1) sequences
with a single structural break, plus the Monte Carlo study harness."""

from ._core import (
    ConvergenceError,
    DomainError,
    estimate_ar1,
    eval_f,
    eval_g,
    eval_gamma_ap,
    eval_h,
    eval_k,
    eval_xi,
    impulse_response,
    run_panel,
    run_scenario,
    simulate_paths,
)

__all__ = [
    "ConvergenceError",
    "DomainError",
    "estimate_ar1",
    "eval_f",
    "eval_g",
    "eval_gamma_ap",
    "eval_h",
    "eval_k",
    "eval_xi",
    "impulse_response",
    "run_panel",
    "run_scenario",
    "simulate_paths",
]

__version__ = "0.1.0"
