"""Exact verification of bin packing with clustering and with delays.

Thin wrapper over the C++ core; rationals cross the boundary as 'n/d'
strings to keep every value exact.
"""

from binpacklab._core import (
    bin_weight,
    check_bound,
    compute_rho,
    eval_weight,
    exact_optimal,
    ffd,
    first_fit_bins,
    generate_and_verify,
    k3_limit,
    lb_formula,
    offline_optimal,
    pi_certified_upper,
    pi_partial_sum,
    run_acceptance_quick,
    simulate_linear,
)

__all__ = [
    "bin_weight",
    "check_bound",
    "compute_rho",
    "eval_weight",
    "exact_optimal",
    "ffd",
    "first_fit_bins",
    "generate_and_verify",
    "k3_limit",
    "lb_formula",
    "offline_optimal",
    "pi_certified_upper",
    "pi_partial_sum",
    "run_acceptance_quick",
    "simulate_linear",
]
