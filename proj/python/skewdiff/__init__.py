"""Diffusion across an interface: immersed finite elements, exact densities,
and Euler-Maruyama Monte Carlo."""

from ._skewdiff import (
    InterfaceProblem,
    McEstimate,
    PdeSolution,
    SymmetrizedCoefficients,
    alpha_of_lambda,
    beta_forward,
    beta_inverse,
    exact_solution,
    fit_rate,
    lambda_star,
    make_problem,
    monte_carlo,
    skew_density_p,
    skew_density_q,
    solve_pde,
    symmetrize,
)

__version__ = "0.1.0"

__all__ = [
    "InterfaceProblem",
    "McEstimate",
    "PdeSolution",
    "SymmetrizedCoefficients",
    "alpha_of_lambda",
    "beta_forward",
    "beta_inverse",
    "exact_solution",
    "fit_rate",
    "lambda_star",
    "make_problem",
    "monte_carlo",
    "skew_density_p",
    "skew_density_q",
    "solve_pde",
    "symmetrize",
]
