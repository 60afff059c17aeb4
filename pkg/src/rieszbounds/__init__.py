"""Linear programming lower bounds for Riesz and Gaussian energy on spheres."""

from .energy import (
    AsdBound,
    BoundReport,
    CustomPotential,
    GaussBound,
    GaussianPotential,
    RieszPotential,
    asd_bound,
    bd_ratio,
    bounds_report,
    gauss_bound,
    packing_bound,
    parse_potential,
    residue_check,
    theta_bound,
    ulb_energy,
    xi_bound,
    xi_flags,
)
from .errors import DomainError, NumericalError, ResourceError
from .jacobi import (
    cd_kernel,
    family_params,
    jacobi_values,
    jacobi_zeros,
    largest_zero,
    lead_ratio,
    norm_ratios,
)
from .lattices import (
    LATTICES,
    EpsteinZeta,
    LatticeSpec,
    c_tilde,
    epstein_zeta,
    packing_density,
    ramanujan_tau,
    sigma_k,
    theta_coefficients,
)
from .quadrature import (
    QuadratureRule,
    build_rule,
    dgs_bound,
    lev_branch,
    lev_function,
    separation_bound,
    solve_s_for_n,
    verify_exactness,
)
from .special import (
    BesselZeroTable,
    ball_volume,
    bessel_j,
    bessel_zeros,
    gamma_fn,
    hurwitz_zeta,
    lambda_d,
    unit_sphere_area,
)

__all__ = [
    "DomainError",
    "NumericalError",
    "ResourceError",
    "BesselZeroTable",
    "ball_volume",
    "bessel_j",
    "bessel_zeros",
    "gamma_fn",
    "hurwitz_zeta",
    "lambda_d",
    "unit_sphere_area",
    "cd_kernel",
    "family_params",
    "jacobi_values",
    "jacobi_zeros",
    "largest_zero",
    "lead_ratio",
    "norm_ratios",
    "QuadratureRule",
    "build_rule",
    "dgs_bound",
    "lev_branch",
    "lev_function",
    "separation_bound",
    "solve_s_for_n",
    "verify_exactness",
    "RieszPotential",
    "GaussianPotential",
    "CustomPotential",
    "parse_potential",
    "ulb_energy",
    "theta_bound",
    "xi_bound",
    "xi_flags",
    "AsdBound",
    "asd_bound",
    "residue_check",
    "GaussBound",
    "gauss_bound",
    "packing_bound",
    "bd_ratio",
    "BoundReport",
    "bounds_report",
    "LatticeSpec",
    "LATTICES",
    "EpsteinZeta",
    "epstein_zeta",
    "c_tilde",
    "packing_density",
    "sigma_k",
    "ramanujan_tau",
    "theta_coefficients",
]

__version__ = "0.1.0"
