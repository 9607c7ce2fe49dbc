"""p-rationality toolkit for quadratic and multiquadratic number fields."""

from prk._core import (
    admissible_moduli,
    check_f_alpha,
    check_k_alpha,
    class_number,
    crt_combine,
    empirical_density,
    euler_density,
    fibonacci_residue,
    find_prime_square_divisors,
    fundamental_unit,
    intersection_lower_bound,
    is_p_rational,
    is_prime,
    kronecker,
    l_upper_bound,
    le_bound,
    louboutin_bound,
    lowerbound_product,
    make_field,
    quadratic_subfield_radicands,
    real_inequality_check,
    regulator,
    residual_degree,
    rho_prime,
    run_command,
    scan_imaginary,
    scan_real,
    squarefree_decompose,
    squarefree_kernel,
)

__version__ = "0.1.0"

__all__ = [
    "admissible_moduli",
    "check_f_alpha",
    "check_k_alpha",
    "class_number",
    "crt_combine",
    "empirical_density",
    "euler_density",
    "fibonacci_residue",
    "find_prime_square_divisors",
    "fundamental_unit",
    "intersection_lower_bound",
    "is_p_rational",
    "is_prime",
    "kronecker",
    "l_upper_bound",
    "le_bound",
    "louboutin_bound",
    "lowerbound_product",
    "make_field",
    "quadratic_subfield_radicands",
    "real_inequality_check",
    "regulator",
    "residual_degree",
    "rho_prime",
    "run_command",
    "scan_imaginary",
    "scan_real",
    "squarefree_decompose",
    "squarefree_kernel",
]
