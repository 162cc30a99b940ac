"""Run and descent statistics of permutations, the factorisation
``R_n(x) = x (x+1)^m T_n(x)``, a labeled lattice-path bijection, and an
exhaustive audit of the tail-swapping map behind log-concavity."""

from .errors import GuardError, InvalidPath, NoIntersection, NotDivisible
from .perms import (Permutation, complement, descent_count, enumerate_permutations,
                    involution, is_j_half_ascending, run_count, t_statistic)
from .poly import IntPolynomial, divide_exact_x_plus_1, is_log_concave, is_unimodal
from .distributions import (descent_distribution, factorize_runs_polynomial,
                            half_ascending_descent_distribution, odd_t_distribution,
                            run_distribution, t_distribution)
from .paths import LabeledPath, Restriction, count_paths_dp, path_to_perm, perm_to_path
from .phi import apply_phi, audit_quasi_injection

__version__ = "0.1.0"
