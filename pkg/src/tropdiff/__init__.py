"""Minimal solutions of tropical linear differential equations."""
from .core import (INF, Tlde, TldeSystem, A_val, is_minimal_solution, is_solution,
                   trop_eval, val, vanishes, vanishes_weakly)
from .single import (ShiftRay, SolutionSet, configuration, has_nonzero_solution,
                     infinity_solutions, is_holonomic, is_regular_1, minimal_solutions_1,
                     q_of_p)
from .multi import circuit_matroid, is_regular_n, loops, minimal_solutions, ray_solutions
from .systems import (classify_solution_n2, is_generic, is_holonomic_system,
                      is_regular_system, solve_system)
from .oracle import SearchBox, oracle_infinity, oracle_minimal, oracle_solutions
from .generators import (LowerBoundPlan, construct_lower, construct_n2,
                         expected_lower_count, naive_upper_bound, random_system,
                         sharp_bound_n2)
from .inversions import PermFamily, count_inversions, cut_witness, max_inversions

__version__ = "0.1.0"
