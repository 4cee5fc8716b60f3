"""Well-supported approximate Nash equilibria of bimatrix games, exactly.

The solver combines three searches (best pure profile, best 2x2-support
profile, improved zero-sum profile) and always returns a certificate with
epsilon <= 2/3 - 5913759/10^9.  A companion proof lab reproduces the exact
grid search that certifies that constant.  All arithmetic is exact rational
arithmetic end to end.
"""

from .algorithm import (GUARANTEE, ProcedureOutcome, SolveReport, SupportPair,
                        best_on_supports, best_response_lp_col,
                        best_response_lp_row, procedure_2x2,
                        procedure_ks_improved, procedure_pure, solve,
                        solve_detailed)
from .analysis import (BadRowAudit, BadRowReport, ColumnPartition,
                       IntersectionMass, MassBoundsCheck, bad_row_report,
                       check_bad_row_bounds, check_mass_bounds,
                       find_matching_pennies, good_pure_cells,
                       improvement_strategy, intersection_mass,
                       matching_pennies_profile, partition_columns, shifted,
                       worst_bad_row)
from .errors import GameFormatError, InternalError, RescaleUndefinedError
from .game import (AffineMap, BimatrixGame, MixedStrategy, NormalizedGame,
                   Profile, Source, WsneCertificate, best_col_payoff,
                   best_row_payoff, best_row_response, epsilon_nash,
                   epsilon_wsne, normalize_game, payoff_col, payoff_row,
                   regret_col, regret_row)
from .generators import (GameKind, GameSpecSeed, ks_worst_case_2x2,
                         ks_worst_case_3x2, random_game)
from .lp import (Constraint, LpProblem, LpSolution, LpStatus, Relation, Sense,
                 check_solution, solve_lp)
from .prooflab import (WITNESS_Z, PinnedMass, ShiftLpParams, WitnessReport,
                       build_shift_lp, find_best_shift, find_witness,
                       rescale_factor_bound, shift_lp_value, z_within_bound)
from .rational import Rational, as_rational, format_decimal, format_dual, format_exact
from .zerosum import ZeroSumSolution, difference_matrix, ks_zero_sum

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
