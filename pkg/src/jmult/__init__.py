"""jmult: generalized Hilbert coefficients, j-multiplicity, reduction numbers
and Northcott inequality reports for ideals in polynomial rings and their
quotients over a large prime field, with three cross-validating computational
routes."""

from .ring import (DEFAULT_CHAR, GREVLEX, LEX, MonomialOrder, Polynomial,
                   PrimeField, RingContext, elimination_order)
from .groebner import ComputationLimitError, GroebnerBasis, groebner_basis
from .ideals import (AlgebraWarning, Ideal, codimension, colon_ideal, contains,
                     eliminate, ideal_equals, ideal_intersect, ideal_power,
                     ideal_product, ideal_sum, krull_dimension, ring_dimension,
                     saturate)
from .lengths import (ContainmentError, LengthValue, TruncationPolicy,
                      default_policy, gamma_length, loc_quotient_length,
                      pair_length, standard_monomial_count, truncated_dim)
from .oracle import (MonomialIdeal, OracleError, mon_pair_length,
                     mon_quotient_length, oracle_hilbert_coefficients)
from .hilbert import (FitError, HilbertRecord, binomial, binomial_basis_convert,
                      fit_hilbert_polynomial, graded_torsion_length,
                      hilbert_function)
from .reductions import (GeneralReduction, ReductionRing, ReductionSearchError,
                         ResidualHeightReport, ValabregaVallaReport,
                         analytic_spread, e_one_bar, fiber_length_sum,
                         fiber_length_term, general_minimal_reduction,
                         is_reduction, j_zero, kernel_corrected_fiber_sum,
                         local_ideal_equal, reduction_number, reduction_ring,
                         residual_height_check, sample_general_elements,
                         valabrega_valla_check)
from .omega import (MasterIdentityReport, OmegaBreakdown, OmegaEvaluator,
                    delta_operator, j_one_depth_formula, j_via_sums,
                    master_identity_check)
from .northcott import (HypothesisFlags, NorthcottReport, assemble_northcott,
                        minimal_generator_count, northcott_bound)
from .parser import (Options, ProblemError, ProblemSemanticError, ProblemSpec,
                     ProblemSyntaxError, parse_problem, print_problem)
from .runner import Pipeline, emit_report, run_command

__version__ = "0.1.0"
