"""Generic canonical forms of zero-pattern matrix pairs ``[A(x) | B(x)]``."""

__version__ = "0.1.0"

from .analysis import Analysis, analyze
from .canonical import (CanonicalTriple, ReductionCertificate, canonical_matrix, generic_form,
                        permutations_to_block_form, reduce_numeric, triple_from_pair)
from .fields import QQ, ModP, PrimeField, RationalField, parse_field
from .graph import (BipartiteGraph, GenericRanks, Matchbox, build_graph, common_vertex_count,
                    generic_ranks, maximum_matchbox, merge, optimal_pair)
from .matrix import ExactMatrix, determinant, exact_rank
from .pattern import (Pattern, PatternError, characteristic_vector, instantiate, parse_pattern,
                      render_pattern)
from .poly import (Polynomial, divide_exact, evaluate, gcd, generic_polynomial, lcm, lcm3,
                   minor_polynomial, multiply)
