"""dnalex: linear DNA codes over Z4 via greedy lexicographic construction,
with GC-content and edit-distance constraints and exact small-instance
bounds on maximum code sizes."""

from .bounds import (BoundKey, BoundRecord, BudgetExceeded, a2, check_relations,
                     constant_gc_universe, exact_max_code,
                     gc_preserving_puncture, half_complement_experiment,
                     half_complement_transform, partition_by_first_symbol,
                     verify_code_against_key)
from .lexicode import (GreedyCode, LinearCode, NonMultiplicativeProperty,
                       OrderedBasis, build_greedy_code, build_lexicode,
                       enumerate_V, read_code_file, span, verify_lexicode,
                       write_code_file)
from .metrics import (UNIT, CostModel, EditOp, EditTranscript, edit_distance,
                      edit_distance_with_transcript, min_pairwise_edit,
                      min_pairwise_hamming)
from .properties import (And, Const, EditToRefAtLeast, EditToRefAtMost, MinEditToCode,
                         MinGC, MinHammingWeight, MultiplicativityReport, Property,
                         is_multiplicative_empirical, parse_property)
from .z4 import (DnaStrand, Z4Vector, add, complement, gc_weight, gc_weight_strand,
                 hamming_distance, hamming_weight, phi, phi_inv, reverse,
                 reverse_complement, scalar_mul, strand_complement, strand_reverse,
                 strand_reverse_complement, sub, symbol_counts)

__version__ = "0.1.0"
