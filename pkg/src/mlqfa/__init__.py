"""Multi-letter quantum finite automata: simulation, equivalence, analysis."""

from .linalg import (EXACT, FLOAT, Matrix, Scalar, SpanBasis, direct_sum,
                     is_unitary, kron, span_add)
from .automata import (BLANK, ENDMARK, DFA, Alphabet, KLetterDFA, MMQFA,
                       MultiLetterQFA, ValidationError, accept_probability,
                       dfa_accepts, dfa_run, gfa_to_qfa, is_k_letter_gfa,
                       kdfa_accepts, kdfa_run, mm_run, mu_bar)
from .equivalence import (CombinedSystem, EquivalenceVerdict, MismatchWitness,
                          STRATEGY_FULL, STRATEGY_SPAN, bounded_equivalence,
                          decide_equivalence_unary, span_closure)
from .analysis import (INFINITE, CkWitness, ClassificationReport, DkWitness,
                       ForbiddenWitness, FWitness, PairGraph, build_pair_graph,
                       ck_to_dk, classify, detect_ck, detect_f,
                       detect_forbidden, minimal_k, minimize_dfa)
from .gallery import (build_abstarb_gfa, build_abstarb_qfa, build_gallery,
                      build_lk_dfa, build_named_dfa, random_dfa, random_mmqfa,
                      random_qfa)
from .oracle import ProbabilityTable, brute_ck, probability_table

__version__ = "0.1.0"
