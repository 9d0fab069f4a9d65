"""Decide statistical orderings between pairs of quantum states.

Guessing probabilities and min-entropies, trace-norm criteria, channel
feasibility over Choi matrices, and the orderings built from them.
"""
from .comparison import (AuReport, ChoiMatrix, FeasibilityVerdict, Verdict, WitnessReport, alberti_uhlmann_grid,
                         alberti_uhlmann_qubit, apply_choi, channel_feasibility, extract_witness,
                         guessing_probability, helstrom_binary, hmin)
from .linalg import (EigenConvergenceError, HermitianMatrix, NotHermitianError, eig_hermitian, partial_trace,
                     tensor, trace_norm)
from .objects import (CompleteCqChannel, CqState, DensityMatrix, Encoding, InvalidStateError, Povm,
                      build_cq_state, build_extended_cq_state, span_dimension, standard_complete_cq)
from .oracle import oracle_feasibility_qubit, oracle_pguess_qubit, oracle_trace_norm
from .orderings import (OrderingInconsistencyError, OrderingVerdict, SampleReport, commutator_norm,
                        decide_pair_ordering, decide_thermal_ordering, sample_ordering_check)
from .policy import DEFAULT_POLICY, NumericPolicy
from .sdp import SdpError, SdpProblem, SdpSolution, SdpStatus, check_certificate, solve

__version__ = "0.1.0"
