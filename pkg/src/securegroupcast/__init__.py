"""Secure groupcast over combinatorial shared keys.

A transmitter shares an independent uniform key with every subset of K
receivers and wants to broadcast one message so that a chosen subset
decodes it while everyone else learns exactly nothing.  This package
computes the information-theoretic limits of that problem (message rate
and broadcast bandwidth), synthesizes explicit linear coding schemes over
prime fields that meet the limits in every solved setting, and verifies
each scheme's correctness and security exactly, both algebraically and by
exhaustive enumeration.
"""

from .gf import Field, NotPrimeError, field_new, is_prime, least_prime_at_least
from .fmatrix import (FMatrix, FieldTooSmallError, NoSolutionError, cauchy,
                      col_space_contains, hstack, prefix_ranks, rank, rref,
                      solve_right, vstack)
from .keyspace import (KeyCollection, KeyConfig, WrongShapeError,
                       canonical_relabel, entropy_of, invert_perm,
                       is_symmetric, mask_of, mutual_info, normalize_labels,
                       set_of)
from .bounds import (BoundsReport, BwBound, ExactCapacity, GapDiagnostics,
                     aligned_2of5_key_size, bw_converse, exact_capacity,
                     priority_check, rate_converse, report)
from .scheme import (DecodeFailureError, FieldMismatchError, LinearScheme,
                     NotDecodableError, OracleReport, ShapeMismatchError,
                     TooLargeError, Transcript, VerifyReport, concat,
                     decoder_for, merge_layout, oracle_verify, simulate,
                     verify, verify_correctness, verify_security)
from .synth import (InfeasibleRates, MultiMessageScheme, NotSymmetricError,
                    SynthesisError, UnsolvedSettingError, groupcast_2of4,
                    instance_2of5, multicast, multicast_k4_bw, multimessage,
                    symmetric, synthesize, unicast)

__version__ = "0.1.0"
