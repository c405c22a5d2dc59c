"""Three-message groupcast to two receivers with one outside eavesdropper.

Receiver 1 holds keys (s1, s12) and must learn messages W1 and W12 but
nothing about W2; receiver 2 holds (s2, s12) and must learn W2 and W12 but
nothing about W1; receiver 3 holds nothing and must learn nothing at all.
With key sizes (L1, L2, L12), an integer rate triple (R1, R2, R12) is
achievable iff

    R1 + R12 <= L1 + L12        R1 <= L1
    R2 + R12 <= L2 + L12        R2 <= L2      (all rates >= 0)

and the minimum bandwidth is R1 + R2 + max(R12, 2*R12 - L12): once the
common message outgrows the common key, every extra common bit must be
one-time-padded separately for each receiver out of their private keys,
costing two transmit bits instead of one.

Schemes are bit-slicing over GF(2).  When R12 <= L12 each message rides
its own key prefix.  Otherwise the common overflow W12[L12:] is sent
twice, once under fresh s1 bits and once under fresh s2 bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

import numpy as np

from ..fmatrix import FMatrix, hstack, prefix_ranks
from ..gf import Field
from ..scheme import (TooLargeError, _StateSpace, _entropy_from_counts,
                      counting_entropy_bits, group_stats, oracle_cap)

_F2 = Field(2)

MESSAGES = ("W1", "W2", "W12")


class InfeasibleRates(ValueError):
    """The rate triple lies outside the achievable region."""

    def __init__(self, inequality: str):
        super().__init__(f"rate region violated: {inequality}")
        self.inequality = inequality


def region_violation(sizes: tuple[int, int, int],
                     rates: tuple[int, int, int]) -> Optional[str]:
    """The first violated region inequality, or None when achievable."""
    l1, l2, l12 = sizes
    r1, r2, r12 = rates
    if min(r1, r2, r12) < 0:
        return "rates must be nonnegative"
    if r1 + r12 > l1 + l12:
        return "R1 + R12 <= L1 + L12"
    if r2 + r12 > l2 + l12:
        return "R2 + R12 <= L2 + L12"
    if r1 > l1:
        return "R1 <= L1"
    if r2 > l2:
        return "R2 <= L2"
    return None


def min_bandwidth(sizes: tuple[int, int, int], rates: tuple[int, int, int]) -> int:
    r1, r2, r12 = rates
    return r1 + r2 + max(r12, 2 * r12 - sizes[2])


@dataclass(frozen=True)
class MultiMessageScheme:
    """X = A1 @ W1 + A2 @ W2 + A12 @ W12 + B @ S over GF(2).

    The key vector S is laid out as [s1 | s2 | s12] with widths `sizes`.
    """

    sizes: tuple[int, int, int]
    rates: tuple[int, int, int]
    A1: FMatrix
    A2: FMatrix
    A12: FMatrix
    B: FMatrix

    @property
    def L_X(self) -> int:
        return self.B.rows

    @property
    def bandwidth(self) -> int:
        return self.L_X

    def key_columns(self, receiver: int) -> list[int]:
        l1, l2, l12 = self.sizes
        if receiver == 1:
            return list(range(0, l1)) + list(range(l1 + l2, l1 + l2 + l12))
        if receiver == 2:
            return list(range(l1, l1 + l2 + l12))
        if receiver == 3:
            return []
        raise ValueError(f"no receiver {receiver}")


def multimessage(sizes: tuple[int, int, int],
                 rates: tuple[int, int, int]) -> MultiMessageScheme:
    """Build the bit-slicing scheme for an achievable integer rate triple."""
    violated = region_violation(sizes, rates)
    if violated is not None:
        raise InfeasibleRates(violated)
    l1, l2, l12 = sizes
    r1, r2, r12 = rates
    overflow = max(0, r12 - l12)
    lx = r1 + r2 + min(r12, l12) + 2 * overflow
    d = l1 + l2 + l12
    a1 = np.zeros((lx, r1), dtype=np.int64)
    a2 = np.zeros((lx, r2), dtype=np.int64)
    a12 = np.zeros((lx, r12), dtype=np.int64)
    b = np.zeros((lx, d), dtype=np.int64)
    row = 0
    for i in range(r1):                      # W1[i] + s1[i]
        a1[row, i] = 1
        b[row, i] = 1
        row += 1
    for i in range(r2):                      # W2[i] + s2[i]
        a2[row, i] = 1
        b[row, l1 + i] = 1
        row += 1
    for i in range(min(r12, l12)):           # W12[i] + s12[i]
        a12[row, i] = 1
        b[row, l1 + l2 + i] = 1
        row += 1
    for i in range(overflow):                # common overflow, padded twice
        a12[row, l12 + i] = 1
        b[row, r1 + i] = 1                   # fresh s1 bits
        row += 1
    for i in range(overflow):
        a12[row, l12 + i] = 1
        b[row, l1 + r2 + i] = 1              # fresh s2 bits
        row += 1
    return MultiMessageScheme(sizes=tuple(sizes), rates=tuple(rates),
                              A1=FMatrix(_F2, a1), A2=FMatrix(_F2, a2),
                              A12=FMatrix(_F2, a12), B=FMatrix(_F2, b))


@dataclass(frozen=True)
class MultiMessageReport:
    """Per-receiver decode verdicts and per-constraint leakage in symbols
    (algebraic) or bits (oracle)."""

    correct: Mapping[int, bool]
    leakage: Mapping[str, float]
    states: Optional[int] = None

    @property
    def ok(self) -> bool:
        return (all(self.correct.values())
                and all(abs(v) < 1e-9 for v in self.leakage.values()))


def _cols(ms: MultiMessageScheme, which: list[int]) -> FMatrix:
    b = ms.B.array
    return FMatrix(_F2, b[:, which] if which else np.zeros((ms.L_X, 0), np.int64))


def verify_multimessage(ms: MultiMessageScheme) -> MultiMessageReport:
    """Exact rank-based decode and leakage tests for all three constraints."""
    unk1 = [j for j in range(ms.B.cols) if j not in set(ms.key_columns(1))]
    unk2 = [j for j in range(ms.B.cols) if j not in set(ms.key_columns(2))]
    correct = {}
    # Receiver 1 decodes (W1, W12) despite unknown W2 and s2.
    target = hstack([ms.A1, ms.A12])
    other = hstack([ms.A2, _cols(ms, unk1)])
    base, total = prefix_ranks(hstack([other, target]), other.cols)
    correct[1] = total - base == ms.rates[0] + ms.rates[2]
    target = hstack([ms.A2, ms.A12])
    other = hstack([ms.A1, _cols(ms, unk2)])
    base, total = prefix_ranks(hstack([other, target]), other.cols)
    correct[2] = total - base == ms.rates[1] + ms.rates[2]
    leakage = {}
    noise = hstack([ms.A1, ms.A12, _cols(ms, unk1)])
    base, total = prefix_ranks(hstack([noise, ms.A2]), noise.cols)
    leakage["W2->1"] = total - base
    noise = hstack([ms.A2, ms.A12, _cols(ms, unk2)])
    base, total = prefix_ranks(hstack([noise, ms.A1]), noise.cols)
    leakage["W1->2"] = total - base
    together = hstack([ms.A1, ms.A2, ms.A12])
    base, total = prefix_ranks(hstack([ms.B, together]), ms.B.cols)
    leakage["W1W2W12->3"] = total - base
    return MultiMessageReport(correct=correct, leakage=leakage)


def oracle_multimessage(ms: MultiMessageScheme,
                        cap: Optional[int] = None) -> MultiMessageReport:
    """Brute-force enumeration of all (W1, W2, W12, S) states.

    Counts what each receiver sees and reports exact mutual information in
    bits for the three security constraints and exact decodability for the
    two qualified receivers.
    """
    if cap is None:
        cap = oracle_cap()
    r1, r2, r12 = ms.rates
    l1, l2, l12 = ms.sizes
    m = r1 + r2 + r12 + l1 + l2 + l12
    states = 1 << m
    if states > cap:
        raise TooLargeError(f"2^{m} states exceeds the oracle cap {cap}")
    space = _StateSpace(2, m)
    # digit positions: W1, W2, W12, s1, s2, s12 in order
    pos_w1 = list(range(0, r1))
    pos_w2 = list(range(r1, r1 + r2))
    pos_w12 = list(range(r1 + r2, r1 + r2 + r12))
    key_base = r1 + r2 + r12
    coeffs = np.concatenate(
        [ms.A1.array, ms.A2.array, ms.A12.array, ms.B.array], axis=1)
    xvals = [space.row_values(coeffs[r]) for r in range(ms.L_X)]
    x_words = space.pack(xvals)
    z1 = space.digit_codes([key_base + c for c in ms.key_columns(1)])
    z2 = space.digit_codes([key_base + c for c in ms.key_columns(2)])
    w1 = space.digit_codes(pos_w1)
    w2 = space.digit_codes(pos_w2)
    w12 = space.digit_codes(pos_w12)
    n = space.n

    def mi_bits(msg_words, view_words):
        hm = counting_entropy_bits(msg_words, n)
        view_counts, joint_counts = group_stats(view_words, msg_words, n)
        return (hm + _entropy_from_counts(view_counts, n)
                - _entropy_from_counts(joint_counts, n))

    def decodes(view_words, msg_words):
        view_counts, joint_counts = group_stats(view_words, msg_words, n)
        return len(joint_counts) == len(view_counts)

    correct = {
        1: decodes(x_words + z1, w1 + w12),
        2: decodes(x_words + z2, w2 + w12),
    }
    leakage = {
        "W2->1": mi_bits(w2, x_words + z1),
        "W1->2": mi_bits(w1, x_words + z2),
        "W1W2W12->3": mi_bits(w1 + w2 + w12, x_words),
    }
    return MultiMessageReport(correct=correct, leakage=leakage, states=states)
