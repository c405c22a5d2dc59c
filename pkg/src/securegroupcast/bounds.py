"""Converse bounds and exact capacity / minimum-bandwidth formulas.

Two converse bounds apply to every configuration:

* rate: no scheme can deliver more symbols per key block than the
  smallest conditional entropy H(z_q | z_e) over qualified q and
  eavesdropper e (the message must be decodable from z_q yet invisible
  given z_e);
* bandwidth: for any group Q of qualified receivers and any
  sub-collection u of an eavesdropper's keys,
  beta(R) >= |Q| R - (sum_q H(z_q | u) - H(z_Q | u)), i.e. the common
  information among the group's keys is the only broadcast saving.

On recognized shapes (single qualified receiver, single eavesdropper,
2-of-4, symmetric profiles, and the five-key aligned 2-of-5 topology)
the exact capacity and, where known, the exact minimum bandwidth are
returned in closed form.  The aligned 2-of-5 topology is the one setting
where the conditional-entropy rate bound is strictly loose, so a gap
flag is raised there.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import comb
from typing import Optional, Union

from . import keyspace
from .keyspace import (KeyCollection, KeyConfig, entropy_of,
                       normalize_labels, set_of)

Number = Union[int, Fraction]

# Settings recognized by exact_capacity.
UNICAST = "unicast"
MULTICAST = "multicast"
GROUPCAST_2OF4 = "groupcast_2of4"
SYMMETRIC = "symmetric"
ALIGNED_2OF5 = "aligned_2of5"

# Key subsets of the aligned 2-of-5 topology in canonical labels
# (qualified {1,2}): {1}, {1,2,3}, {1,4,5}, {2,4}, {2,5}.
_ALIGNED_2OF5_MASKS = frozenset({0b00001, 0b00111, 0b11001, 0b01010, 0b10010})


def _as_number(x: Fraction) -> Number:
    return int(x) if x.denominator == 1 else x


@dataclass(frozen=True)
class ExactCapacity:
    """Closed-form capacity for a recognized setting.

    beta_star is None when the minimum bandwidth at capacity is not
    characterized for the shape (single-eavesdropper settings with K >= 5
    and unequal conditional entropies).
    """

    setting: str
    C: Number
    beta_star: Optional[Number]


@dataclass(frozen=True)
class BwBound:
    """A bandwidth lower bound plus the witness (e, Q, u_e) attaining it.

    heuristic marks a truncated search.  The search over key
    sub-collections is exact here (see bw_converse), so the flag is
    always False; it stays in the interface for report stability.
    """

    value: Number
    heuristic: bool
    witness: Optional[tuple[int, frozenset[int], tuple[frozenset[int], ...]]]


@dataclass(frozen=True)
class GapDiagnostics:
    """Comparison of the conditional-entropy rate bound with the exact C."""

    rate_upper: int
    exact: Optional[ExactCapacity]
    gap: bool
    message: str


@dataclass(frozen=True)
class BoundsReport:
    """Everything the bounds machinery can say about one configuration."""

    rate_upper: int
    bw_lower: Number
    bw_heuristic: bool
    exact: Optional[ExactCapacity]
    gap: bool


def rate_converse(config: KeyConfig) -> int:
    """min over qualified q, eavesdropper e of H(z_q | z_e), in symbols."""
    best = None
    for e in sorted(config.eavesdroppers):
        given = KeyCollection.of_receiver(config, e)
        for q in sorted(config.qualified):
            h = entropy_of(config, {q}, given)
            if best is None or h < best:
                best = h
    if best is None:
        raise ValueError("need at least one qualified and one eavesdropping receiver")
    return best


def bw_converse(config: KeyConfig, rate: Number) -> BwBound:
    """Best bandwidth lower bound at the given rate.

    Maximizes |Q| R - (sum_{q in Q} H(z_q | u) - H(z_Q | u)) over
    eavesdroppers e, nonempty qualified groups Q, and sub-collections u of
    e's keys.  For independent combinatorial keys the subtracted term is
    sum_U (|U cap Q| - 1) * (residual symbols of U), each term nonnegative
    and shrinking as more of e's symbols enter u, so conditioning on all
    of e's keys dominates every sub-collection: the search over u is
    exact without enumeration.  Never returns less than R for R > 0
    (singleton groups give |Q| R - 0) and never less than 0.
    """
    if rate < 0:
        raise ValueError("rate must be nonnegative")
    rate = Fraction(rate)
    best = Fraction(0)
    best_witness = None
    qmask = config.qualified_mask
    for e in sorted(config.eavesdroppers):
        given = KeyCollection.of_receiver(config, e)
        chosen = tuple(set_of(m) for m in config.receiver_key_masks(e))
        sub = qmask
        while sub:
            members = set_of(sub)
            singles = sum(entropy_of(config, {q}, given) for q in members)
            joint = entropy_of(config, sub, given)
            value = len(members) * rate - (singles - joint)
            if value > best:
                best = value
                best_witness = (e, members, chosen)
            sub = (sub - 1) & qmask
    return BwBound(value=_as_number(best), heuristic=False, witness=best_witness)


# -- closed-form capacities ----------------------------------------------

def _multicast_beta_star(config: KeyConfig) -> Optional[Number]:
    """Minimum bandwidth at capacity for the single-eavesdropper setting."""
    (e,) = config.eavesdroppers
    given = KeyCollection.of_receiver(config, e)
    conds = [entropy_of(config, {q}, given) for q in sorted(config.qualified)]
    if len(set(conds)) == 1:
        return sum(size for m, size in config.key_items() if not m & (1 << (e - 1)))
    if config.K == 4:
        norm, _ = normalize_labels(config, "multicast_k4")
        l1 = norm.key_size({1})
        l12 = norm.key_size({1, 2})
        l13 = norm.key_size({1, 3})
        l23 = norm.key_size({2, 3})
        l123 = norm.key_size({1, 2, 3})
        return l123 + max(2 * l1 + l12 + 2 * l13,
                          3 * l1 + 2 * l12 + 2 * l13 - l23)
    return None  # open problem for K >= 5 with unequal conditional entropies


def _symmetric_capacity(config: KeyConfig, profile: tuple[int, ...]) -> ExactCapacity:
    K, N = config.K, config.N
    c = sum(comb(K - 2, u - 1) * profile[u - 1] for u in range(1, K + 1))
    beta = sum((comb(K - 1, u) - comb(K - N - 1, u)) * profile[u - 1]
               for u in range(1, K + 1))
    return ExactCapacity(setting=SYMMETRIC, C=c, beta_star=beta)


def aligned_2of5_key_size(config: KeyConfig) -> Optional[tuple[int, dict[int, int]]]:
    """Detect the five-key aligned 2-of-5 topology up to relabeling.

    The topology has qualified pair {1,2} and exactly the keys
    {1}, {1,2,3}, {1,4,5}, {2,4}, {2,5}, all of one equal size.  Returns
    (key size, permutation old->new into canonical labels), or None.
    Relabelings must keep the qualified pair qualified.
    """
    if config.K != 5 or config.N != 2:
        return None
    items = config.key_items()
    if len(items) != 5:
        return None
    sizes = {size for _, size in items}
    if len(sizes) != 1:
        return None
    (ell,) = sizes
    base, perm0 = keyspace.canonical_relabel(config)
    for q_order in ((1, 2), (2, 1)):
        for e_order in permutations((3, 4, 5)):
            extra = {1: q_order[0], 2: q_order[1],
                     3: e_order[0], 4: e_order[1], 5: e_order[2]}
            cand = base.relabeled(extra)
            if set(cand.keys) == set(_ALIGNED_2OF5_MASKS):
                perm = {old: extra[perm0[old]] for old in perm0}
                return ell, perm
    return None


def exact_capacity(config: KeyConfig) -> Optional[ExactCapacity]:
    """Closed-form capacity (and minimum bandwidth where known) by shape.

    Recognized shapes, tried in order: one qualified receiver; one
    eavesdropper; 2-of-4; the aligned 2-of-5 topology; symmetric size
    profiles.  Returns None for everything else (open settings).
    """
    N, K = config.N, config.K
    if N == 1:
        c = rate_converse(config)
        return ExactCapacity(setting=UNICAST, C=c, beta_star=c)
    if N == K - 1:
        c = rate_converse(config)
        return ExactCapacity(setting=MULTICAST, C=c,
                             beta_star=_multicast_beta_star(config))
    if N == 2 and K == 4:
        c = rate_converse(config)
        l_q = config.keys.get(config.qualified_mask, 0)
        pair_plus_eve = min(config.keys.get(config.qualified_mask | (1 << (e - 1)), 0)
                            for e in config.eavesdroppers)
        return ExactCapacity(setting=GROUPCAST_2OF4, C=c,
                             beta_star=2 * c - l_q - pair_plus_eve)
    detected = aligned_2of5_key_size(config)
    if detected is not None:
        ell, _ = detected
        return ExactCapacity(setting=ALIGNED_2OF5,
                             C=_as_number(Fraction(5 * ell, 3)),
                             beta_star=_as_number(Fraction(10 * ell, 3)))
    flag, profile = keyspace.is_symmetric(config)
    if flag:
        return _symmetric_capacity(config, profile)
    return None


def priority_check(config: KeyConfig) -> GapDiagnostics:
    """Flag configurations where the rate converse is strictly loose."""
    upper = rate_converse(config)
    exact = exact_capacity(config)
    if exact is not None and exact.C < upper:
        msg = (f"conditional-entropy bound {upper} exceeds the exact capacity "
               f"{exact.C} for setting {exact.setting}")
        return GapDiagnostics(rate_upper=upper, exact=exact, gap=True, message=msg)
    return GapDiagnostics(rate_upper=upper, exact=exact, gap=False,
                          message="conditional-entropy bound is tight" if exact
                          else "no exact formula known for this shape")


def report(config: KeyConfig) -> BoundsReport:
    """Full bounds report: rate converse, bandwidth converse at the best
    known rate, exact values where recognized, and the looseness flag."""
    upper = rate_converse(config)
    exact = exact_capacity(config)
    best_rate: Number = exact.C if exact is not None else upper
    bw = bw_converse(config, best_rate)
    gap = exact is not None and exact.C < upper
    return BoundsReport(rate_upper=upper, bw_lower=bw.value,
                        bw_heuristic=bw.heuristic, exact=exact, gap=gap)
