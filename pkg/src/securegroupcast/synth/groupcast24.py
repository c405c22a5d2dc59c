"""Scheme builder for two qualified receivers out of four (GF(2)).

No single coding template covers this shape; instead every instance
decomposes into integer multiples of seven one-bit building blocks, each a
tiny verified scheme on its own key bits (receivers 1, 2 qualified;
receivers 3, 4 eavesdropping):

    OTP12  X = W + s12                       1 tx bit
    Cmp1   X = W + s123 + s124               1 tx bit
    Cmp2   X = (W + s1,        W + s2)       2 tx bits
    Cmp3   X = (W + s2,        W + s13 + s14)
    Cmp4   X = (W + s123 + s24, W + s123 + s14)
    Cmp5   X = (W + s2,        W + s123 + s14)
    Cmp6   X = (W + s13 + s14, W + s23 + s24)

Cmp4 reuses one s123 bit in both rows: eavesdropper 4 knows s14 and s24,
and after cancelling them sees the same W + s123 twice, so the repeats
align instead of leaking.  Keys held by both eavesdroppers or by neither
qualified receiver cannot help and are ignored.

Invocation counts come from a greedy case split on the key sizes (after
relabeling so l1 <= l2 and l124 <= l123): s12, the s123/s124 overlap and
the s1/s2 overlap are always spent first; the remaining budget of s2,
then the pair keys with the eavesdroppers, determine how many of Cmp3..6
fit.  Every branch lands exactly on the capacity
l12 + min(l1+l14+l124, l1+l13+l123, l2+l24+l124, l2+l23+l123) with
bandwidth 2C - l12 - l124.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..fmatrix import FMatrix
from ..gf import Field
from ..keyspace import KeyConfig, invert_perm, normalize_labels
from ..scheme import LinearScheme, verify
from ._common import SegmentAllocator, SynthesisError

_F2 = Field(2)


def _s(*receivers: int) -> frozenset[int]:
    return frozenset(receivers)


@dataclass(frozen=True)
class ComponentSig:
    """One building block: which fresh key bits it consumes and how each
    transmit row pads the single message bit with them."""

    name: str
    consumes: tuple[frozenset[int], ...]
    rows: tuple[tuple[frozenset[int], ...], ...]

    @property
    def msg_bits(self) -> int:
        return 1

    @property
    def tx_bits(self) -> int:
        return len(self.rows)


COMPONENTS: dict[str, ComponentSig] = {
    "OTP12": ComponentSig("OTP12", (_s(1, 2),), ((_s(1, 2),),)),
    "Cmp1": ComponentSig("Cmp1", (_s(1, 2, 3), _s(1, 2, 4)),
                         ((_s(1, 2, 3), _s(1, 2, 4)),)),
    "Cmp2": ComponentSig("Cmp2", (_s(1), _s(2)),
                         ((_s(1),), (_s(2),))),
    "Cmp3": ComponentSig("Cmp3", (_s(2), _s(1, 3), _s(1, 4)),
                         ((_s(2),), (_s(1, 3), _s(1, 4)))),
    "Cmp4": ComponentSig("Cmp4", (_s(1, 2, 3), _s(1, 4), _s(2, 4)),
                         ((_s(1, 2, 3), _s(2, 4)), (_s(1, 2, 3), _s(1, 4)))),
    "Cmp5": ComponentSig("Cmp5", (_s(2), _s(1, 4), _s(1, 2, 3)),
                         ((_s(2),), (_s(1, 2, 3), _s(1, 4)))),
    "Cmp6": ComponentSig("Cmp6", (_s(1, 3), _s(1, 4), _s(2, 3), _s(2, 4)),
                         ((_s(1, 3), _s(1, 4)), (_s(2, 3), _s(2, 4)))),
}

_COMPONENT_ORDER = ("OTP12", "Cmp1", "Cmp2", "Cmp3", "Cmp4", "Cmp5", "Cmp6")

# Subsets that can contribute: touch a qualified receiver, not known to
# both eavesdroppers.
USEFUL_SUBSETS: tuple[frozenset[int], ...] = (
    _s(1), _s(2), _s(1, 2), _s(1, 3), _s(2, 3), _s(1, 2, 3),
    _s(1, 4), _s(2, 4), _s(1, 2, 4))


def component_instance(name: str) -> LinearScheme:
    """The one-invocation scheme of a component on its own fresh key bits."""
    sig = COMPONENTS[name]
    layout = tuple((subset, 1) for subset in sig.consumes)
    col = {subset: i for i, subset in enumerate(sig.consumes)}
    a = np.zeros((sig.tx_bits, 1), dtype=np.int64)
    b = np.zeros((sig.tx_bits, len(sig.consumes)), dtype=np.int64)
    for r, row_subsets in enumerate(sig.rows):
        a[r, 0] = 1
        for subset in row_subsets:
            b[r, col[subset]] = 1
    return LinearScheme(field=_F2, L=1, K=4, qualified=_s(1, 2), layout=layout,
                        A=FMatrix(_F2, a), B=FMatrix(_F2, b),
                        meta={"builder": name})


def capacity_2of4(sizes: dict[frozenset[int], int]) -> int:
    """min over (qualified, eavesdropper) pairs of the secure key entropy."""
    g = sizes.get
    return g(_s(1, 2), 0) + min(
        g(_s(1), 0) + g(_s(1, 4), 0) + g(_s(1, 2, 4), 0),
        g(_s(1), 0) + g(_s(1, 3), 0) + g(_s(1, 2, 3), 0),
        g(_s(2), 0) + g(_s(2, 4), 0) + g(_s(1, 2, 4), 0),
        g(_s(2), 0) + g(_s(2, 3), 0) + g(_s(1, 2, 3), 0))


def min_bandwidth_2of4(sizes: dict[frozenset[int], int]) -> int:
    c = capacity_2of4(sizes)
    return 2 * c - sizes.get(_s(1, 2), 0) - min(sizes.get(_s(1, 2, 3), 0),
                                                sizes.get(_s(1, 2, 4), 0))


def component_counts(sizes: dict[frozenset[int], int]) -> tuple[dict[str, int], str]:
    """Invocation counts per component for normalized sizes.

    Requires l1 <= l2 and l124 <= l123 (the normalize_labels ordering);
    returns (counts, case label).  Each count is how many fresh bits of
    every key in that component's signature get spent.
    """
    g = sizes.get
    l1, l2 = g(_s(1), 0), g(_s(2), 0)
    l12 = g(_s(1, 2), 0)
    l13, l14 = g(_s(1, 3), 0), g(_s(1, 4), 0)
    l23, l24 = g(_s(2, 3), 0), g(_s(2, 4), 0)
    l123, l124 = g(_s(1, 2, 3), 0), g(_s(1, 2, 4), 0)
    if l1 > l2 or l124 > l123:
        raise ValueError("sizes must satisfy l1 <= l2 and l124 <= l123")
    counts = {"OTP12": l12, "Cmp1": l124, "Cmp2": l1}
    if l2 - l1 >= min(l13, l14):
        counts["Cmp3"] = min(l13, l14)
        if l14 <= l13:
            case = "1.1"
        else:
            t = min(l14 - l13, l123 - l124, l24)
            counts["Cmp4"] = t
            if t == l14 - l13:
                case = "1.2.1"
            elif t == l123 - l124:
                case = "1.2.2"
            else:
                case = "1.2.3"
                counts["Cmp5"] = min(l2 - l1 - l13, l14 - l13 - l24,
                                     l123 - l124 - l24)
    else:
        counts["Cmp3"] = l2 - l1
        t = min(l24, l14 - l2 + l1, l123 - l124)
        counts["Cmp4"] = t
        if t == l24:
            case = "2.1"
        elif t == l14 - l2 + l1:
            case = "2.2"
        else:
            case = "2.3"
            counts["Cmp6"] = min(l14 - l2 + l1 - l123 + l124, l13 - l2 + l1,
                                 l24 - l123 + l124, l23)
    return {k: v for k, v in counts.items() if v > 0}, case


def groupcast_2of4(config: KeyConfig, seed: int = 0) -> LinearScheme:
    """Capacity- and bandwidth-optimal GF(2) scheme for 2-of-4 groupcast."""
    norm, perm = normalize_labels(config, "groupcast_2of4")
    sizes = {subset: norm.key_size(subset) for subset in USEFUL_SUBSETS}
    counts, case = component_counts(sizes)
    lw = sum(counts.values())
    lx = sum(COMPONENTS[name].tx_bits * n for name, n in counts.items())
    if lw != capacity_2of4(sizes) or lx != min_bandwidth_2of4(sizes):
        raise SynthesisError(
            f"case-tree accounting off in case {case}: got ({lw}, {lx}), "
            f"expected ({capacity_2of4(sizes)}, {min_bandwidth_2of4(sizes)})")
    layout = tuple((subset, sizes[subset]) for subset in sorted(
        USEFUL_SUBSETS, key=lambda s: sum(1 << (k - 1) for k in s))
        if sizes[subset] > 0)
    alloc = SegmentAllocator(layout)
    a = np.zeros((lx, lw), dtype=np.int64)
    b = np.zeros((lx, alloc.total), dtype=np.int64)
    row = msg = 0
    for name in _COMPONENT_ORDER:
        sig = COMPONENTS[name]
        for _ in range(counts.get(name, 0)):
            bit = {subset: alloc.take(subset)[0] for subset in sig.consumes}
            for row_subsets in sig.rows:
                a[row, msg] = 1
                for subset in row_subsets:
                    b[row, bit[subset]] = 1
                row += 1
            msg += 1
    built = LinearScheme(field=_F2, L=1, K=4, qualified=_s(1, 2), layout=layout,
                         A=FMatrix(_F2, a), B=FMatrix(_F2, b),
                         meta={"builder": "groupcast_2of4", "case": case,
                               "counts": dict(counts), "seed": seed,
                               "escalations": 0})
    if not verify(built).ok:
        raise SynthesisError(f"2-of-4 composition failed verification in case {case}")
    return built.relabeled(invert_perm(perm))
