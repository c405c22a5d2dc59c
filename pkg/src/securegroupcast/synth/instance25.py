"""Vector-linear scheme for the aligned 2-of-5 topology.

Five receivers, qualified pair {1, 2}, five equal-size keys:
a = s{1}, b = s{123}, c = s{145}, d = s{24}, e = s{25}.  No one-shot
scheme reaches the capacity here; the base scheme codes over L = 3 key
blocks (so every key contributes 3 bits) and sends 5 message bits in 10
transmit bits, for rate 5/3 and bandwidth 10/3 per block.

Base transmit rows over GF(2) (key bit x_j = block j of key x):

    x1  = W1 + b1 + c1        x6  = W1 + b1 + d1
    x2  = W4 + b2 + c2        x7  = W2 + b3 + d2
    x3  = W2 + a1             x8  = W4 + b2 + e1
    x4  = W3 + a2             x9  = W3 + d3 + e2
    x5  = W5 + a3 + c3        x10 = W5 + b3 + e3

Receiver 1 decodes from rows 1-5 (knows a, b, c), receiver 2 from rows
6-10 (knows b, d, e).  Eavesdropper 3 knows only b, and every residual row
still carries a, c, d or e.  Eavesdropper 4 knows c, d; its residual view
repeats W1 + b1 in rows 1 and 6: the repeat is aligned, the same message
combination under the same noise, so the 10 rows span only 9 dimensions
and nothing leaks.  Eavesdropper 5 (knows c, e) aligns W4 + b2 in rows 2
and 8 the same way.  Larger key sizes take fresh-key copies of the base.
"""

from __future__ import annotations

import numpy as np

from ..fmatrix import FMatrix
from ..gf import Field
from ..scheme import LinearScheme

_F2 = Field(2)

KEY_SUBSETS: tuple[frozenset[int], ...] = (
    frozenset({1}),           # a
    frozenset({1, 2, 3}),     # b
    frozenset({1, 4, 5}),     # c
    frozenset({2, 4}),        # d
    frozenset({2, 5}),        # e
)

# (message bit, [(key index, block)]) per transmit row; key indices follow
# KEY_SUBSETS order and blocks run 0..2.
_BASE_ROWS: tuple[tuple[int, tuple[tuple[int, int], ...]], ...] = (
    (0, ((1, 0), (2, 0))),   # W1 + b1 + c1
    (3, ((1, 1), (2, 1))),   # W4 + b2 + c2
    (1, ((0, 0),)),          # W2 + a1
    (2, ((0, 1),)),          # W3 + a2
    (4, ((0, 2), (2, 2))),   # W5 + a3 + c3
    (0, ((1, 0), (3, 0))),   # W1 + b1 + d1
    (1, ((1, 2), (3, 1))),   # W2 + b3 + d2
    (3, ((1, 1), (4, 0))),   # W4 + b2 + e1
    (2, ((3, 2), (4, 1))),   # W3 + d3 + e2
    (4, ((1, 2), (4, 2))),   # W5 + b3 + e3
)

BLOCKS_PER_COPY = 3
MSG_BITS_PER_COPY = 5
TX_BITS_PER_COPY = 10


def instance_2of5(key_size: int, seed: int = 0) -> LinearScheme:
    """Scheme for the aligned topology with all five keys of `key_size`.

    Emits key_size fresh-key copies of the base scheme: 5 * key_size
    message bits in 10 * key_size transmit bits over L = 3 blocks.
    """
    ell = key_size
    if ell < 0:
        raise ValueError("key size must be nonnegative")
    if ell == 0:
        return LinearScheme.empty(K=5, qualified={1, 2}, L=BLOCKS_PER_COPY,
                                  meta={"builder": "instance_2of5", "key_size": 0,
                                        "seed": seed, "escalations": 0})
    width = BLOCKS_PER_COPY * ell
    layout = tuple((subset, width) for subset in KEY_SUBSETS)
    lw = MSG_BITS_PER_COPY * ell
    lx = TX_BITS_PER_COPY * ell
    a = np.zeros((lx, lw), dtype=np.int64)
    b = np.zeros((lx, len(KEY_SUBSETS) * width), dtype=np.int64)
    for copy in range(ell):
        r0 = TX_BITS_PER_COPY * copy
        m0 = MSG_BITS_PER_COPY * copy
        for r, (msg, pads) in enumerate(_BASE_ROWS):
            a[r0 + r, m0 + msg] = 1
            for key_idx, block in pads:
                b[r0 + r, key_idx * width + BLOCKS_PER_COPY * copy + block] = 1
    return LinearScheme(field=_F2, L=BLOCKS_PER_COPY, K=5,
                        qualified=frozenset({1, 2}), layout=layout,
                        A=FMatrix(_F2, a), B=FMatrix(_F2, b),
                        meta={"builder": "instance_2of5", "key_size": ell,
                              "seed": seed, "escalations": 0})
