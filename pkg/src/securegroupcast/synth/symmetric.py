"""Scheme builder for symmetric key profiles (any N, K).

When every u-subset carries the same key size, keys of different
cardinality never need to be coded together: each cardinality u splits
further by how many qualified receivers i know the key.  For a fixed
group of qualified receivers I (|I| = i), the keys {s_U : U cap [1:N] = I,
|U| = u} form a private pool: everyone in I knows all of them while any
eavesdropper knows only those U containing it.  One transmit block

    X(u, I) = Vw_I @ W(u, i) + sum_U Vs_U @ s_U

with C(K-N-1, u-i) * L rows then delivers fresh message combinations to
exactly the receivers in I and drowns every eavesdropper in key symbols
it misses.  Stacking the Vw_I of all I (same u, i) into one Cauchy matrix
makes any receiver's collected rows invertible; drawing the Vs blocks
from a Cauchy matrix makes any eavesdropper's unknown-key square
submatrix invertible.  Summing the block sizes reproduces the closed-form
capacity sum C(K-2, u-1) L[u] and bandwidth sum
(C(K-1, u) - C(K-N-1, u)) L[u].
"""

from __future__ import annotations

import random
from itertools import combinations
from math import comb

import numpy as np

from ..fmatrix import FMatrix, cauchy
from ..gf import Field
from ..keyspace import (KeyConfig, canonical_relabel, invert_perm, is_symmetric,
                        mask_of)
from ..scheme import LinearScheme
from ._common import NotSymmetricError, build_verified, random_matrix


def symmetric(config: KeyConfig, seed: int = 0) -> LinearScheme:
    """Capacity- and bandwidth-optimal scheme for a symmetric profile."""
    flag, profile = is_symmetric(config)
    if not flag:
        raise NotSymmetricError("key sizes differ within a subset cardinality")
    norm, perm = canonical_relabel(config)
    K, N = norm.K, norm.N
    qualified = list(range(1, N + 1))
    eavesdroppers = list(range(N + 1, K + 1))

    # One entry per (u, i) with actual content: the I-blocks, their keys,
    # the per-block row count b, and the message width m.
    plan = []
    p_floor = 2
    for u in range(1, K + 1):
        ell = profile[u - 1]
        if ell == 0:
            continue
        for i in range(min(u, N), 0, -1):
            b = comb(K - N - 1, u - i) * ell
            m = comb(N - 1, i - 1) * b
            if b == 0:
                continue
            groups = list(combinations(qualified, i))
            blocks = []
            for members in groups:
                key_subsets = [frozenset(members) | frozenset(extra)
                               for extra in combinations(eavesdroppers, u - i)]
                key_subsets.sort(key=lambda s: mask_of(s))
                blocks.append((frozenset(members), key_subsets))
            plan.append({"u": u, "i": i, "ell": ell, "b": b, "m": m,
                         "blocks": blocks})
            p_floor = max(p_floor,
                          len(groups) * b + m,              # stacked Vw
                          b + comb(K - N, u - i) * ell)      # per-block Vs
    if not plan:
        return LinearScheme.empty(K=config.K, qualified=config.qualified,
                                  meta={"builder": "symmetric", "degenerate": True,
                                        "seed": seed, "escalations": 0})

    lw = sum(g["m"] for g in plan)
    lx = sum(len(g["blocks"]) * g["b"] for g in plan)
    layout_subsets: list[frozenset[int]] = []
    for g in plan:
        for _, key_subsets in g["blocks"]:
            layout_subsets.extend(key_subsets)
    layout_subsets.sort(key=mask_of)
    layout = tuple((s, profile[len(s) - 1]) for s in layout_subsets)
    seg_start = {}
    pos = 0
    for s, width in layout:
        seg_start[s] = pos
        pos += width
    groups_meta = [{"u": g["u"], "i": g["i"], "rate": g["m"],
                    "bandwidth": len(g["blocks"]) * g["b"]} for g in plan]

    def make(field: Field, rng: random.Random, generic: bool) -> LinearScheme:
        a = np.zeros((lx, lw), dtype=np.int64)
        bmat = np.zeros((lx, pos), dtype=np.int64)
        row = msg = 0
        for g in plan:
            b, m, ell = g["b"], g["m"], g["ell"]
            nblocks = len(g["blocks"])
            key_cols = comb(K - N, g["u"] - g["i"]) * ell
            if generic:
                vw = random_matrix(field, rng, nblocks * b, m)
                vs = random_matrix(field, rng, b, key_cols)
            else:
                vw = cauchy(nblocks * b, m, field)
                vs = cauchy(b, key_cols, field)
            for t, (_, key_subsets) in enumerate(g["blocks"]):
                a[row:row + b, msg:msg + m] = vw.array[t * b:(t + 1) * b]
                for j, subset in enumerate(key_subsets):
                    start = seg_start[subset]
                    bmat[row:row + b, start:start + ell] = \
                        vs.array[:, j * ell:(j + 1) * ell]
                row += b
            msg += m
        return LinearScheme(field=field, L=1, K=K,
                            qualified=frozenset(qualified), layout=layout,
                            A=FMatrix(field, a), B=FMatrix(field, bmat),
                            meta={"builder": "symmetric", "groups": groups_meta})

    built = build_verified(p_floor, make, seed)
    return built.relabeled(invert_perm(perm))
