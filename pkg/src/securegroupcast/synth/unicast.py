"""Scheme builder for one qualified receiver and any number of eavesdroppers.

The transmitter one-time-pads the message with a mixed key V @ S built
from everything the qualified receiver knows, where V is a Cauchy matrix
with as many rows as message symbols.  Any eavesdropper e misses at least
L_W of those key symbols (that is exactly the capacity formula), and the
corresponding columns of V form a full-rank submatrix, so the residual pad
is uniform: zero leakage at bandwidth equal to the rate.
"""

from __future__ import annotations

import random

from ..fmatrix import FMatrix, cauchy
from ..gf import Field
from ..keyspace import KeyConfig, WrongShapeError, canonical_relabel, invert_perm, set_of
from ..bounds import rate_converse
from ..scheme import LinearScheme
from ._common import build_verified, random_matrix


def unicast(config: KeyConfig, seed: int = 0) -> LinearScheme:
    """Capacity- and bandwidth-optimal scheme for |qualified| = 1."""
    if config.N != 1:
        raise WrongShapeError(f"unicast needs exactly one qualified receiver, got {config.N}")
    norm, perm = canonical_relabel(config)
    keys = [(m, size) for m, size in norm.key_items() if m & 1]  # receiver 1's keys
    lw = rate_converse(norm)
    if lw == 0:
        return LinearScheme.empty(K=config.K, qualified=config.qualified,
                                  meta={"builder": "unicast", "degenerate": True,
                                        "seed": seed, "escalations": 0})
    total = sum(size for _, size in keys)
    layout = tuple((set_of(m), size) for m, size in keys)

    def make(field: Field, rng: random.Random, generic: bool) -> LinearScheme:
        v = random_matrix(field, rng, lw, total) if generic else cauchy(lw, total, field)
        return LinearScheme(field=field, L=1, K=norm.K, qualified=norm.qualified,
                            layout=layout, A=FMatrix.identity(field, lw), B=v,
                            meta={"builder": "unicast"})

    built = build_verified(lw + total, make, seed)
    return built.relabeled(invert_perm(perm))
