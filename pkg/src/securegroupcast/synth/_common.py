"""Shared synthesis machinery: budgeted key-column allocation and the
verify-then-escalate construction loop.

Builders first try a deterministic Cauchy-based draw at the smallest prime
the construction needs.  Cauchy matrices make every correctness and
security rank provable, so the verifier accepts on the first attempt in
practice; the escalation loop (next prime, seeded random redraw, at most 8
times) exists as a safety net because the mixed message/key genericity
conditions are stated, not field-quantified.
"""

from __future__ import annotations

import random
from dataclasses import replace
from typing import Callable, Iterable

import numpy as np

from ..fmatrix import FMatrix
from ..gf import Field, least_prime_at_least
from ..scheme import LinearScheme, verify


class SynthesisError(RuntimeError):
    """A builder's output failed verification even after escalations."""


class UnsolvedSettingError(ValueError):
    """No capacity-achieving construction is known for this shape."""


class NotSymmetricError(ValueError):
    """The symmetric builder needs equal key sizes per subset cardinality."""


MAX_ESCALATIONS = 8


def random_matrix(field: Field, rng: random.Random, rows: int, cols: int) -> FMatrix:
    a = np.array([[rng.randrange(field.p) for _ in range(cols)]
                  for _ in range(rows)], dtype=np.int64).reshape(rows, cols)
    return FMatrix(field, a)


def build_verified(p_floor: int,
                   make: Callable[[Field, random.Random, bool], LinearScheme],
                   seed: int = 0,
                   max_escalations: int = MAX_ESCALATIONS) -> LinearScheme:
    """Run make() at increasing primes until the verifier accepts.

    make(field, rng, generic) returns a candidate; generic=False on the
    first (deterministic Cauchy) attempt, True on seeded random redraws.
    The accepted scheme's meta records the escalation count and seed.
    """
    p = least_prime_at_least(max(2, p_floor))
    for attempt in range(max_escalations + 1):
        rng = random.Random(f"sgc:{seed}:{attempt}")
        candidate = make(Field(p), rng, attempt > 0)
        if verify(candidate).ok:
            meta = dict(candidate.meta)
            meta["escalations"] = attempt
            meta.setdefault("seed", seed)
            return replace(candidate, meta=meta)
        p = least_prime_at_least(p + 1)
    raise SynthesisError(
        f"construction still rejected after {max_escalations} prime escalations")


class SegmentAllocator:
    """Hands out fresh key-symbol columns inside per-subset budget segments.

    The layout fixes one segment per key subset; take() returns the next
    unused global column of that subset and refuses to exceed the budget,
    which enforces the key-budget discipline mechanically.
    """

    def __init__(self, layout: Iterable[tuple[frozenset[int], int]]):
        self._start: dict[frozenset[int], int] = {}
        self._width: dict[frozenset[int], int] = {}
        self._used: dict[frozenset[int], int] = {}
        pos = 0
        for subset, width in layout:
            if subset in self._start:
                raise ValueError(f"duplicate segment for {sorted(subset)}")
            self._start[subset] = pos
            self._width[subset] = width
            self._used[subset] = 0
            pos += width
        self.total = pos

    def take(self, subset: frozenset[int], count: int = 1) -> list[int]:
        used = self._used[subset]
        if used + count > self._width[subset]:
            raise SynthesisError(
                f"key budget exceeded for subset {sorted(subset)}: "
                f"{used + count} > {self._width[subset]}")
        self._used[subset] = used + count
        base = self._start[subset] + used
        return list(range(base, base + count))

    def consumed(self) -> dict[frozenset[int], int]:
        return dict(self._used)
