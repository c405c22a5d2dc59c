"""Linear secure-groupcast schemes and their exact verification.

A scheme broadcasts X = A @ W + B @ S over GF(p), where W is the message
and S is the global key vector, laid out as consecutive segments, one per
combinatorial key subset.  Receiver k knows exactly the columns of B whose
segment subset contains k.

Verification is exact, never statistical:

* algebraic tests reduce correctness and leakage to ranks.  With uniform
  independent keys and a linear map, receiver k's residual view is
  A @ W + B_unk @ S_unk, so k decodes iff the columns of A are independent
  modulo the column space of B_unk, and an eavesdropper's information
  about W is exactly rank([B_unk | A]) - rank(B_unk) symbols;
* an independent brute-force oracle enumerates every (W, S) state, counts
  the joint distributions and reports mutual information in bits and
  decode success directly, with no linear-algebra shortcuts.
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .fmatrix import FMatrix, hstack, prefix_ranks, solve_right, vstack
from .gf import Field

DEFAULT_ORACLE_CAP = 1 << 22
ORACLE_CAP_ENV = "SGC_ORACLE_CAP"


class TooLargeError(ValueError):
    """The oracle's exhaustive state space exceeds the configured cap."""


class NotDecodableError(ValueError):
    """No linear decoder exists for this receiver."""


class DecodeFailureError(AssertionError):
    """A constructed decoder failed on a sampled input (verifier bug)."""


class FieldMismatchError(ValueError):
    """Schemes over different fields cannot be concatenated."""


class ShapeMismatchError(ValueError):
    """Schemes with different K/qualified/L cannot be concatenated."""


@dataclass(frozen=True)
class LinearScheme:
    """X = A @ W + B @ S over GF(p) with a segmented key layout.

    layout entries are (subset, width) pairs partitioning the columns of B
    in order; width counts field symbols (key symbols per block times the
    block count L).  rate = L_W / L and bandwidth = L_X / L.
    """

    field: Field
    L: int
    K: int
    qualified: frozenset[int]
    layout: tuple[tuple[frozenset[int], int], ...]
    A: FMatrix
    B: FMatrix
    meta: Mapping[str, object] = dc_field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.L < 1:
            raise ValueError("key block count L must be >= 1")
        if self.A.field != self.field or self.B.field != self.field:
            raise ValueError("A and B must live in the scheme's field")
        if self.A.rows != self.B.rows:
            raise ValueError("A and B must have the same number of rows")
        if sum(w for _, w in self.layout) != self.B.cols:
            raise ValueError("layout widths must sum to the width of B")
        members = frozenset(range(1, self.K + 1))
        if not self.qualified or not self.qualified <= members or self.qualified == members:
            raise ValueError("qualified must be a nonempty proper subset of receivers")
        for subset, width in self.layout:
            if not subset or not subset <= members:
                raise ValueError(f"layout subset {sorted(subset)} outside receivers")
            if width < 0:
                raise ValueError("layout widths must be nonnegative")

    # -- derived sizes ---------------------------------------------------

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def L_W(self) -> int:
        return self.A.cols

    @property
    def L_X(self) -> int:
        return self.A.rows

    @property
    def D(self) -> int:
        return self.B.cols

    @property
    def rate(self) -> Fraction:
        return Fraction(self.L_W, self.L)

    @property
    def bandwidth(self) -> Fraction:
        return Fraction(self.L_X, self.L)

    @property
    def eavesdroppers(self) -> frozenset[int]:
        return frozenset(range(1, self.K + 1)) - self.qualified

    # -- key layout ------------------------------------------------------

    def segments(self) -> list[tuple[frozenset[int], int, int]]:
        """(subset, start column, width) triples in layout order."""
        out = []
        start = 0
        for subset, width in self.layout:
            out.append((subset, start, width))
            start += width
        return out

    def known_columns(self, k: int) -> tuple[int, ...]:
        """Columns of B (key symbols) held by receiver k."""
        if not 1 <= k <= self.K:
            raise ValueError(f"receiver {k} outside [1..{self.K}]")
        cols = []
        for subset, start, width in self.segments():
            if k in subset:
                cols.extend(range(start, start + width))
        return tuple(cols)

    def unknown_columns(self, k: int) -> tuple[int, ...]:
        known = set(self.known_columns(k))
        return tuple(j for j in range(self.D) if j not in known)

    def relabeled(self, perm: Mapping[int, int]) -> "LinearScheme":
        """Apply a receiver permutation (old label -> new label)."""
        return LinearScheme(
            field=self.field, L=self.L, K=self.K,
            qualified=frozenset(perm[k] for k in self.qualified),
            layout=tuple((frozenset(perm[k] for k in subset), width)
                         for subset, width in self.layout),
            A=self.A, B=self.B, meta=dict(self.meta))

    @classmethod
    def empty(cls, field: Optional[Field] = None, K: int = 2,
              qualified: Iterable[int] = (1,), L: int = 1,
              meta: Optional[dict] = None) -> "LinearScheme":
        f = field if field is not None else Field(2)
        return cls(field=f, L=L, K=K, qualified=frozenset(qualified),
                   layout=(), A=FMatrix.zeros(f, 0, 0), B=FMatrix.zeros(f, 0, 0),
                   meta=meta or {})


@dataclass(frozen=True)
class VerifyReport:
    """Exact algebraic verdicts: per-receiver decode, per-eavesdropper leak."""

    correct: Mapping[int, bool]
    leakage: Mapping[int, int]
    oracle_used: bool = False

    @property
    def ok(self) -> bool:
        return all(self.correct.values()) and not any(self.leakage.values())


def _residual_ranks(scheme: LinearScheme, k: int) -> tuple[int, int]:
    """(rank of B_unk, rank of [B_unk | A]) for receiver k, in one pass."""
    unk = scheme.unknown_columns(k)
    b_unk = FMatrix(scheme.field, scheme.B.array[:, list(unk)]
                    if unk else np.zeros((scheme.L_X, 0), dtype=np.int64))
    return prefix_ranks(hstack([b_unk, scheme.A]), b_unk.cols)


def verify_correctness(scheme: LinearScheme, k: int) -> bool:
    """Whether qualified receiver k can always decode W from (X, Z_k)."""
    if k not in scheme.qualified:
        raise ValueError(f"receiver {k} is not qualified")
    base, total = _residual_ranks(scheme, k)
    return total - base == scheme.L_W


def verify_security(scheme: LinearScheme, e: int) -> int:
    """Exact leakage to eavesdropper e in symbols (0 means secure).

    rank([B_unk | A]) - rank(B_unk): the number of message dimensions not
    absorbed by key noise unknown to e.
    """
    if e in scheme.qualified:
        raise ValueError(f"receiver {e} is qualified, not an eavesdropper")
    base, total = _residual_ranks(scheme, e)
    return total - base


def verify(scheme: LinearScheme) -> VerifyReport:
    """Run the algebraic correctness and security tests for all receivers."""
    correct = {k: verify_correctness(scheme, k) for k in sorted(scheme.qualified)}
    leakage = {e: verify_security(scheme, e) for e in sorted(scheme.eavesdroppers)}
    return VerifyReport(correct=correct, leakage=leakage)


def decoder_for(scheme: LinearScheme, k: int) -> FMatrix:
    """Matrix M with W = M @ [X; S_known] for every (W, S).

    Raises NotDecodableError when receiver k cannot decode.
    """
    if k not in scheme.qualified:
        raise ValueError(f"receiver {k} is not qualified")
    known = list(scheme.known_columns(k))
    unk = list(scheme.unknown_columns(k))
    f = scheme.field
    b_unk = FMatrix(f, scheme.B.array[:, unk] if unk
                    else np.zeros((scheme.L_X, 0), dtype=np.int64))
    g = hstack([scheme.A, b_unk])
    # M1 @ [A | B_unk] = [I | 0]  <=>  g.T @ M1.T = [I; 0]
    rhs = vstack([FMatrix.identity(f, scheme.L_W),
                  FMatrix.zeros(f, len(unk), scheme.L_W)])
    try:
        m1 = solve_right(g.transpose(), rhs).transpose()
    except Exception as exc:
        raise NotDecodableError(f"receiver {k} cannot decode") from exc
    b_known = FMatrix(f, scheme.B.array[:, known] if known
                      else np.zeros((scheme.L_X, 0), dtype=np.int64))
    m2 = -(m1 @ b_known)
    return hstack([m1, m2])


def concat(schemes: Sequence[LinearScheme]) -> LinearScheme:
    """Concatenate independent schemes: block-diagonal A and B.

    Each component keeps its own fresh key segments, so message sizes,
    transmit sizes and key budgets simply add; correctness and security
    are preserved componentwise because the key sets are independent.
    """
    if not schemes:
        return LinearScheme.empty(meta={"builder": "concat", "parts": 0})
    first = schemes[0]
    for s in schemes[1:]:
        if s.field != first.field:
            raise FieldMismatchError(f"GF({s.p}) vs GF({first.p})")
        if (s.K, s.qualified, s.L) != (first.K, first.qualified, first.L):
            raise ShapeMismatchError("K, qualified set and L must all match")
    lw = sum(s.L_W for s in schemes)
    lx = sum(s.L_X for s in schemes)
    d = sum(s.D for s in schemes)
    a = np.zeros((lx, lw), dtype=np.int64)
    b = np.zeros((lx, d), dtype=np.int64)
    layout: list[tuple[frozenset[int], int]] = []
    r = cw = cd = 0
    for s in schemes:
        a[r:r + s.L_X, cw:cw + s.L_W] = s.A.array
        b[r:r + s.L_X, cd:cd + s.D] = s.B.array
        layout.extend(s.layout)
        r += s.L_X
        cw += s.L_W
        cd += s.D
    return LinearScheme(field=first.field, L=first.L, K=first.K,
                        qualified=first.qualified, layout=tuple(layout),
                        A=FMatrix(first.field, a), B=FMatrix(first.field, b),
                        meta={"builder": "concat", "parts": len(schemes)})


def merge_layout(scheme: LinearScheme) -> LinearScheme:
    """Coalesce layout segments with the same subset into one segment each.

    Reorders the columns of B accordingly; useful after concatenation so
    serialized schemes list each key subset once.
    """
    order: list[frozenset[int]] = []
    for subset, _ in scheme.layout:
        if subset not in order:
            order.append(subset)
    perm_cols: list[int] = []
    widths: dict[frozenset[int], int] = {s: 0 for s in order}
    for subset in order:
        for seg_subset, start, width in scheme.segments():
            if seg_subset == subset:
                perm_cols.extend(range(start, start + width))
                widths[subset] += width
    b = scheme.B.array[:, perm_cols] if perm_cols else scheme.B.array
    return LinearScheme(field=scheme.field, L=scheme.L, K=scheme.K,
                        qualified=scheme.qualified,
                        layout=tuple((s, widths[s]) for s in order),
                        A=scheme.A, B=FMatrix(scheme.field, b),
                        meta=dict(scheme.meta))


@dataclass(frozen=True)
class Transcript:
    """One seeded run: inputs drawn, signal emitted, all decoders checked."""

    seed: int
    w: tuple[int, ...]
    s: tuple[int, ...]
    x: tuple[int, ...]
    decoded: Mapping[int, tuple[int, ...]]


def simulate(scheme: LinearScheme, seed: int) -> Transcript:
    """Draw (W, S) from a seeded generator, broadcast, decode everywhere.

    Raises DecodeFailureError if any qualified receiver's constructed
    decoder fails to recover W exactly; that signals a verifier bug, not
    bad luck, because decoding is deterministic.
    """
    rng = random.Random(seed)
    p = scheme.p
    w = np.array([rng.randrange(p) for _ in range(scheme.L_W)], dtype=np.int64)
    s = np.array([rng.randrange(p) for _ in range(scheme.D)], dtype=np.int64)
    x = (scheme.A.array @ w + scheme.B.array @ s) % p if scheme.L_X else np.zeros(0, np.int64)
    decoded = {}
    for k in sorted(scheme.qualified):
        m = decoder_for(scheme, k)
        known = list(scheme.known_columns(k))
        inp = np.concatenate([x, s[known]])
        w_hat = m.array @ inp % p if m.cols else np.zeros(scheme.L_W, np.int64)
        if not np.array_equal(w_hat, w):
            raise DecodeFailureError(f"receiver {k} decoded {w_hat.tolist()} != {w.tolist()}")
        decoded[k] = tuple(int(v) for v in w_hat)
    return Transcript(seed=seed,
                      w=tuple(int(v) for v in w),
                      s=tuple(int(v) for v in s),
                      x=tuple(int(v) for v in x),
                      decoded=decoded)


# -- exhaustive counting oracle -------------------------------------------
#
# The oracle never looks at ranks.  It enumerates all p^(L_W + D_used)
# joint states (unused all-zero key columns are dropped first: a key that
# never enters X is independent of everything and cannot change any
# receiver's information), evaluates X per state, groups states by what a
# receiver sees, and reads entropies off the counts.


def oracle_cap() -> int:
    """Active oracle state cap (env SGC_ORACLE_CAP overrides the default)."""
    raw = os.environ.get(ORACLE_CAP_ENV)
    if raw is None:
        return DEFAULT_ORACLE_CAP
    cap = int(raw)
    if cap < 1 or cap & (cap - 1):
        raise ValueError(f"{ORACLE_CAP_ENV} must be a power of two, got {raw}")
    return cap


class _StateSpace:
    """All p^m joint states of m base-p digits, vectorized."""

    def __init__(self, p: int, m: int):
        self.p = p
        self.m = m
        self.n = p ** m
        self._idx = np.arange(self.n, dtype=np.int64)
        if p == 2:
            self._digits = None
        else:
            dtype = np.int16 if p <= (1 << 15) else np.int64
            d = np.empty((m, self.n), dtype=dtype)
            for j in range(m):
                d[j] = (self._idx // (p ** j)) % p
            self._digits = d

    def digit(self, j: int) -> np.ndarray:
        if self.p == 2:
            return (self._idx >> j) & 1
        return self._digits[j].astype(np.int64)

    def row_values(self, coeffs: np.ndarray) -> np.ndarray:
        """Value of one linear form (coeff vector of length m) per state."""
        if self.p == 2:
            mask = 0
            for j in range(self.m):
                if coeffs[j] & 1:
                    mask |= 1 << j
            return (np.bitwise_count(self._idx & np.int64(mask)) & 1).astype(np.int64)
        return (np.asarray(coeffs, dtype=np.int64) @ self._digits) % self.p

    def pack(self, value_rows: Sequence[np.ndarray]) -> list[np.ndarray]:
        """Pack base-p value rows into int64 words for exact grouping."""
        per_word = max(1, int(63 // math.log2(self.p)))
        words: list[np.ndarray] = []
        cur = None
        count = 0
        for v in value_rows:
            cur = v.copy() if cur is None else cur * self.p + v
            count += 1
            if count == per_word:
                words.append(cur)
                cur = None
                count = 0
        if cur is not None:
            words.append(cur)
        return words

    def digit_codes(self, positions: Sequence[int]) -> list[np.ndarray]:
        return self.pack([self.digit(j) for j in positions])


def _fold_words(keys: Sequence[np.ndarray]) -> list[tuple[np.ndarray, int]]:
    """Merge per-symbol value arrays into as few int64 words as possible.

    Returns (word, bound) pairs with all word values in [0, bound); words
    are combined while the mixed radix stays below 2^62.  Constant arrays
    carry no information and are dropped.
    """
    out: list[tuple[np.ndarray, int]] = []
    cur = None
    bound = 1
    for k in keys:
        b = int(k.max()) + 1 if k.size else 1
        if b <= 1:
            continue
        if cur is None:
            cur, bound = k, b
        elif bound <= (1 << 62) // b:
            cur = cur * b + k
            bound *= b
        else:
            out.append((cur, bound))
            cur, bound = k, b
    if cur is not None:
        out.append((cur, bound))
    return out


def _run_lengths(sorted_arr: np.ndarray) -> np.ndarray:
    n = sorted_arr.shape[0]
    change = np.empty(n, dtype=bool)
    change[0] = True
    np.not_equal(sorted_arr[1:], sorted_arr[:-1], out=change[1:])
    starts = np.flatnonzero(change)
    return np.diff(starts, append=n)


def _group_counts(keys: Sequence[np.ndarray], n: int) -> np.ndarray:
    """Sizes of the groups of equal key tuples over n states."""
    folded = _fold_words(keys)
    if not folded:
        return np.array([n], dtype=np.int64)
    if len(folded) == 1:
        return _run_lengths(np.sort(folded[0][0]))
    order = np.lexsort(tuple(w for w, _ in folded))
    change = np.zeros(n, dtype=bool)
    change[0] = True
    for w, _ in folded:
        ws = w[order]
        change[1:] |= ws[1:] != ws[:-1]
    starts = np.flatnonzero(change)
    return np.diff(np.append(starts, n))


def group_stats(view_keys: Sequence[np.ndarray], extra_keys: Sequence[np.ndarray],
                n: int) -> tuple[np.ndarray, np.ndarray]:
    """Group sizes of `view` and of `(view, extra)` jointly, in one sort
    whenever everything folds into a single word."""
    vf = _fold_words(view_keys)
    ef = _fold_words(extra_keys)
    if len(vf) <= 1 and len(ef) <= 1:
        if not vf and not ef:
            one = np.array([n], dtype=np.int64)
            return one, one
        if not ef:
            counts = _run_lengths(np.sort(vf[0][0]))
            return counts, counts
        if not vf:
            return np.array([n], dtype=np.int64), _run_lengths(np.sort(ef[0][0]))
        (v, vb), (e, eb) = vf[0], ef[0]
        if vb <= (1 << 62) // eb:
            s = np.sort(v * eb + e)
            return _run_lengths(s // eb), _run_lengths(s)
    return (_group_counts(view_keys, n),
            _group_counts(list(view_keys) + list(extra_keys), n))


def _entropy_from_counts(counts: np.ndarray, n: int) -> float:
    return math.log2(n) - float(np.sum(counts * np.log2(counts))) / n


def counting_entropy_bits(keys: Sequence[np.ndarray], n: int) -> float:
    """Shannon entropy (bits) of the empirical distribution of key tuples
    over the n equally likely states."""
    return _entropy_from_counts(_group_counts(keys, n), n)


def counting_distinct(keys: Sequence[np.ndarray], n: int) -> int:
    return len(_group_counts(keys, n))


@dataclass(frozen=True)
class OracleReport:
    """Brute-force verdicts: counting entropies, no algebraic shortcuts."""

    correct: Mapping[int, bool]
    decode_success: Mapping[int, float]
    leakage_bits: Mapping[int, float]
    states: int

    @property
    def ok(self) -> bool:
        return (all(self.correct.values())
                and all(abs(v) < 1e-9 for v in self.leakage_bits.values()))


def oracle_verify(scheme: LinearScheme, cap: Optional[int] = None) -> OracleReport:
    """Exhaustively enumerate (W, S) and measure exactly what each
    receiver learns.

    Refuses with TooLargeError when the state count p^(L_W + D_used)
    exceeds the cap (argument, else SGC_ORACLE_CAP, else 2**22).
    """
    if cap is None:
        cap = oracle_cap()
    p = scheme.p
    b = scheme.B.array
    used = [j for j in range(scheme.D) if np.any(b[:, j])]
    m = scheme.L_W + len(used)
    states = p ** m
    if states > cap:
        raise TooLargeError(
            f"p^(L_W + D_used) = {p}^{m} = {states} exceeds the oracle cap {cap}")
    space = _StateSpace(p, m)
    coeffs = np.concatenate([scheme.A.array, b[:, used]], axis=1) if scheme.L_X \
        else np.zeros((0, m), dtype=np.int64)
    xvals = [space.row_values(coeffs[r]) for r in range(scheme.L_X)]
    x_words = space.pack(xvals)
    w_positions = list(range(scheme.L_W))
    w_words = space.digit_codes(w_positions)
    h_w = counting_entropy_bits(w_words, space.n)

    col_pos = {col: scheme.L_W + i for i, col in enumerate(used)}
    correct: dict[int, bool] = {}
    success: dict[int, float] = {}
    leakage: dict[int, float] = {}
    for k in sorted(scheme.qualified) + sorted(scheme.eavesdroppers):
        known = [col_pos[c] for c in scheme.known_columns(k) if c in col_pos]
        view = x_words + space.digit_codes(known)
        view_counts, joint_counts = group_stats(view, w_words, space.n)
        if k in scheme.qualified:
            correct[k] = len(joint_counts) == len(view_counts)
            success[k] = _decode_fraction(scheme, k, space, xvals, col_pos)
        else:
            leakage[k] = (h_w + _entropy_from_counts(view_counts, space.n)
                          - _entropy_from_counts(joint_counts, space.n))
    return OracleReport(correct=correct, decode_success=success,
                        leakage_bits=leakage, states=states)


def _decode_fraction(scheme: LinearScheme, k: int, space: _StateSpace,
                     xvals: Sequence[np.ndarray], col_pos: Mapping[int, int]) -> float:
    """Fraction of states where k's constructed decoder returns W exactly."""
    try:
        m = decoder_for(scheme, k)
    except NotDecodableError:
        return 0.0
    known = list(scheme.known_columns(k))
    marr = m.array
    p = scheme.p
    match = np.ones(space.n, dtype=bool)
    for i in range(scheme.L_W):
        acc = np.zeros(space.n, dtype=np.int64)
        for r in range(scheme.L_X):
            c = int(marr[i, r])
            if c:
                acc += c * xvals[r]
        for j, col in enumerate(known):
            c = int(marr[i, scheme.L_X + j])
            if not c:
                continue
            # a nonzero coefficient cannot touch an unused key column:
            # those columns of B are zero, so M2 = -M1 @ B_known is too
            acc += c * space.digit(col_pos[col])
        match &= (acc % p) == space.digit(i)
    return float(match.mean())
