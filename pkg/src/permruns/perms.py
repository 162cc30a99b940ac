"""Permutations in one-line notation and the statistics built on them.

Positions are 1-based in every public function, matching the usual
one-line notation ``p = p_1 p_2 ... p_n``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations as _itertools_permutations
from math import factorial
from typing import Callable, Iterator, Optional, Sequence

import numpy as np

from .errors import GuardError

#: Exhaustive streams over all n! permutations refuse larger n unless overridden.
MAX_ENUMERATION_N = 12

# rows per numpy block; 10! fits in one block
_BLOCK_ROWS = factorial(10)


class Permutation(tuple):
    """An immutable permutation of ``1..n`` stored in one-line notation."""

    __slots__ = ()

    def __new__(cls, entries: Sequence[int] = ()):
        self = super().__new__(cls, (int(v) for v in entries))
        n = len(self)
        if n < 1:
            raise ValueError("a permutation needs at least one entry")
        if sorted(self) != list(range(1, n + 1)):
            raise ValueError(f"{tuple(self)} is not a permutation of 1..{n}")
        return self

    @classmethod
    def _trusted(cls, entries) -> "Permutation":
        return super().__new__(cls, entries)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse ``"243165"`` (single digits) or ``"2,4,3,1,6,5"`` / ``"2 4 3"``."""
        text = text.strip()
        if "," in text or " " in text:
            parts = [t for t in text.replace(",", " ").split() if t]
        else:
            parts = list(text)
        try:
            return cls(int(t) for t in parts)
        except ValueError as exc:
            raise ValueError(f"cannot parse permutation {text!r}: {exc}") from None

    @property
    def n(self) -> int:
        return len(self)

    def __str__(self) -> str:
        if len(self) < 10:
            return "".join(map(str, self))
        return ",".join(map(str, self))

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r})"


@dataclass(frozen=True)
class RunStatistics:
    runs: int
    descent_positions: frozenset
    ascent_positions: frozenset


def _direction_changes(p: Sequence[int]) -> int:
    return sum(
        1 for i in range(1, len(p) - 1)
        if (p[i - 1] < p[i]) != (p[i] < p[i + 1])
    )


def run_count(p: Sequence[int]) -> int:
    """Number of runs: one more than the number of peaks and valleys.

    A single entry has 0 runs.
    """
    if len(p) == 0:
        raise ValueError("run_count is undefined for the empty sequence")
    if len(p) == 1:
        return 0
    return 1 + _direction_changes(p)


def descent_positions(p: Sequence[int]) -> frozenset:
    return frozenset(i + 1 for i in range(len(p) - 1) if p[i] > p[i + 1])


def ascent_positions(p: Sequence[int]) -> frozenset:
    return frozenset(i + 1 for i in range(len(p) - 1) if p[i] < p[i + 1])


def descent_count(p: Sequence[int]) -> int:
    return sum(1 for i in range(len(p) - 1) if p[i] > p[i + 1])


def run_statistics(p: Sequence[int]) -> RunStatistics:
    return RunStatistics(run_count(p), descent_positions(p), ascent_positions(p))


def complement(p: Sequence[int]) -> Permutation:
    n = len(p)
    return Permutation._trusted(n + 1 - v for v in p)


def half_ascending_bound(n: int) -> int:
    """Largest admissible j, ``floor((n - 2) / 2)``."""
    return max((n - 2) // 2, 0)


def _check_j(n: int, j: int, *, allow_zero: bool = True) -> None:
    lo = 0 if allow_zero else 1
    m = half_ascending_bound(n)
    if not lo <= j <= m:
        raise ValueError(f"j={j} out of range {lo}..{m} for n={n}")


def _pairs_ascending(p: Sequence[int], pairs: int) -> bool:
    n = len(p)
    # pair i occupies positions n+1-2i, n+2-2i (1-based)
    return all(p[n - 2 * i] < p[n - 2 * i + 1] for i in range(1, pairs + 1))


def is_j_half_ascending(p: Sequence[int], j: int) -> bool:
    """True iff ``p_{n+1-2i} < p_{n+2-2i}`` for every ``1 <= i <= j``."""
    _check_j(len(p), j)
    return _pairs_ascending(p, j)


def is_canonical_j_half_ascending(p: Sequence[int], j: int) -> bool:
    """j-half-ascending with an additional ascent at position ``n - 1 - 2j``.

    This is the set the run/t generating functions are taken over: the
    extra ascent is the complement-symmetry normalisation, and the
    generating function counts each such permutation twice.
    """
    n = len(p)
    _check_j(n, j)
    if n < 2:
        return True
    return _pairs_ascending(p, j) and p[n - 2 * j - 2] < p[n - 2 * j - 1]


def is_half_ascending(p: Sequence[int]) -> bool:
    """Every pair ``(p_{n+1-2i}, p_{n+2-2i})`` for ``i <= floor(n/2)`` ascends.

    For even n this is ``p_1 < p_2, p_3 < p_4, ...``; for odd n it is
    ``p_2 < p_3, p_4 < p_5, ...``.  Equal to the canonical
    ``m``-half-ascending set for ``n >= 3``.
    """
    return _pairs_ascending(p, len(p) // 2)


def t_statistic(p: Sequence[int], j: int) -> int:
    """Runs of ``p_1..p_{n-2j}`` plus descents of ``p_{n-2j}..p_n``.

    The two substrings share the entry ``p_{n-2j}``.  ``j = 0`` gives
    :func:`run_count`.
    """
    n = len(p)
    _check_j(n, j)
    if j == 0:
        return run_count(p)
    cut = n - 2 * j
    return run_count(p[:cut]) + descent_count(p[cut - 1:])


def involution(p: Sequence[int], j: int) -> Permutation:
    """Swap the entries at positions ``n+1-2j`` and ``n+2-2j``."""
    n = len(p)
    if n < 4:
        raise ValueError("the involutions I_j need n >= 4")
    _check_j(n, j, allow_zero=False)
    q = list(p)
    a, b = n - 2 * j, n - 2 * j + 1
    q[a], q[b] = q[b], q[a]
    return Permutation._trusted(q)


def check_guard(n: int, max_n: Optional[int], default: int, what: str = "enumeration") -> None:
    limit = default if max_n is None else max_n
    if n > limit:
        raise GuardError(f"{what} over n={n} refused (limit n <= {limit}; pass max_n to override)")


def enumerate_permutations(
    n: int,
    predicate: Optional[Callable[[Permutation], bool]] = None,
    *,
    max_n: Optional[int] = None,
) -> Iterator[Permutation]:
    """Yield every permutation of ``1..n`` in lexicographic order."""
    if n < 1:
        raise ValueError("n must be positive")
    check_guard(n, max_n, MAX_ENUMERATION_N)
    for entries in _itertools_permutations(range(1, n + 1)):
        p = Permutation._trusted(entries)
        if predicate is None or predicate(p):
            yield p


def _lex_array(n: int) -> np.ndarray:
    """All permutations of ``0..n-1`` as rows, lexicographic order."""
    out = np.zeros((1, 0), dtype=np.int8)
    for size in range(1, n + 1):
        prev = out
        rows = prev.shape[0]
        out = np.empty((rows * size, size), dtype=np.int8)
        for first in range(size):
            block = out[first * rows:(first + 1) * rows]
            block[:, 0] = first
            # values of the tail are 0..size-1 without `first`
            block[:, 1:] = prev + (prev >= first)
    return out


def permutation_blocks(n: int, *, max_n: Optional[int] = None) -> Iterator[np.ndarray]:
    """Yield all permutations of ``1..n`` as int8 row blocks in lexicographic order.

    Concatenating the blocks gives the same sequence as
    :func:`enumerate_permutations`.
    """
    if n < 1:
        raise ValueError("n must be positive")
    check_guard(n, max_n, MAX_ENUMERATION_N)
    lead = 0
    while factorial(n - lead) > _BLOCK_ROWS:
        lead += 1
    tail = _lex_array(n - lead)
    values = list(range(1, n + 1))
    for prefix in _itertools_permutations(values, lead):
        rest = np.array(sorted(set(values) - set(prefix)), dtype=np.int8)
        block = np.empty((tail.shape[0], n), dtype=np.int8)
        if lead:
            block[:, :lead] = prefix
        block[:, lead:] = rest[tail]
        yield block


@dataclass(frozen=True)
class PairingDefect:
    p: Permutation
    image: Permutation
    t_p: int
    t_image: int


def pairing_defects(n: int, j: int, *, limit: Optional[int] = None,
                    max_n: Optional[int] = None) -> list:
    """(j-1)-half-ascending p where I_j does not move t_{j-1} by exactly one.

    Also reports p whose image leaves the (j-1)-half-ascending set.  Returns
    at most ``limit`` defects (all when None), in lexicographic order of p.
    """
    _check_j(n, j, allow_zero=False)
    found = []
    for p in enumerate_permutations(n, max_n=max_n):
        if not _pairs_ascending(p, j - 1):
            continue
        q = involution(p, j)
        tp, tq = t_statistic(p, j - 1), t_statistic(q, j - 1)
        if not _pairs_ascending(q, j - 1) or abs(tp - tq) != 1:
            found.append(PairingDefect(p, q, tp, tq))
            if limit is not None and len(found) >= limit:
                break
    return found
