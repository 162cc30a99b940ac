"""Exact counting tables over S_n and the factorisation of the run polynomial.

All tables are built by scanning every permutation (numpy blocks, in
lexicographic order) and counting; nothing here uses a recurrence.

Conventions worth knowing:

* ``t_distribution(n, j)`` is ``R_{n,j}``: it counts the canonical
  j-half-ascending permutations (j rightmost pairs ascending *and* an
  ascent at position ``n-1-2j``) and doubles every count.  The doubling is
  the complement symmetry; with it ``R_n = (x+1)^j R_{n,j}`` exactly.
* ``half_ascending_descent_distribution(n)`` (even n) counts permutations
  with ``p_1<p_2, p_3<p_4, ...`` by descents, undoubled, so it agrees with
  the lattice-path set V(n, k).  ``T_n = 2x * sum_k U(n,k) x^k``.
* ``odd_t_distribution(n)`` (odd n) counts ``p_2<p_3, p_4<p_5, ...`` by
  descents and *is* doubled, so ``R_n = x (x+1)^m T_n^odd``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from math import factorial
from typing import Callable, Dict, Optional

import numpy as np

from . import perms
from .errors import NotDivisible
from .poly import IntPolynomial, divide_exact_x_plus_1, multiply

#: Default guard for full distribution tables.
MAX_TABLE_N = 10


class Statistic(str, Enum):
    RUNS = "runs"
    T = "t"
    DESCENTS = "descents"
    HALF_ASCENDING = "half-ascending"
    ODD_T = "odd-t"


@dataclass(frozen=True)
class DistributionTable:
    n: int
    statistic: Statistic
    counts: Dict[int, int]
    j: Optional[int] = None

    @property
    def k_range(self) -> tuple:
        if not self.counts:
            return (0, -1)
        return (min(self.counts), max(self.counts))

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, k: int) -> int:
        return self.counts.get(k, 0)

    def polynomial(self) -> IntPolynomial:
        return IntPolynomial.from_counts(self.counts)

    def sequence(self) -> list:
        """Counts over the full k-range, lowest k first."""
        lo, hi = self.k_range
        return [self[k] for k in range(lo, hi + 1)]


# ---------------------------------------------------------------- scanning

def _ascents(block: np.ndarray) -> np.ndarray:
    return block[:, 1:] > block[:, :-1]


def runs_of_rows(block: np.ndarray) -> np.ndarray:
    """Vectorised :func:`perms.run_count` over the rows of ``block``."""
    width = block.shape[1]
    if width == 1:
        return np.zeros(block.shape[0], dtype=np.int64)
    asc = _ascents(block)
    return 1 + (asc[:, 1:] != asc[:, :-1]).sum(axis=1)


def descents_of_rows(block: np.ndarray) -> np.ndarray:
    return (block[:, 1:] < block[:, :-1]).sum(axis=1)


def t_of_rows(block: np.ndarray, j: int) -> np.ndarray:
    if j == 0:
        return runs_of_rows(block)
    cut = block.shape[1] - 2 * j
    return runs_of_rows(block[:, :cut]) + descents_of_rows(block[:, cut - 1:])


def _pairs_mask(block: np.ndarray, pairs: int) -> np.ndarray:
    n = block.shape[1]
    mask = np.ones(block.shape[0], dtype=bool)
    for i in range(1, pairs + 1):
        mask &= block[:, n - 2 * i] < block[:, n - 2 * i + 1]
    return mask


def _ascent_mask(block: np.ndarray, position: int) -> np.ndarray:
    return block[:, position - 1] < block[:, position]


def _tally(n: int, stat: Callable, mask: Optional[Callable] = None,
           max_n: Optional[int] = None) -> Dict[int, int]:
    perms.check_guard(n, max_n, MAX_TABLE_N, "table")
    totals = np.zeros(n + 1, dtype=np.int64)
    for block in perms.permutation_blocks(n, max_n=max(n, perms.MAX_ENUMERATION_N)):
        if mask is not None:
            block = block[mask(block)]
        totals += np.bincount(stat(block), minlength=n + 1)[: n + 1]
    return {k: int(v) for k, v in enumerate(totals) if v}


def _doubled(counts: Dict[int, int]) -> Dict[int, int]:
    return {k: 2 * v for k, v in counts.items()}


# ------------------------------------------------------------------ tables

def run_distribution(n: int, *, max_n: Optional[int] = None) -> DistributionTable:
    """R(n, k) for k = 1..n-1."""
    if n < 2:
        raise ValueError("run_distribution needs n >= 2")
    return DistributionTable(n, Statistic.RUNS, _tally(n, runs_of_rows, max_n=max_n))


def descent_distribution(n: int, *, max_n: Optional[int] = None) -> DistributionTable:
    """Eulerian numbers A(n, k), k = 0..n-1."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        perms.check_guard(n, max_n, MAX_TABLE_N, "table")
        return DistributionTable(1, Statistic.DESCENTS, {0: 1})
    return DistributionTable(n, Statistic.DESCENTS, _tally(n, descents_of_rows, max_n=max_n))


def t_distribution(n: int, j: int, *, max_n: Optional[int] = None) -> DistributionTable:
    """Coefficients of R_{n,j}(x), indexed by the t_j value."""
    if n < 4:
        raise ValueError("t_distribution needs n >= 4")
    perms._check_j(n, j, allow_zero=False)
    forced = n - 1 - 2 * j

    def mask(block):
        return _pairs_mask(block, j) & _ascent_mask(block, forced)

    counts = _tally(n, lambda b: t_of_rows(b, j), mask, max_n=max_n)
    return DistributionTable(n, Statistic.T, _doubled(counts), j=j)


def half_ascending_descent_distribution(n: int, *, max_n: Optional[int] = None) -> DistributionTable:
    """U(n, k): permutations with ``p_1<p_2, p_3<p_4, ...`` and k descents."""
    if n % 2:
        raise ValueError("U(n, k) is defined for even n; use odd_t_distribution for odd n")
    if n < 4:
        raise ValueError("half_ascending_descent_distribution needs n >= 4")
    counts = _tally(n, descents_of_rows, lambda b: _pairs_mask(b, n // 2), max_n=max_n)
    return DistributionTable(n, Statistic.HALF_ASCENDING, counts)


def odd_t_distribution(n: int, *, max_n: Optional[int] = None) -> DistributionTable:
    """T_n^odd: twice the count of ``p_2<p_3, ..., p_{n-1}<p_n`` by descents."""
    if n % 2 == 0:
        raise ValueError("odd_t_distribution needs odd n")
    if n < 3:
        raise ValueError("odd_t_distribution needs n >= 3")
    counts = _tally(n, descents_of_rows, lambda b: _pairs_mask(b, n // 2), max_n=max_n)
    return DistributionTable(n, Statistic.ODD_T, _doubled(counts))


def runs_on_half_ascending(n: int, *, max_n: Optional[int] = None) -> DistributionTable:
    """Run counts restricted to even-n half-ascending permutations."""
    if n % 2:
        raise ValueError("even n only")
    counts = _tally(n, runs_of_rows, lambda b: _pairs_mask(b, n // 2), max_n=max_n)
    return DistributionTable(n, Statistic.RUNS, counts)


def j_half_ascending_count(n: int, j: int, *, max_n: Optional[int] = None) -> int:
    perms._check_j(n, j)
    counts = _tally(n, lambda b: np.zeros(b.shape[0], dtype=np.int64),
                    lambda b: _pairs_mask(b, j), max_n=max_n)
    return counts.get(0, 0)


def runs_polynomial(n: int, *, max_n: Optional[int] = None) -> IntPolynomial:
    return run_distribution(n, max_n=max_n).polynomial()


# ----------------------------------------------------------- factorisation

@dataclass(frozen=True)
class FactorizationResult:
    """``R_n(x) = x * (x+1)^m * core(x)`` with ``t_polynomial = x * core``.

    ``t_polynomial`` is T_n(x) = R_{n,m}(x), indexed by t; for odd n ``core``
    is T_n^odd, indexed by descents.
    """

    n: int
    m: int
    r_polynomial: IntPolynomial
    t_polynomial: IntPolynomial
    core: IntPolynomial
    reconstructed: IntPolynomial
    enumerated: IntPolynomial
    verified: bool
    error: Optional[str] = None


def factorize_runs_polynomial(n: int, *, max_n: Optional[int] = None) -> FactorizationResult:
    if n < 4:
        raise ValueError("factorisation needs n >= 4")
    m = perms.half_ascending_bound(n)
    r = runs_polynomial(n, max_n=max_n)
    if n % 2 == 0:
        enumerated = t_distribution(n, m, max_n=max_n).polynomial().shift(-1)
    else:
        enumerated = odd_t_distribution(n, max_n=max_n).polynomial()
    try:
        core = divide_exact_x_plus_1(r.shift(-1), m) if m else r.shift(-1)
    except NotDivisible as exc:
        empty = IntPolynomial()
        return FactorizationResult(n, m, r, empty, empty, empty, enumerated, False, str(exc))
    reconstructed = multiply(IntPolynomial.x_plus_1_power(m), core).shift(1)
    verified = reconstructed == r and core == enumerated and all(c >= 0 for c in core)
    return FactorizationResult(n, m, r, core.shift(1), core, reconstructed, enumerated, verified)


@dataclass(frozen=True)
class QuotientCheck:
    n: int
    j: int
    quotient: Optional[IntPolynomial]
    enumerated: IntPolynomial
    ok: bool


def verify_quotients(n: int, *, max_n: Optional[int] = None) -> list:
    """``R_n / (x+1)^j == R_{n,j}`` for every admissible j."""
    r = runs_polynomial(n, max_n=max_n)
    out = []
    for j in range(1, perms.half_ascending_bound(n) + 1):
        enumerated = t_distribution(n, j, max_n=max_n).polynomial()
        try:
            q = divide_exact_x_plus_1(r, j)
        except NotDivisible:
            q = None
        out.append(QuotientCheck(n, j, q, enumerated, q == enumerated))
    return out


@dataclass(frozen=True)
class InvarianceCheck:
    n: int
    j: int
    i: int
    ascent_half: IntPolynomial
    expected_half: IntPolynomial
    ok: bool


def verify_pair_invariance(n: int, j: int, i: int, *, max_n: Optional[int] = None) -> InvarianceCheck:
    """Does ``{p j-half-ascending : p_i < p_{i+1}}`` carry half of R_{n,j}?

    The left side sums ``x^{t_j(p)}`` over j-half-ascending permutations with
    an ascent at i; the right side is ``R_n / (x+1)^j / 2``, computed by exact
    division of the enumerated run polynomial.
    """
    if n < 4:
        raise ValueError("needs n >= 4")
    perms._check_j(n, j, allow_zero=False)
    if not 1 <= i <= n - 2 * j - 1:
        raise ValueError(f"i={i} out of range 1..{n - 2 * j - 1}")
    half = _tally(n, lambda b: t_of_rows(b, j),
                  lambda b: _pairs_mask(b, j) & _ascent_mask(b, i), max_n=max_n)
    ascent_half = IntPolynomial.from_counts(half)
    quotient = divide_exact_x_plus_1(runs_polynomial(n, max_n=max_n), j)
    expected = IntPolynomial(tuple(c // 2 for c in quotient))
    ok = all(c % 2 == 0 for c in quotient) and ascent_half == expected
    return InvarianceCheck(n, j, i, ascent_half, expected, ok)
