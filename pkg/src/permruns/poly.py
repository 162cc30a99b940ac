"""Dense integer polynomials with exact arithmetic.

Coefficients are Python ints (unbounded), index 0 is the constant term and
trailing zeros are stripped, so the zero polynomial has no coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence

from .errors import NotDivisible


def _strip(coeffs: Iterable[int]) -> tuple:
    c = [int(v) for v in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPolynomial:
    coefficients: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coefficients", _strip(self.coefficients))

    @classmethod
    def from_counts(cls, counts: Mapping[int, int]) -> "IntPolynomial":
        if not counts:
            return cls()
        if min(counts) < 0:
            raise ValueError("negative exponent")
        c = [0] * (max(counts) + 1)
        for k, v in counts.items():
            c[k] += v
        return cls(tuple(c))

    @classmethod
    def x_plus_1_power(cls, j: int) -> "IntPolynomial":
        p = cls((1,))
        for _ in range(j):
            p = p * X_PLUS_1
        return p

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def __len__(self):
        return len(self.coefficients)

    def __getitem__(self, k: int) -> int:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else 0

    def __iter__(self):
        return iter(self.coefficients)

    def __bool__(self):
        return bool(self.coefficients)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        size = max(len(self), len(other))
        return IntPolynomial(tuple(self[k] + other[k] for k in range(size)))

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(tuple(other * c for c in self.coefficients))
        return multiply(self, other)

    __rmul__ = __mul__

    def shift(self, s: int) -> "IntPolynomial":
        """Multiply by ``x**s``, or divide exactly when ``s < 0``."""
        if s >= 0:
            return IntPolynomial((0,) * s + self.coefficients)
        if any(self.coefficients[:-s]):
            raise ValueError(f"not divisible by x^{-s}")
        return IntPolynomial(self.coefficients[-s:])

    def __call__(self, x: int) -> int:
        return evaluate(self, x)

    def to_dict(self) -> dict:
        return {k: c for k, c in enumerate(self.coefficients) if c}

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        terms = []
        for k, c in reversed(list(enumerate(self.coefficients))):
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and c == 1:
                body = mono
            elif mono and c == -1:
                body = "-" + mono
            else:
                body = f"{c}{'*' if mono else ''}{mono}"
            terms.append(body)
        return " + ".join(terms).replace("+ -", "- ")


X_PLUS_1 = IntPolynomial((1, 1))


def multiply(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    if not a or not b:
        return IntPolynomial()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a.coefficients):
        if ca:
            for j, cb in enumerate(b.coefficients):
                out[i + j] += ca * cb
    return IntPolynomial(tuple(out))


def evaluate(poly: IntPolynomial, x: int) -> int:
    acc = 0
    for c in reversed(poly.coefficients):
        acc = acc * x + c
    return acc


def divide_exact_x_plus_1(poly: IntPolynomial, j: int = 1) -> IntPolynomial:
    """Divide by ``(x + 1)**j`` using ``j`` rounds of synthetic division at -1.

    Raises :class:`NotDivisible` at the first round that leaves a remainder.
    """
    if j < 1:
        raise ValueError("j must be >= 1")
    current = poly
    for stage in range(1, j + 1):
        c = current.coefficients
        if not c:
            return current
        # synthetic division by (x - r) with r = -1, highest degree first
        quotient = [0] * (len(c) - 1)
        carry = 0
        for k in range(len(c) - 1, 0, -1):
            carry = c[k] - carry
            quotient[k - 1] = carry
        remainder = c[0] - carry
        if remainder:
            raise NotDivisible(remainder, stage, current)
        current = IntPolynomial(tuple(quotient))
    return current


class SequenceCheck(NamedTuple):
    ok: bool
    index: Optional[int]


def is_log_concave(coeffs: Sequence[int]) -> SequenceCheck:
    """Check ``c[k-1] * c[k+1] <= c[k]**2`` at every interior index.

    ``index`` is the first violating k, or None.  No positivity is assumed.
    """
    c = list(coeffs)
    for k in range(1, len(c) - 1):
        if c[k - 1] * c[k + 1] > c[k] * c[k]:
            return SequenceCheck(False, k)
    return SequenceCheck(True, None)


def is_unimodal(coeffs: Sequence[int]) -> SequenceCheck:
    """Weakly increasing then weakly decreasing; ``index`` is the first peak."""
    c = list(coeffs)
    if not c:
        return SequenceCheck(True, None)
    k = 0
    while k + 1 < len(c) and c[k] <= c[k + 1]:
        k += 1
    # step back over a plateau so the witness is the first maximal entry
    peak = k
    while peak > 0 and c[peak - 1] == c[peak]:
        peak -= 1
    for i in range(k, len(c) - 1):
        if c[i] < c[i + 1]:
            return SequenceCheck(False, None)
    return SequenceCheck(True, peak)


def support_is_interval(coeffs: Sequence[int]) -> bool:
    """True when the nonzero entries occupy one contiguous block."""
    nz = [k for k, v in enumerate(coeffs) if v]
    return not nz or nz[-1] - nz[0] + 1 == len(nz)
