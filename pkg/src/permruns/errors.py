"""Exception types shared across the package."""


class GuardError(ValueError):
    """Raised when an exhaustive computation would exceed its size guard.

    Every guarded entry point takes a ``max_n`` (or ``max_pairs``) override.
    """


class NotDivisible(ArithmeticError):
    """Synthetic division by ``x + 1`` left a nonzero remainder."""

    def __init__(self, remainder: int, stage: int, partial):
        self.remainder = remainder
        self.stage = stage
        self.partial = partial
        super().__init__(
            f"not divisible by (x+1)^{stage}: remainder {remainder} at stage {stage}"
        )


class InvalidPath(ValueError):
    """A labeled path violates one of the labeling conditions."""

    def __init__(self, violation):
        self.violation = violation
        super().__init__(str(violation))


class NoIntersection(ValueError):
    """Two embedded paths share no lattice point."""
