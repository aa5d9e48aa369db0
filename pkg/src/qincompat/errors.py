"""Exception types shared across the package."""


class QincompatError(Exception):
    """Base class for all package errors."""


class DimensionMismatchError(QincompatError):
    """Operands refer to Hilbert spaces of different dimension."""


class InvariantViolationError(QincompatError):
    """A validated object failed one of its defining invariants.

    ``invariant`` names the failed check so parsers and the CLI can report
    exactly which requirement was violated.
    """

    def __init__(self, invariant: str, detail: str = ""):
        self.invariant = invariant
        msg = f"invariant violated: {invariant}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class IndeterminateError(QincompatError):
    """The LP engine could not certify feasibility or infeasibility.

    Raised when the phase-1 optimum lands in the near-feasibility band, the
    iteration cap is hit, or a result fails its numerical re-verification.
    Callers must surface this instead of guessing a decision.
    """


class DecompositionError(QincompatError):
    """T-transform decomposition did not reach the requested residual."""
