"""Exception hierarchy. The CLI maps each family to a fixed exit code."""


class ToolkitError(Exception):
    exit_code = 1


class DomainError(ToolkitError, ValueError):
    """A value lies outside the carrier of the semiring it is used with."""

    exit_code = 3


class RangeError(ToolkitError, ValueError):
    """A size parameter is outside the supported desk-scale range."""

    exit_code = 3


class ExplosionError(RangeError):
    """An expansion would exceed its configured cap.

    ``gate`` names the circuit gate being expanded (if any) and ``estimate``
    is a lower estimate of the size that was about to be produced.
    """

    def __init__(self, message, gate=None, estimate=None):
        super().__init__(message)
        self.gate = gate
        self.estimate = estimate


class PreconditionError(ToolkitError, ValueError):
    """A mathematical precondition of an operation does not hold."""

    exit_code = 4


class NoCanonicalForm(PreconditionError):
    pass


class UnlicensedTransfer(PreconditionError):
    pass


class CircuitError(ToolkitError, ValueError):
    """Structurally invalid circuit (bad ids, cycles, missing outputs)."""

    exit_code = 2

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class InvariantViolation(ToolkitError, AssertionError):
    """Internal consistency check failed. Never expected."""

    exit_code = 5
