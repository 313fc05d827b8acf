"""Exception hierarchy shared by every module."""


class TwoAtomError(Exception):
    """Base class for all errors raised by :mod:`twoatom`."""


class DomainError(TwoAtomError, ValueError):
    """Input outside the mathematical domain of an operation."""


class ContractViolation(TwoAtomError, ValueError):
    """Caller broke a documented precondition (basis tag, normalization...)."""


class InvalidStateError(ContractViolation):
    """Matrix is not a valid density matrix (e.g. strongly negative eigenvalue)."""


class SingularMatrixError(TwoAtomError, ArithmeticError):
    """Linear system is numerically singular."""

    def __init__(self, message, condition_estimate=float("inf")):
        super().__init__(message)
        self.condition_estimate = condition_estimate


class IntegrationError(TwoAtomError, RuntimeError):
    """ODE integration produced an unphysical or non-finite trajectory."""


class StiffnessError(IntegrationError):
    """Adaptive step size fell below the minimum allowed step."""

    def __init__(self, message, t=float("nan"), h=float("nan")):
        super().__init__(message)
        self.t = t
        self.h = h
