"""Exception hierarchy. Each family carries the CLI exit code it maps to."""


class IstkError(Exception):
    exit_code = 1


class InputError(IstkError):
    exit_code = 2


class ParseError(InputError):
    pass


class NotSimple(InputError):
    pass


class Disconnected(InputError):
    pass


class BadSpec(InputError):
    pass


class UnknownVertex(InputError):
    pass


class PreconditionError(IstkError):
    exit_code = 3


class PreconditionViolation(PreconditionError):
    pass


class NotSubgraph(PreconditionError):
    pass


class NotTree(PreconditionError):
    pass


class NotSpanning(PreconditionError):
    pass


class NotApplicable(PreconditionError):
    pass


class NoBranchpoint(PreconditionError):
    pass


class StaleCandidate(PreconditionError):
    pass


class InvalidPair(PreconditionError):
    pass


class InvalidTree(PreconditionError):
    pass


class TooLarge(IstkError):
    exit_code = 4


class InvariantViolation(IstkError):
    """A proven guarantee failed to hold: always an implementation bug."""

    exit_code = 5


class InternalContradiction(InvariantViolation):
    pass


class LiftBoundViolated(InvariantViolation):
    pass


class CountingChainViolation(InternalContradiction):
    """A reducible structure failed one of its size inequalities."""
