"""Exception hierarchy shared by all modules."""


class ZqSpinError(Exception):
    """Base class for every error raised by this package."""


class InputError(ZqSpinError):
    """Malformed or inconsistent input (maps to CLI exit code 2)."""


class InfeasibleError(ZqSpinError):
    """Well-formed input that exceeds a resource guard (CLI exit code 3)."""


class DisconnectedGraph(InputError):
    pass


class NotASpanningTree(InputError):
    pass


class ExactTooLarge(InfeasibleError):
    pass


class MissingEmbedding(InputError):
    pass


class EulerViolation(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class NotATree(InputError):
    pass


class NotACoherentCycle(InputError):
    pass


class InvalidDecomposition(InputError):
    pass


class NonFerromagnetic(InputError):
    pass


class TooLarge(InfeasibleError):
    pass


class WidthTooLarge(InfeasibleError):
    pass


class InvariantError(ZqSpinError):
    """An internal postcondition failed; indicates a bug, not bad input."""
