"""Exception hierarchy.

Everything the library raises on bad input derives from :class:`InputError`;
everything that reports a failed mathematical condition derives from
:class:`ViolationError` and carries a re-checkable witness.
"""

from __future__ import annotations


class CFSpaceError(Exception):
    """Base class for all library errors."""


class InputError(CFSpaceError, ValueError):
    """Malformed input: unknown labels, mismatched universes, bad syntax."""


class UnknownElementError(InputError):
    pass


class UniverseMismatchError(InputError):
    pass


class PreconditionError(InputError):
    """An operation was called outside its documented domain."""


class EnumerationLimitError(CFSpaceError):
    """An exhaustive sweep would exceed the configured size bound."""


class ParseError(InputError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class ViolationError(CFSpaceError):
    """A structure fails a defining condition."""


class AntisymmetryError(ViolationError, InputError):
    def __init__(self, x, y):
        super().__init__(f"antisymmetry violated: {x} <= {y} and {y} <= {x}")
        self.cycle = (x, y)


class NotTransitiveError(ViolationError):
    def __init__(self, x, y, z):
        super().__init__(f"relation is not transitive: {x} R {y}, {y} R {z}, but not {x} R {z}")
        self.witness = (x, y, z)


class EmptyFamilyError(ViolationError):
    def __init__(self):
        super().__init__("family of finite subsets is empty")


class CFAxiomError(ViolationError):
    """Consistency axiom fails for family member ``F`` and finite ``K``."""

    def __init__(self, F, K):
        super().__init__(f"F={F} K={K}")
        self.F = F
        self.K = K


class NotClosedError(PreconditionError):
    def __init__(self, E):
        super().__init__(f"{E} is not a CF-closed set")
        self.set = E


class SubfamilyError(InputError):
    pass


class DensityError(ViolationError):
    """Raised when ``E -> E & V`` fails to be an order-isomorphism."""

    def __init__(self, closed_set, reason: str):
        super().__init__(f"{reason}: {closed_set}")
        self.closed_set = closed_set
        self.reason = reason


class ApproximableError(ViolationError):
    def __init__(self, violations):
        lines = "; ".join(str(v) for v in violations)
        super().__init__(lines)
        self.violations = list(violations)


class GenerationError(CFSpaceError):
    pass
