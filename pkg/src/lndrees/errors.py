"""Exception hierarchy shared by all modules."""


class LndReesError(Exception):
    """Base class for all library errors."""


class ResourceBudgetError(LndReesError):
    """A configured computation budget (e.g. processed S-pairs) was exceeded."""

    def __init__(self, message, processed=None):
        super().__init__(message)
        self.processed = processed


class NotInIdealError(LndReesError):
    """A cofactor representation was requested for a non-member."""


class DerivationError(LndReesError):
    """The derivation does not respect the defining ideal."""

    def __init__(self, message, generator=None):
        super().__init__(message)
        self.generator = generator


class NilpotencyError(LndReesError):
    """Nilpotency was not established within the configured bound."""

    def __init__(self, message, element=None, bound=None):
        super().__init__(message)
        self.element = element
        self.bound = bound


class FiltrationError(LndReesError):
    """An element does not lie in the requested filtration level."""


class NonTerminationError(LndReesError):
    """The Rees algorithm hit its iteration cap before stabilizing.

    ``trace`` holds the partial :class:`~lndrees.rees.AlgorithmTrace`.
    """

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class InconsistencyError(LndReesError):
    """An internal consistency check on algorithm output failed."""


class ModificationError(LndReesError):
    """Invariance preconditions of an equivariant modification do not hold."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
