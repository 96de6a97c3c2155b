"""Exception types shared across the package."""


class GraphError(ValueError):
    """Structural problem with a graph argument."""


class EmptyGraphError(GraphError):
    """Operation requires at least one vertex."""


class NotSubcubicError(GraphError):
    """Operation requires maximum degree at most 3."""


class ParseError(ValueError):
    """Input text could not be parsed; carries the offending line number."""

    def __init__(self, message: str, line: int, kind: str = "parse"):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.kind = kind


class GenerationError(ValueError):
    """Graph spec cannot be satisfied (e.g. odd n for a cubic graph)."""


class CapExceededError(ValueError):
    """Instance is larger than the configured cap for this routine."""


class InvalidInstanceError(ValueError):
    """Routine called on an instance outside its contract."""


class AuditError(RuntimeError):
    """A structural invariant was violated during solving (audit mode)."""


class InfeasibleError(ValueError):
    """Weight optimization found no feasible point; carries binding names."""

    def __init__(self, message: str, binding: list[str]):
        super().__init__(message)
        self.binding = binding
