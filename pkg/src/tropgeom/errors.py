"""Shared exception types.

The CLI maps these onto its exit-code contract: usage and input-format
problems exit 1, capacity guards exit 2, geometric failures exit 3.
"""


class CapacityError(ValueError):
    """Requested parameters exceed the configured enumeration guard."""


class PolynomialParseError(ValueError):
    """Bad line in a polynomial text file; carries the 1-based line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class FormatError(ValueError):
    """Malformed JSON payload for a curve, graph, diagram, or configuration."""


class StretchError(RuntimeError):
    """A point configuration is insufficiently stretched for reconstruction."""

    def __init__(self, detail: str):
        super().__init__(f"insufficiently stretched: {detail}")


class MarkingError(ValueError):
    """A marking contradicts the partial order of its floor diagram."""

    def __init__(self, detail: str):
        super().__init__(f"marking incompatible: {detail}")
