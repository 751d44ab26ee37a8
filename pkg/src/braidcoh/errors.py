"""Exceptions shared across the package."""


class BraidcohError(Exception):
    pass


class PresentationError(BraidcohError):
    """Malformed presentation data or generator mismatch."""


class TruncationError(BraidcohError):
    """A computation produced a word above the active degree truncation."""


class NotConfluentError(BraidcohError):
    """Rewriting system has unresolved overlap ambiguities."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"presentation is not confluent: {report.summary()}")


class NotBimonoidError(BraidcohError):
    """The primitive coproduct does not descend to the quotient algebra."""


class InvalidComplexError(BraidcohError):
    """d ∘ d != 0 or a resolution failed validation."""


class LiftingError(BraidcohError):
    """A chain-map lifting system had no solution (target not exact there)."""


class SchemaError(BraidcohError):
    """Bad JSON input file."""
