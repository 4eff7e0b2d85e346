"""Exception types shared across the library.

Check-style operations report theorem violations in their result objects;
exceptions are reserved for *inputs* that break a contract: mismatched
spaces, invalid axioms, hypotheses that a theorem requires, and claims
that cannot be certified from the sampled evidence.
"""


class OrdMeasureError(Exception):
    """Base class for all errors raised by this package."""


class SpaceMismatchError(OrdMeasureError):
    """Two values from different space descriptors were combined."""


class DimensionLimitError(OrdMeasureError):
    """A backend or ground set exceeds the supported desk-scale size."""


class ValidationError(OrdMeasureError):
    """An object violates its defining axioms.

    `witness` carries a small JSON-able structure pointing at the violation
    (for example the pair of sets whose union is missing from a family).
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class HypothesisError(OrdMeasureError):
    """A theorem's hypothesis is not met by the given scenario."""


class CertificationError(OrdMeasureError):
    """A declared claim about a sequence failed at a sampled index."""


class NotIntegrableError(OrdMeasureError):
    """A signed function is outside the integrable class (infinite |f| integral)."""


class SchemaError(OrdMeasureError):
    """A scenario file violates the JSON schema.

    `path` is a JSON-pointer-style location of the offending value.
    """

    def __init__(self, message, path=""):
        super().__init__(f"{path or '/'}: {message}")
        self.path = path
