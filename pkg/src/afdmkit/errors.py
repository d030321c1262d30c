"""Exception types shared across the package."""


class AfdmkitError(Exception):
    """Base class for all package-specific errors."""


class ExpressionSyntaxError(AfdmkitError):
    """Raised on malformed expression text; carries the byte offset."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnknownIdentifierError(AfdmkitError):
    """Identifier is neither a known function nor an allowed variable."""

    def __init__(self, name, offset):
        super().__init__(f"unknown identifier '{name}' (at offset {offset})")
        self.name = name
        self.offset = offset


class DisallowedVariableError(AfdmkitError):
    """Variable exists in the DSL but is not allowed in this context."""

    def __init__(self, name, offset):
        super().__init__(f"variable '{name}' not allowed here (at offset {offset})")
        self.name = name
        self.offset = offset


class EvaluationDomainError(AfdmkitError):
    """Evaluation left the domain of a primitive (log, sqrt, division, pow)."""

    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node


class GridError(AfdmkitError):
    """Inconsistent grid specification or grid/data mismatch."""


class NonConvergenceError(AfdmkitError):
    """Iterative solver exhausted its iteration cap."""


class OdeBlowupError(AfdmkitError):
    """Step underflow near a singularity; carries the reached location."""

    def __init__(self, message, location):
        super().__init__(f"{message} (near s = {location!r})")
        self.location = location


class DegenerateMetricError(AfdmkitError):
    """|det g| below the degeneracy threshold at some evaluation point."""


class SignatureError(AfdmkitError):
    """Assembled metric is not Lorentzian on the working region."""


class GeneratingDataError(AfdmkitError):
    """Generating data violates a precondition (zero source, sign mismatch...)."""


class LcAdmissibilityError(AfdmkitError):
    """Generating function fails a Levi-Civita admissibility check."""


class ScenarioError(AfdmkitError):
    """Scenario file fails schema validation; carries a diagnostic path."""

    def __init__(self, message, path=""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
