"""Exception types shared across the package."""


class UnknownVariable(KeyError):
    """A symbol is undeclared, or lacks the conjugation declaration an
    operation needs."""


class ConjugationMismatch(ValueError):
    """An assignment gives a variable and its conjugate incompatible values."""


class ModelMismatch(ValueError):
    """Operands belong to different coframes or models."""


class NotClosed(ValueError):
    """A form fails the cocycle condition required by the operation."""


class IntegrabilityError(ValueError):
    """Structure equations violate d*d = 0 or the bidegree splitting."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        # list of (generator name, residual form) pairs
        self.violations = list(violations)


class UnspecializedParameters(ValueError):
    """Exact linear algebra was requested over non-constant coefficients."""


class DegenerateSymplectic(ValueError):
    """The top wedge power of the candidate symplectic form vanishes."""


class UnsupportedBasis(ValueError):
    """Closed-form Gram entries are only defined for the standard monomial
    basis of a torus model."""


class OddSize(ValueError):
    """Pfaffians are only defined for even-sized antisymmetric matrices."""


class UnknownScenario(KeyError):
    """No built-in scenario has the requested id."""


class ParseError(ValueError):
    """A model file or expression could not be parsed."""

    def __init__(self, message, field=None):
        if field is not None:
            message = f"{field}: {message}"
        super().__init__(message)
        self.field = field
