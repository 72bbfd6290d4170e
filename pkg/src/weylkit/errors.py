"""Exception hierarchy shared by every weylkit module."""


class WeylkitError(Exception):
    """Base class for all errors raised by weylkit."""


class InputError(WeylkitError, ValueError):
    """Malformed polynomial/operator text or invalid arguments."""


class ZeroDivisor(WeylkitError, ZeroDivisionError):
    pass


class ZeroOperator(WeylkitError, ValueError):
    pass


class NotInIdealizer(WeylkitError):
    pass


class InconsistentProjection(WeylkitError):
    pass


class NonLaurentCoefficient(WeylkitError):
    pass


class PropertyViolation(WeylkitError):
    """A checked mathematical property failed; carries a counterexample."""

    kind = "property"

    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample


class BoundViolation(PropertyViolation):
    kind = "bound"


class IndependenceViolation(PropertyViolation):
    kind = "independence"


class LeadingTermViolation(PropertyViolation):
    kind = "leading_term"


class FiltrationViolation(PropertyViolation):
    kind = "filtration"


class CorrespondenceViolation(PropertyViolation):
    kind = "correspondence"


class TranslationViolation(PropertyViolation):
    kind = "translation"
