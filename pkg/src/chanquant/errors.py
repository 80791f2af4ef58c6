"""Exception hierarchy shared by all modules."""


class ChannelError(ValueError):
    """Base class for every error raised by chanquant."""


class ValidationError(ChannelError):
    """Input does not describe a valid quantum object."""


class CompletenessViolation(ValidationError):
    """Kraus operators do not satisfy sum K^dag K = 1."""


class NotCompletelyPositive(ValidationError):
    """Choi matrix has a negative eigenvalue beyond round-off slack."""


class ConstraintViolation(ValidationError):
    """Incoherent-operation parameters break their normalization constraints."""


class InvalidParameter(ChannelError):
    """Parameter outside the domain of a named family or sweep."""


class DegenerateDenominator(ChannelError):
    """An outcome probability underflowed while forming a ratio."""


class ParseError(ChannelError):
    """Channel description is not well-formed JSON."""


class SchemaError(ChannelError):
    """Channel description has an unknown kind or missing/extra fields."""
