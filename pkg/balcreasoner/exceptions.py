class BalcException(Exception):
    """Base exception for all balcreasoner errors."""


class MalformedContext(BalcException):
    """Raised if a context or world mentions an undeclared variable or an out-of-domain value."""


class InvalidBayesNet(BalcException):
    """Raised if a Bayesian network does not pass validation."""

    def __init__(self, violations):
        self.violations = list(violations)
        super(InvalidBayesNet, self).__init__('; '.join(self.violations))


class KbParseError(BalcException):
    """Raised if a knowledge base file or expression cannot be parsed."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super(KbParseError, self).__init__('\n'.join(str(diagnostic) for diagnostic in self.diagnostics))


class UndeclaredSymbol(BalcException):
    """Raised if an interpretation has no extension for a concept, role or individual name."""


class ResourceLimitExceeded(BalcException):
    """Raised if a tableau exceeds its configured budget."""


class UndefinedConditioning(BalcException):
    """Raised if a conditional probability is requested given a context of probability 0."""


class InvalidQueryArgument(BalcException):
    """Raised if a query or setting argument is unknown or invalid."""


class RuleAlreadyRegistered(BalcException):
    """Raised if another expansion rule with the same id has already been registered."""


class UnknownRule(BalcException):
    """Raised if an unknown expansion rule was requested."""
