"""Exception hierarchy shared by the parser, the engine and the CLI."""


class OaxError(Exception):
    """Base class for all errors raised by this package."""


class PolicyParseError(OaxError):
    """Malformed JSON input. Carries the 1-based line/column of the fault."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class SchemaError(OaxError):
    """Well-formed JSON that does not follow the supported policy subset."""


class PrefixError(SchemaError):
    """Compact IRI whose prefix is not in the fixed prefix map."""


class ContextError(OaxError):
    """Invalid execution context (bad value, duplicate or unknown key)."""


class UnsupportedOperatorError(OaxError):
    """Operator outside the dimensional comparison set {eq, lt, lteq, gt, gteq}."""


class NotDimensionalError(OaxError):
    """A base operand was expected but a scalar / unknown operand was given."""


class DensityMismatchError(OaxError):
    pass


class AxisMismatchError(OaxError):
    pass


class NotSubmittableError(OaxError):
    """An Unknown verdict has no prover encoding."""


class CompositionError(OaxError):
    """Invalid branch sets for or/xone composition."""


class RefinementError(OaxError):
    """No comparable rule pair between upstream and downstream policies."""


class ProverNotFoundError(OaxError):
    """External prover executable could not be resolved."""


class ConfigError(OaxError):
    pass
