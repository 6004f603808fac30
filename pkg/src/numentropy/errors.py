"""Exception hierarchy. Every error maps to one CLI exit status."""


class NumEntropyError(Exception):
    exit_status = 1


class RangeError(NumEntropyError, IndexError):
    pass


class DomainError(NumEntropyError, ValueError):
    pass


class NormalizationError(NumEntropyError, ValueError):
    pass


class ShapeError(NumEntropyError, ValueError):
    pass


class DegenerateWeightsError(NumEntropyError, ValueError):
    pass


class ConfigurationError(NumEntropyError, ValueError):
    exit_status = 2


class ParseError(ConfigurationError):
    pass


class IntegrationError(NumEntropyError, RuntimeError):
    pass


class TruncationError(IntegrationError):
    pass


class FileError(NumEntropyError, OSError):
    exit_status = 3
